//! Physical parameter sets for the two potential families, the barred
//! (2m/hbar^2) scalings, separation data, and evaluation of the potentials in
//! cartesian and plane-polar form.
//!
//! Family I (`Hrs`) is the modified-Kratzer pseudocentral core, family II
//! (`Rso`) the pseudoharmonic-oscillator core; both carry the same
//! five-parameter angular barrier B cot^2 + C tan^2 + D csc^2 + F sec^2 +
//! G sec^2 csc^2 over r^2.

use crate::error::{Error, Result};

/// Gate below which an angular denominator counts as singular.
const SING_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysConst {
    pub mass: f64,
    pub hbar: f64,
}

impl PhysConst {
    pub fn new(mass: f64, hbar: f64) -> Result<Self> {
        if !(mass.is_finite() && hbar.is_finite()) || mass <= 0.0 || hbar <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "mass and hbar must be positive, got mass = {mass}, hbar = {hbar}"
            )));
        }
        Ok(PhysConst { mass, hbar })
    }

    /// The ubiquitous 2m/hbar^2 scaling.
    pub fn two_m_over_hbar2(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }
}

impl Default for PhysConst {
    fn default() -> Self {
        PhysConst {
            mass: 1.0,
            hbar: 1.0,
        }
    }
}

/// Raw strengths of the five-term angular barrier (energy * length^2 units).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoncentralParams {
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub f: f64,
    pub g: f64,
}

impl NoncentralParams {
    pub fn new(b: f64, c: f64, d: f64, f: f64, g: f64) -> Result<Self> {
        for (name, v) in [("B", b), ("C", c), ("D", d), ("F", f), ("G", g)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "noncentral strength {name} must be >= 0, got {v}"
                )));
            }
        }
        Ok(NoncentralParams { b, c, d, f, g })
    }

    pub fn zero() -> Self {
        NoncentralParams::default()
    }

    pub fn is_zero(&self) -> bool {
        self.b == 0.0 && self.c == 0.0 && self.d == 0.0 && self.f == 0.0 && self.g == 0.0
    }
}

/// Dimensionless barrier strengths, each 2m/hbar^2 times the raw one.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BarredParams {
    pub bbar: f64,
    pub cbar: f64,
    pub dbar: f64,
    pub fbar: f64,
    pub gbar: f64,
}

impl BarredParams {
    pub fn new(bbar: f64, cbar: f64, dbar: f64, fbar: f64, gbar: f64) -> Result<Self> {
        for (name, v) in [
            ("Bbar", bbar),
            ("Cbar", cbar),
            ("Dbar", dbar),
            ("Fbar", fbar),
            ("Gbar", gbar),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "barred strength {name} must be >= 0, got {v}"
                )));
            }
        }
        Ok(BarredParams {
            bbar,
            cbar,
            dbar,
            fbar,
            gbar,
        })
    }

    pub fn zero() -> Self {
        BarredParams::default()
    }

    pub fn sum(&self) -> f64 {
        self.bbar + self.cbar + self.dbar + self.fbar + self.gbar
    }
}

pub fn barred_params(nc: &NoncentralParams, pc: &PhysConst) -> BarredParams {
    let s = pc.two_m_over_hbar2();
    BarredParams {
        bbar: s * nc.b,
        cbar: s * nc.c,
        dbar: s * nc.d,
        fbar: s * nc.f,
        gbar: s * nc.g,
    }
}

/// Modified-Kratzer core parameters. The Coulomb coefficient kappa1 is stored
/// negative (attractive well) so the radial problem admits bound states; the
/// printed magnitude is available via [`KratzerParams::kappa1_magnitude`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KratzerParams {
    pub de: f64,
    pub re: f64,
    pub kappa0: f64,
    pub kappa1: f64,
    pub kappa2: f64,
}

impl KratzerParams {
    pub fn new(de: f64, re: f64) -> Result<Self> {
        let (kappa0, kappa1, kappa2) = kratzer_constants(de, re)?;
        Ok(KratzerParams {
            de,
            re,
            kappa0,
            kappa1,
            kappa2,
        })
    }

    pub fn kappa1_magnitude(&self) -> f64 {
        self.kappa1.abs()
    }

    /// Signed Coulomb-term amplitude A0 = -sqrt(De) * re, paired with
    /// B0 = sqrt(De) so that (A0/r + B0)^2 expands to the stored kappas.
    pub fn a0(&self) -> f64 {
        -self.de.sqrt() * self.re
    }

    pub fn b0(&self) -> f64 {
        self.de.sqrt()
    }
}

/// kappa0 = De, kappa1 = -2 De re, kappa2 = De re^2.
pub fn kratzer_constants(de: f64, re: f64) -> Result<(f64, f64, f64)> {
    if !(de.is_finite() && re.is_finite()) || de <= 0.0 || re <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Kratzer parameters must be positive, got De = {de}, re = {re}"
        )));
    }
    Ok((de, -2.0 * de * re, de * re * re))
}

/// Pseudoharmonic-oscillator core parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscParams {
    pub kappa: f64,
    pub r0: f64,
    pub a1: f64,
    pub b1: f64,
    pub v0: f64,
    pub omega: f64,
}

/// A1 = sqrt(kappa/8), B1 = sqrt(kappa/8) r0^2, V0 = 2 A1 B1 = kappa r0^2 / 4,
/// omega = sqrt(2 m A1^2 / hbar^2).
pub fn osc_constants(kappa: f64, r0: f64, pc: &PhysConst) -> Result<OscParams> {
    if !(kappa.is_finite() && r0.is_finite()) || kappa <= 0.0 || r0 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "oscillator parameters must be positive, got kappa = {kappa}, r0 = {r0}"
        )));
    }
    let a1 = (kappa / 8.0).sqrt();
    let b1 = a1 * r0 * r0;
    // = 2 a1 b1, written so the kappa r0^2 / 4 identity is exact.
    let v0 = 0.25 * kappa * r0 * r0;
    let omega = (pc.two_m_over_hbar2() * a1 * a1).sqrt();
    Ok(OscParams {
        kappa,
        r0,
        a1,
        b1,
        v0,
        omega,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Hrs,
    Rso,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Hrs => "hrs",
            Family::Rso => "rso",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CentralPotential {
    Kratzer(KratzerParams),
    Oscillator(OscParams),
}

/// Full physical description of one problem instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub central: CentralPotential,
    pub noncentral: NoncentralParams,
    pub consts: PhysConst,
}

impl PotentialSpec {
    pub fn new_hrs(de: f64, re: f64, nc: NoncentralParams, pc: PhysConst) -> Result<Self> {
        Ok(PotentialSpec {
            central: CentralPotential::Kratzer(KratzerParams::new(de, re)?),
            noncentral: nc,
            consts: pc,
        })
    }

    pub fn new_rso(kappa: f64, r0: f64, nc: NoncentralParams, pc: PhysConst) -> Result<Self> {
        Ok(PotentialSpec {
            central: CentralPotential::Oscillator(osc_constants(kappa, r0, &pc)?),
            noncentral: nc,
            consts: pc,
        })
    }

    pub fn family(&self) -> Family {
        match self.central {
            CentralPotential::Kratzer(_) => Family::Hrs,
            CentralPotential::Oscillator(_) => Family::Rso,
        }
    }

    pub fn barred(&self) -> BarredParams {
        barred_params(&self.noncentral, &self.consts)
    }
}

fn central_value(spec: &PotentialSpec, r: f64) -> f64 {
    match spec.central {
        CentralPotential::Kratzer(k) => k.kappa0 + k.kappa1 / r + k.kappa2 / (r * r),
        CentralPotential::Oscillator(o) => o.v0 + o.a1 * o.a1 * r * r + o.b1 * o.b1 / (r * r),
    }
}

/// Angular barrier in raw strengths, given sin(phi) and cos(phi). Each term is
/// gated on its own denominator only when its coefficient is nonzero.
fn angular_value(nc: &NoncentralParams, s: f64, c: f64) -> Result<f64> {
    let s2 = s * s;
    let c2 = c * c;
    let mut total = 0.0;
    if nc.b != 0.0 || nc.d != 0.0 {
        if s.abs() < SING_EPS {
            return Err(Error::SingularPoint(
                "sin^2-denominator term evaluated on the x axis".into(),
            ));
        }
        total += (nc.d + nc.b * c2) / s2;
    }
    if nc.c != 0.0 || nc.f != 0.0 {
        if c.abs() < SING_EPS {
            return Err(Error::SingularPoint(
                "cos^2-denominator term evaluated on the y axis".into(),
            ));
        }
        total += (nc.f + nc.c * s2) / c2;
    }
    if nc.g != 0.0 {
        if (2.0 * s * c).abs() < SING_EPS {
            return Err(Error::SingularPoint(
                "sec^2 csc^2 term evaluated on a coordinate axis".into(),
            ));
        }
        total += nc.g / (s2 * c2);
    }
    Ok(total)
}

/// V(x, y) in the rectangular form.
pub fn eval_cartesian(spec: &PotentialSpec, x: f64, y: f64) -> Result<f64> {
    let r2 = x * x + y * y;
    let r = r2.sqrt();
    if r == 0.0 {
        return Err(Error::SingularPoint(
            "potential evaluated at the origin".into(),
        ));
    }
    let ang = angular_value(&spec.noncentral, y / r, x / r)?;
    Ok(central_value(spec, r) + ang / r2)
}

/// V(r, phi) in the plane-polar form; agrees with [`eval_cartesian`] at
/// (r cos phi, r sin phi).
pub fn eval_polar(spec: &PotentialSpec, r: f64, phi: f64) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::SingularPoint(format!(
            "radius must be positive, got {r}"
        )));
    }
    let ang = angular_value(&spec.noncentral, phi.sin(), phi.cos())?;
    Ok(central_value(spec, r) + ang / (r * r))
}

/// Scaled angular barrier W(phi) of the separated angle equation,
/// Phi'' + (M^2 - W) Phi = 0.
pub fn angular_barrier(bp: &BarredParams, phi: f64) -> f64 {
    let s2 = phi.sin().powi(2);
    let c2 = phi.cos().powi(2);
    (bp.dbar + bp.bbar * c2) / s2 + (bp.fbar + bp.cbar * s2) / c2 + bp.gbar / (s2 * c2)
}

/// Which separated radial equation applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialSystem {
    Hrs,
    Rso,
}

/// Everything the separated radial equations need: Lambda0/Lambda for the
/// Coulomb-type system, Atilde/Gamma for the oscillator-type one, plus the
/// energy offsets kappa0 and V0 that map scaled eigenvalues back to physical
/// energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationData {
    pub msq: f64,
    pub lambda0: f64,
    pub lambda: f64,
    pub atilde: f64,
    pub gamma: f64,
    pub kappa0: f64,
    pub v0: f64,
}

impl SeparationData {
    /// Raw constructor for scaled-form problems that bypass a full
    /// [`PotentialSpec`] (hydrogenic and pure-oscillator reductions).
    pub fn from_parts(
        msq: f64,
        lambda0: f64,
        lambda: f64,
        atilde: f64,
        gamma: f64,
        kappa0: f64,
        v0: f64,
    ) -> Self {
        SeparationData {
            msq,
            lambda0,
            lambda,
            atilde,
            gamma,
            kappa0,
            v0,
        }
    }
}

/// Separation data for a given angular eigenvalue M^2.
pub fn separation_data(spec: &PotentialSpec, msq: f64) -> SeparationData {
    let scale = spec.consts.two_m_over_hbar2();
    let centrifugal = msq - 0.25;
    match spec.central {
        CentralPotential::Kratzer(k) => SeparationData {
            msq,
            lambda0: scale * k.kappa1,
            lambda: scale * k.kappa2 + centrifugal,
            atilde: 0.0,
            gamma: centrifugal,
            kappa0: k.kappa0,
            v0: 0.0,
        },
        CentralPotential::Oscillator(o) => SeparationData {
            msq,
            lambda0: 0.0,
            lambda: centrifugal,
            // a1^2 = kappa/8 and b1^2 = (kappa/8) r0^4, kept in exact form
            atilde: scale * o.kappa / 8.0,
            gamma: scale * (o.kappa / 8.0) * o.r0.powi(4) + centrifugal,
            kappa0: 0.0,
            v0: o.v0,
        },
    }
}

/// Scaled effective potential of the separated radial equation,
/// U'' + (Etilde - W) U = 0.
pub fn radial_effective_potential(system: RadialSystem, sd: &SeparationData, r: f64) -> f64 {
    match system {
        RadialSystem::Hrs => sd.lambda0 / r + sd.lambda / (r * r),
        RadialSystem::Rso => sd.atilde * r * r + sd.gamma / (r * r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    fn pc() -> PhysConst {
        PhysConst::default()
    }

    #[test]
    fn barred_scaling() {
        let z = barred_params(&NoncentralParams::zero(), &pc());
        assert_eq!(z, BarredParams::zero());

        let nc = NoncentralParams::new(0.0, 0.0, 2.0, 0.0, 0.0).unwrap();
        let bp = barred_params(&nc, &pc());
        assert_eq!(bp.dbar, 4.0);
        assert_eq!(bp.bbar, 0.0);

        let heavy = PhysConst::new(2.0, 1.0).unwrap();
        let nc = NoncentralParams::new(0.5, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(barred_params(&nc, &heavy).bbar, 2.0);
    }

    #[test]
    fn kratzer_constants_cases() {
        assert_eq!(kratzer_constants(4.0, 1.0).unwrap(), (4.0, -8.0, 4.0));
        assert_eq!(kratzer_constants(2.0, 3.0).unwrap(), (2.0, -12.0, 18.0));
        // re -> 0 removes the Coulomb and centrifugal pieces.
        let (k0, k1, k2) = kratzer_constants(1.0, 1e-9).unwrap();
        assert_eq!(k0, 1.0);
        assert!(k1.abs() < 1e-8 && k2.abs() < 1e-17);
        assert!(kratzer_constants(-1.0, 1.0).is_err());
        assert!(kratzer_constants(1.0, 0.0).is_err());
    }

    #[test]
    fn osc_constants_cases() {
        let o = osc_constants(8.0, 1.0, &pc()).unwrap();
        assert!((o.a1 - 1.0).abs() < 1e-15);
        assert!((o.b1 - 1.0).abs() < 1e-15);
        assert!((o.v0 - 2.0).abs() < 1e-15);

        let o = osc_constants(8.0, 2.0, &pc()).unwrap();
        assert!((o.a1 - 1.0).abs() < 1e-15);
        assert!((o.b1 - 4.0).abs() < 1e-15);
        assert!((o.v0 - 8.0).abs() < 1e-15);

        let o = osc_constants(4.0, 1.0, &pc()).unwrap();
        assert!((o.omega - 1.0).abs() < 1e-15);
        assert!((o.v0 - 1.0).abs() < 1e-15);
        // Internal consistency V0 = kappa r0^2 / 4 exactly.
        assert_eq!(o.v0, o.kappa / 4.0 * o.r0 * o.r0);

        assert!(osc_constants(0.0, 1.0, &pc()).is_err());
    }

    #[test]
    fn cartesian_kratzer_diagonal() {
        let spec = PotentialSpec::new_hrs(4.0, 1.0, NoncentralParams::zero(), pc()).unwrap();
        let v = eval_cartesian(&spec, 1.0, 1.0).unwrap();
        let expected = (-2.0 / 2.0_f64.sqrt() + 2.0).powi(2);
        assert!((v - expected).abs() < 1e-12);
        assert!((expected - 0.343_145_7).abs() < 1e-6);
    }

    #[test]
    fn cartesian_null_at_well_minimum() {
        // The Kratzer core vanishes exactly at r = re; as De -> 0 the whole
        // potential tends to zero everywhere.
        let spec = PotentialSpec::new_hrs(4.0, 1.0, NoncentralParams::zero(), pc()).unwrap();
        let v = eval_polar(&spec, 1.0, 0.3).unwrap();
        assert!(v.abs() < 1e-14);
        let weak = PotentialSpec::new_hrs(1e-12, 1.0, NoncentralParams::zero(), pc()).unwrap();
        assert!(eval_cartesian(&weak, 2.0, 1.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn cartesian_oscillator_three_four_five() {
        let spec = PotentialSpec::new_rso(8.0, 1.0, NoncentralParams::zero(), pc()).unwrap();
        let v = eval_cartesian(&spec, 3.0, 4.0).unwrap();
        assert!((v - 27.04).abs() < 1e-12);
    }

    #[test]
    fn polar_matches_cartesian_example() {
        let spec = PotentialSpec::new_hrs(4.0, 1.0, NoncentralParams::zero(), pc()).unwrap();
        let vp = eval_polar(&spec, 2.0_f64.sqrt(), PI / 4.0).unwrap();
        let vc = eval_cartesian(&spec, 1.0, 1.0).unwrap();
        assert!((vp - vc).abs() < 1e-12);
    }

    #[test]
    fn polar_csc_term_regular_at_half_pi() {
        let nc = NoncentralParams::new(0.0, 0.0, 1.0, 0.0, 0.0).unwrap();
        let spec = PotentialSpec::new_hrs(4.0, 1.0, nc, pc()).unwrap();
        let v = eval_polar(&spec, 1.0, PI / 2.0).unwrap();
        let central = eval_polar(
            &PotentialSpec::new_hrs(4.0, 1.0, NoncentralParams::zero(), pc()).unwrap(),
            1.0,
            PI / 2.0,
        )
        .unwrap();
        assert!((v - (central + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn polar_g_term_at_quarter_pi() {
        let nc = NoncentralParams::new(0.0, 0.0, 0.0, 0.0, 1.0).unwrap();
        let spec = PotentialSpec::new_hrs(4.0, 1.0, nc, pc()).unwrap();
        let v = eval_polar(&spec, 2.0, PI / 4.0).unwrap();
        let central = central_value(&spec, 2.0);
        assert!((v - (central + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn singular_terms_rejected_on_their_own_axes() {
        let nc = NoncentralParams::new(0.0, 0.0, 1.0, 0.0, 0.0).unwrap();
        let spec = PotentialSpec::new_hrs(4.0, 1.0, nc, pc()).unwrap();
        // csc^2 blows up at phi = 0 / on the x axis.
        assert!(eval_polar(&spec, 1.0, 0.0).is_err());
        assert!(eval_cartesian(&spec, 1.0, 0.0).is_err());
        // ... but the y axis is fine for a pure-D barrier.
        assert!(eval_cartesian(&spec, 0.0, 1.0).is_ok());

        let ncg = NoncentralParams::new(0.0, 0.0, 0.0, 0.0, 1.0).unwrap();
        let spec_g = PotentialSpec::new_hrs(4.0, 1.0, ncg, pc()).unwrap();
        assert!(eval_polar(&spec_g, 1.0, PI / 2.0).is_err());
        assert!(eval_polar(&spec_g, 1.0, 0.0).is_err());
    }

    #[test]
    fn separation_data_examples() {
        let spec = PotentialSpec::new_hrs(4.0, 1.0, NoncentralParams::zero(), pc()).unwrap();
        let sd = separation_data(&spec, 4.0);
        assert!((sd.lambda - 11.75).abs() < 1e-12);
        assert!((sd.lambda0 + 16.0).abs() < 1e-12);
        assert_eq!(sd.kappa0, 4.0);

        let spec = PotentialSpec::new_rso(4.0, 1.0, NoncentralParams::zero(), pc()).unwrap();
        let sd = separation_data(&spec, 3.0);
        assert!((sd.atilde - 1.0).abs() < 1e-12);
        assert!((sd.gamma - 3.75).abs() < 1e-12);
        assert!((sd.v0 - 1.0).abs() < 1e-12);

        // M^2 = 1/4 with vanishing central strength cancels the centrifugal
        // piece exactly.
        let weak = PotentialSpec::new_hrs(1e-300, 1.0, NoncentralParams::zero(), pc()).unwrap();
        let sd = separation_data(&weak, 0.25);
        assert!(sd.lambda.abs() < 1e-299);
    }

    #[test]
    fn central_reduction_is_angle_free() {
        let spec = PotentialSpec::new_rso(3.0, 1.3, NoncentralParams::zero(), pc()).unwrap();
        let v0 = eval_polar(&spec, 1.7, 0.3).unwrap();
        for i in 1..20 {
            let phi = 0.05 + f64::from(i) * 0.07;
            assert!((eval_polar(&spec, 1.7, phi).unwrap() - v0).abs() < 1e-13);
        }
    }
}
