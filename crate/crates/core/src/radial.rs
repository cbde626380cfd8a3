//! The two separated radial problems: the Coulomb-type equation
//! U'' + (E - L0/r - L/r^2) U = 0 and the oscillator-type equation
//! U'' + (E - A r^2 - G/r^2) U = 0, in scaled form. Energies come from the
//! printed closed forms and from the standard derivations; wavefunctions are
//! Laguerre-type with quadrature normalization.

use crate::error::{Error, Result};
use crate::model::{
    radial_effective_potential, KratzerParams, OscParams, PhysConst, RadialSystem, SeparationData,
};
use crate::oracle;
use crate::specfun;

/// How a [`RadialSolution`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialMethod {
    Paper,
    Derived,
    Oracle,
}

/// One radial bound state.
#[derive(Debug, Clone, Copy)]
pub struct RadialSolution {
    pub n: u32,
    pub msq: f64,
    /// Physical energy E.
    pub energy: f64,
    /// Scaled energy: 2m(E - kappa0)/hbar^2 or 2m(E - V0)/hbar^2.
    pub etilde: f64,
    pub method: RadialMethod,
    /// Small-r power of U.
    pub exponent: f64,
    /// Linear decay rate for the Coulomb system, Gaussian rate for the
    /// oscillator one.
    pub decay: f64,
}

fn sqrt_1p4(x: f64) -> Result<f64> {
    let v = 1.0 + 4.0 * x;
    if v < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "inverse-square strength below the collapse threshold (1 + 4x = {v})"
        )));
    }
    Ok(v.sqrt())
}

/// Verbatim printed closed form for the Coulomb-type family, in physical
/// parameters: E = De - (2m/hbar^2) De^2 re^2 [(n + 1/2) + (1/2) sqrt(2m De re^2/hbar^2 + M^2)]^-2.
pub fn hrs_energy_paper(kp: &KratzerParams, msq: f64, n1: u32, pc: &PhysConst) -> Result<f64> {
    let scale = pc.two_m_over_hbar2();
    let radicand = scale * kp.de * kp.re * kp.re + msq;
    if radicand < 0.0 {
        return Err(Error::NegativeRadicand(radicand));
    }
    let bracket = f64::from(n1) + 0.5 + 0.5 * radicand.sqrt();
    Ok(kp.de - scale * kp.de * kp.de * kp.re * kp.re / (bracket * bracket))
}

/// Standard Coulomb-type derivation: Etilde = -(L0^2/4) [(n + 1/2) + (1/2) sqrt(1 + 4 L)]^-2,
/// E = kappa0 + (hbar^2/2m) Etilde. Requires an attractive L0.
pub fn hrs_energy_derived(sd: &SeparationData, n1: u32, pc: &PhysConst) -> Result<RadialSolution> {
    if sd.lambda0 >= 0.0 {
        return Err(Error::NoBoundState(format!(
            "Coulomb coefficient Lambda0 = {} is not attractive",
            sd.lambda0
        )));
    }
    let root = sqrt_1p4(sd.lambda)?;
    let denom = f64::from(n1) + 0.5 + 0.5 * root;
    let etilde = -(sd.lambda0 * sd.lambda0) / (4.0 * denom * denom);
    Ok(RadialSolution {
        n: n1,
        msq: sd.msq,
        energy: sd.kappa0 + etilde / pc.two_m_over_hbar2(),
        etilde,
        method: RadialMethod::Derived,
        exponent: 0.5 * (1.0 + root),
        decay: -sd.lambda0 / (2.0 * denom),
    })
}

/// Verbatim printed closed form for the oscillator-type family:
/// E = kappa r0^2/8 - (hbar/2) sqrt(kappa/m) [(2n + 1) + sqrt(m kappa r0^4/(4 hbar^2) + M^2)].
pub fn rso_energy_paper(op: &OscParams, msq: f64, n2: u32, pc: &PhysConst) -> Result<f64> {
    let radicand = pc.mass / (4.0 * pc.hbar * pc.hbar) * op.kappa * op.r0.powi(4) + msq;
    if radicand < 0.0 {
        return Err(Error::NegativeRadicand(radicand));
    }
    let bracket = 2.0 * f64::from(n2) + 1.0 + radicand.sqrt();
    Ok(op.kappa * op.r0 * op.r0 / 8.0 - 0.5 * pc.hbar * (op.kappa / pc.mass).sqrt() * bracket)
}

/// Standard oscillator-type derivation: Etilde = sqrt(A) [(4n + 2) + sqrt(1 + 4 G)],
/// E = V0 + (hbar^2/2m) Etilde.
pub fn rso_energy_derived(sd: &SeparationData, n2: u32, pc: &PhysConst) -> Result<RadialSolution> {
    if sd.atilde <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "oscillator strength Atilde must be positive, got {}",
            sd.atilde
        )));
    }
    let root = sqrt_1p4(sd.gamma)?;
    let etilde = sd.atilde.sqrt() * (4.0 * f64::from(n2) + 2.0 + root);
    Ok(RadialSolution {
        n: n2,
        msq: sd.msq,
        energy: sd.v0 + etilde / pc.two_m_over_hbar2(),
        etilde,
        method: RadialMethod::Derived,
        exponent: 0.5 * (1.0 + root),
        decay: sd.atilde.sqrt(),
    })
}

/// Which analytic form a radial wavefunction uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveForm {
    /// Residual-validated exponents and Laguerre argument scaling.
    Derived,
    /// Exponents and argument exactly as printed, kept for comparison.
    Printed,
}

/// U(r) = N r^power exp(-lin_rate r - gauss_rate r^2 / 2) L_n^(lag_a)(lag_scale r^lag_power).
#[derive(Debug, Clone, Copy)]
pub struct RadialWavefunction {
    pub system: RadialSystem,
    pub form: WaveForm,
    pub n: u32,
    pub msq: f64,
    pub norm: f64,
    pub power: f64,
    pub lin_rate: f64,
    pub gauss_rate: f64,
    pub lag_a: f64,
    pub lag_scale: f64,
    pub lag_power: i32,
    pub r_max: f64,
}

impl RadialWavefunction {
    pub fn value(&self, r: f64) -> f64 {
        let (v, _, _) = self.with_derivs(r);
        v
    }

    /// Radius framing the state's support: a couple of decay scales past the
    /// outer turning point. Meant for display grids; normalization and
    /// oracle boxes use `r_max`.
    pub fn support_radius(&self) -> f64 {
        match self.lag_power {
            2 => 2.5 * ((self.power + 2.0 * f64::from(self.n) + 1.0) / self.gauss_rate).sqrt(),
            _ => 2.0 * (self.power + f64::from(self.n) + 2.0) / self.lin_rate,
        }
    }

    /// Value, U' and U'' at r > 0.
    pub fn with_derivs(&self, r: f64) -> (f64, f64, f64) {
        let pre = self.norm
            * r.powf(self.power)
            * (-self.lin_rate * r - 0.5 * self.gauss_rate * r * r).exp();
        let l1 = self.power / r - self.lin_rate - self.gauss_rate * r;
        let l2 = -self.power / (r * r) - self.gauss_rate;

        let z = self.lag_scale * r.powi(self.lag_power);
        let zp = self.lag_scale * f64::from(self.lag_power) * r.powi(self.lag_power - 1);
        let zpp = if self.lag_power == 2 {
            2.0 * self.lag_scale
        } else {
            0.0
        };
        let y = specfun::laguerre_raw(self.n, self.lag_a, z);
        let dy = specfun::laguerre_deriv_raw(self.n, self.lag_a, z) * zp;
        let ddy = specfun::laguerre_deriv2_raw(self.n, self.lag_a, z) * zp * zp
            + specfun::laguerre_deriv_raw(self.n, self.lag_a, z) * zpp;

        let u = pre * y;
        let du = pre * (l1 * y + dy);
        let ddu = pre * ((l1 * l1 + l2) * y + 2.0 * l1 * dy + ddy);
        (u, du, ddu)
    }
}

fn normalized(mut wf: RadialWavefunction) -> Result<RadialWavefunction> {
    let raw = oracle::quad(|r| wf.value(r).powi(2), 0.0, wf.r_max)?;
    if !(raw.is_finite() && raw > 0.0) {
        return Err(Error::NonNormalizable(format!("norm integral {raw}")));
    }
    wf.norm = raw.sqrt().recip();
    Ok(wf)
}

/// Normalization/oracle box for the Coulomb system. The decay-length count
/// grows with the small-r power s1 so the r^s1 prefactor cannot hold the
/// relative tail above 1e-14.
pub fn hrs_r_max(sd: &SeparationData, n1: u32, pc: &PhysConst) -> Result<f64> {
    let sol = hrs_energy_derived(sd, n1, pc)?;
    let kappa2_bar = (sd.lambda - (sd.msq - 0.25)).max(0.0);
    let re_equiv = if sd.lambda0 != 0.0 {
        2.0 * kappa2_bar / sd.lambda0.abs()
    } else {
        0.0
    };
    let decay_lengths = 40.0 + 4.0 * (sol.exponent + f64::from(n1));
    Ok((40.0 * re_equiv).max(decay_lengths / sol.decay))
}

/// Box for the oscillator system: 12 A^(-1/4) sqrt(2n + q + 2).
pub fn rso_r_max(sd: &SeparationData, n2: u32) -> Result<f64> {
    if sd.atilde <= 0.0 {
        return Err(Error::InvalidParameter("Atilde must be positive".into()));
    }
    let q = 0.5 * sqrt_1p4(sd.gamma)?;
    Ok(12.0 * sd.atilde.powf(-0.25) * (2.0 * f64::from(n2) + q + 2.0).sqrt())
}

/// Normalized Coulomb-type eigenfunction
/// U(r) = N r^s1 e^(-kb r) L_n^(2 s1 - 1)(2 kb r).
pub fn hrs_wavefunction(
    sd: &SeparationData,
    n1: u32,
    pc: &PhysConst,
) -> Result<RadialWavefunction> {
    let sol = hrs_energy_derived(sd, n1, pc)?;
    normalized(RadialWavefunction {
        system: RadialSystem::Hrs,
        form: WaveForm::Derived,
        n: n1,
        msq: sd.msq,
        norm: 1.0,
        power: sol.exponent,
        lin_rate: sol.decay,
        gauss_rate: 0.0,
        lag_a: 2.0 * sol.exponent - 1.0,
        lag_scale: 2.0 * sol.decay,
        lag_power: 1,
        r_max: hrs_r_max(sd, n1, pc)?,
    })
}

/// The printed Coulomb-type form r^p e^(-kb r) L_n^p(r) with
/// p = 1 + 2 sqrt(1 + 4 L) and an unscaled Laguerre argument.
pub fn hrs_wavefunction_printed(
    sd: &SeparationData,
    n1: u32,
    pc: &PhysConst,
) -> Result<RadialWavefunction> {
    let sol = hrs_energy_derived(sd, n1, pc)?;
    let p = 1.0 + 2.0 * sqrt_1p4(sd.lambda)?;
    normalized(RadialWavefunction {
        system: RadialSystem::Hrs,
        form: WaveForm::Printed,
        n: n1,
        msq: sd.msq,
        norm: 1.0,
        power: p,
        lin_rate: sol.decay,
        gauss_rate: 0.0,
        lag_a: p,
        lag_scale: 1.0,
        lag_power: 1,
        r_max: hrs_r_max(sd, n1, pc)?,
    })
}

/// Normalized oscillator-type eigenfunction
/// U(r) = N r^s2 e^(-sqrt(A) r^2/2) L_n^(q)(sqrt(A) r^2), q = sqrt(1 + 4 G)/2.
pub fn rso_wavefunction(
    sd: &SeparationData,
    n2: u32,
    pc: &PhysConst,
) -> Result<RadialWavefunction> {
    let sol = rso_energy_derived(sd, n2, pc)?;
    normalized(RadialWavefunction {
        system: RadialSystem::Rso,
        form: WaveForm::Derived,
        n: n2,
        msq: sd.msq,
        norm: 1.0,
        power: sol.exponent,
        lin_rate: 0.0,
        gauss_rate: sol.decay,
        lag_a: sol.exponent - 0.5,
        lag_scale: sol.decay,
        lag_power: 2,
        r_max: rso_r_max(sd, n2)?,
    })
}

/// The printed oscillator-type form: same exponents, Laguerre argument r^2
/// without the sqrt(A) scaling.
pub fn rso_wavefunction_printed(
    sd: &SeparationData,
    n2: u32,
    pc: &PhysConst,
) -> Result<RadialWavefunction> {
    let sol = rso_energy_derived(sd, n2, pc)?;
    let zeta = 1.0 + sqrt_1p4(sd.gamma)?;
    normalized(RadialWavefunction {
        system: RadialSystem::Rso,
        form: WaveForm::Printed,
        n: n2,
        msq: sd.msq,
        norm: 1.0,
        power: 0.5 * zeta,
        lin_rate: 0.0,
        gauss_rate: sol.decay,
        lag_a: 0.5 * (zeta - 1.0),
        lag_scale: 1.0,
        lag_power: 2,
        r_max: rso_r_max(sd, n2)?,
    })
}

/// Max scaled residual of the radial equation over 500 log-spaced points.
pub fn radial_residual(
    system: RadialSystem,
    sd: &SeparationData,
    etilde: f64,
    u: &RadialWavefunction,
) -> f64 {
    let r_hi = u.r_max * 0.999;
    let r_lo = u.r_max * 1e-4;
    let ratio = r_hi / r_lo;
    let mut max_res = 0.0_f64;
    let mut max_u = 0.0_f64;
    for i in 0..500 {
        let r = r_lo * ratio.powf(f64::from(i) / 499.0);
        let (v, _, ddv) = u.with_derivs(r);
        let res = ddv + (etilde - radial_effective_potential(system, sd, r)) * v;
        max_res = max_res.max(res.abs());
        max_u = max_u.max(v.abs());
    }
    max_res / max_u.max(f64::MIN_POSITIVE)
}
