//! Complete 2D wavefunctions Psi(r, phi) = N r^(-1/2) U(r) Phi(phi),
//! assembled from matching angular and radial factors, with grid evaluation,
//! the planar Hamiltonian residual, and the angular-momentum operator check.
//!
//! The angular factor is a function of t = sin^2(phi), so extending it from
//! (0, pi/2) to the full circle by evaluating at any phi reproduces the even
//! reflection across phi = pi/2, pi, 3 pi/2 automatically.

use crate::angular::{angular_wavefunction, AngularSolution, AngularWavefunction};
use crate::error::{Error, Result};
use crate::model::{eval_polar, separation_data, Family, PotentialSpec};
use crate::oracle;
use crate::radial::{
    hrs_wavefunction, rso_wavefunction, RadialMethod, RadialSolution, RadialWavefunction,
};

/// One fully assembled planar bound state with unit 2D norm.
#[derive(Debug, Clone)]
pub struct FullState {
    pub spec: PotentialSpec,
    pub angular: AngularSolution,
    pub radial: RadialSolution,
    pub angular_wf: AngularWavefunction,
    pub radial_wf: RadialWavefunction,
    /// Overall factor making the 2D norm unity over (0, r_max) x (0, 2 pi).
    pub norm: f64,
}

/// Composite Gauss-Kronrod sum over (0, 2 pi) with panel boundaries on the
/// axes, where the angular envelope may lose smoothness.
fn full_circle_integral(f: impl Fn(f64) -> f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let panels = 64;
    let mut total = 0.0;
    for i in 0..panels {
        let a = two_pi * i as f64 / panels as f64;
        let b = two_pi * (i + 1) as f64 / panels as f64;
        total += gk_panel(&f, a, b);
    }
    total
}

fn gk_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    #[allow(clippy::excessive_precision, clippy::inconsistent_digit_grouping)]
    const NODES: [f64; 8] = [
        0.991_455_371_120_812_6,
        0.949_107_912_342_758_5,
        0.864_864_423_359_769_1,
        0.741_531_185_599_394_4,
        0.586_087_235_467_691_1,
        0.405_845_151_377_397_17,
        0.207_784_955_007_898_47,
        0.0,
    ];
    #[allow(clippy::excessive_precision)]
    const WEIGHTS: [f64; 8] = [
        0.022_935_322_010_529_224,
        0.063_092_092_629_978_55,
        0.104_790_010_322_250_18,
        0.140_653_259_715_525_92,
        0.169_004_726_639_267_9,
        0.190_350_578_064_785_4,
        0.204_432_940_075_298_9,
        0.209_482_141_084_727_83,
    ];
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for (j, &x) in NODES.iter().enumerate() {
        acc += WEIGHTS[j]
            * if x == 0.0 {
                f(mid)
            } else {
                f(mid + half * x) + f(mid - half * x)
            };
    }
    acc * half
}

/// Combine matching angular and radial solutions into a normalized 2D state.
/// Both factors must be engine/derived solutions sharing the same M^2.
pub fn assemble(
    spec: &PotentialSpec,
    angular: &AngularSolution,
    radial: &RadialSolution,
) -> Result<FullState> {
    if (angular.msq - radial.msq).abs() > 1e-9 * (1.0 + angular.msq.abs()) {
        return Err(Error::MismatchedMsq {
            angular: angular.msq,
            radial: radial.msq,
        });
    }
    if radial.method != RadialMethod::Derived {
        return Err(Error::InvalidParameter(
            "assembly requires a derived-method radial solution".into(),
        ));
    }
    let angular_wf = angular_wavefunction(angular)?;
    let sd = separation_data(spec, angular.msq);
    let radial_wf = match spec.family() {
        Family::Hrs => hrs_wavefunction(&sd, radial.n, &spec.consts)?,
        Family::Rso => rso_wavefunction(&sd, radial.n, &spec.consts)?,
    };

    let mut state = FullState {
        spec: *spec,
        angular: *angular,
        radial: *radial,
        angular_wf,
        radial_wf,
        norm: 1.0,
    };
    // 2D quadrature of |Psi|^2 r dr dphi, without assuming separability.
    let sq = |r: f64| full_circle_integral(|phi| state.psi(r, phi).powi(2)) * r;
    let total = oracle::quad_tol(sq, 0.0, state.radial_wf.r_max, 1e-10, 1e-13)?;
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::NonNormalizable(format!("2D norm integral {total}")));
    }
    state.norm = total.sqrt().recip();
    Ok(state)
}

impl FullState {
    /// Psi(r, phi); zero at the origin for every admitted state.
    pub fn psi(&self, r: f64, phi: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        self.norm * r.powf(-0.5) * self.radial_wf.value(r) * self.angular_wf.value(phi)
    }

    /// Psi(x, y) through the exact algebraic map t = y^2 / (x^2 + y^2).
    pub fn psi_cartesian(&self, x: f64, y: f64) -> f64 {
        let r2 = x * x + y * y;
        if r2 <= 0.0 {
            return 0.0;
        }
        let r = r2.sqrt();
        self.norm
            * r.powf(-0.5)
            * self.radial_wf.value(r)
            * self.angular_wf.value_t_pair(y * y / r2, x * x / r2)
    }

    /// d Psi / d phi at interior points.
    pub fn dpsi_dphi(&self, r: f64, phi: f64) -> f64 {
        let (_, d1, _) = self.angular_wf.with_derivs(phi);
        self.norm * r.powf(-0.5) * self.radial_wf.value(r) * d1
    }

    pub fn energy(&self) -> f64 {
        self.radial.energy
    }
}

/// Max scaled residual of the planar Schroedinger operator
/// [d_rr + (1/r) d_r + (1/r^2) d_phiphi + (2m/hbar^2)(E - V)] Psi
/// on an interior grid of nr x nphi points (nphi rounded up to even so the
/// half-offset angles avoid the axes).
pub fn hamiltonian_residual(state: &FullState, nr: usize, nphi: usize) -> Result<f64> {
    let nphi = nphi + nphi % 2;
    let two_pi = 2.0 * std::f64::consts::PI;
    let r_span = state.radial_wf.r_max * 0.5;
    let scale = state.spec.consts.two_m_over_hbar2();
    let energy = state.energy();

    let mut max_res = 0.0_f64;
    let mut max_psi = 0.0_f64;
    for i in 0..nr {
        let r = (i as f64 + 0.5) * r_span / nr as f64;
        let (u, du, ddu) = state.radial_wf.with_derivs(r);
        let rm = r.powf(-0.5);
        for j in 0..nphi {
            let phi = (j as f64 + 0.5) * two_pi / nphi as f64;
            let (av, _, addv) = state.angular_wf.with_derivs(phi);
            let psi = state.norm * rm * u * av;
            let psi_rr = state.norm * av * (ddu * rm - du * rm / r + 0.75 * u * rm / (r * r));
            let psi_r_over_r = state.norm * av * (du * rm / r - 0.5 * u * rm / (r * r));
            let psi_pp = state.norm * rm * u * addv / (r * r);
            let v = eval_polar(&state.spec, r, phi)?;
            let res = psi_rr + psi_r_over_r + psi_pp + scale * (energy - v) * psi;
            max_res = max_res.max(res.abs());
            max_psi = max_psi.max(psi.abs());
        }
    }
    Ok(max_res / max_psi.max(f64::MIN_POSITIVE))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    Polar,
    Cartesian,
}

#[derive(Debug, Clone, Copy)]
pub struct GridMeta {
    pub family: Family,
    pub n0: u32,
    pub nr: u32,
    pub msq: f64,
    pub energy: f64,
    pub mode: GridMode,
}

/// Sampled wavefunction values; `values[i * axis_b.len() + j]` belongs to
/// `(axis_a[i], axis_b[j])`.
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub axis_a: Vec<f64>,
    pub axis_b: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: GridMeta,
}

fn meta_for(state: &FullState, mode: GridMode) -> GridMeta {
    GridMeta {
        family: state.spec.family(),
        n0: state.angular.n0,
        nr: state.radial.n,
        msq: state.angular.msq,
        energy: state.energy(),
        mode,
    }
}

pub fn eval_polar_grid(state: &FullState, rs: &[f64], phis: &[f64]) -> GridFunction {
    let mut values = Vec::with_capacity(rs.len() * phis.len());
    for &r in rs {
        for &phi in phis {
            values.push(state.psi(r, phi));
        }
    }
    GridFunction {
        axis_a: rs.to_vec(),
        axis_b: phis.to_vec(),
        values,
        meta: meta_for(state, GridMode::Polar),
    }
}

pub fn eval_cartesian_grid(state: &FullState, xs: &[f64], ys: &[f64]) -> GridFunction {
    let mut values = Vec::with_capacity(xs.len() * ys.len());
    for &x in xs {
        for &y in ys {
            values.push(state.psi_cartesian(x, y));
        }
    }
    GridFunction {
        axis_a: xs.to_vec(),
        axis_b: ys.to_vec(),
        values,
        meta: meta_for(state, GridMode::Cartesian),
    }
}

/// Result of applying the planar angular-momentum operator -i hbar d/dphi.
///
/// Real product states are not eigenstates of the operator; the residual
/// norm ||(-i hbar d/dphi - hbar M) Psi|| is generically of order hbar M,
/// while the expectation of the operator itself vanishes.
#[derive(Debug, Clone, Copy)]
pub struct LMomentumReport {
    /// M = +sqrt(M^2) of the state.
    pub m: f64,
    /// L2 norm of (-i hbar d/dphi - hbar M) Psi.
    pub residual_norm: f64,
    /// Expectation of -i hbar d/dphi (zero for real states up to quadrature).
    pub expectation: f64,
    /// 2D norm of the state itself (unity up to quadrature).
    pub psi_norm: f64,
}

pub fn angular_momentum_check(state: &FullState) -> Result<LMomentumReport> {
    let hbar = state.spec.consts.hbar;
    let m = state.angular.msq.max(0.0).sqrt();
    let r_max = state.radial_wf.r_max;

    let norm_sq = oracle::quad_tol(
        |r| full_circle_integral(|phi| state.psi(r, phi).powi(2)) * r,
        0.0,
        r_max,
        1e-9,
        1e-12,
    )?;
    let dphi_sq = oracle::quad_tol(
        |r| full_circle_integral(|phi| state.dpsi_dphi(r, phi).powi(2)) * r,
        0.0,
        r_max,
        1e-9,
        1e-12,
    )?;
    let cross = oracle::quad_tol(
        |r| full_circle_integral(|phi| state.psi(r, phi) * state.dpsi_dphi(r, phi)) * r,
        0.0,
        r_max,
        1e-9,
        1e-10,
    )?;

    // For real Psi: |(-i d/dphi - M) Psi|^2 = (d/dphi Psi)^2 + M^2 Psi^2.
    Ok(LMomentumReport {
        m,
        residual_norm: hbar * (dphi_sq + m * m * norm_sq).sqrt(),
        expectation: hbar * cross,
        psi_norm: norm_sq.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::m_squared_nu;
    use crate::model::{NoncentralParams, PhysConst};
    use crate::radial::hrs_energy_derived;

    fn zero_state() -> FullState {
        let spec = PotentialSpec::new_hrs(4.0, 1.0, NoncentralParams::zero(), PhysConst::default())
            .unwrap();
        let ang = m_squared_nu(&spec.barred(), 0).unwrap()[0];
        let sd = separation_data(&spec, ang.msq);
        let rad = hrs_energy_derived(&sd, 0, &spec.consts).unwrap();
        assemble(&spec, &ang, &rad).unwrap()
    }

    #[test]
    fn norm_is_unity() {
        let state = zero_state();
        let total = oracle::quad_tol(
            |r| full_circle_integral(|phi| state.psi(r, phi).powi(2)) * r,
            0.0,
            state.radial_wf.r_max,
            1e-10,
            1e-13,
        )
        .unwrap();
        assert!((total - 1.0).abs() < 1e-8, "{total}");
    }

    #[test]
    fn norm_separates_into_factors_times_four() {
        let state = zero_state();
        let u_sq = oracle::quad(
            |r| state.radial_wf.value(r).powi(2),
            0.0,
            state.radial_wf.r_max,
        )
        .unwrap();
        let phi_sq = oracle::quad(
            |p| state.angular_wf.value(p).powi(2),
            0.0,
            std::f64::consts::FRAC_PI_2,
        )
        .unwrap();
        let product = state.norm * state.norm * u_sq * 4.0 * phi_sq;
        assert!((product - 1.0).abs() < 1e-8, "{product}");
    }

    #[test]
    fn polar_and_cartesian_agree() {
        let state = zero_state();
        for &(r, phi) in &[(0.7, 0.4), (2.3, 1.9), (5.0, 4.4), (1.1, 3.3)] {
            let a = state.psi(r, phi);
            let b = state.psi_cartesian(r * phi.cos(), r * phi.sin());
            assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn vanishes_on_axes_and_origin() {
        let state = zero_state();
        assert_eq!(state.psi_cartesian(0.0, 0.0), 0.0);
        assert_eq!(state.psi_cartesian(1.3, 0.0), 0.0);
        assert_eq!(state.psi_cartesian(0.0, 2.2), 0.0);
        assert!(state.psi(1.0, 0.0).abs() < 1e-12);
    }

    #[test]
    fn hamiltonian_residual_small() {
        let state = zero_state();
        let res = hamiltonian_residual(&state, 60, 60).unwrap();
        assert!(res < 1e-7, "{res}");
    }

    #[test]
    fn rejects_mismatched_separation_constant() {
        let spec = PotentialSpec::new_hrs(4.0, 1.0, NoncentralParams::zero(), PhysConst::default())
            .unwrap();
        let ang = m_squared_nu(&spec.barred(), 0).unwrap()[0];
        let sd = separation_data(&spec, ang.msq + 1.0);
        let rad = hrs_energy_derived(&sd, 0, &spec.consts).unwrap();
        assert!(matches!(
            assemble(&spec, &ang, &rad),
            Err(Error::MismatchedMsq { .. })
        ));
    }

    #[test]
    fn angular_momentum_residual_scale() {
        // Phi ~ sin(2 phi), M = 2: d/dphi maps it onto the orthogonal
        // cos(2 phi), so the operator residual is hbar M sqrt(2) times the
        // norm while the expectation vanishes.
        let state = zero_state();
        let report = angular_momentum_check(&state).unwrap();
        assert!((report.m - 2.0).abs() < 1e-9);
        assert!((report.psi_norm - 1.0).abs() < 1e-8);
        let expected = state.spec.consts.hbar * report.m * 2.0_f64.sqrt();
        assert!(
            (report.residual_norm - expected).abs() < 1e-6 * expected,
            "{} vs {expected}",
            report.residual_norm
        );
        assert!(report.expectation.abs() < 1e-8, "{}", report.expectation);
    }

    #[test]
    fn grid_shapes_and_symmetry() {
        let state = zero_state();
        let gf = eval_polar_grid(&state, &[1.0, 2.0, 3.0], &[0.4, 1.1, 2.0]);
        assert_eq!(gf.values.len(), 9);
        assert_eq!(gf.meta.mode, GridMode::Polar);

        // Zero noncentral parameters are (B,C) and (D,F) exchange symmetric,
        // and the ground state is even under phi -> pi/2 - phi, so the
        // cartesian field obeys psi(x, y) = psi(y, x).
        let xs = [0.5, 1.0, 2.5];
        let gf = eval_cartesian_grid(&state, &xs, &xs);
        for i in 0..3 {
            for j in 0..3 {
                let a = gf.values[i * 3 + j];
                let b = gf.values[j * 3 + i];
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
