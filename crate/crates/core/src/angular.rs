//! The separated angle equation Phi'' + (M^2 - W(phi)) Phi = 0 on (0, pi/2),
//! mapped to hypergeometric type by t = sin^2(phi). Produces the M^2 spectrum
//! three ways (printed closed form, NU engine, finite-difference oracle) and
//! builds normalized angular wavefunctions.

use crate::error::{Error, Result};
use crate::model::{angular_barrier, BarredParams};
use crate::nu::{
    self, AdmissibilityPolicy, FactorShape, NUBranch, NUProblem, PolyFamily, SpectralScan,
};
use crate::oracle;
use crate::poly::{Linear, Quadratic};
use crate::specfun;

/// Coefficients of the transformed equation
/// Phi_tt + (1-2t)/(2t(1-t)) Phi_t + (alpha t^2 + beta t + gamma)/(2t(1-t))^2 Phi = 0
/// together with the derived radicand quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularCoeffs {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub delta: f64,
}

impl AngularCoeffs {
    fn derive(alpha: f64, beta: f64, gamma: f64) -> Self {
        let beta1 = -4.0 * gamma;
        let beta2 = -4.0 * (gamma + alpha + beta);
        let mu1 = (1.0 + beta1).sqrt();
        let mu2 = (1.0 + beta2).sqrt();
        let delta = 1.0 + (mu1 + mu2) / 4.0;
        AngularCoeffs {
            alpha,
            beta,
            gamma,
            beta1,
            beta2,
            mu1,
            mu2,
            delta,
        }
    }
}

/// Coefficients from the exact polynomial expansion of the t = sin^2(phi)
/// substitution. These drive the solver.
pub fn transform_coeffs(bp: &BarredParams, msq: f64) -> AngularCoeffs {
    AngularCoeffs::derive(
        -(msq + bp.bbar + bp.cbar),
        msq + bp.dbar + 2.0 * bp.bbar - bp.fbar,
        -(bp.bbar + bp.dbar + bp.gbar),
    )
}

/// Coefficients exactly as printed in the source publication; they differ
/// from [`transform_coeffs`] in the Bbar and Dbar terms and feed only the
/// discrepancy report.
pub fn paper_coeffs(bp: &BarredParams, msq: f64) -> AngularCoeffs {
    AngularCoeffs::derive(
        -msq + bp.bbar - bp.cbar,
        msq - bp.dbar - bp.fbar,
        -(bp.bbar + bp.dbar + bp.gbar),
    )
}

/// The angle equation as a hypergeometric-type problem on t in (0, 1).
pub fn nu_problem(bp: &BarredParams, msq: f64) -> Result<NUProblem> {
    let c = transform_coeffs(bp, msq);
    NUProblem::new(
        Linear::new(1.0, -2.0),
        Quadratic::new(0.0, 2.0, -2.0),
        Quadratic::new(c.gamma, c.beta, c.alpha),
        (0.0, 1.0),
    )
}

/// Verbatim evaluation of the printed angular-momentum closed form.
pub fn m_squared_paper(bp: &BarredParams, n0: u32) -> Result<f64> {
    let rad1 = 1.0 + 4.0 * (bp.bbar + bp.dbar + bp.gbar);
    let rad2 = 1.0 + 4.0 * (bp.cbar + bp.fbar + bp.gbar);
    if rad1 < 0.0 || rad2 < 0.0 {
        return Err(Error::NegativeRadicand(rad1.min(rad2)));
    }
    let (u, v) = (rad1.sqrt(), rad2.sqrt());
    let odd = 2.0 * f64::from(n0) + 1.0;
    Ok(bp.dbar
        + bp.fbar
        + 2.0 * (bp.bbar + bp.gbar)
        + 0.5 * (-1.0 + u * v)
        + odd * (odd + 0.5 * (u + v))
        + 1.0)
}

/// How an [`AngularSolution`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularMethod {
    Paper,
    Nu,
    Oracle,
}

/// One quantized angular state.
#[derive(Debug, Clone, Copy)]
pub struct AngularSolution {
    pub n0: u32,
    pub msq: f64,
    pub method: AngularMethod,
    pub branch: Option<NUBranch>,
    pub family: Option<PolyFamily>,
    pub norm_const: Option<f64>,
}

impl AngularSolution {
    pub fn from_oracle(n0: u32, msq: f64) -> Self {
        AngularSolution {
            n0,
            msq,
            method: AngularMethod::Oracle,
            branch: None,
            family: None,
            norm_const: None,
        }
    }

    pub fn from_paper(n0: u32, msq: f64) -> Self {
        AngularSolution {
            n0,
            msq,
            method: AngularMethod::Paper,
            branch: None,
            family: None,
            norm_const: None,
        }
    }
}

/// Bracketing window for the M^2 root search: eigenvalues grow like
/// 4(n+1)^2 plus barrier shifts, so [0, (4n + 10 + sum of strengths)^2]
/// with 64 panels always brackets the target.
fn msq_scan(bp: &BarredParams, n0: u32) -> SpectralScan {
    let top = 4.0 * f64::from(n0) + 10.0 + bp.sum();
    SpectralScan {
        s_min: 0.0,
        s_max: top * top,
        panels: 64,
    }
}

/// M^2 spectrum from the NU engine under the Dirichlet policy. The returned
/// solutions carry their branch data and quadrature normalization.
pub fn m_squared_nu(bp: &BarredParams, n0: u32) -> Result<Vec<AngularSolution>> {
    let eigens = nu::solve_spectral(
        |s| nu_problem(bp, s),
        n0,
        &AdmissibilityPolicy::dirichlet(),
        &msq_scan(bp, n0),
    )?;
    let mut out = Vec::with_capacity(eigens.len());
    for eig in eigens {
        let mut sol = AngularSolution {
            n0,
            msq: eig.spectral_value,
            method: AngularMethod::Nu,
            branch: Some(eig.branch),
            family: Some(eig.family),
            norm_const: None,
        };
        let wf = angular_wavefunction(&sol)?;
        sol.norm_const = Some(wf.norm);
        out.push(sol);
    }
    Ok(out)
}

/// Normalized angular factor Phi(phi) = N t^e0 (1-t)^e1 P_n^(a,b)(1-2t),
/// t = sin^2(phi), with unit L^2 norm on (0, pi/2).
#[derive(Debug, Clone, Copy)]
pub struct AngularWavefunction {
    pub n0: u32,
    pub msq: f64,
    pub e0: f64,
    pub e1: f64,
    pub jacobi_a: f64,
    pub jacobi_b: f64,
    pub norm: f64,
}

impl AngularWavefunction {
    /// Phi as a function of the exact pair (t, 1 - t). Carrying both halves
    /// avoids the precision loss of forming 1 - sin^2(phi) near the axes.
    pub fn value_t_pair(&self, t: f64, omt: f64) -> f64 {
        let envelope = t.max(0.0).powf(self.e0) * omt.max(0.0).powf(self.e1);
        self.norm * envelope * specfun::jacobi_raw(self.n0, self.jacobi_a, self.jacobi_b, omt - t)
    }

    /// Phi as a function of t = sin^2(phi); valid on [0, 1].
    pub fn value_t(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        self.value_t_pair(t, 1.0 - t)
    }

    pub fn value(&self, phi: f64) -> f64 {
        let (s, c) = phi.sin_cos();
        self.value_t_pair(s * s, c * c)
    }

    /// Value, d/dphi and d^2/dphi^2, for interior phi (not a multiple of
    /// pi/2).
    pub fn with_derivs(&self, phi: f64) -> (f64, f64, f64) {
        let (s, c) = phi.sin_cos();
        let t = s * s;
        let omt = c * c;
        let (f, df, ddf) = self.t_derivs(t, omt);
        let tp = 2.0 * s * c; // sin(2 phi)
        let tpp = 2.0 * (omt - t); // 2 cos(2 phi)
        (f, df * tp, ddf * tp * tp + df * tpp)
    }

    fn t_derivs(&self, t: f64, omt: f64) -> (f64, f64, f64) {
        let (e0, e1) = (self.e0, self.e1);
        let w = t.powf(e0) * omt.powf(e1);
        let l1 = e0 / t - e1 / omt;
        let l2 = -e0 / (t * t) - e1 / (omt * omt);
        let x = omt - t;
        let y = specfun::jacobi_raw(self.n0, self.jacobi_a, self.jacobi_b, x);
        let dy = -2.0 * specfun::jacobi_deriv_raw(self.n0, self.jacobi_a, self.jacobi_b, x);
        let ddy = 4.0 * specfun::jacobi_deriv2_raw(self.n0, self.jacobi_a, self.jacobi_b, x);
        let f = w * y;
        let df = w * (l1 * y + dy);
        let ddf = w * ((l1 * l1 + l2) * y + 2.0 * l1 * dy + ddy);
        (self.norm * f, self.norm * df, self.norm * ddf)
    }
}

/// Build the normalized wavefunction of an engine-derived solution.
pub fn angular_wavefunction(sol: &AngularSolution) -> Result<AngularWavefunction> {
    if sol.method != AngularMethod::Nu {
        return Err(Error::InvalidParameter(
            "wavefunctions are constructed from engine-derived branches only".into(),
        ));
    }
    let branch = sol
        .branch
        .ok_or_else(|| Error::InvalidParameter("solution carries no branch data".into()))?;
    let FactorShape::TwoEndpoint { e0, e1 } = branch.phi else {
        return Err(Error::InvalidParameter(
            "angular branch is not of Jacobi shape".into(),
        ));
    };
    let Some(PolyFamily::Jacobi { a, b }) = sol.family else {
        return Err(Error::InvalidParameter(
            "angular family is not Jacobi".into(),
        ));
    };
    if 4.0 * e0 <= -1.0 || 4.0 * e1 <= -1.0 {
        return Err(Error::NonNormalizable(format!(
            "angular exponents ({e0}, {e1}) give a divergent norm"
        )));
    }
    let mut wf = AngularWavefunction {
        n0: sol.n0,
        msq: sol.msq,
        e0,
        e1,
        jacobi_a: a,
        jacobi_b: b,
        norm: 1.0,
    };
    let raw = oracle::quad(
        |phi| wf.value(phi).powi(2),
        0.0,
        std::f64::consts::FRAC_PI_2,
    )?;
    if !(raw.is_finite() && raw > 0.0) {
        return Err(Error::NonNormalizable(format!("norm integral {raw}")));
    }
    wf.norm = raw.sqrt().recip();
    Ok(wf)
}

/// Max scaled residual of the angle equation over 500 interior points.
pub fn angular_residual(bp: &BarredParams, msq: f64, wf: &AngularWavefunction) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut max_res = 0.0_f64;
    let mut max_val = 0.0_f64;
    for i in 1..=500 {
        let phi = half_pi * f64::from(i) / 501.0;
        let (v, _, ddv) = wf.with_derivs(phi);
        let res = ddv + (msq - angular_barrier(bp, phi)) * v;
        max_res = max_res.max(res.abs());
        max_val = max_val.max(v.abs());
    }
    max_res / max_val.max(f64::MIN_POSITIVE)
}

/// Oracle M^2 values wrapped as [`AngularSolution`]s.
pub fn m_squared_oracle(bp: &BarredParams, count: usize, n: usize) -> Result<Vec<AngularSolution>> {
    Ok(oracle::angular_oracle(bp, count, n)?
        .into_iter()
        .enumerate()
        .map(|(n0, msq)| AngularSolution::from_oracle(n0 as u32, msq))
        .collect())
}
