//! Generic Nikiforov-Uvarov machinery for hypergeometric-type equations
//! u'' + (tau_tilde / sigma) u' + (sigma_tilde / sigma^2) u = 0 with
//! deg(tau_tilde) <= 1 and deg(sigma), deg(sigma_tilde) <= 2.
//!
//! The square-completion constant k is found from the generic
//! discriminant-vanishing condition on
//! Q(t; k) = ((sigma' - tau_tilde)/2)^2 + k sigma - sigma_tilde, never from a
//! pre-factored template. The printed k/pi templates of the source
//! publication are kept alongside as comparison functions only.

use crate::error::{Error, Result};
use crate::poly::{Linear, Quadratic};
use crate::specfun;

/// One hypergeometric-type problem on an open interval.
#[derive(Debug, Clone, Copy)]
pub struct NUProblem {
    pub tau_tilde: Linear,
    pub sigma: Quadratic,
    pub sigma_tilde: Quadratic,
    pub domain: (f64, f64),
}

impl NUProblem {
    pub fn new(
        tau_tilde: Linear,
        sigma: Quadratic,
        sigma_tilde: Quadratic,
        domain: (f64, f64),
    ) -> Result<Self> {
        let (t0, t1) = domain;
        if !(t0.is_finite() && t1 > t0) {
            return Err(Error::InvalidParameter(format!(
                "domain must be an open interval, got ({t0}, {t1})"
            )));
        }
        // sigma must stay positive strictly inside the domain.
        let probe_hi = if t1.is_finite() { t1 } else { t0 + 1.0 };
        for i in 1..16 {
            let t = t0 + (probe_hi - t0) * f64::from(i) / 16.0;
            if sigma.eval(t) <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "sigma is not positive inside the domain (sigma({t}) = {})",
                    sigma.eval(t)
                )));
            }
        }
        Ok(NUProblem {
            tau_tilde,
            sigma,
            sigma_tilde,
            domain,
        })
    }

    /// (sigma' - tau_tilde) / 2, the affine part of pi.
    fn half_gap(&self) -> Linear {
        (self.sigma.deriv() - self.tau_tilde) * 0.5
    }

    /// Coefficients of Q(t; k) = half_gap^2 - sigma_tilde + k sigma as
    /// (k-free quadratic, sigma).
    fn q_parts(&self) -> (Quadratic, Quadratic) {
        (self.half_gap().squared() - self.sigma_tilde, self.sigma)
    }

    pub fn q_at(&self, k: f64) -> Quadratic {
        let (base, sigma) = self.q_parts();
        base + sigma * k
    }
}

/// Shape of an integrating factor obtained from a partial-fraction
/// integration against sigma.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FactorShape {
    /// sigma with two real roots t0 < t1: (t - t0)^e0 * (t1 - t)^e1.
    TwoEndpoint { e0: f64, e1: f64 },
    /// sigma linear with root t0: (t - t0)^e0 * exp(rate * t).
    EndpointExp { e0: f64, rate: f64 },
    /// sigma constant: exp(lin * t + quad * t^2 / 2).
    PureExp { lin: f64, quad: f64 },
}

/// Classical polynomial family identified from the weight function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyFamily {
    /// y_n(t) = P_n^(a,b)(x) with x mapping (t0, t1) onto (1, -1).
    Jacobi {
        a: f64,
        b: f64,
    },
    /// y_n(t) = L_n^(a)(scale * (t - t0)).
    Laguerre {
        a: f64,
        scale: f64,
    },
    Hermite,
}

/// One admitted (k, pi) combination with everything derived from it.
#[derive(Debug, Clone, Copy)]
pub struct NUBranch {
    pub k: f64,
    pub pi: Linear,
    pub tau: Linear,
    pub tau_prime: f64,
    pub lambda: f64,
    pub phi: FactorShape,
    pub rho: FactorShape,
}

impl NUBranch {
    /// Endpoint exponents of phi as a pair (left, right); the right slot is
    /// the exponential rate for linear sigma.
    pub fn phi_exponents(&self) -> (f64, f64) {
        match self.phi {
            FactorShape::TwoEndpoint { e0, e1 } => (e0, e1),
            FactorShape::EndpointExp { e0, rate } => (e0, rate),
            FactorShape::PureExp { lin, quad } => (lin, quad),
        }
    }

    pub fn rho_exponents(&self) -> (f64, f64) {
        match self.rho {
            FactorShape::TwoEndpoint { e0, e1 } => (e0, e1),
            FactorShape::EndpointExp { e0, rate } => (e0, rate),
            FactorShape::PureExp { lin, quad } => (lin, quad),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointRule {
    /// Exponent must be strictly positive (singular endpoint / Dirichlet).
    StrictlyPositive,
    /// Exponent must be nonnegative.
    NonNegative,
}

impl EndpointRule {
    fn accepts(self, e: f64) -> bool {
        match self {
            EndpointRule::StrictlyPositive => e > 1e-12,
            EndpointRule::NonNegative => e >= -1e-12,
        }
    }
}

/// Which integrating-factor exponents qualify a branch as physical.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissibilityPolicy {
    pub left: EndpointRule,
    pub right: EndpointRule,
}

impl AdmissibilityPolicy {
    /// Strictly positive exponents at both endpoints.
    pub fn dirichlet() -> Self {
        AdmissibilityPolicy {
            left: EndpointRule::StrictlyPositive,
            right: EndpointRule::StrictlyPositive,
        }
    }

    /// Strict where the endpoint is singular, nonnegative otherwise.
    pub fn natural(left_singular: bool, right_singular: bool) -> Self {
        let rule = |singular| {
            if singular {
                EndpointRule::StrictlyPositive
            } else {
                EndpointRule::NonNegative
            }
        };
        AdmissibilityPolicy {
            left: rule(left_singular),
            right: rule(right_singular),
        }
    }
}

/// All k making Q(t; k) a perfect square, ascending. An empty list means the
/// discriminant condition has no real roots.
pub fn k_candidates(p: &NUProblem) -> Result<Vec<f64>> {
    let (base, sigma) = p.q_parts();
    // disc(k) = B(k)^2 - 4 A(k) C(k), everything affine in k.
    let (a0, a1) = (base.c2, sigma.c2);
    let (b0, b1) = (base.c1, sigma.c1);
    let (c0, c1) = (base.c0, sigma.c0);
    let qa = b1 * b1 - 4.0 * a1 * c1;
    let qb = 2.0 * b0 * b1 - 4.0 * (a0 * c1 + a1 * c0);
    let qc = b0 * b0 - 4.0 * a0 * c0;

    let scale = qa.abs().max(qb.abs()).max(qc.abs()).max(1e-300);
    let tol = 1e-12 * scale;
    let mut ks = if qa.abs() <= tol {
        if qb.abs() <= tol {
            if qc.abs() <= tol {
                // Q is a perfect square for every k; out of scope.
                return Err(Error::InvalidParameter(
                    "degenerate problem: square condition holds identically".into(),
                ));
            }
            Vec::new()
        } else {
            vec![-qc / qb]
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < -1e-10 * scale * scale {
            Vec::new()
        } else {
            let sq = disc.max(0.0).sqrt();
            let q = -0.5 * (qb + qb.signum() * sq);
            if q == 0.0 {
                vec![0.0]
            } else {
                vec![q / qa, qc / q]
            }
        }
    };
    ks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ks.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + a.abs()));
    Ok(ks)
}

/// Reduce Q(t; k) to its exact linear square root, leading coefficient
/// canonically nonnegative. The construction anchors on the larger of the
/// t^2 and constant coefficients; the smaller one is reconstructed from the
/// cross term, which keeps near-degenerate squares (tiny leading
/// coefficient) fully accurate.
fn sqrt_of_square(q: &Quadratic) -> Linear {
    let scale = q.scale().max(1e-300);
    let a = q.c2.max(0.0);
    let c = q.c0.max(0.0);
    if a.max(c) <= 1e-13 * scale {
        return Linear::ZERO;
    }
    if a >= c {
        let p1 = a.sqrt();
        Linear::new(q.c1 / (2.0 * p1), p1)
    } else {
        let p0 = c.sqrt() * q.c1.signum();
        let p1 = q.c1.abs() / (2.0 * c.sqrt());
        if p1 == 0.0 {
            Linear::new(c.sqrt(), 0.0)
        } else {
            Linear::new(p0, p1)
        }
    }
}

fn factor_shapes(p: &NUProblem, pi: Linear, tau: Linear) -> (FactorShape, FactorShape) {
    let sigma = p.sigma;
    match sigma.degree() {
        2 => {
            let roots = sigma.real_roots();
            // A sigma that is positive on the domain but has no real roots
            // would need complex endpoints; all in-scope problems factor.
            let (t0, t1) = (roots[0], roots[1]);
            let sp = sigma.deriv();
            let g = tau - sp;
            let phi = FactorShape::TwoEndpoint {
                e0: pi.eval(t0) / sp.eval(t0),
                e1: pi.eval(t1) / sp.eval(t1),
            };
            let rho = FactorShape::TwoEndpoint {
                e0: g.eval(t0) / sp.eval(t0),
                e1: g.eval(t1) / sp.eval(t1),
            };
            (phi, rho)
        }
        1 => {
            let t0 = -sigma.c0 / sigma.c1;
            let s1 = sigma.c1;
            let phi = FactorShape::EndpointExp {
                e0: pi.eval(t0) / s1,
                rate: pi.c1 / s1,
            };
            let rho = FactorShape::EndpointExp {
                e0: (tau.eval(t0) - s1) / s1,
                rate: tau.c1 / s1,
            };
            (phi, rho)
        }
        _ => {
            let s0 = sigma.c0;
            let phi = FactorShape::PureExp {
                lin: pi.c0 / s0,
                quad: pi.c1 / s0,
            };
            let rho = FactorShape::PureExp {
                lin: tau.c0 / s0,
                quad: tau.c1 / s0,
            };
            (phi, rho)
        }
    }
}

/// Both sign branches of pi = half_gap +/- sqrt(Q) for one k, minus branch
/// first. Coincident branches (sqrt(Q) = 0) collapse to one.
pub fn pi_branches(p: &NUProblem, k: f64) -> Vec<NUBranch> {
    let h = p.half_gap();
    let q = p.q_at(k);
    let root = sqrt_of_square(&q);
    let mut pis = vec![h - root, h + root];
    if root.scale() <= 1e-13 * (1.0 + h.scale()) {
        pis.truncate(1);
    }
    pis.into_iter()
        .map(|pi| {
            let tau = p.tau_tilde + pi * 2.0;
            let (phi, rho) = factor_shapes(p, pi, tau);
            NUBranch {
                k,
                pi,
                tau,
                tau_prime: tau.c1,
                lambda: k + pi.c1,
                phi,
                rho,
            }
        })
        .collect()
}

/// tau' < 0 plus the endpoint-exponent rules of the policy.
pub fn admissible(branch: &NUBranch, policy: &AdmissibilityPolicy) -> bool {
    if branch.tau_prime >= 0.0 {
        return false;
    }
    match branch.phi {
        FactorShape::TwoEndpoint { e0, e1 } => policy.left.accepts(e0) && policy.right.accepts(e1),
        FactorShape::EndpointExp { e0, rate } => policy.left.accepts(e0) && rate < 0.0,
        FactorShape::PureExp { quad, .. } => quad < 0.0,
    }
}

/// lambda_n = -n tau' - n(n-1)/2 sigma''.
pub fn lambda_n(p: &NUProblem, branch: &NUBranch, n: u32) -> f64 {
    let n = f64::from(n);
    -n * branch.tau_prime - 0.5 * n * (n - 1.0) * p.sigma.second()
}

/// Integrating-factor shapes and the polynomial family of the Rodrigues
/// solutions for an admitted branch.
pub fn phi_rho_factors(
    p: &NUProblem,
    branch: &NUBranch,
) -> Result<(FactorShape, FactorShape, PolyFamily)> {
    let family = match (p.sigma.degree(), branch.rho) {
        (2, FactorShape::TwoEndpoint { e0, e1 }) => {
            if e0 <= -1.0 {
                return Err(Error::NonIntegrableWeight(e0));
            }
            if e1 <= -1.0 {
                return Err(Error::NonIntegrableWeight(e1));
            }
            PolyFamily::Jacobi { a: e0, b: e1 }
        }
        (1, FactorShape::EndpointExp { e0, rate }) => {
            if e0 <= -1.0 {
                return Err(Error::NonIntegrableWeight(e0));
            }
            if rate >= 0.0 {
                return Err(Error::NonNormalizable(format!(
                    "weight grows exponentially (rate {rate})"
                )));
            }
            PolyFamily::Laguerre {
                a: e0,
                scale: -rate,
            }
        }
        _ => PolyFamily::Hermite,
    };
    Ok((branch.phi, branch.rho, family))
}

/// One quantized solution of the spectral problem.
#[derive(Debug, Clone, Copy)]
pub struct NUEigen {
    pub n: u32,
    pub spectral_value: f64,
    pub branch: NUBranch,
    pub family: PolyFamily,
}

/// Bracketing window for [`solve_spectral`].
#[derive(Debug, Clone, Copy)]
pub struct SpectralScan {
    pub s_min: f64,
    pub s_max: f64,
    pub panels: usize,
}

/// Identity of one branch across spectral-parameter values: index into the
/// sorted k list plus the sign choice.
type BranchId = (usize, usize);

fn branch_at(
    problem_of: &impl Fn(f64) -> Result<NUProblem>,
    id: BranchId,
    s: f64,
) -> Result<Option<(NUProblem, NUBranch)>> {
    let p = problem_of(s)?;
    let ks = k_candidates(&p)?;
    let Some(&k) = ks.get(id.0) else {
        return Ok(None);
    };
    let branches = pi_branches(&p, k);
    Ok(branches.get(id.1).map(|b| (p, *b)))
}

/// Roots of lambda(s) = lambda_n(s) over every admissible branch of the
/// s-parameterized problem family, deduplicated across branches.
pub fn solve_spectral(
    problem_of: impl Fn(f64) -> Result<NUProblem>,
    n: u32,
    policy: &AdmissibilityPolicy,
    scan: &SpectralScan,
) -> Result<Vec<NUEigen>> {
    let gap = |id: BranchId, s: f64| -> Result<Option<f64>> {
        Ok(branch_at(&problem_of, id, s)?
            .and_then(|(p, b)| admissible(&b, policy).then(|| b.lambda - lambda_n(&p, &b, n))))
    };

    let mut roots: Vec<f64> = Vec::new();
    let mut saw_admissible = false;
    let panels = scan.panels.max(1);
    for id in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
        let mut prev: Option<(f64, f64)> = None;
        for j in 0..=panels {
            let s = scan.s_min + (scan.s_max - scan.s_min) * j as f64 / panels as f64;
            let g = gap(id, s)?;
            if g.is_some() {
                saw_admissible = true;
            }
            if let (Some((s_prev, g_prev)), Some(g_now)) = (prev, g) {
                if g_prev == 0.0 {
                    roots.push(s_prev);
                } else if g_prev * g_now <= 0.0 {
                    // Bisect; the gap is continuous and monotone per branch.
                    let (mut lo, mut hi) = (s_prev, s);
                    let (mut glo, _) = (g_prev, g_now);
                    for _ in 0..200 {
                        if (hi - lo) <= 1e-13 * (1.0 + lo.abs() + hi.abs()) {
                            break;
                        }
                        let mid = 0.5 * (lo + hi);
                        match gap(id, mid)? {
                            Some(gm) if gm * glo > 0.0 => {
                                lo = mid;
                                glo = gm;
                            }
                            Some(_) => hi = mid,
                            None => break,
                        }
                    }
                    roots.push(0.5 * (lo + hi));
                }
            }
            prev = g.map(|g| (s, g));
        }
    }

    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + a.abs()));

    let mut out = Vec::with_capacity(roots.len());
    for s in roots {
        // Rebuild the admitted branch at the root.
        for id in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
            if let Some((p, b)) = branch_at(&problem_of, id, s)? {
                if admissible(&b, policy)
                    && (b.lambda - lambda_n(&p, &b, n)).abs() <= 1e-8 * (1.0 + b.lambda.abs())
                {
                    let (_, _, family) = phi_rho_factors(&p, &b)?;
                    out.push(NUEigen {
                        n,
                        spectral_value: s,
                        branch: b,
                        family,
                    });
                    break;
                }
            }
        }
    }
    if out.is_empty() {
        return Err(if saw_admissible {
            Error::NoSpectralRoot {
                lo: scan.s_min,
                hi: scan.s_max,
                n,
            }
        } else {
            Error::NoAdmissibleBranch
        });
    }
    Ok(out)
}

/// Pointwise residual of u = phi * y_n in the hypergeometric-type equation,
/// scaled by the sup of |u| over the probe points.
pub fn hypergeometric_residual(p: &NUProblem, eig: &NUEigen, ts: &[f64]) -> Result<f64> {
    let mut max_res = 0.0_f64;
    let mut max_u = 0.0_f64;
    for &t in ts {
        let (u, du, ddu) = eval_solution_with_derivs(p, eig, t)?;
        let sigma = p.sigma.eval(t);
        let res =
            ddu + p.tau_tilde.eval(t) / sigma * du + p.sigma_tilde.eval(t) / (sigma * sigma) * u;
        max_res = max_res.max(res.abs());
        max_u = max_u.max(u.abs());
    }
    if max_u == 0.0 {
        return Err(Error::NonNormalizable(
            "solution vanishes on all probe points".into(),
        ));
    }
    Ok(max_res / max_u)
}

/// Value and first two derivatives of phi(t) * y_n(t).
pub fn eval_solution_with_derivs(p: &NUProblem, eig: &NUEigen, t: f64) -> Result<(f64, f64, f64)> {
    let (phi, dphi, ddphi) = eval_factor_with_derivs(&eig.branch.phi, &p.sigma, t);
    let (y, dy, ddy) = eval_family_with_derivs(&eig.family, &p.sigma, eig.n, t)?;
    Ok((
        phi * y,
        dphi * y + phi * dy,
        ddphi * y + 2.0 * dphi * dy + phi * ddy,
    ))
}

fn eval_factor_with_derivs(shape: &FactorShape, sigma: &Quadratic, t: f64) -> (f64, f64, f64) {
    match *shape {
        FactorShape::TwoEndpoint { e0, e1 } => {
            let roots = sigma.real_roots();
            let (t0, t1) = (roots[0], roots[1]);
            let (a, b) = (t - t0, t1 - t);
            let v = a.powf(e0) * b.powf(e1);
            // logarithmic derivative: e0/a - e1/b
            let l1 = e0 / a - e1 / b;
            let l2 = -e0 / (a * a) - e1 / (b * b);
            (v, v * l1, v * (l1 * l1 + l2))
        }
        FactorShape::EndpointExp { e0, rate } => {
            let t0 = -sigma.c0 / sigma.c1;
            let a = t - t0;
            let v = a.powf(e0) * (rate * t).exp();
            let l1 = e0 / a + rate;
            let l2 = -e0 / (a * a);
            (v, v * l1, v * (l1 * l1 + l2))
        }
        FactorShape::PureExp { lin, quad } => {
            let v = (lin * t + 0.5 * quad * t * t).exp();
            let l1 = lin + quad * t;
            (v, v * l1, v * (l1 * l1 + quad))
        }
    }
}

fn eval_family_with_derivs(
    family: &PolyFamily,
    sigma: &Quadratic,
    n: u32,
    t: f64,
) -> Result<(f64, f64, f64)> {
    match *family {
        PolyFamily::Jacobi { a, b } => {
            let roots = sigma.real_roots();
            let (t0, t1) = (roots[0], roots[1]);
            // Map t0 -> +1, t1 -> -1 so the left weight exponent is `a`.
            let dx = -2.0 / (t1 - t0);
            let x = 1.0 + dx * (t - t0);
            let y = specfun::jacobi(n, a, b, x)?;
            let dy = specfun::jacobi_deriv(n, a, b, x)? * dx;
            let ddy = specfun::jacobi_deriv2(n, a, b, x)? * dx * dx;
            Ok((y, dy, ddy))
        }
        PolyFamily::Laguerre { a, scale } => {
            let t0 = -sigma.c0 / sigma.c1;
            let z = scale * (t - t0);
            let y = specfun::laguerre(n, a, z)?;
            let dy = specfun::laguerre_deriv(n, a, z)? * scale;
            let ddy = specfun::laguerre_deriv2(n, a, z)? * scale * scale;
            Ok((y, dy, ddy))
        }
        PolyFamily::Hermite => Err(Error::InvalidParameter(
            "Hermite-family evaluation is not needed by the in-scope problems".into(),
        )),
    }
}

// --- printed templates, kept only for comparison reporting ---------------

/// The printed quadratic for k (monic form): k^2 + qb k + qc = 0.
pub fn printed_k_quadratic(alpha: f64, beta: f64, gamma: f64) -> (f64, f64) {
    (
        -beta - 2.0 * gamma - 0.5,
        0.25 * (beta * beta + 2.0 * beta + alpha + 4.0 * gamma * (1.0 - alpha)),
    )
}

/// The printed double roots k_{1,2}; `None` when the printed radicand is
/// negative.
pub fn printed_k_roots(alpha: f64, beta: f64, gamma: f64) -> Option<(f64, f64)> {
    let radicand = (1.0 - 4.0 * gamma) * (1.0 - 4.0 * (gamma + alpha + beta));
    if radicand < 0.0 {
        return None;
    }
    let center = gamma + 0.5 * beta + 0.25;
    let spread = 0.25 * radicand.sqrt();
    Some((center - spread, center + spread))
}

/// The four printed pi templates, as [k1-minus, k1-plus, k2-minus, k2-plus].
/// These carry the publication's 1/4 prefactor and root pairing verbatim.
pub fn printed_pi_templates(alpha: f64, beta: f64, gamma: f64) -> Option<[Linear; 4]> {
    let u2 = 1.0 - 4.0 * gamma;
    let v2 = 1.0 - 4.0 * (gamma + alpha + beta);
    if u2 < 0.0 || v2 < 0.0 {
        return None;
    }
    let (u, v) = (u2.sqrt(), v2.sqrt());
    let half_gap = Linear::new(0.5, -1.0);
    let diff = Linear::new(-u, u - v) * 0.25;
    let sum = Linear::new(-u, u + v) * 0.25;
    Some([
        half_gap - diff,
        half_gap + diff,
        half_gap - sum,
        half_gap + sum,
    ])
}
