//! Independent numerical ground truth: second-order finite differences on the
//! separated ODEs, symmetric-tridiagonal eigenvalues by Sturm-sequence
//! bisection, Richardson extrapolation of the h^2 error, and adaptive
//! Gauss-Kronrod quadrature.
//!
//! Nothing here calls the NU engine or the closed-form solvers; the oracle
//! only shares the parameter types with them.

use crate::error::{Error, Result};
use crate::model::{
    angular_barrier, radial_effective_potential, BarredParams, RadialSystem, SeparationData,
};

/// Uniform grid of `n` strictly interior nodes on the open interval (a, b).
#[derive(Debug, Clone, Copy)]
pub struct FDGrid {
    pub a: f64,
    pub b: f64,
    pub n: usize,
}

impl FDGrid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(Error::InvalidParameter(format!(
                "grid interval must satisfy a < b, got ({a}, {b})"
            )));
        }
        if n < 64 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 64 interior points, got {n}"
            )));
        }
        Ok(FDGrid { a, b, n })
    }

    pub fn h(&self) -> f64 {
        (self.b - self.a) / (self.n as f64 + 1.0)
    }

    pub fn node(&self, i: usize) -> f64 {
        self.a + (i as f64 + 1.0) * self.h()
    }
}

/// Symmetric tridiagonal operator: the Dirichlet discretization of
/// -d^2/dx^2 + W(x).
#[derive(Debug, Clone)]
pub struct TridiagonalOp {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagonalOp {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                offdiag.len()
            )));
        }
        Ok(TridiagonalOp { diag, offdiag })
    }

    pub fn discretize(grid: &FDGrid, w: impl Fn(f64) -> f64) -> Self {
        let h2 = grid.h() * grid.h();
        let diag = (0..grid.n).map(|i| 2.0 / h2 + w(grid.node(i))).collect();
        let offdiag = vec![-1.0 / h2; grid.n - 1];
        TridiagonalOp { diag, offdiag }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda`, by counting negative
    /// pivots of the LDL^T factorization of T - lambda I.
    pub fn sturm_count(&self, lambda: f64) -> usize {
        const PIVOT_GUARD: f64 = 1e-300;
        let mut count = 0;
        let mut q = self.diag[0] - lambda;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let q_safe = if q.abs() < PIVOT_GUARD {
                if q >= 0.0 {
                    PIVOT_GUARD
                } else {
                    -PIVOT_GUARD
                }
            } else {
                q
            };
            let e = self.offdiag[i - 1];
            q = (self.diag[i] - lambda) - e * e / q_safe;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::MAX;
        let mut hi = f64::MIN;
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                0.0
            };
            let right = if i < n - 1 {
                self.offdiag[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo - 1.0, hi + 1.0)
    }

    /// The `count` smallest eigenvalues, ascending, each bisected essentially
    /// to machine precision at its own scale.
    pub fn eigen_lowest(&self, count: usize) -> Result<Vec<f64>> {
        let n = self.len();
        if count > n / 4 {
            return Err(Error::EigenCountTooLarge { count, n });
        }
        if n == 1 {
            return Ok(vec![self.diag[0]]);
        }
        let (lo, hi) = self.gershgorin();
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let mut a = lo;
            let mut b = hi;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if (b - a) < f64::EPSILON * (a.abs() + b.abs()) + 1e-300 {
                    break;
                }
                if self.sturm_count(mid) <= k {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            out.push(0.5 * (a + b));
        }
        Ok(out)
    }

    /// One inverse-iteration sweep at the given shift; returns the normalized
    /// eigenvector estimate. Used for decay checks, not for eigenvalues.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        let mut v = vec![1.0; n];
        for _ in 0..2 {
            v = self.solve_shifted(lambda, &v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !norm.is_finite() || norm == 0.0 {
                // Shift sits exactly on the eigenvalue; nudge and retry once.
                v = self.solve_shifted(lambda * (1.0 + 1e-13) + 1e-290, &vec![1.0; n]);
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                for x in &mut v {
                    *x /= norm;
                }
                break;
            }
            for x in &mut v {
                *x /= norm;
            }
        }
        v
    }

    /// Thomas solve of (T - lambda I) x = rhs with pivot guarding.
    fn solve_shifted(&self, lambda: f64, rhs: &[f64]) -> Vec<f64> {
        const GUARD: f64 = 1e-290;
        let n = self.len();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut denom = self.diag[0] - lambda;
        if denom.abs() < GUARD {
            denom = GUARD;
        }
        if n > 1 {
            c[0] = self.offdiag[0] / denom;
        }
        d[0] = rhs[0] / denom;
        for i in 1..n {
            let e = self.offdiag[i - 1];
            let mut m = self.diag[i] - lambda - e * c[i - 1];
            if m.abs() < GUARD {
                m = GUARD;
            }
            if i < n - 1 {
                c[i] = self.offdiag[i] / m;
            }
            d[i] = (rhs[i] - e * d[i - 1]) / m;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = d[i] - c[i] * x[i + 1];
        }
        x
    }
}

/// Smallest eigenvalues via Sturm bisection; alias over [`TridiagonalOp`].
pub fn eigen_lowest(op: &TridiagonalOp, count: usize) -> Result<Vec<f64>> {
    op.eigen_lowest(count)
}

fn richardson(coarse: &[f64], fine: &[f64]) -> Vec<f64> {
    coarse
        .iter()
        .zip(fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect()
}

/// Lowest M^2 eigenvalues of the angle equation on (0, pi/2) with Dirichlet
/// conditions, Richardson-extrapolated from the n and 2n grids.
pub fn angular_oracle(bp: &BarredParams, count: usize, n: usize) -> Result<Vec<f64>> {
    if count > 10 {
        return Err(Error::EigenCountTooLarge { count, n });
    }
    let half_pi = std::f64::consts::FRAC_PI_2;
    let w = |phi: f64| angular_barrier(bp, phi);
    let coarse =
        TridiagonalOp::discretize(&FDGrid::new(0.0, half_pi, n)?, w).eigen_lowest(count)?;
    let fine =
        TridiagonalOp::discretize(&FDGrid::new(0.0, half_pi, 2 * n)?, w).eigen_lowest(count)?;
    Ok(richardson(&coarse, &fine))
}

/// Lowest scaled radial eigenvalues Etilde on (0, r_max), Dirichlet at both
/// ends, Richardson-extrapolated; fails if the highest requested state has
/// not decayed at the box edge.
pub fn radial_oracle(
    system: RadialSystem,
    sd: &SeparationData,
    count: usize,
    n: usize,
    r_max: f64,
) -> Result<Vec<f64>> {
    if r_max <= 0.0 || !r_max.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "r_max must be positive, got {r_max}"
        )));
    }
    let w = |r: f64| radial_effective_potential(system, sd, r);
    let coarse = TridiagonalOp::discretize(&FDGrid::new(0.0, r_max, n)?, w).eigen_lowest(count)?;
    let fine_op = TridiagonalOp::discretize(&FDGrid::new(0.0, r_max, 2 * n)?, w);
    let fine = fine_op.eigen_lowest(count)?;

    let v = fine_op.eigenvector(fine[count - 1]);
    let peak = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let tail = v.last().map(|x| x.abs()).unwrap_or(0.0) / peak;
    if tail > 1e-8 {
        return Err(Error::TailNotDecayed { tail, r_max });
    }
    Ok(richardson(&coarse, &fine))
}

/// Number of box states with Etilde below `threshold` (single grid, no decay
/// requirement). Used to confirm the absence of bound states.
pub fn radial_count_below(
    system: RadialSystem,
    sd: &SeparationData,
    n: usize,
    r_max: f64,
    threshold: f64,
) -> Result<usize> {
    let w = |r: f64| radial_effective_potential(system, sd, r);
    let op = TridiagonalOp::discretize(&FDGrid::new(0.0, r_max, n)?, w);
    Ok(op.sturm_count(threshold))
}

// --- adaptive Gauss-Kronrod quadrature ---------------------------------

/// 15-point Kronrod abscissae on [0, 1] side (symmetric), with the embedded
/// 7-point Gauss rule on the odd-index nodes.
#[allow(clippy::excessive_precision, clippy::inconsistent_digit_grouping)]
const GK_NODES: [f64; 8] = [
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
const GK_WEIGHTS_K: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
#[allow(clippy::excessive_precision)]
const GK_WEIGHTS_G: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut ik = 0.0;
    let mut ig = 0.0;
    for (j, &x) in GK_NODES.iter().enumerate() {
        let s = if x == 0.0 {
            f(mid)
        } else {
            f(mid + half * x) + f(mid - half * x)
        };
        ik += GK_WEIGHTS_K[j] * s;
        // Odd Kronrod indices (including the center) carry the embedded
        // 7-point Gauss rule.
        if j % 2 == 1 {
            ig += GK_WEIGHTS_G[j / 2] * s;
        }
    }
    (ik * half, ((ik - ig) * half).abs())
}

/// Adaptive quadrature of `f` on [a, b] to relative accuracy `rel` (with an
/// absolute floor `abs_floor`). Endpoint algebraic singularities x^p with
/// p > -1 are handled by subdivision; the panels never evaluate endpoints.
pub fn quad_tol(f: impl Fn(f64) -> f64, a: f64, b: f64, rel: f64, abs_floor: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (rough, _) = gk15(&f, a, b);
    let target = (rel * rough.abs()).max(abs_floor);
    let panel_budget = target / 64.0;

    let mut total = 0.0;
    let mut err_total = 0.0;
    let mut stack = vec![(a, b, 0usize)];
    let mut panels = 0usize;
    while let Some((lo, hi, depth)) = stack.pop() {
        panels += 1;
        if panels > 200_000 {
            return Err(Error::QuadratureDivergence(err_total));
        }
        let (val, err) = gk15(&f, lo, hi);
        let mid = 0.5 * (lo + hi);
        // Splitting stops where f64 runs out of midpoints.
        let splittable = mid > lo && mid < hi;
        if !val.is_finite() {
            if splittable && depth < 100 {
                stack.push((lo, mid, depth + 1));
                stack.push((mid, hi, depth + 1));
            } else {
                err_total += panel_budget;
            }
            continue;
        }
        if err <= panel_budget || depth >= 100 || !splittable {
            total += val;
            err_total += err;
        } else {
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    if err_total > 8.0 * target.max(rel * total.abs()) {
        return Err(Error::QuadratureDivergence(err_total));
    }
    Ok(total)
}

/// Adaptive quadrature at the default 1e-11 relative target.
pub fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    quad_tol(f, a, b, 1e-11, 1e-14)
}
