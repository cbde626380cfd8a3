//! Real polynomials of degree at most two, the only shapes the NU reduction
//! manipulates.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linear {
    /// Constant coefficient.
    pub c0: f64,
    /// Slope.
    pub c1: f64,
}

impl Linear {
    pub const ZERO: Linear = Linear { c0: 0.0, c1: 0.0 };

    pub fn new(c0: f64, c1: f64) -> Self {
        Linear { c0, c1 }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.c0 + self.c1 * t
    }

    pub fn squared(&self) -> Quadratic {
        Quadratic {
            c0: self.c0 * self.c0,
            c1: 2.0 * self.c0 * self.c1,
            c2: self.c1 * self.c1,
        }
    }

    /// Largest coefficient magnitude, used for relative zero tests.
    pub fn scale(&self) -> f64 {
        self.c0.abs().max(self.c1.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadratic {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Quadratic {
    pub const ZERO: Quadratic = Quadratic {
        c0: 0.0,
        c1: 0.0,
        c2: 0.0,
    };

    pub fn new(c0: f64, c1: f64, c2: f64) -> Self {
        Quadratic { c0, c1, c2 }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.c0 + t * (self.c1 + t * self.c2)
    }

    pub fn deriv(&self) -> Linear {
        Linear::new(self.c1, 2.0 * self.c2)
    }

    /// Second derivative (a constant).
    pub fn second(&self) -> f64 {
        2.0 * self.c2
    }

    pub fn scale(&self) -> f64 {
        self.c0.abs().max(self.c1.abs()).max(self.c2.abs())
    }

    /// Degree with coefficients below `tol * scale` treated as zero.
    pub fn degree(&self) -> usize {
        let tol = 1e-13 * self.scale().max(1e-300);
        if self.c2.abs() > tol {
            2
        } else if self.c1.abs() > tol {
            1
        } else {
            0
        }
    }

    /// Real roots in ascending order, when the polynomial is genuinely
    /// quadratic or linear.
    pub fn real_roots(&self) -> Vec<f64> {
        match self.degree() {
            2 => {
                let disc = self.c1 * self.c1 - 4.0 * self.c2 * self.c0;
                if disc < 0.0 {
                    return Vec::new();
                }
                let sq = disc.sqrt();
                // Citardauq form for the smaller-magnitude root.
                let q = -0.5 * (self.c1 + self.c1.signum() * sq);
                let mut roots = if q == 0.0 {
                    vec![0.0, -self.c1 / self.c2]
                } else {
                    vec![q / self.c2, self.c0 / q]
                };
                roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
                roots
            }
            1 => vec![-self.c0 / self.c1],
            _ => Vec::new(),
        }
    }
}

impl From<Linear> for Quadratic {
    fn from(l: Linear) -> Self {
        Quadratic::new(l.c0, l.c1, 0.0)
    }
}

impl Add for Quadratic {
    type Output = Quadratic;
    fn add(self, o: Quadratic) -> Quadratic {
        Quadratic::new(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2)
    }
}

impl Sub for Quadratic {
    type Output = Quadratic;
    fn sub(self, o: Quadratic) -> Quadratic {
        Quadratic::new(self.c0 - o.c0, self.c1 - o.c1, self.c2 - o.c2)
    }
}

impl Mul<f64> for Quadratic {
    type Output = Quadratic;
    fn mul(self, s: f64) -> Quadratic {
        Quadratic::new(self.c0 * s, self.c1 * s, self.c2 * s)
    }
}

impl Add for Linear {
    type Output = Linear;
    fn add(self, o: Linear) -> Linear {
        Linear::new(self.c0 + o.c0, self.c1 + o.c1)
    }
}

impl Sub for Linear {
    type Output = Linear;
    fn sub(self, o: Linear) -> Linear {
        Linear::new(self.c0 - o.c0, self.c1 - o.c1)
    }
}

impl Mul<f64> for Linear {
    type Output = Linear;
    fn mul(self, s: f64) -> Linear {
        Linear::new(self.c0 * s, self.c1 * s)
    }
}
