use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad;

/// `int_0^1 exp(-1/(v(1-v))) dv`.
const BUMP_MASS: f64 = 0.007_029_858_406_609_656;

/// `C_j = int |k^(j)| du * Y^j` for the normalized bump, `j = 0..=3`.
pub const DERIVATIVE_CONSTANTS: [f64; 4] = [
    1.0,
    5.210_813_029_040_055,
    44.142_260_595_978_39,
    502.887_828_110_457,
];

/// Quadrature tolerance for kernel integrals.
pub(crate) const KERNEL_TOL: f64 = 1e-12;

/// Shape of a smoothing kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BumpShape {
    /// `exp(-1/(v(1-v)))` on `(0, 1)`.
    Exponential,
}

/// `k(u) = (c/Y) exp(-1/(v(1-v)))`, `v = u/Y`, supported on `(0, Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelSpec {
    pub y: f64,
    pub shape: BumpShape,
    /// `c = 1 / int_0^1 exp(-1/(v(1-v))) dv`.
    pub normalization: f64,
}

#[inline]
fn bump(v: f64) -> f64 {
    if v <= 0.0 || v >= 1.0 {
        0.0
    } else {
        (-1.0 / (v * (1.0 - v))).exp()
    }
}

impl KernelSpec {
    pub fn new(y: f64) -> Result<Self> {
        if !(y > 0.0) || !y.is_finite() {
            return Err(Error::domain("Y", format!("{y} must be positive")));
        }
        Ok(KernelSpec { y, shape: BumpShape::Exponential, normalization: 1.0 / BUMP_MASS })
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.normalization / self.y * bump(u / self.y)
    }

    /// `int_a^b k(u) du`, clipped to the support.
    pub fn mass(&self, a: f64, b: f64) -> f64 {
        let (a, b) = (a.max(0.0), b.min(self.y));
        if a >= b {
            return 0.0;
        }
        let (va, vb) = (a / self.y, b / self.y);
        let m = if va < 0.5 && vb > 0.5 {
            quad::integrate(bump, va, 0.5, KERNEL_TOL) + quad::integrate(bump, 0.5, vb, KERNEL_TOL)
        } else {
            quad::integrate(bump, va, vb, KERNEL_TOL)
        };
        self.normalization * m
    }

    /// `int_a^Y k(u) du`.
    pub fn tail(&self, a: f64) -> f64 {
        if a <= 0.0 {
            return 1.0;
        }
        if a >= self.y {
            return 0.0;
        }
        let v = a / self.y;
        if v > 0.5 {
            self.normalization * quad::integrate(bump, v, 1.0, KERNEL_TOL)
        } else {
            1.0 - self.normalization * quad::integrate(bump, 0.0, v, KERNEL_TOL)
        }
    }

    /// `int_0^Y u k(u) du`.
    pub fn first_moment(&self) -> f64 {
        self.y * self.normalization * quad::integrate(|v| v * bump(v), 0.0, 1.0, KERNEL_TOL)
    }

    /// `C_j Y^(-j)`, the bound on `int |k^(j)|`.
    pub fn derivative_bound(&self, j: usize) -> f64 {
        DERIVATIVE_CONSTANTS[j] / self.y.powi(j as i32)
    }
}

/// `int_0^1 |phi^(j)(v)| dv` for the unnormalized bump, from finite
/// differences and Simpson's rule.
pub fn bump_derivative_l1(j: usize, samples: usize) -> f64 {
    let h = 1.0 / samples as f64;
    let deriv = |v: f64| -> f64 {
        let e = 2e-4;
        match j {
            0 => bump(v),
            1 => (bump(v + e) - bump(v - e)) / (2.0 * e),
            2 => (bump(v + e) - 2.0 * bump(v) + bump(v - e)) / (e * e),
            3 => (bump(v + 2.0 * e) - 2.0 * bump(v + e) + 2.0 * bump(v - e) - bump(v - 2.0 * e)) / (2.0 * e * e * e),
            _ => panic!("order {j} not supported"),
        }
    };
    quad::simpson(|v| deriv(v).abs(), h, 1.0 - h, samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_mass_and_moment() {
        for y in [1.0, 2.0, 200.0, 1e4] {
            let k = KernelSpec::new(y).unwrap();
            assert!((k.mass(0.0, y) - 1.0).abs() < 1e-10);
            assert!((k.first_moment() - y / 2.0).abs() < 1e-10 * y);
            assert!((k.tail(0.3 * y) + k.mass(0.0, 0.3 * y) - 1.0).abs() < 1e-11);
            assert!((k.tail(0.8 * y) - k.mass(0.8 * y, y)).abs() < 1e-12);
        }
        assert!(KernelSpec::new(0.0).is_err());
    }

    #[test]
    fn derivative_constants_match_numerics() {
        let c = 1.0 / BUMP_MASS;
        for j in 1..=3 {
            let num = c * bump_derivative_l1(j, 200_000);
            let rel = (num - DERIVATIVE_CONSTANTS[j]).abs() / DERIVATIVE_CONSTANTS[j];
            assert!(rel < 1e-4, "j={j}: {num}");
        }
    }

    #[test]
    fn derivative_bound_scales() {
        let k = KernelSpec::new(10.0).unwrap();
        assert!((k.derivative_bound(2) - DERIVATIVE_CONSTANTS[2] / 100.0).abs() < 1e-15);
        // int |k'| = 2 max k exactly for a unimodal bump
        assert!((2.0 * k.eval(5.0) - k.derivative_bound(1)).abs() < 1e-12);
    }
}
