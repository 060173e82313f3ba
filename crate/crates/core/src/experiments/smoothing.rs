use serde::Serialize;

use super::KernelSpec;
use crate::error::{Error, Result};
use crate::geodesics::{GeodesicTable, Jump};

/// `Psi` as a right-continuous step function.
#[derive(Debug, Clone)]
pub struct StepFunction {
    norms: Vec<f64>,
    cumulative: Vec<f64>,
}

impl StepFunction {
    pub fn new(jumps: &[Jump]) -> Self {
        let mut cumulative = Vec::with_capacity(jumps.len() + 1);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for j in jumps {
            acc += j.weight;
            cumulative.push(acc);
        }
        StepFunction { norms: jumps.iter().map(|j| j.norm).collect(), cumulative }
    }

    /// Number of jumps at or below `x`.
    pub fn count(&self, x: f64) -> usize {
        self.norms.partition_point(|&n| n <= x)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.cumulative[self.count(x)]
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }
}

/// `Psi(x;k) = sum_{NP <= x+Y} Lambda(P) int_{max(0, NP-x)}^Y k(u) du`.
pub fn psi_smoothed_from(jumps: &[Jump], x: f64, kernel: &KernelSpec) -> f64 {
    let mut s = 0.0;
    for j in jumps {
        if j.norm > x + kernel.y {
            break;
        }
        s += j.weight * kernel.tail(j.norm - x);
    }
    s
}

fn table_for(x: f64, kernel: &KernelSpec) -> Result<GeodesicTable> {
    if !(x >= 2.0) {
        return Err(Error::domain("x", format!("{x} must be >= 2")));
    }
    GeodesicTable::build(x + kernel.y)
}

/// `Psi(x;k) = int_0^Y Psi(x+u) k(u) du`, evaluated jump by jump.
pub fn psi_smoothed(x: f64, kernel: &KernelSpec) -> Result<f64> {
    let t = table_for(x, kernel)?;
    Ok(psi_smoothed_from(&t.jumps(), x, kernel))
}

/// Midpoint rule for `int_0^Y Psi(x+u) k(u) du` on `points` nodes.
pub fn psi_smoothed_bruteforce(steps: &StepFunction, x: f64, kernel: &KernelSpec, points: usize) -> f64 {
    let h = kernel.y / points as f64;
    let mut s = 0.0;
    for i in 0..points {
        let u = (i as f64 + 0.5) * h;
        s += steps.eval(x + u) * kernel.eval(u);
    }
    s * h
}

/// `int_0^Y (Psi(x+u) - Psi(x)) k(u) du`, integrating `k` over each interval
/// on which `Psi(x+u)` is constant.
pub fn smoothing_defect(steps: &StepFunction, x: f64, kernel: &KernelSpec) -> f64 {
    let base = steps.eval(x);
    let lo = steps.count(x);
    let hi = steps.count(x + kernel.y);
    let mut s = 0.0;
    for i in lo..hi {
        let start = steps.norms[i] - x;
        let end = if i + 1 < hi { steps.norms[i + 1] - x } else { kernel.y };
        s += (steps.cumulative[i + 1] - base) * kernel.mass(start, end);
    }
    s
}

/// Both sides of `Psi(x) = Psi(x;k) - int_0^Y (Psi(x+u) - Psi(x)) k(u) du`.
pub fn smoothsharp_sides(jumps: &[Jump], steps: &StepFunction, x: f64, kernel: &KernelSpec) -> (f64, f64) {
    let lhs = steps.eval(x);
    let rhs = psi_smoothed_from(jumps, x, kernel) - smoothing_defect(steps, x, kernel);
    (lhs, rhs)
}

/// `E(x;k) = Psi(x;k) - x - int u k(u) du` with reference magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmoothError {
    pub x: f64,
    pub y: f64,
    pub psi_smoothed: f64,
    pub first_moment: f64,
    pub e: f64,
    /// `x^(3/2) / Y`.
    pub bound_selberg: f64,
    /// `x^(7/8) Y^(-1/4)`.
    pub bound_ls: f64,
    /// `sqrt x <= Y <= x / ln x`.
    pub in_window: bool,
}

pub fn smooth_error_from(jumps: &[Jump], x: f64, kernel: &KernelSpec) -> SmoothError {
    let ps = psi_smoothed_from(jumps, x, kernel);
    let m = kernel.first_moment();
    let y = kernel.y;
    SmoothError {
        x,
        y,
        psi_smoothed: ps,
        first_moment: m,
        e: ps - x - m,
        bound_selberg: x.powf(1.5) / y,
        bound_ls: x.powf(7.0 / 8.0) * y.powf(-0.25),
        in_window: x.sqrt() <= y && y <= x / x.ln(),
    }
}

/// Smoothed error term at `x`.
pub fn smooth_error(x: f64, kernel: &KernelSpec) -> Result<SmoothError> {
    let t = table_for(x, kernel)?;
    Ok(smooth_error_from(&t.jumps(), x, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::trace_to_norm;

    #[test]
    fn no_jumps_in_window_gives_psi() {
        let t = GeodesicTable::build(200.0).unwrap();
        let j = t.jumps();
        let steps = StepFunction::new(&j);
        // norms of traces 4 and 5 are 13.93 and 22.96
        let k = KernelSpec::new(5.0).unwrap();
        let v = psi_smoothed_from(&j, 14.0, &k);
        assert!((v - steps.eval(14.0)).abs() < 1e-12);
    }

    #[test]
    fn single_jump_example() {
        let k = KernelSpec::new(2.0).unwrap();
        let v = psi_smoothed(6.0, &k).unwrap();
        let n3 = trace_to_norm(3).unwrap();
        let expect = 2.0 * 0.962_423_650_119_206_9 * k.mass(n3 - 6.0, 2.0);
        assert!((v - expect).abs() < 1e-12, "{v} vs {expect}");
    }

    #[test]
    fn matches_bruteforce_quadrature() {
        let t = GeodesicTable::build(1.1e4).unwrap();
        let j = t.jumps();
        let steps = StepFunction::new(&j);
        let k = KernelSpec::new(1e3).unwrap();
        let a = psi_smoothed_from(&j, 1e4, &k);
        let b = psi_smoothed_bruteforce(&steps, 1e4, &k, 100_000);
        assert!((a - b).abs() <= 1e-4 * a, "{a} vs {b}");
    }

    #[test]
    fn smoothsharp_identity() {
        let t = GeodesicTable::build(5000.0).unwrap();
        let j = t.jumps();
        let steps = StepFunction::new(&j);
        for (x, y) in [(100.0, 30.0), (1000.0, 400.0), (2500.0, 2000.0), (13.0, 1.0)] {
            let k = KernelSpec::new(y).unwrap();
            let (l, r) = smoothsharp_sides(&j, &steps, x, &k);
            assert!((l - r).abs() <= 1e-8 * l.max(1.0), "x={x}: {l} vs {r}");
        }
    }

    #[test]
    fn window_flag() {
        let t = GeodesicTable::build(1.02e4).unwrap();
        let j = t.jumps();
        assert!(smooth_error_from(&j, 1e4, &KernelSpec::new(200.0).unwrap()).in_window);
        assert!(!smooth_error_from(&j, 1e4, &KernelSpec::new(50.0).unwrap()).in_window);
    }
}
