//! Adaptive quadrature on top of the double-exponential rule.

/// `int_a^b f` to absolute tolerance `tol`, bisecting panels whose
/// tanh-sinh error estimate exceeds their share of the tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if a > b {
        return -integrate(f, b, a, tol);
    }
    panel(&f, a, b, tol, 0)
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let out = quadrature::double_exponential::integrate(f, a, b, tol * 0.5);
    if out.error_estimate <= tol || depth >= 24 {
        return out.integral;
    }
    let mid = 0.5 * (a + b);
    panel(f, a, mid, tol * 0.5, depth + 1) + panel(f, mid, b, tol * 0.5, depth + 1)
}

/// Composite Simpson rule on `n` (even) panels; used as a brute-force oracle.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}
