use std::f64::consts::PI;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::arith::chi;

/// Roots of `(Z^(2k+2) - eps Z^(2k+1) + eps Z - 1)/(Z^2 - 1)`,
/// `eps = chi_D(p)/sqrt p`.
pub fn t_numerator_roots(p: u64, k: u32, d: i64) -> Vec<Complex64> {
    let eps = chi(d, p) as f64 / (p as f64).sqrt();
    let n = 2 * k as usize + 2;
    if eps == 0.0 {
        // Z^n = 1 without Z = 1 and Z = -1
        return (1..n)
            .filter(|&j| j != n / 2)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64))
            .collect();
    }
    // coefficients, highest degree first
    let mut c = vec![0.0; n + 1];
    c[0] = 1.0;
    c[1] = -eps;
    c[n - 1] = eps;
    c[n] = -1.0;
    // divide by Z^2 - 1
    let m = n - 2;
    let mut q = vec![0.0; m + 1];
    for i in 0..=m {
        q[i] = c[i] + if i >= 2 { q[i - 2] } else { 0.0 };
    }
    if m == 0 {
        return Vec::new();
    }
    let mut comp = DMatrix::<f64>::zeros(m, m);
    for j in 0..m {
        comp[(0, j)] = -q[j + 1];
    }
    for i in 1..m {
        comp[(i, i - 1)] = 1.0;
    }
    Schur::try_new(comp, f64::EPSILON, 100_000)
        .expect("QR iteration converges")
        .complex_eigenvalues()
        .iter()
        .copied()
        .collect()
}

/// `max | |Z| - 1 |` over the roots of the numerator of `T_{p^k}^(D)`.
pub fn t_zero_check(p: u64, k: u32, d: i64) -> f64 {
    t_numerator_roots(p, k, d)
        .into_iter()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;

    #[test]
    fn spec_examples() {
        assert!(t_zero_check(2, 1, 5) <= 1e-8);
        assert!(t_zero_check(3, 4, 5) <= 1e-8);
        assert!(t_zero_check(2, 3, 8) <= 1e-12);
        assert!(t_zero_check(5, 6, 5) <= 1e-12);
    }

    #[test]
    fn quadratic_case_has_explicit_roots() {
        // k = 1 quotient: Z^2 - eps Z + 1
        let eps = chi(5, 2) as f64 / 2f64.sqrt();
        let mut roots = t_numerator_roots(2, 1, 5);
        roots.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        let im = (1.0 - eps * eps / 4.0).sqrt();
        assert!((roots[0] - Complex64::new(eps / 2.0, -im)).norm() < 1e-14);
        assert!((roots[1] - Complex64::new(eps / 2.0, im)).norm() < 1e-14);
        // chi_8(2) = 0: roots of Z^4 + Z^2 + 1
        for z in t_numerator_roots(2, 2, 8) {
            assert!((z.powi(4) + z.powi(2) + 1.0).norm() < 1e-14);
        }
        assert_eq!(t_numerator_roots(2, 2, 8).len(), 4);
    }

    #[test]
    fn all_small_cases_on_unit_circle() {
        for p in (2..=50u64).filter(|&p| is_prime(p)) {
            for k in 1..=6 {
                for d in [5i64, 8, 12, 13, -3, -4, -7, -8, 17, 21, 24, -84, 69] {
                    assert!(t_zero_check(p, k, d) <= 1e-8, "p={p} k={k} D={d}");
                }
            }
        }
    }
}
