use num_complex::Complex64;

use crate::arith::{chi, factorize, mobius};
use crate::special::cpow_real;

/// `T_l^(D)(s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TFactor {
    pub l: u64,
    pub d: i64,
    pub s: Complex64,
    pub value: Complex64,
}

/// `tau_s(k) = k^(s-1/2) sum_{a | k} a^(1-2s)`.
pub fn tau_s(k: u64, s: Complex64) -> Complex64 {
    let f = factorize(k).expect("k >= 1");
    let sum: Complex64 = f.divisors().into_iter().map(|a| cpow_real(a as f64, 1.0 - 2.0 * s)).sum();
    cpow_real(k as f64, s - 0.5) * sum
}

/// `tau_s(p^j) = p^(j(s-1/2)) sum_{i <= j} p^(i(1-2s))`.
fn tau_prime_power(p: u64, j: u32, s: Complex64) -> Complex64 {
    let lp = (p as f64).ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..=j {
        sum += ((1.0 - 2.0 * s) * (i as f64 * lp)).exp();
    }
    ((s - 0.5) * (j as f64 * lp)).exp() * sum
}

/// `T_l^(D)(s)` as a product of `T_{p^k} = tau_s(p^k) - chi_D(p) p^(-1/2) tau_s(p^(k-1))`.
pub fn t_factor(l: u64, d: i64, s: Complex64) -> TFactor {
    let value = factorize(l)
        .expect("l >= 1")
        .factors()
        .iter()
        .map(|&(p, k)| {
            let eps = chi(d, p) as f64 / (p as f64).sqrt();
            tau_prime_power(p, k, s) - eps * tau_prime_power(p, k - 1, s)
        })
        .product();
    TFactor { l, d, s, value }
}

/// `sum_{l_1 l_2 = l} chi_D(l_1) mu(l_1) l_1^(-1/2) tau_s(l_2)` by direct
/// divisor summation.
pub fn t_factor_direct(l: u64, d: i64, s: Complex64) -> Complex64 {
    factorize(l)
        .expect("l >= 1")
        .divisors()
        .into_iter()
        .map(|l1| {
            let w = chi(d, l1) as f64 * mobius(l1) as f64 / (l1 as f64).sqrt();
            w * tau_s(l / l1, s)
        })
        .sum()
}
