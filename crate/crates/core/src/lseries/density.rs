use std::f64::consts::TAU;

use crate::arith::discriminant::{decompose_allowing_squares, is_discriminant};
use crate::arith::{factorize, kronecker, SpfSieve};
use crate::error::{Error, Result};
use crate::kloosterman::UnitTable;

/// `rho_q(delta)` and `lambda_q(delta)` together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityValue {
    pub q: u64,
    pub delta: i64,
    pub rho: u64,
    pub lambda: i64,
}

impl DensityValue {
    pub fn new(q: u64, delta: i64) -> Result<Self> {
        Ok(DensityValue { q, delta, rho: rho(q, delta)?, lambda: lambda(q, delta)? })
    }
}

fn check(q: u64, delta: i64) -> Result<()> {
    if q == 0 {
        return Err(Error::domain("q", "must be positive"));
    }
    if !is_discriminant(delta) {
        return Err(Error::domain("delta", format!("{delta} is not 0 or 1 mod 4")));
    }
    Ok(())
}

/// `#{x mod p^k : x^2 = delta (mod p^k)}`.
fn sqrt_count(delta: i64, p: u64, k: u32) -> u64 {
    let m = (p as i128).pow(k);
    let r = (delta as i128).rem_euclid(m);
    if r == 0 {
        return p.pow(k / 2);
    }
    let mut v = 0u32;
    let mut w = r;
    while w % p as i128 == 0 {
        w /= p as i128;
        v += 1;
    }
    if v % 2 == 1 {
        return 0;
    }
    let j = k - v;
    let units = if p == 2 {
        match j {
            1 => 1,
            2 => u64::from(w % 4 == 1) * 2,
            _ => u64::from(w % 8 == 1) * 4,
        }
    } else {
        (1 + kronecker(w as i64 % p as i64, p as i64)) as u64
    };
    units * p.pow(v / 2)
}

/// `rho_q(delta) = #{x mod 2q : x^2 = delta (mod 4q)}`, multiplicatively
/// from prime-power counts.
pub fn rho(q: u64, delta: i64) -> Result<u64> {
    check(q, delta)?;
    let f = factorize(q)?;
    let e2 = f.exponent_of(2);
    let mut acc = sqrt_count(delta, 2, e2 + 2) / 2;
    for &(p, k) in f.factors() {
        if p != 2 {
            acc *= sqrt_count(delta, p, k);
        }
    }
    Ok(acc)
}

/// Direct `O(q)` count; the oracle for [`rho`].
pub fn rho_bruteforce(q: u64, delta: i64) -> u64 {
    let m = 4 * q as i128;
    let target = (delta as i128).rem_euclid(m);
    (0..2 * q as i128).filter(|&x| (x * x) % m == target).count() as u64
}

/// Exponent of `p` in the conductor `l` of `delta`; `None` for `delta = 0`.
fn conductor_valuation(l: Option<u64>, p: u64) -> Option<u32> {
    l.map(|mut l| {
        let mut r = 0;
        while l % p == 0 {
            l /= p;
            r += 1;
        }
        r
    })
}

/// `lambda_{p^k}(delta) = p^a chi_{delta p^-2a}(p^(k-2a))`, `a = min(k/2, r)`,
/// where `p^r` exactly divides the conductor (`r = inf` for `delta = 0`).
pub fn lambda_prime_power(p: u64, k: u32, delta: i64, r: Option<u32>) -> i64 {
    let a = r.map_or(k / 2, |r| (k / 2).min(r));
    let reduced = delta / (p as i64).pow(2 * a);
    let c = kronecker(reduced, p as i64) as i64;
    (p as i64).pow(a) * c.pow(k - 2 * a)
}

fn conductor_of(delta: i64) -> Result<Option<u64>> {
    if delta == 0 {
        Ok(None)
    } else {
        Ok(Some(decompose_allowing_squares(delta)?.conductor))
    }
}

/// `lambda_q(delta)` as a product of prime-power values.
pub fn lambda(q: u64, delta: i64) -> Result<i64> {
    check(q, delta)?;
    let l = conductor_of(delta)?;
    Ok(factorize(q)?
        .factors()
        .iter()
        .map(|&(p, k)| lambda_prime_power(p, k, delta, conductor_valuation(l, p)))
        .product())
}

/// `lambda_q(delta)` for all `q <= q_max` at fixed `delta`, by sieve.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    delta: i64,
    values: Vec<i64>,
}

impl LambdaTable {
    pub fn new(delta: i64, q_max: u64) -> Result<Self> {
        check(1, delta)?;
        let l = conductor_of(delta)?;
        let sieve = SpfSieve::new(q_max as usize);
        Ok(Self::with_sieve(delta, l, &sieve, q_max))
    }

    pub(crate) fn with_sieve(delta: i64, l: Option<u64>, sieve: &SpfSieve, q_max: u64) -> Self {
        let n = q_max as usize;
        let mut values = vec![0i64; n + 1];
        if n >= 1 {
            values[1] = 1;
        }
        for q in 2..=n {
            let f = sieve.factor(q);
            let (p, k) = f[0];
            let pk = p.pow(k) as usize;
            values[q] = lambda_prime_power(p, k, delta, conductor_valuation(l, p)) * values[q / pk];
        }
        LambdaTable { delta, values }
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn q_max(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// `lambda_q` for `1 <= q <= q_max`.
    pub fn get(&self, q: u64) -> i64 {
        self.values[q as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.values.iter().enumerate().skip(1).map(|(q, &v)| (q as u64, v))
    }
}

/// Kloosterman-sum evaluation of `rho_q(n^2-4)` and `lambda_q(n^2-4)` for a
/// fixed `q`, with the sums `S(k,k;q)` and `S(k^2,1;q_2)` tabulated once.
#[derive(Debug, Clone)]
pub struct KloostermanDensity {
    q: u64,
    diag: Vec<f64>,
    /// `(q_2, [S(k^2,1;q_2) for k mod q_2])` over `q_1^2 q_2 = q`.
    square_parts: Vec<(u64, Vec<f64>)>,
}

impl KloostermanDensity {
    pub fn new(q: u64) -> Self {
        assert!(q >= 1);
        let units = UnitTable::new(q);
        let diag = (0..q as i64).map(|k| units.sum(k, k)).collect();
        let mut square_parts = Vec::new();
        let mut q1 = 1u64;
        while q1 * q1 <= q {
            if q.is_multiple_of(q1 * q1) {
                let q2 = q / (q1 * q1);
                let t = UnitTable::new(q2);
                let s = (0..q2 as i64).map(|k| t.sum(k * k, 1)).collect();
                square_parts.push((q2, s));
            }
            q1 += 1;
        }
        KloostermanDensity { q, diag, square_parts }
    }

    /// `(1/q) sum_{k mod q} e(kn/q) S(k,k;q)`.
    pub fn rho(&self, n: i64) -> f64 {
        let q = self.q as i64;
        let sum: f64 = self
            .diag
            .iter()
            .enumerate()
            .map(|(k, s)| (TAU * ((k as i64 * n).rem_euclid(q)) as f64 / q as f64).cos() * s)
            .sum();
        sum / self.q as f64
    }

    /// `sum_{q_1^2 q_2 = q} (1/q_2) sum_{k mod q_2} e(kn/q_2) S(k^2,1;q_2)`.
    pub fn lambda(&self, n: i64) -> f64 {
        self.square_parts
            .iter()
            .map(|(q2, s)| {
                let m = *q2 as i64;
                let inner: f64 = s
                    .iter()
                    .enumerate()
                    .map(|(k, v)| (TAU * ((k as i64 * n).rem_euclid(m)) as f64 / m as f64).cos() * v)
                    .sum();
                inner / *q2 as f64
            })
            .sum()
    }
}

/// `lambda_q(n^2-4)` through Kloosterman sums; `n >= 3`.
pub fn lambda_via_kloosterman(q: u64, n: i64) -> f64 {
    KloostermanDensity::new(q).lambda(n)
}

/// `rho_q(n^2-4)` through Kloosterman sums; `n >= 3`.
pub fn rho_via_kloosterman(q: u64, n: i64) -> f64 {
    KloostermanDensity::new(q).rho(n)
}

/// Result of [`lambda_partial_sum`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaPartialSum {
    /// `sum_{3 <= n <= z} lambda_q(n^2 - 4)`, exact.
    pub sum: i64,
    /// `z mu(b)/b` with `q = a^2 b`, `b` squarefree.
    pub main: f64,
    pub residual: f64,
}

/// Partial sums of `lambda_q(n^2-4)` over `3 <= n <= z` against the main term.
pub fn lambda_partial_sum(q: u64, z: f64) -> Result<LambdaPartialSum> {
    if q == 0 {
        return Err(Error::domain("q", "must be positive"));
    }
    let f = factorize(q)?;
    let (b, _) = f.squarefree_split();
    let mu_b = factorize(b)?.mobius();
    let top = z.floor() as i64;
    let mut sum = 0i64;
    for n in 3..=top {
        sum += lambda(q, n * n - 4)?;
    }
    let main = z * mu_b as f64 / b as f64;
    Ok(LambdaPartialSum { sum, main, residual: (sum as f64 - main).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mobius;

    /// `sum_{q_1^2 q_2 q_3 = q} mu(q_2) rho_{q_3}` from brute-force counts.
    fn lambda_by_convolution(q: u64, delta: i64) -> i64 {
        let mut acc = 0i64;
        let mut q1 = 1u64;
        while q1 * q1 <= q {
            if q.is_multiple_of(q1 * q1) {
                let rest = q / (q1 * q1);
                for q2 in 1..=rest {
                    if rest.is_multiple_of(q2) {
                        acc += mobius(q2) * rho_bruteforce(rest / q2, delta) as i64;
                    }
                }
            }
            q1 += 1;
        }
        acc
    }

    #[test]
    fn rho_examples() {
        for delta in [-7i64, -4, 0, 1, 5, 8, 12, 32, 45] {
            assert_eq!(rho(1, delta).unwrap(), 1);
        }
        assert_eq!(rho(2, 5).unwrap(), 0);
        assert_eq!(rho(5, 5).unwrap(), 1);
        assert!(rho(0, 5).is_err());
        assert!(rho(3, 7).is_err());
    }

    #[test]
    fn rho_matches_bruteforce() {
        for delta in (-60i64..200).filter(|&d| is_discriminant(d)) {
            for q in 1..=150u64 {
                assert_eq!(rho(q, delta).unwrap(), rho_bruteforce(q, delta), "q={q} delta={delta}");
            }
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda(1, 5).unwrap(), 1);
        assert_eq!(lambda(3, 5).unwrap(), -1);
        assert_eq!(lambda(4, 32).unwrap(), 2);
        assert_eq!(lambda_by_convolution(4, 32), 2);
        assert_eq!(lambda_by_convolution(3, 5), -1);
        // delta = 0: sqrt(q) on squares, else 0
        assert_eq!(lambda(9, 0).unwrap(), 3);
        assert_eq!(lambda(36, 0).unwrap(), 6);
        assert_eq!(lambda(12, 0).unwrap(), 0);
    }

    #[test]
    fn lambda_matches_convolution_including_zero_and_negative() {
        for delta in [0i64, -3, -4, -15, -16, 1, 4, 5, 12, 21, 32, 45, 60, 77, 96, 117, 140] {
            for q in 1..=120u64 {
                assert_eq!(lambda(q, delta).unwrap(), lambda_by_convolution(q, delta), "q={q} delta={delta}");
            }
        }
    }

    #[test]
    fn table_matches_pointwise() {
        for delta in [5i64, 32, 0, 96, -20] {
            let t = LambdaTable::new(delta, 500).unwrap();
            for q in 1..=500 {
                assert_eq!(t.get(q), lambda(q, delta).unwrap(), "q={q} delta={delta}");
            }
        }
    }

    #[test]
    fn kloosterman_examples() {
        assert!((lambda_via_kloosterman(1, 5) - 1.0).abs() < 1e-9);
        assert!((lambda_via_kloosterman(4, 6) - 2.0).abs() < 1e-6);
        assert!((lambda_via_kloosterman(6, 5) - lambda(6, 21).unwrap() as f64).abs() < 1e-6);
        assert!((rho_via_kloosterman(5, 3) - rho(5, 5).unwrap() as f64).abs() < 1e-9);
    }

    #[test]
    fn partial_sum_examples() {
        let p = lambda_partial_sum(1, 100.0).unwrap();
        assert_eq!((p.sum, p.main, p.residual), (98, 100.0, 2.0));
        let p = lambda_partial_sum(12, 1000.0).unwrap();
        assert!((p.main + 1000.0 / 3.0).abs() < 1e-9);
        let p4 = lambda_partial_sum(4, 1000.0).unwrap();
        assert!(p4.residual < 50.0 * 2.0 * 6f64.ln());
    }
}
