//! Trial division up to 10^6, then Pollard-rho (Brent) with a deterministic
//! Miller-Rabin test. Inputs are at most 2^63.

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;
const MAX_INPUT: u64 = 1 << 63;

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p` in `n` (zero when `p` does not divide `n`).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Moebius function of `n`.
    pub fn mobius(&self) -> i64 {
        if self.is_squarefree() {
            if self.factors.len().is_multiple_of(2) {
                1
            } else {
                -1
            }
        } else {
            0
        }
    }

    /// Number of divisors.
    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    /// All divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Splits `n = s * f^2` with `s` squarefree; returns `(s, f)`.
    pub fn squarefree_split(&self) -> (u64, u64) {
        let mut core = 1u64;
        let mut root = 1u64;
        for &(p, e) in &self.factors {
            if e % 2 == 1 {
                core *= p;
            }
            root *= p.pow(e / 2);
        }
        (core, root)
    }
}

/// Factors `n` with `1 <= n <= 2^63`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("n", "cannot factor zero"));
    }
    if n > MAX_INPUT {
        return Err(Error::domain("n", format!("{n} exceeds 2^63")));
    }
    let mut factors = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5] {
        push_power(&mut m, p, &mut factors);
    }
    // wheel mod 30
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p <= TRIAL_LIMIT && p * p <= m {
        push_power(&mut m, p, &mut factors);
        p += STEPS[i];
        i = (i + 1) % 8;
    }
    if m > 1 {
        if p * p > m {
            factors.push((m, 1));
        } else {
            let mut big = Vec::new();
            split_large(m, &mut big);
            big.sort_unstable();
            for q in big {
                match factors.last_mut() {
                    Some((last, e)) if *last == q => *e += 1,
                    _ => factors.push((q, 1)),
                }
            }
        }
    }
    Ok(Factorization { n, factors })
}

fn push_power(m: &mut u64, p: u64, factors: &mut Vec<(u64, u32)>) {
    if (*m).is_multiple_of(p) {
        let mut e = 0;
        while (*m).is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        factors.push((p, e));
    }
}

fn split_large(m: u64, out: &mut Vec<u64>) {
    if m == 1 {
        return;
    }
    if is_prime(m) {
        out.push(m);
        return;
    }
    if let Some(r) = exact_sqrt(m) {
        split_large(r, out);
        split_large(r, out);
        return;
    }
    let d = pollard_brent(m);
    split_large(d, out);
    split_large(m / d, out);
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns a nontrivial factor of the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        const BLOCK: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BLOCK.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// Smallest-prime-factor sieve for `0..=limit`.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        SpfSieve { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && self.spf[n] as usize == n
    }

    /// Smallest prime factor of `2 <= n <= limit`.
    #[inline]
    pub fn smallest_factor(&self, n: usize) -> usize {
        self.spf[n] as usize
    }

    /// Factors `n <= limit` using the sieve.
    pub fn factor(&self, mut n: usize) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        out
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..self.spf.len()).filter(|&i| self.spf[i] as usize == i).map(|i| i as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn small_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(9991).unwrap().factors(), trial_division(9991).as_slice());
        assert_eq!(factorize(9991).unwrap().factors(), &[(97, 1), (103, 1)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(factorize(0), Err(Error::Domain { param: "n", .. })));
        assert!(factorize((1 << 63) + 1).is_err());
    }

    #[test]
    fn matches_trial_division() {
        for n in 1..5000u64 {
            assert_eq!(factorize(n).unwrap().factors(), trial_division(n).as_slice(), "n={n}");
        }
    }

    #[test]
    fn large_semiprimes_and_powers() {
        let p = 1_000_000_007u64;
        let q = 998_244_353u64;
        assert_eq!(factorize(p * q).unwrap().factors(), &[(q, 1), (p, 1)]);
        assert_eq!(factorize(p * p).unwrap().factors(), &[(p, 2)]);
        let big = 4_611_686_014_132_420_609u64; // (2^31-1)^2
        assert_eq!(factorize(big).unwrap().factors(), &[(2_147_483_647, 2)]);
        let f = factorize(1 << 63).unwrap();
        assert_eq!(f.factors(), &[(2, 63)]);
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let sieve = SpfSieve::new(100_000);
        for n in 0..100_000u64 {
            assert_eq!(is_prime(n), sieve.is_prime(n as usize), "n={n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn divisor_helpers() {
        let f = factorize(360).unwrap();
        assert_eq!(f.tau(), 24);
        assert_eq!(f.divisors().len(), 24);
        assert_eq!(f.mobius(), 0);
        assert_eq!(factorize(30).unwrap().mobius(), -1);
        assert_eq!(f.squarefree_split(), (10, 6));
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
    }
}
