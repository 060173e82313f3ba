//! Kloosterman sums `S(m,n;q) = sum_{x mod q, (x,q)=1} e((m x + n xbar)/q)`
//! by direct summation.

use std::f64::consts::TAU;

use num_integer::Integer;

use crate::arith::factorize;

/// A computed Kloosterman sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KloostermanValue {
    pub m: i64,
    pub n: i64,
    pub q: u64,
    pub value: f64,
    /// Exact value when the sum is a Ramanujan sum (`m` or `n` divisible by `q`).
    pub exact_hint: Option<i64>,
}

impl KloostermanValue {
    /// `tau(q) sqrt(gcd(m,n,q)) sqrt(q)`.
    pub fn weil_bound(&self) -> f64 {
        let tau = factorize(self.q).map_or(1, |f| f.tau()) as f64;
        let g = (self.m.unsigned_abs().gcd(&self.n.unsigned_abs())).gcd(&self.q) as f64;
        tau * g.sqrt() * (self.q as f64).sqrt()
    }
}

/// Inverses of the units modulo `q`; entry `x` is `0` when `gcd(x,q) > 1`.
pub fn inverse_table(q: u64) -> Vec<u64> {
    let mut inv = vec![0u64; q as usize];
    if q == 1 {
        inv[0] = 0;
        return inv;
    }
    for x in 1..q {
        if inv[x as usize] != 0 {
            continue;
        }
        let e = (x as i64).extended_gcd(&(q as i64));
        if e.gcd == 1 {
            let y = e.x.rem_euclid(q as i64) as u64;
            inv[x as usize] = y;
            inv[y as usize] = x;
        }
    }
    inv
}

/// Ramanujan sum `c_q(n) = sum_{d | (n,q)} mu(q/d) d`.
pub fn ramanujan_sum(n: i64, q: u64) -> i64 {
    let g = n.unsigned_abs().gcd(&q);
    let g = if n == 0 { q } else { g };
    factorize(g)
        .map(|f| {
            f.divisors()
                .into_iter()
                .map(|d| crate::arith::mobius(q / d) * d as i64)
                .sum()
        })
        .unwrap_or(0)
}

/// Units modulo `q` paired with their inverses.
#[derive(Debug, Clone)]
pub struct UnitTable {
    q: u64,
    pairs: Vec<(u64, u64)>,
}

impl UnitTable {
    pub fn new(q: u64) -> Self {
        assert!(q >= 1);
        if q == 1 {
            return UnitTable { q, pairs: vec![(0, 0)] };
        }
        let inv = inverse_table(q);
        let pairs = (1..q).filter(|&x| inv[x as usize] != 0).map(|x| (x, inv[x as usize])).collect();
        UnitTable { q, pairs }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `S(m,n;q)` as a real number, from exactly reduced angles.
    pub fn sum(&self, m: i64, n: i64) -> f64 {
        let q = self.q as i128;
        let (mr, nr) = ((m as i128).rem_euclid(q), (n as i128).rem_euclid(q));
        let scale = TAU / self.q as f64;
        self.pairs
            .iter()
            .map(|&(x, y)| {
                let r = (mr * x as i128 + nr * y as i128) % q;
                (scale * r as f64).cos()
            })
            .sum()
    }
}

/// `S(m,n;q)`; the imaginary part vanishes under `x -> -x`.
pub fn kloosterman_sum(m: i64, n: i64, q: u64) -> KloostermanValue {
    let exact_hint = if q == 1 {
        Some(1)
    } else if m.rem_euclid(q as i64) == 0 {
        Some(ramanujan_sum(n, q))
    } else if n.rem_euclid(q as i64) == 0 {
        Some(ramanujan_sum(m, q))
    } else {
        None
    };
    let value = match exact_hint {
        Some(v) => v as f64,
        None => UnitTable::new(q).sum(m, n),
    };
    KloostermanValue { m, n, q, value, exact_hint }
}

/// `|S(z,z;q) - sum_{d | (z,q)} d S(z^2/d^2, 1; q/d)|`.
pub fn selberg_identity_residual(z: i64, q: u64) -> f64 {
    let lhs = UnitTable::new(q).sum(z, z);
    let g = if z == 0 { q } else { z.unsigned_abs().gcd(&q) };
    let rhs: f64 = factorize(g)
        .expect("g >= 1")
        .divisors()
        .into_iter()
        .map(|d| {
            let zd = z / d as i64;
            d as f64 * UnitTable::new(q / d).sum(zd * zd, 1)
        })
        .sum();
    (lhs - rhs).abs()
}
