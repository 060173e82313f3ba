use serde::Serialize;

use crate::arith::{decompose_discriminant, SpfSieve};
use crate::error::{Error, Result};
use crate::geodesics::GeodesicTable;
use crate::lseries::{l_one, lambda_prime_power, LMethod, LSubject, LValue, LambdaTable, Truncation};
use crate::parallel::ordered_map;

/// Default subconvexity exponent `theta`.
pub const DEFAULT_THETA: f64 = 1.0 / 6.0;

/// `S_V(delta) = sum_q lambda_q(delta)/q e^(-q/V)`, truncated at
/// `q = ceil(V ln 10^14)`.
pub fn s_v(delta: i64, v: f64) -> Result<LValue> {
    if delta == 0 {
        return Err(Error::domain("delta", "must be nonzero"));
    }
    if !(v >= 1.0) || !v.is_finite() {
        return Err(Error::domain("V", format!("{v} must be >= 1")));
    }
    let q_max = (v * 1e14f64.ln()).ceil() as u64;
    let table = LambdaTable::new(delta, q_max)?;
    let mut s = 0.0;
    for (q, lam) in table.iter() {
        if lam != 0 {
            let qf = q as f64;
            s += lam as f64 / qf * (-qf / v).exp();
        }
    }
    Ok(LValue {
        s: 1.0.into(),
        subject: LSubject::Delta(delta),
        value: s.into(),
        method: LMethod::SmoothedSv,
        truncation: Truncation { q_max: Some(q_max), v: Some(v), ..Default::default() },
        outside_convergence: false,
    })
}

/// `Psi(x+u) - Psi(x)` against the main term `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShortInterval {
    pub x: f64,
    pub u: f64,
    pub theta: f64,
    pub delta_psi: f64,
    pub main: f64,
    /// `|delta_psi - u|`.
    pub residual: f64,
    /// `|delta_psi - u| / (u^(1/2) x^(1/4 + theta/2))`.
    pub residual_normalized: f64,
}

fn check_short(x: f64, u: f64) -> Result<()> {
    if !(x >= 2.0) {
        return Err(Error::domain("x", format!("{x} must be >= 2")));
    }
    if !(u > 0.0 && u <= x) {
        return Err(Error::domain("u", format!("need 0 < u <= x, got {u}")));
    }
    Ok(())
}

/// [`short_interval`] from a table covering `x + u`.
pub fn short_interval_from(table: &GeodesicTable, x: f64, u: f64, theta: f64) -> Result<ShortInterval> {
    check_short(x, u)?;
    let delta_psi = table.psi_lvalue(x + u)? - table.psi_lvalue(x)?;
    let residual = (delta_psi - u).abs();
    Ok(ShortInterval {
        x,
        u,
        theta,
        delta_psi,
        main: u,
        residual,
        residual_normalized: residual / (u.sqrt() * x.powf(0.25 + theta / 2.0)),
    })
}

pub fn short_interval(x: f64, u: f64, theta: f64) -> Result<ShortInterval> {
    check_short(x, u)?;
    let table = GeodesicTable::build(x + u)?;
    short_interval_from(&table, x, u, theta)
}

/// `(1/Delta) sum_{X < n <= X + Delta} L(1, n^2 - 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanL {
    pub x: f64,
    pub delta: f64,
    pub terms: u64,
    pub mean: f64,
}

pub fn mean_l_short(x: f64, delta: f64) -> Result<MeanL> {
    if !(x >= 3.0) || !x.is_finite() {
        return Err(Error::domain("X", format!("{x} must be >= 3")));
    }
    if !(delta >= 1.0) || !delta.is_finite() {
        return Err(Error::domain("Delta", format!("{delta} must be >= 1")));
    }
    let lo = x.floor() as u64 + 1;
    let hi = (x + delta).floor() as u64;
    let vals = ordered_map(lo, hi + 1, |n| l_one((n * n - 4) as i64));
    let mut s = 0.0;
    for v in vals {
        s += v?;
    }
    Ok(MeanL { x, delta, terms: hi + 1 - lo, mean: s / delta })
}

/// `S_1`, `S_2` and the truncated Euler product at `delta = n^2 - 4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct S1S2 {
    pub n: u64,
    pub z: f64,
    pub big_z: f64,
    /// `sum_{z < p <= Z} lambda_p(delta)/p`.
    pub s1: f64,
    /// `sum_{z < p <= Z, p | l} 1/p`.
    pub s2: f64,
    /// `prod_{p <= Z} sum_k lambda_{p^k}(delta) p^-k`.
    pub euler_product_approx: f64,
    /// `L(1, delta)` by the closed form.
    pub l_value: f64,
}

fn valuation(mut l: u64, p: u64) -> u32 {
    let mut r = 0;
    while l.is_multiple_of(p) {
        l /= p;
        r += 1;
    }
    r
}

/// `sum_{k >= 0} lambda_{p^k}(delta) p^-k`, where `p^r || l`. Beyond
/// `k = 2r` the terms are geometric with ratio `chi_D(p)/p`.
pub fn euler_local_factor(p: u64, delta: i64, r: u32) -> f64 {
    let pf = p as f64;
    let mut s = 0.0;
    for k in 0..=2 * r {
        s += lambda_prime_power(p, k, delta, Some(r)) as f64 * pf.powi(-(k as i32));
    }
    // lambda_{p^(2r+j)} = p^r chi_D(p)^j
    let c = lambda_prime_power(p, 2 * r + 1, delta, Some(r)) as f64 / pf.powi(r as i32);
    let ratio = c / pf;
    s + pf.powi(-(r as i32)) * ratio / (1.0 - ratio)
}

pub fn s1_s2_stats(n: u64, z: f64, big_z: f64) -> Result<S1S2> {
    if n < 3 {
        return Err(Error::domain("n", format!("trace {n} must be >= 3")));
    }
    if !(z >= 2.0 && z < big_z) || !big_z.is_finite() {
        return Err(Error::domain("z", format!("need 2 <= z < Z, got z = {z}, Z = {big_z}")));
    }
    let delta = (n * n - 4) as i64;
    let dec = decompose_discriminant(delta)?;
    let l = dec.conductor;
    let sieve = SpfSieve::new(big_z.floor() as usize);
    let (mut s1, mut s2, mut prod) = (0.0, 0.0, 1.0);
    for p in sieve.primes() {
        let pf = p as f64;
        let r = valuation(l, p);
        prod *= euler_local_factor(p, delta, r);
        if pf > z {
            s1 += lambda_prime_power(p, 1, delta, Some(r)) as f64 / pf;
            if r > 0 {
                s2 += 1.0 / pf;
            }
        }
    }
    Ok(S1S2 { n, z, big_z, s1, s2, euler_product_approx: prod, l_value: l_one(delta)? })
}
