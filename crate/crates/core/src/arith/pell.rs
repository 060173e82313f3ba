use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::factor::{exact_sqrt, isqrt};
use crate::error::{Error, Result};

/// Fundamental solution of `t^2 - d u^2 = 4` and `ln eps_d`, where
/// `eps_d = (t + u sqrt(d)) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PellData {
    pub d: u64,
    pub t: BigUint,
    pub u: BigUint,
    pub log_eps: f64,
}

impl PellData {
    /// The trace `t` when it fits in a machine word.
    pub fn trace_u64(&self) -> Option<u64> {
        self.t.to_u64()
    }

    /// Checks `t^2 - d u^2 = 4` in exact arithmetic.
    pub fn satisfies_pell(&self) -> bool {
        let lhs = &self.t * &self.t;
        let rhs = BigUint::from(self.d) * &self.u * &self.u + BigUint::from(4u32);
        lhs == rhs
    }
}

pub(crate) fn check_real_discriminant(d: i64) -> Result<u64> {
    if d <= 0 {
        return Err(Error::domain("d", format!("{d} is not positive")));
    }
    if !matches!(d % 4, 0 | 1) {
        return Err(Error::domain("d", format!("{d} is not 0 or 1 mod 4")));
    }
    let d = d as u64;
    if exact_sqrt(d).is_some() {
        return Err(Error::domain("d", format!("{d} is a perfect square")));
    }
    Ok(d)
}

/// Fundamental solution of the Pell equation `t^2 - d u^2 = 4`.
///
/// Expands `omega = (sigma + sqrt d)/2` (`sigma = d mod 4`) as a continued
/// fraction in exact arithmetic. With convergents `p_k/q_k` the algebraic
/// integer `p_k - q_k omega'` has norm `(-1)^(k+1) Q_(k+1)/2`, so units show
/// up exactly when the complete-quotient denominator returns to 2.
pub fn pell_fundamental(d: i64) -> Result<PellData> {
    let d = check_real_discriminant(d)?;
    let sigma = d % 4;
    let s = isqrt(d) as i128;
    let di = d as i128;
    let (mut big_p, mut big_q) = (sigma as i128, 2i128);
    let (mut p_prev, mut p_cur) = (BigUint::zero(), BigUint::one());
    let (mut q_prev, mut q_cur) = (BigUint::one(), BigUint::zero());
    let four = BigUint::from(4u32);
    let db = BigUint::from(d);
    loop {
        let a = (big_p + s).div_euclid(big_q);
        let ab = BigUint::from(a as u64);
        let p_next = &ab * &p_cur + &p_prev;
        let q_next = &ab * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        big_p = a * big_q - big_p;
        big_q = (di - big_p * big_p) / big_q;
        if big_q == 2 {
            // t = 2p - sigma q is positive since p/q approximates omega > sigma/2
            let t = (&p_cur << 1u32) - &q_cur * BigUint::from(sigma);
            let lhs = &t * &t;
            let rhs = &db * &q_cur * &q_cur;
            if lhs == rhs.clone() + &four {
                let log_eps = log_eps(&t);
                return Ok(PellData { d, t, u: q_cur, log_eps });
            }
        }
    }
}

/// `ln eps = ln t + ln((1 + sqrt(1 - 4/t^2))/2)`, with `ln t` read off the
/// leading 64 bits of `t` and its bit length.
fn log_eps(t: &BigUint) -> f64 {
    let ln_t = ln_biguint(t);
    let r = 4.0 * (-2.0 * ln_t).exp();
    ln_t + ((1.0 + (1.0 - r).sqrt()) / 2.0).ln()
}

/// Natural logarithm of a positive big integer without converting the whole
/// value to floating point.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let top = (n >> shift).to_u64().expect("top 64 bits fit");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}
