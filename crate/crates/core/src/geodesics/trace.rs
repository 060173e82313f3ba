use serde::{Deserialize, Serialize};

use crate::arith::discriminant::decompose_with;
use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::lseries::l_one_decomposed;

/// `L(1, n^2 - 4)` with the decomposition `n^2 - 4 = D l^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceLValue {
    pub n: u64,
    pub delta: u64,
    #[serde(rename = "D")]
    pub fundamental: i64,
    pub l: u64,
    #[serde(rename = "L1")]
    pub l1: f64,
}

impl TraceLValue {
    /// `sqrt(n^2 - 4) L(1, n^2 - 4)`, equal to `sum h(d) log eps_d`.
    pub fn class_sum(&self) -> f64 {
        (self.delta as f64).sqrt() * self.l1
    }

    /// Checks `delta = n^2 - 4 = D l^2`.
    pub fn is_consistent(&self) -> bool {
        self.n >= 3
            && self.n.checked_mul(self.n).map(|m| m - 4) == Some(self.delta)
            && (self.fundamental as i128) * (self.l as i128) * (self.l as i128) == self.delta as i128
    }
}

/// `L(1, n^2 - 4)` by the closed form (log-sin or theta series times the
/// conductor factor).
pub fn trace_l_value(n: u64) -> Result<TraceLValue> {
    if n <= 2 {
        return Err(Error::domain("n", format!("trace {n} is not hyperbolic")));
    }
    let delta = n
        .checked_mul(n)
        .filter(|m| *m <= i64::MAX as u64)
        .ok_or_else(|| Error::domain("n", format!("trace {n} too large")))?
        - 4;
    let fac = factorize(delta)?;
    let dec = decompose_with(delta as i64, &fac);
    let lf = factorize(dec.conductor)?;
    let (l1, _, _) = l_one_decomposed(&dec, lf.factors());
    Ok(TraceLValue { n, delta, fundamental: dec.fundamental, l: dec.conductor, l1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::class_record;

    #[test]
    fn small_traces() {
        let t = trace_l_value(3).unwrap();
        assert_eq!((t.delta, t.fundamental, t.l), (5, 5, 1));
        assert!((t.l1 - 0.430_408_940_964_004_04).abs() < 1e-16);
        assert!(format!("{:.16e}", t.l1).starts_with("4.30408940964004"));
        let t = trace_l_value(6).unwrap();
        assert_eq!((t.delta, t.fundamental, t.l), (32, 8, 2));
        assert!(t.is_consistent());
        assert!(trace_l_value(2).is_err());
    }

    #[test]
    fn class_sum_matches_forms() {
        for n in 3..400u64 {
            let a = class_record(n).unwrap().total_a;
            let b = trace_l_value(n).unwrap().class_sum();
            assert!((a - b).abs() <= 1e-8 * a, "n={n}: {a} vs {b}");
        }
    }
}
