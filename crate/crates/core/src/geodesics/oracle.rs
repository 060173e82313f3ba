use crate::arith::{class_number, pell_fundamental};
use crate::error::Result;
use crate::parallel::ordered_map;

/// A discriminant `d` with its primitive hyperbolic classes: `h(d)` classes
/// of trace `t` and norm `eps_d^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveClass {
    pub d: u64,
    /// Fundamental trace `t_d`.
    pub t: u64,
    pub h: u64,
    pub log_eps: f64,
}

impl PrimitiveClass {
    /// Traces `t_j` of `eps_d^j`, `j >= 1`, while `t_j <= t_max`.
    pub fn power_traces(&self, t_max: u64) -> impl Iterator<Item = u64> {
        let t = self.t as u128;
        let mut prev = 2u128;
        let mut cur = t;
        std::iter::from_fn(move || {
            if cur > t_max as u128 {
                return None;
            }
            let out = cur as u64;
            let next = t * cur - prev;
            prev = cur;
            cur = next;
            Some(out)
        })
    }
}

/// Discriminants whose fundamental solution of `t^2 - d u^2 = 4` has trace
/// `t`, found from the factorizations `t^2 - 4 = d u^2`.
fn classes_with_trace(t: u64) -> Result<Vec<PrimitiveClass>> {
    let m = t * t - 4;
    let mut out = Vec::new();
    let mut u = 1u64;
    while u * u <= m {
        if m.is_multiple_of(u * u) {
            let d = m / (u * u);
            if matches!(d % 4, 0 | 1) {
                let pell = pell_fundamental(d as i64)?;
                if pell.trace_u64() == Some(t) {
                    let h = class_number(d as i64)?.h;
                    out.push(PrimitiveClass { d, t, h, log_eps: pell.log_eps });
                }
            }
        }
        u += 1;
    }
    out.sort_by_key(|c| c.d);
    Ok(out)
}

/// All discriminants with fundamental trace `3 <= t_d <= t_max`, ordered by
/// trace then discriminant.
pub fn primitive_classes(t_max: u64) -> Result<Vec<PrimitiveClass>> {
    if t_max < 3 {
        return Ok(Vec::new());
    }
    let parts = ordered_map(3, t_max + 1, classes_with_trace);
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}
