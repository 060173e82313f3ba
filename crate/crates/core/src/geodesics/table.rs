use std::collections::BTreeMap;

use super::{max_trace, norm_unchecked, primitive_classes, trace_l_value, CountSnapshot, ErrorRow, PrimitiveClass, PsiMethod, TraceLValue};
use crate::error::{Error, Result};
use crate::parallel::ordered_map;
use crate::special::li;

/// A jump of `Psi` at `norm`: the total `Lambda(P)` over classes of one trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub trace: u64,
    pub norm: f64,
    pub weight: f64,
}

/// Per-trace data for all traces with norm up to `x_max`, from either or both
/// pipelines.
#[derive(Debug, Clone)]
pub struct GeodesicTable {
    x_max: f64,
    t_max: u64,
    /// `n = 3..=t_max`; empty when built without L-values.
    traces: Vec<TraceLValue>,
    has_lvalues: bool,
    classes: Vec<PrimitiveClass>,
}

impl GeodesicTable {
    /// Both pipelines.
    pub fn build(x_max: f64) -> Result<Self> {
        Self::build_with_cache(x_max, &BTreeMap::new())
    }

    /// Both pipelines, taking `L(1, n^2-4)` from `cache` where present.
    pub fn build_with_cache(x_max: f64, cache: &BTreeMap<u64, TraceLValue>) -> Result<Self> {
        let mut t = Self::build_oracle(x_max)?;
        let rows = ordered_map(3, t.t_max + 1, |n| match cache.get(&n) {
            Some(e) => Ok(*e),
            None => trace_l_value(n),
        });
        t.traces = rows.into_iter().collect::<Result<_>>()?;
        t.has_lvalues = true;
        Ok(t)
    }

    /// Class-number pipeline only.
    pub fn build_oracle(x_max: f64) -> Result<Self> {
        let t_max = max_trace(x_max);
        Ok(GeodesicTable { x_max, t_max, traces: Vec::new(), has_lvalues: false, classes: primitive_classes(t_max)? })
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn t_max(&self) -> u64 {
        self.t_max
    }

    pub fn traces(&self) -> &[TraceLValue] {
        &self.traces
    }

    pub fn classes(&self) -> &[PrimitiveClass] {
        &self.classes
    }

    pub fn has_lvalues(&self) -> bool {
        self.has_lvalues
    }

    fn check(&self, x: f64) {
        assert!(x <= self.x_max, "x = {x} beyond table range {}", self.x_max);
    }

    /// `2 sum_{N(n) <= x} sqrt(n^2-4) L(1, n^2-4)`.
    pub fn psi_lvalue(&self, x: f64) -> Result<f64> {
        self.check(x);
        if !self.has_lvalues {
            return Err(Error::domain("method", "table was built without L-values"));
        }
        let mut s = 0.0;
        for t in &self.traces {
            if norm_unchecked(t.n) > x {
                break;
            }
            s += 2.0 * t.class_sum();
        }
        Ok(s)
    }

    /// `sum_d h(d) log(eps_d^2) #{j >= 1 : eps_d^(2j) <= x}`.
    pub fn psi_oracle(&self, x: f64) -> f64 {
        self.check(x);
        let mut s = 0.0;
        for c in &self.classes {
            if norm_unchecked(c.t) > x {
                break;
            }
            let count = c.power_traces(self.t_max).take_while(|&t| norm_unchecked(t) <= x).count();
            s += c.h as f64 * 2.0 * c.log_eps * count as f64;
        }
        s
    }

    /// `sum h(d)` over `d` with `eps_d^2 <= x`.
    pub fn pi(&self, x: f64) -> u64 {
        self.check(x);
        self.classes.iter().take_while(|c| norm_unchecked(c.t) <= x).map(|c| c.h).sum()
    }

    pub fn psi(&self, x: f64, method: PsiMethod) -> Result<f64> {
        match method {
            PsiMethod::Lvalue => self.psi_lvalue(x),
            PsiMethod::Oracle => Ok(self.psi_oracle(x)),
        }
    }

    /// Snapshot at `x`; `pi` always comes from class numbers.
    ///
    /// # Panics
    /// If `x` exceeds the table range, or `method` is `Lvalue` on an
    /// oracle-only table.
    pub fn snapshot(&self, x: f64, method: PsiMethod) -> CountSnapshot {
        let psi = self.psi(x, method).expect("table has the requested pipeline");
        let pi = self.pi(x);
        let li_x = li(x);
        CountSnapshot { x, psi, pi_primitive: pi, li_x, error_term: pi as f64 - li_x }
    }

    pub fn error_row(&self, x: f64) -> ErrorRow {
        let method = if self.has_lvalues { PsiMethod::Lvalue } else { PsiMethod::Oracle };
        let s = self.snapshot(x, method);
        ErrorRow { x, psi_err: s.psi - x, pi_err: s.error_term, normalized: s.error_term / x.powf(25.0 / 36.0) }
    }

    /// Jumps of `Psi` in increasing norm; from L-values when present,
    /// otherwise aggregated from class powers.
    pub fn jumps(&self) -> Vec<Jump> {
        if self.has_lvalues {
            return self
                .traces
                .iter()
                .map(|t| Jump { trace: t.n, norm: norm_unchecked(t.n), weight: 2.0 * t.class_sum() })
                .collect();
        }
        let mut by_trace: BTreeMap<u64, f64> = BTreeMap::new();
        for c in &self.classes {
            for t in c.power_traces(self.t_max) {
                *by_trace.entry(t).or_default() += 2.0 * c.h as f64 * c.log_eps;
            }
        }
        by_trace.into_iter().map(|(t, w)| Jump { trace: t, norm: norm_unchecked(t), weight: w }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipelines_agree_up_to_ten_thousand() {
        let t = GeodesicTable::build(1e4).unwrap();
        for x in [10.0, 14.0, 50.0, 99.5, 500.0, 2000.0, 9999.0, 1e4] {
            let a = t.psi_lvalue(x).unwrap();
            let b = t.psi_oracle(x);
            assert!((a - b).abs() <= 1e-9 * a.max(1.0), "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn jumps_agree_between_pipelines() {
        let both = GeodesicTable::build(3e4).unwrap();
        let oracle = GeodesicTable::build_oracle(3e4).unwrap();
        let a = both.jumps();
        let b = oracle.jumps();
        assert_eq!(a.len(), b.len());
        for (p, q) in a.iter().zip(&b) {
            assert_eq!(p.trace, q.trace);
            assert!((p.weight - q.weight).abs() < 1e-9 * p.weight);
        }
    }

    #[test]
    fn ties_count_the_jump() {
        let t = GeodesicTable::build(1e3).unwrap();
        for n in 3..30u64 {
            let x = norm_unchecked(n);
            let below = f64::from_bits(x.to_bits() - 1);
            for m in [PsiMethod::Lvalue, PsiMethod::Oracle] {
                assert!(t.psi(x, m).unwrap() > t.psi(below, m).unwrap(), "n={n} {m:?}");
            }
        }
        assert_eq!(t.pi(norm_unchecked(3)), 1);
        assert_eq!(t.pi(f64::from_bits(norm_unchecked(3).to_bits() - 1)), 0);
    }

    #[test]
    fn oracle_only_table_refuses_lvalue() {
        let t = GeodesicTable::build_oracle(100.0).unwrap();
        assert!(t.psi_lvalue(50.0).is_err());
        assert!(!t.has_lvalues());
    }
}
