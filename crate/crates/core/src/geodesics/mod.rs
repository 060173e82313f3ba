//! Prime geodesic counting on the modular surface.
//!
//! `Psi(x)` is computed two ways: from class numbers and fundamental units
//! (reduced-form cycles and continued fractions), and from the L-values
//! `L(1, n^2 - 4)` summed over traces. A primitive hyperbolic class of
//! discriminant `d` has norm `eps_d^2`; its trace is the fundamental Pell
//! trace `t_d`.

mod oracle;
mod table;
mod trace;

pub use oracle::{primitive_classes, PrimitiveClass};
pub use table::{GeodesicTable, Jump};
pub use trace::{trace_l_value, TraceLValue};

use serde::Serialize;

use crate::arith::{class_number, factorize, pell_fundamental};
use crate::error::{Error, Result};

/// `((n + sqrt(n^2-4))/2)^2`, the norm of a class of trace `n`.
pub fn trace_to_norm(n: u64) -> Result<f64> {
    if n <= 2 {
        return Err(Error::domain("n", format!("trace {n} is not hyperbolic")));
    }
    Ok(norm_unchecked(n))
}

/// Uses `N + 1/N = n^2 - 2` for one correction step, so large norms are
/// accurate to the last bit.
#[inline]
pub(crate) fn norm_unchecked(n: u64) -> f64 {
    let nf = n as f64;
    let m = nf * nf - 2.0;
    let lam = (nf + (nf * nf - 4.0).sqrt()) / 2.0;
    m - 1.0 / (lam * lam)
}

/// `X = sqrt x + 1/sqrt x`; a class has norm at most `x` iff its trace is at
/// most `X`.
pub fn trace_bound(x: f64) -> f64 {
    x.sqrt() + 1.0 / x.sqrt()
}

/// Largest trace whose norm is at most `x`.
pub(crate) fn max_trace(x: f64) -> u64 {
    let mut n = trace_bound(x).floor().max(2.0) as u64 + 1;
    while n > 2 && norm_unchecked(n) > x {
        n -= 1;
    }
    n
}

/// One term `d f^2 = n^2 - 4` of a [`GeodesicClassRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassEntry {
    pub d: u64,
    pub f: u64,
    pub h: u64,
    pub log_eps: f64,
}

/// All discriminants `d` with `d f^2 = n^2 - 4`, with class numbers and
/// regulators from the form/Pell side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicClassRecord {
    pub n: u64,
    pub delta: u64,
    pub decompositions: Vec<ClassEntry>,
    /// `sum h(d) log eps_d`.
    pub total_a: f64,
}

/// Class data for the trace `n`.
pub fn class_record(n: u64) -> Result<GeodesicClassRecord> {
    if n <= 2 {
        return Err(Error::domain("n", format!("trace {n} is not hyperbolic")));
    }
    let delta = n * n - 4;
    let fac = factorize(delta)?;
    let mut decompositions = Vec::new();
    for f in fac.divisors() {
        if f * f > delta || !delta.is_multiple_of(f * f) {
            continue;
        }
        let d = delta / (f * f);
        if !matches!(d % 4, 0 | 1) {
            continue;
        }
        let h = class_number(d as i64)?.h;
        let log_eps = pell_fundamental(d as i64)?.log_eps;
        decompositions.push(ClassEntry { d, f, h, log_eps });
    }
    decompositions.sort_by_key(|e| e.f);
    let total_a = decompositions.iter().map(|e| e.h as f64 * e.log_eps).sum();
    Ok(GeodesicClassRecord { n, delta, decompositions, total_a })
}

/// Which pipeline computes `Psi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PsiMethod {
    /// `2 sum_{n <= X} sqrt(n^2-4) L(1, n^2-4)`.
    Lvalue,
    /// `sum_d h(d) log(eps_d^2) #{j : eps_d^(2j) <= x}`.
    Oracle,
}

/// Counting functions at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountSnapshot {
    pub x: f64,
    pub psi: f64,
    /// `sum h(d)` over `d` with `eps_d^2 <= x`.
    pub pi_primitive: u64,
    pub li_x: f64,
    /// `pi_primitive - li(x)`.
    pub error_term: f64,
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::domain("x", format!("{x} must be a finite value >= 2")));
    }
    Ok(())
}

/// `Psi(x)` by the chosen method together with `pi(x)`.
pub fn psi(x: f64, method: PsiMethod) -> Result<CountSnapshot> {
    check_x(x)?;
    let table = GeodesicTable::build(x)?;
    Ok(table.snapshot(x, method))
}

/// `pi(x)`, the number of primitive classes of norm at most `x`.
pub fn pi_primitive(x: f64) -> Result<CountSnapshot> {
    check_x(x)?;
    let table = GeodesicTable::build_oracle(x)?;
    Ok(table.snapshot(x, PsiMethod::Oracle))
}

/// Logarithmic integral for `x > 1`.
pub fn li(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::domain("x", format!("li needs x > 1, got {x}")));
    }
    Ok(crate::special::li(x))
}

/// A row of [`error_table`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorRow {
    pub x: f64,
    /// `Psi(x) - x`.
    pub psi_err: f64,
    /// `pi(x) - li(x)`.
    pub pi_err: f64,
    /// `pi_err / x^(25/36)`.
    pub normalized: f64,
}

/// Error terms at ascending `x` values from a single table.
pub fn error_table(xs: &[f64]) -> Result<Vec<ErrorRow>> {
    for &x in xs {
        check_x(x)?;
    }
    if xs.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("x_values", "must be ascending"));
    }
    let Some(&top) = xs.last() else {
        return Ok(Vec::new());
    };
    let table = GeodesicTable::build(top)?;
    Ok(xs.iter().map(|&x| table.error_row(x)).collect())
}
