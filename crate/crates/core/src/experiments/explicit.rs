use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Spectral parameters `t_j > 0`, ascending, multiplicity by repetition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralData {
    pub eigen_ts: Vec<f64>,
    pub source: String,
}

impl SpectralData {
    /// One decimal per line; `#` starts a comment; blank lines are skipped.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut eigen_ts = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let t: f64 = line.parse().map_err(|_| Error::Parse {
                what: "eigenvalue file".into(),
                reason: format!("{source}:{}: `{line}` is not a number", i + 1),
            })?;
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Parse {
                    what: "eigenvalue file".into(),
                    reason: format!("{source}:{}: t = {t} must be positive and finite", i + 1),
                });
            }
            if eigen_ts.last().is_some_and(|&p| t < p) {
                return Err(Error::Parse {
                    what: "eigenvalue file".into(),
                    reason: format!("{source}:{}: values must be ascending", i + 1),
                });
            }
            eigen_ts.push(t);
        }
        Ok(SpectralData { eigen_ts, source: source.to_string() })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }
}

/// Truncated explicit formula at `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExplicitFormula {
    pub x: f64,
    pub t: f64,
    /// `x + 2 Re sum_{0 < t_j <= T} x^(1/2 + i t_j) / (1/2 + i t_j)`.
    pub approx: f64,
    /// `(x/T) ln^2 x`.
    pub truncation_term: f64,
    pub terms: usize,
    /// `1 <= T <= sqrt x / ln^2 x`.
    pub t_in_range: bool,
}

/// `x + 2 Re sum x^(s_j)/s_j` over `s_j = 1/2 + i t_j`, `t_j <= T`.
pub fn explicit_formula(x: f64, spectra: &SpectralData, t: f64) -> Result<ExplicitFormula> {
    if !(x > 1.0) {
        return Err(Error::domain("x", format!("{x} must exceed 1")));
    }
    if !(t > 0.0) {
        return Err(Error::domain("T", format!("{t} must be positive")));
    }
    let lx = x.ln();
    let mut sum = 0.0;
    let mut terms = 0;
    for &tj in spectra.eigen_ts.iter().take_while(|&&tj| tj <= t) {
        let s = Complex64::new(0.5, tj);
        sum += ((s * lx).exp() / s).re;
        terms += 1;
    }
    Ok(ExplicitFormula {
        x,
        t,
        approx: x + 2.0 * sum,
        truncation_term: x / t * lx * lx,
        terms,
        t_in_range: (1.0..=x.sqrt() / (lx * lx)).contains(&t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_spectrum_gives_x() {
        let s = SpectralData::parse("# no data\n\n", "mem").unwrap();
        assert!(s.eigen_ts.is_empty());
        assert_eq!(explicit_formula(100.0, &s, 5.0).unwrap().approx, 100.0);
    }

    #[test]
    fn single_term() {
        let s = SpectralData::parse("9.5336952613535575543\n", "mem").unwrap();
        let r = explicit_formula(100.0, &s, 20.0).unwrap();
        let sj = Complex64::new(0.5, 9.533_695_261_353_557);
        let direct = 2.0 * (Complex64::new(100.0, 0.0).powc(sj) / sj).re;
        assert!((r.approx - 100.0 - direct).abs() < 1e-12);
        assert_eq!(r.terms, 1);
        assert!(!r.t_in_range);
    }

    #[test]
    fn parse_errors() {
        assert!(SpectralData::parse("3.0\n2.0\n", "mem").is_err());
        assert!(SpectralData::parse("abc\n", "mem").is_err());
        assert!(SpectralData::parse("-1\n", "mem").is_err());
        let s = SpectralData::parse("1.5 # first\n1.5\n2\n", "mem").unwrap();
        assert_eq!(s.eigen_ts, [1.5, 1.5, 2.0]);
    }

    #[test]
    fn truncation_at_t() {
        let s = SpectralData::parse("1\n2\n3\n", "mem").unwrap();
        assert_eq!(explicit_formula(1e4, &s, 2.5).unwrap().terms, 2);
    }
}
