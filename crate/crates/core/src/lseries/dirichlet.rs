use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::{LMethod, LSubject, LValue, Truncation};
use crate::arith::{is_fundamental, kronecker, SpfSieve};
use crate::error::{Error, Result};
use crate::special::{
    em_cutoff, erfc, exp_int_e1, hurwitz_tail, CompensatedSum, EM_ORDER,
};

/// Largest conductor evaluated at `s = 1` by the log-sin sum; beyond it the
/// theta series is used.
pub const LOG_SIN_MAX_CONDUCTOR: u64 = 1 << 22;

/// Theta-series terms are dropped once `pi n^2 / D` exceeds this.
const THETA_CUTOFF: f64 = 42.0;

fn sieve() -> &'static SpfSieve {
    static SIEVE: OnceLock<SpfSieve> = OnceLock::new();
    SIEVE.get_or_init(|| SpfSieve::new((LOG_SIN_MAX_CONDUCTOR / 2) as usize))
}

/// `chi_D(a)` for `a in 0..len`, completely multiplicative from the primes.
fn chi_prefix(d: i64, len: usize) -> Vec<i8> {
    let mut t = vec![0i8; len];
    if len > 1 {
        t[1] = 1;
    }
    let sv = sieve();
    for a in 2..len {
        if a > sv.limit() {
            t[a] = kronecker(d, a as i64) as i8;
            continue;
        }
        let p = sv.smallest_factor(a);
        t[a] = if p == a { kronecker(d, a as i64) as i8 } else { t[p] * t[a / p] };
    }
    t
}

fn check_character(d: i64) -> Result<()> {
    if d == 1 {
        return Err(Error::domain("D", "the trivial character has a pole at s = 1"));
    }
    if !is_fundamental(d) {
        return Err(Error::domain("D", format!("{d} is not a fundamental discriminant")));
    }
    Ok(())
}

/// `L(1, chi_D) = -(2/sqrt D) sum_{a < D/2} chi_D(a) ln sin(pi a / D)` for
/// fundamental `D > 1`.
pub fn l1_log_sin(d: i64) -> Result<f64> {
    check_character(d)?;
    if d < 0 {
        return Err(Error::domain("D", "log-sin form needs D > 0"));
    }
    Ok(log_sin_unchecked(d))
}

fn log_sin_unchecked(d: i64) -> f64 {
    let m = d as usize;
    let half = (m - 1) / 2;
    let chi = chi_prefix(d, half + 1);
    let step = PI / d as f64;
    let mut acc = CompensatedSum::default();
    for (a, &c) in chi.iter().enumerate().skip(1) {
        if c != 0 {
            acc.add(c as f64 * (step * a as f64).sin().ln());
        }
    }
    -2.0 * acc.value() / (d as f64).sqrt()
}

/// `L(1, chi_D) = sum_n chi_D(n) [erfc(n sqrt(pi/D))/n + E_1(pi n^2/D)/sqrt D]`
/// for fundamental `D > 1`, from the theta functional equation.
pub fn l1_theta_series(d: i64) -> Result<f64> {
    check_character(d)?;
    if d < 0 {
        return Err(Error::domain("D", "theta series implemented for D > 0"));
    }
    Ok(theta_unchecked(d).0)
}

fn theta_terms(d: i64) -> usize {
    ((THETA_CUTOFF * d as f64 / PI).sqrt().ceil() as usize).max(2)
}

fn theta_unchecked(d: i64) -> (f64, u64) {
    let df = d as f64;
    let n_max = theta_terms(d);
    let chi = chi_prefix(d, n_max + 1);
    let c = (PI / df).sqrt();
    let rd = df.sqrt();
    let mut acc = CompensatedSum::default();
    for (n, &x) in chi.iter().enumerate().skip(1) {
        if x != 0 {
            let nf = n as f64;
            acc.add(x as f64 * (erfc(nf * c) / nf + exp_int_e1(PI * nf * nf / df) / rd));
        }
    }
    (acc.value(), n_max as u64)
}

/// `L(1, chi_D) = -pi |D|^(-3/2) sum_{a < |D|} chi_D(a) a` for `D < 0`.
fn l1_negative(d: i64) -> f64 {
    let m = d.unsigned_abs() as usize;
    let chi = chi_prefix(d, m);
    let s: i64 = chi.iter().enumerate().map(|(a, &c)| c as i64 * a as i64).sum();
    -PI * s as f64 / (m as f64).powf(1.5)
}

/// `L(1, chi_D)` with the method used and the number of character terms.
pub(crate) fn l1_with_method(d: i64) -> (f64, LMethod, u64) {
    if d < 0 {
        (l1_negative(d), LMethod::ClosedForm, d.unsigned_abs())
    } else if d as u64 <= LOG_SIN_MAX_CONDUCTOR {
        (log_sin_unchecked(d), LMethod::LogSin, (d as u64 - 1) / 2)
    } else {
        let (v, n) = theta_unchecked(d);
        (v, LMethod::ThetaSeries, n)
    }
}

/// `L(s, chi_D) = |D|^-s sum_a chi_D(a) zeta(s, a/|D|)` with each Hurwitz
/// zeta summed to `n` periods and closed by an order-`order` Euler-Maclaurin
/// tail. Requires `s != 1`.
pub fn l_euler_maclaurin(s: Complex64, d: i64, n: usize, order: usize) -> Result<Complex64> {
    check_character(d)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::domain("s", "Euler-Maclaurin path excludes s = 1"));
    }
    let m = d.unsigned_abs() as usize;
    let chi = chi_prefix(d, m);
    let mf = m as f64;
    let scale = crate::special::cpow_real(mf, -s);
    let total = m * n;
    let mut head = Complex64::new(0.0, 0.0);
    let mut tail = Complex64::new(0.0, 0.0);
    if s.im == 0.0 {
        let mut acc = CompensatedSum::default();
        for j in 1..total {
            let c = chi[j % m];
            if c != 0 {
                acc.add(c as f64 * (j as f64).powf(-s.re));
            }
        }
        head.re = acc.value();
    } else {
        for j in 1..total {
            let c = chi[j % m];
            if c != 0 {
                head += c as f64 * ((-s) * (j as f64).ln()).exp();
            }
        }
    }
    for (a, &c) in chi.iter().enumerate() {
        if c != 0 {
            tail += c as f64 * hurwitz_tail(s, n as f64 + a as f64 / mf, order);
        }
    }
    Ok(head + scale * tail)
}

/// `L(s, chi_D)` for fundamental `D != 1`.
///
/// At `s = 1` closed forms are used (log-sin or theta series for `D > 0`, the
/// finite sum for `D < 0`); elsewhere Euler-Maclaurin.
pub fn dirichlet_l(s: Complex64, d: i64) -> Result<LValue> {
    check_character(d)?;
    let subject = LSubject::Character(d);
    if s == Complex64::new(1.0, 0.0) {
        let (v, method, terms) = l1_with_method(d);
        return Ok(LValue {
            s,
            subject,
            value: v.into(),
            method,
            truncation: Truncation { terms: Some(terms), ..Default::default() },
            outside_convergence: false,
        });
    }
    let n = em_cutoff(s);
    let value = l_euler_maclaurin(s, d, n, EM_ORDER)?;
    Ok(LValue {
        s,
        subject,
        value,
        method: LMethod::EulerMaclaurin,
        truncation: Truncation { em_cutoff: Some(n), em_order: Some(EM_ORDER), ..Default::default() },
        outside_convergence: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{class_number, pell_fundamental};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spec_examples() {
        let v = dirichlet_l(c(1.0, 0.0), 5).unwrap();
        assert_eq!(v.method, LMethod::LogSin);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((v.re() - 2.0 / 5f64.sqrt() * golden.ln()).abs() < 1e-14);
        assert!((v.re() - 0.430_408_940_964_004_04).abs() < 1e-14);
        let v = dirichlet_l(c(1.0, 0.0), 8).unwrap();
        assert!((v.re() - 2.0 / 8f64.sqrt() * (1.0 + 2f64.sqrt()).ln()).abs() < 1e-14);
        let v = dirichlet_l(c(2.0, 0.0), -4).unwrap();
        assert_eq!(v.method, LMethod::EulerMaclaurin);
        assert!((v.re() - 0.915_965_594_177_219).abs() < 1e-13);
        assert!(dirichlet_l(c(1.0, 0.0), 1).is_err());
        assert!(dirichlet_l(c(2.0, 0.0), 12 * 4).is_err());
    }

    #[test]
    fn negative_closed_form() {
        let v = dirichlet_l(c(1.0, 0.0), -3).unwrap();
        assert!((v.re() - PI / (3.0 * 3f64.sqrt())).abs() < 1e-14);
        assert!((dirichlet_l(c(1.0, 0.0), -4).unwrap().re() - PI / 4.0).abs() < 1e-14);
    }

    #[test]
    fn general_s_reference_values() {
        // 30-digit references from mpmath.dirichlet
        let cases = [
            (c(0.5, 3.0), 13, c(0.145_817_624_213_241_8, -0.166_949_316_686_303_48)),
            (c(-1.5, 2.0), -7, c(5.641_905_495_761_904, 3.912_577_474_482_15)),
            (c(0.3, 0.0), 12, c(0.334_487_114_244_682_5, 0.0)),
            (c(5.0, -4.0), -23, c(0.970_034_567_287_174_1, 0.006_731_478_614_047_683)),
            (c(2.0, 0.0), 1596, c(1.060_020_261_438_319_6, 0.0)),
        ];
        for (s, d, expect) in cases {
            let v = dirichlet_l(s, d).unwrap();
            assert!((v.value - expect).norm() < 1e-10, "s={s} D={d} got {}", v.value);
        }
    }

    #[test]
    fn continuation_is_continuous_at_one() {
        for d in [5i64, 8, 13, 24, -3, -4, -20] {
            let at = dirichlet_l(c(1.0, 0.0), d).unwrap().re();
            let near = dirichlet_l(c(1.0 + 1e-7, 0.0), d).unwrap().re();
            assert!((at - near).abs() < 1e-6, "D={d}");
        }
    }

    #[test]
    fn theta_series_matches_log_sin() {
        for d in [5i64, 8, 12, 13, 1596, 10_001 * 4 + 1, 999_997 * 4 + 1 - 4, 4_000_037] {
            if !is_fundamental(d) {
                continue;
            }
            let a = l1_log_sin(d).unwrap();
            let b = l1_theta_series(d).unwrap();
            assert!((a - b).abs() < 1e-12 * a.max(1.0), "D={d}: {a} vs {b}");
        }
    }

    #[test]
    fn class_number_formula_small() {
        // h(D) log eps_D = sqrt(D) L(1, chi_D)
        for d in 2..400i64 {
            if !is_fundamental(d) {
                continue;
            }
            let h = class_number(d).unwrap().h as f64;
            let eps = pell_fundamental(d).unwrap().log_eps;
            let l = l1_log_sin(d).unwrap();
            assert!((h * eps - (d as f64).sqrt() * l).abs() < 1e-10 * h * eps, "D={d}");
        }
    }

    #[test]
    fn chi_prefix_matches_kronecker() {
        for d in [5i64, -4, 12, -23, 1596] {
            let t = chi_prefix(d, 3000);
            for (a, &v) in t.iter().enumerate() {
                assert_eq!(v as i32, kronecker(d, a as i64), "D={d} a={a}");
            }
        }
    }
}
