use num_complex::Complex64;

use super::dirichlet::{dirichlet_l, l1_with_method};
use super::{t_factor, LMethod, LSubject, LValue, LambdaTable, Truncation};
use crate::arith::discriminant::{decompose_allowing_squares, is_discriminant};
use crate::arith::{chi, decompose_discriminant, factorize, mobius, DiscriminantDecomposition};
use crate::error::{Error, Result};
use crate::special::{cpow_real, em_cutoff, riemann_zeta, EM_ORDER};

/// `T_l^(D)(1)` from the prime factorization of `l`.
pub(crate) fn t_factor_at_one(d: i64, l_factors: &[(u64, u32)]) -> f64 {
    l_factors
        .iter()
        .map(|&(p, k)| {
            let pf = p as f64;
            let tau = |j: u32| {
                let mut sum = 0.0;
                let mut pw = 1.0;
                for _ in 0..=j {
                    sum += pw;
                    pw /= pf;
                }
                pf.powf(j as f64 / 2.0) * sum
            };
            tau(k) - chi(d, p) as f64 / pf.sqrt() * tau(k - 1)
        })
        .product()
}

/// `L(1, delta) = l^(-1/2) T_l(1) L(1, chi_D)` for a decomposed discriminant.
pub(crate) fn l_one_decomposed(dec: &DiscriminantDecomposition, l_factors: &[(u64, u32)]) -> (f64, LMethod, u64) {
    let (l1, method, terms) = l1_with_method(dec.fundamental);
    let t = t_factor_at_one(dec.fundamental, l_factors);
    (t * l1 / (dec.conductor as f64).sqrt(), method, terms)
}

/// `L(1, delta)` for a non-square nonzero discriminant.
pub fn l_one(delta: i64) -> Result<f64> {
    let dec = decompose_discriminant(delta)?;
    let lf = factorize(dec.conductor)?;
    Ok(l_one_decomposed(&dec, lf.factors()).0)
}

fn zeta_two_s_minus_one(s: Complex64) -> Result<LValue> {
    let w = 2.0 * s - 1.0;
    if w == Complex64::new(1.0, 0.0) {
        return Err(Error::domain("s", "L(s, 0) = zeta(2s-1) has a pole at s = 1"));
    }
    Ok(LValue {
        s,
        subject: LSubject::Delta(0),
        value: riemann_zeta(w),
        method: LMethod::ClosedForm,
        truncation: Truncation { em_cutoff: Some(em_cutoff(w)), em_order: Some(EM_ORDER), ..Default::default() },
        outside_convergence: false,
    })
}

/// `L(s, delta) = l^(1/2-s) T_l^(D)(s) L(s, chi_D)`; `delta = 0` gives
/// `zeta(2s-1)`.
pub fn l_delta(s: Complex64, delta: i64) -> Result<LValue> {
    if delta == 0 {
        return zeta_two_s_minus_one(s);
    }
    let dec = decompose_discriminant(delta)?;
    let l = dec.conductor;
    if s == Complex64::new(1.0, 0.0) {
        let lf = factorize(l)?;
        let (v, _, terms) = l_one_decomposed(&dec, lf.factors());
        return Ok(LValue {
            s,
            subject: LSubject::Delta(delta),
            value: v.into(),
            method: LMethod::ClosedForm,
            truncation: Truncation { terms: Some(terms), ..Default::default() },
            outside_convergence: false,
        });
    }
    let chi_l = dirichlet_l(s, dec.fundamental)?;
    let t = t_factor(l, dec.fundamental, s).value;
    Ok(LValue {
        s,
        subject: LSubject::Delta(delta),
        value: cpow_real(l as f64, 0.5 - s) * t * chi_l.value,
        method: LMethod::ClosedForm,
        truncation: chi_l.truncation,
        outside_convergence: false,
    })
}

/// `sum_{q <= Q} lambda_q(delta) q^-s`; flagged when `Re s <= 1`.
pub fn l_delta_partial(s: Complex64, delta: i64, q_max: u64) -> Result<LValue> {
    let table = LambdaTable::new(delta, q_max)?;
    let value = if s.im == 0.0 {
        let sr = s.re;
        Complex64::from(table.iter().map(|(q, v)| v as f64 * (q as f64).powf(-sr)).sum::<f64>())
    } else {
        table.iter().map(|(q, v)| v as f64 * cpow_real(q as f64, -s)).sum()
    };
    Ok(LValue {
        s,
        subject: LSubject::Delta(delta),
        value,
        method: LMethod::PartialSeries,
        truncation: Truncation { q_max: Some(q_max), ..Default::default() },
        outside_convergence: s.re <= 1.0,
    })
}

/// `L(s, chi_d)` for a non-square discriminant `d = D r^2`, as
/// `L(s, chi_D) sum_{u | r} mu(u) chi_D(u) u^-s`.
pub fn imprimitive_l(s: Complex64, d: i64) -> Result<LValue> {
    if !is_discriminant(d) || d == 0 {
        return Err(Error::domain("d", format!("{d} is not a nonzero discriminant")));
    }
    let dec = decompose_allowing_squares(d)?;
    if dec.fundamental == 1 {
        return Err(Error::PerfectSquare(d));
    }
    let base = dirichlet_l(s, dec.fundamental)?;
    let corr: Complex64 = factorize(dec.conductor)?
        .divisors()
        .into_iter()
        .map(|u| (mobius(u) * chi(dec.fundamental, u) as i64) as f64 * cpow_real(u as f64, -s))
        .sum();
    Ok(LValue { subject: LSubject::Character(d), value: base.value * corr, ..base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lseries::dirichlet::l1_log_sin;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spec_examples() {
        let one = c(1.0, 0.0);
        let v = l_delta(one, 5).unwrap();
        assert_eq!(v.method, LMethod::ClosedForm);
        assert!((v.re() - l1_log_sin(5).unwrap()).abs() < 1e-15);
        let v = l_delta(one, 32).unwrap();
        assert!((v.re() - 1.5 * l1_log_sin(8).unwrap()).abs() < 1e-14);
        assert!((v.re() - 0.934_837_860_210_345_8).abs() < 1e-12);
        let exact = l_delta(c(2.0, 0.0), 12).unwrap().re();
        let partial = l_delta_partial(c(2.0, 0.0), 12, 200_000).unwrap().re();
        assert!((exact - partial).abs() < 1e-8, "{exact} vs {partial}");
        assert!(l_delta(one, 16).is_err());
        assert!(l_delta(one, 0).is_err());
    }

    #[test]
    fn partial_examples() {
        let p = l_delta_partial(c(2.0, 0.0), 5, 1).unwrap();
        assert_eq!(p.value, c(1.0, 0.0));
        assert_eq!(p.truncation.q_max, Some(1));
        let p = l_delta_partial(c(2.0, 0.0), 5, 10_000).unwrap();
        assert!((p.re() - l_delta(c(2.0, 0.0), 5).unwrap().re()).abs() < 1e-6);
        let p = l_delta_partial(c(2.0, 0.0), 0, 10_000).unwrap();
        assert!((p.re() - 1.202_056_903_159_594_3).abs() < 1e-3);
        assert!(!p.outside_convergence);
        assert!(l_delta_partial(c(1.0, 0.0), 5, 10).unwrap().outside_convergence);
    }

    #[test]
    fn zero_delta_is_shifted_zeta() {
        let v = l_delta(c(1.5, 0.0), 0).unwrap();
        assert!((v.re() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
    }

    #[test]
    fn l_one_matches_closed_form() {
        for n in 3..200i64 {
            let d = n * n - 4;
            let a = l_one(d).unwrap();
            let b = l_delta(c(1.0, 0.0), d).unwrap().re();
            assert_eq!(a, b);
        }
        assert!((l_one(-4).unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        // -16 = -4 * 2^2 and chi_-4(2) = 0, so l^(-1/2) T_2(1) = 3/2
        assert!((l_one(-16).unwrap() - 1.5 * std::f64::consts::FRAC_PI_4).abs() < 1e-14);
    }

    #[test]
    fn partial_series_converges_right_of_one() {
        for delta in [5i64, 12, 21, 32, 45, 77, -3, -15] {
            for s in [c(2.0, 0.0), c(3.0, 1.0), c(2.5, -4.0)] {
                let a = l_delta(s, delta).unwrap().value;
                let b = l_delta_partial(s, delta, 50_000).unwrap().value;
                assert!((a - b).norm() < 1e-6, "delta={delta} s={s}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn imprimitive_examples() {
        // d = 20 = 5 * 2^2: L(s,chi_5) (1 - chi_5(2) 2^-s) = L(s,chi_5)(1 + 2^-s)
        let s = c(2.0, 0.0);
        let a = imprimitive_l(s, 20).unwrap().re();
        let b = dirichlet_l(s, 5).unwrap().re() * 1.25;
        assert!((a - b).abs() < 1e-14);
        assert!(imprimitive_l(s, 9).is_err());
        assert_eq!(imprimitive_l(s, 5).unwrap().value, dirichlet_l(s, 5).unwrap().value);
    }
}
