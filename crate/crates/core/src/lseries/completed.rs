use std::f64::consts::PI;

use num_complex::Complex64;

use super::l_delta;
use crate::arith::decompose_discriminant;
use crate::error::{Error, Result};
use crate::special::{cpow_real, gamma, is_gamma_pole};

/// `Lambda(s, delta) = (|delta|/pi)^(s/2) Gamma((s+a)/2) L(s, delta)`, with
/// `a = 0` for `D > 0` and `a = 1` for `D < 0`.
pub fn completed_l(s: Complex64, delta: i64) -> Result<Complex64> {
    let dec = decompose_discriminant(delta)?;
    let a = if dec.fundamental > 0 { 0.0 } else { 1.0 };
    let g_arg = (s + a) / 2.0;
    if is_gamma_pole(g_arg) {
        return Err(Error::domain("s", format!("Gamma((s+{a})/2) has a pole at s = {s}")));
    }
    let l = l_delta(s, delta)?.value;
    Ok(cpow_real(delta.unsigned_abs() as f64 / PI, s / 2.0) * gamma(g_arg) * l)
}

/// `|Lambda(s, delta) - Lambda(1-s, delta)|`.
pub fn functional_equation_residual(s: Complex64, delta: i64) -> Result<f64> {
    Ok((completed_l(s, delta)? - completed_l(1.0 - s, delta)?).norm())
}
