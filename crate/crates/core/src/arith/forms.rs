//! Class numbers of indefinite binary quadratic forms by counting cycles of
//! reduced forms. Shares nothing with the L-series code.

use std::collections::HashMap;

use num_integer::Integer;

use crate::arith::factor::isqrt;
use crate::arith::pell::check_real_discriminant;
use crate::error::Result;

/// A form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// `0 < b < sqrt d` and `sqrt d - b < 2|a| < sqrt d + b`, exactly.
    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        let (a2, b) = (2 * self.a.abs(), self.b);
        d > 0 && b > 0 && b * b < d && (a2 + b) * (a2 + b) > d && (a2 <= b || (a2 - b) * (a2 - b) < d)
    }

    /// One Gauss reduction step `(a,b,c) -> (c, b', c')` with
    /// `b' = -b (mod 2|c|)` and `sqrt d - 2|c| < b' < sqrt d`.
    pub fn rho(&self, sqrt_floor: i64) -> Form {
        let d = self.discriminant();
        let m = 2 * self.c.abs();
        let b = sqrt_floor - (sqrt_floor + self.b).rem_euclid(m);
        let c = (b * b - d) / (4 * self.c);
        Form { a: self.c, b, c }
    }
}

/// Class-number data for a positive non-square discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormClassData {
    pub d: u64,
    /// Proper (narrow) class number.
    pub h: u64,
    pub reduced_cycle_count: u64,
    pub reduced_form_count: u64,
}

/// All primitive reduced forms of discriminant `d`.
pub fn reduced_forms(d: i64) -> Result<Vec<Form>> {
    let du = check_real_discriminant(d)?;
    let s = isqrt(du) as i64;
    let mut out = Vec::new();
    let start = if d % 2 == 0 { 2 } else { 1 };
    for b in (start..=s).step_by(2) {
        let n = (d - b * b) / 4;
        // 2a + b > sqrt d  and  2a - b < sqrt d
        let mut a = ((s - b) / 2).max(1);
        while (2 * a + b) * (2 * a + b) <= d {
            a += 1;
        }
        while 2 * a <= b || (2 * a - b) * (2 * a - b) < d {
            if n % a == 0 {
                let c = n / a;
                let f = Form { a, b, c: -c };
                if f.is_primitive() {
                    out.push(f);
                    out.push(Form { a: -a, b, c });
                }
            }
            a += 1;
        }
    }
    Ok(out)
}

/// Narrow class number `h(d)` as the number of rho-cycles of reduced forms.
pub fn class_number(d: i64) -> Result<FormClassData> {
    let forms = reduced_forms(d)?;
    let s = isqrt(d as u64) as i64;
    let index: HashMap<Form, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut seen = vec![false; forms.len()];
    let mut cycles = 0u64;
    for start in 0..forms.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            let next = forms[i].rho(s);
            i = *index.get(&next).expect("rho maps reduced forms to reduced forms");
        }
    }
    Ok(FormClassData {
        d: d as u64,
        h: cycles,
        reduced_cycle_count: cycles,
        reduced_form_count: forms.len() as u64,
    })
}
