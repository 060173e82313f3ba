/// Kronecker symbol `(a/n)` over the full integer domain.
///
/// Uses the standard extension: `(a/0) = 1` iff `|a| = 1`; `(a/-1)` is the
/// sign of `a` (with `(0/-1) = 1`); `(a/2)` is `0` for even `a`, `1` for
/// `a = +-1 mod 8`, `-1` for `a = +-3 mod 8`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return i32::from(a == 1 || a == -1);
    }
    let mut result = 1i32;
    let mut n = n as i128;
    let a = a as i128;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // n is now odd and positive
    result * jacobi(a.rem_euclid(n), n)
}

/// Jacobi symbol `(a/n)` for odd positive `n` and `0 <= a < n`.
fn jacobi(mut a: i128, mut n: i128) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut result = 1;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// `chi_D(n)` for a discriminant `D` and positive `n`; the real character
/// attached to `D` (primitive when `D` is fundamental).
pub fn chi(d: i64, n: u64) -> i32 {
    kronecker(d, n as i64)
}

/// Table of `chi_D(a)` for `a in 0..|D|`.
pub fn character_table(d: i64) -> Vec<i8> {
    let m = d.unsigned_abs();
    (0..m).map(|a| kronecker(d, a as i64) as i8).collect()
}
