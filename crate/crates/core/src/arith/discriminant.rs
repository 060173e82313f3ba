use crate::arith::factor::{factorize, Factorization};
use crate::error::{Error, Result};

/// `delta = fundamental * conductor^2` with `fundamental` a fundamental
/// discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiscriminantDecomposition {
    pub delta: i64,
    pub fundamental: i64,
    pub conductor: u64,
}

/// `true` when `d = 0 or 1 (mod 4)`.
pub fn is_discriminant(d: i64) -> bool {
    matches!(d.rem_euclid(4), 0 | 1)
}

/// `true` when `d` is the discriminant of a quadratic field.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let Ok(f) = factorize(d.unsigned_abs()) else {
        return false;
    };
    match d.rem_euclid(4) {
        1 => f.is_squarefree(),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && factorize(m.unsigned_abs()).is_ok_and(|g| g.is_squarefree())
        }
        _ => false,
    }
}

/// Splits a nonzero discriminant into fundamental part and conductor.
///
/// Positive squares have no quadratic character and yield
/// [`Error::PerfectSquare`].
pub fn decompose_discriminant(delta: i64) -> Result<DiscriminantDecomposition> {
    let dec = decompose_allowing_squares(delta)?;
    if dec.fundamental == 1 {
        return Err(Error::PerfectSquare(delta));
    }
    Ok(dec)
}

/// Like [`decompose_discriminant`] but maps a positive square `l^2` to
/// `(1, l)`; the trivial character then plays the role of `chi_D`.
pub(crate) fn decompose_allowing_squares(delta: i64) -> Result<DiscriminantDecomposition> {
    if delta == 0 {
        return Err(Error::domain("delta", "zero has no decomposition"));
    }
    if !is_discriminant(delta) {
        return Err(Error::domain("delta", format!("{delta} is not 0 or 1 mod 4")));
    }
    let f = factorize(delta.unsigned_abs())?;
    Ok(decompose_with(delta, &f))
}

/// Decomposition from a known factorization of `|delta|`.
pub(crate) fn decompose_with(delta: i64, f: &Factorization) -> DiscriminantDecomposition {
    let (core, root) = f.squarefree_split();
    let signed_core = if delta < 0 { -(core as i64) } else { core as i64 };
    let (fundamental, conductor) = if signed_core.rem_euclid(4) == 1 {
        (signed_core, root)
    } else {
        debug_assert!(root % 2 == 0);
        (4 * signed_core, root / 2)
    };
    DiscriminantDecomposition { delta, fundamental, conductor }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let d = decompose_discriminant(5).unwrap();
        assert_eq!((d.fundamental, d.conductor), (5, 1));
        let d = decompose_discriminant(32).unwrap();
        assert_eq!((d.fundamental, d.conductor), (8, 2));
        let d = decompose_discriminant(45).unwrap();
        assert_eq!((d.fundamental, d.conductor), (5, 3));
    }

    #[test]
    fn negative_and_error_cases() {
        let d = decompose_discriminant(-16).unwrap();
        assert_eq!((d.fundamental, d.conductor), (-4, 2));
        let d = decompose_discriminant(-27).unwrap();
        assert_eq!((d.fundamental, d.conductor), (-3, 3));
        assert!(matches!(decompose_discriminant(7), Err(Error::Domain { .. })));
        assert!(matches!(decompose_discriminant(0), Err(Error::Domain { .. })));
        assert_eq!(decompose_discriminant(36), Err(Error::PerfectSquare(36)));
        assert_eq!(decompose_allowing_squares(36).unwrap().conductor, 6);
    }

    #[test]
    fn fundamental_recognition() {
        let fund: Vec<i64> = (-30..=30).filter(|&d| is_fundamental(d)).collect();
        assert_eq!(
            fund,
            vec![-24, -23, -20, -19, -15, -11, -8, -7, -4, -3, 5, 8, 12, 13, 17, 21, 24, 28, 29]
        );
    }
}
