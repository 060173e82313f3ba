use proptest::prelude::*;

use prime_geodesic::arith::{factorize, is_discriminant, kronecker};
use prime_geodesic::kloosterman::kloosterman_sum;
use prime_geodesic::lseries::rho;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #[test]
    fn kronecker_is_multiplicative_in_the_top(a in -500i64..500, m in 1i64..200, n in 1i64..200) {
        prop_assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
    }

    #[test]
    fn kloosterman_symmetries(m in -40i64..40, n in -40i64..40, q in 1u64..300) {
        let s = kloosterman_sum(m, n, q).value;
        prop_assert!((s - kloosterman_sum(n, m, q).value).abs() < 1e-9);
        prop_assert!((s - kloosterman_sum(-m, -n, q).value).abs() < 1e-9);
        prop_assert!((s - kloosterman_sum(m + q as i64, n, q).value).abs() < 1e-9);
    }

    #[test]
    fn twisted_kloosterman_sums_agree(m in 1i64..40, a in 1u64..60, q in 2u64..200) {
        prop_assume!(gcd(a, q) == 1);
        // S(ma, n; q) = S(m, na; q) for a coprime to q
        let lhs = kloosterman_sum(m * a as i64, 1, q).value;
        let rhs = kloosterman_sum(m, a as i64, q).value;
        prop_assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn rho_is_multiplicative(delta in -2000i64..2000, q1 in 1u64..60, q2 in 1u64..60) {
        prop_assume!(is_discriminant(delta) && gcd(q1, q2) == 1);
        prop_assert_eq!(rho(q1 * q2, delta).unwrap(), rho(q1, delta).unwrap() * rho(q2, delta).unwrap());
    }

    #[test]
    fn factorization_reassembles(n in 1u64..10_000_000_000) {
        let f = factorize(n).unwrap();
        let back: u64 = f.factors().iter().map(|&(p, k)| p.pow(k)).product();
        prop_assert_eq!(back, n);
    }
}
