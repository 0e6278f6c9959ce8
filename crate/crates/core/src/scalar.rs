//! Exact rational scalars. The ground field is Q throughout; no floating
//! point appears anywhere in the engine.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, always reduced to lowest terms with a
/// positive denominator (both guaranteed by `num_rational`).
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a signed numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Lcg;
    use num_traits::{One, Signed, Zero};

    fn check_canonical(r: &Rat) {
        assert!(r.denom().is_positive(), "denominator must be positive: {r}");
        let g = num_bigint::BigInt::from(num_integer_gcd(r.numer(), r.denom()));
        assert!(g.is_one() || r.numer().is_zero(), "not reduced: {r}");
    }

    // Euclid on magnitudes; avoids pulling in an extra crate for one test.
    fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
        let mut x = a.abs();
        let mut y = b.abs();
        while !y.is_zero() {
            let r = &x % &y;
            x = y;
            y = r;
        }
        if x.is_zero() {
            BigInt::one()
        } else {
            x
        }
    }

    #[test]
    fn reduced_and_positive_denominator() {
        let half = ratio(2, 4);
        assert_eq!(half, ratio(1, 2));
        check_canonical(&half);

        let neg = ratio(1, -2);
        assert_eq!(neg, ratio(-1, 2));
        check_canonical(&neg);

        let zero = ratio(0, 7);
        assert!(zero.is_zero());
        assert!(zero.denom().is_one());
    }

    #[test]
    fn random_arithmetic_stays_canonical() {
        let mut rng = Lcg::new(0x5ca1ab1e);
        for _ in 0..100 {
            let a = ratio(rng.int_between(-50, 50), rng.int_between(1, 20));
            let b = ratio(rng.int_between(-50, 50), rng.int_between(1, 20));
            check_canonical(&(&a + &b));
            check_canonical(&(&a - &b));
            check_canonical(&(&a * &b));
            if !b.is_zero() {
                check_canonical(&(&a / &b));
            }
        }
    }
}
