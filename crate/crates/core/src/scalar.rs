//! Exact scalars and weights.
//!
//! Coefficients are arbitrary precision rationals; weights are small exact
//! rationals (module weights live in `(λ,λ)/2 + Z`).

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

pub type Scalar = BigRational;
pub type Weight = Rational64;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn weight_int(n: i64) -> Weight {
    Weight::from_integer(n)
}

/// Largest integer `k` with `k <= w`.
pub fn floor(w: Weight) -> i64 {
    w.floor().to_integer()
}

pub fn weight_to_scalar(w: Weight) -> Scalar {
    ratio(*w.numer(), *w.denom())
}

/// Generalized binomial coefficient `C(a, i)` for any integer `a` and `i >= 0`.
pub fn binom(a: i64, i: i64) -> Scalar {
    if i < 0 {
        return Scalar::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..i {
        num *= BigInt::from(a - j);
        den *= BigInt::from(j + 1);
    }
    Scalar::new(num, den)
}

/// `"p/q"` serialization used by reports; integers print without a denominator.
pub fn fmt_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub fn fmt_weight(w: &Weight) -> String {
    if *w.denom() == 1 {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_weight(s: &str) -> Option<Weight> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Weight::new(p.trim().parse().ok()?, q))
        }
        None => Some(Weight::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_binomials() {
        assert_eq!(binom(5, 2), int(10));
        assert_eq!(binom(-1, 3), int(-1));
        assert_eq!(binom(-2, 2), int(3));
        assert_eq!(binom(2, 3), int(0));
        assert_eq!(binom(7, 0), int(1));
    }

    #[test]
    fn weight_parsing() {
        assert_eq!(parse_weight("1/4"), Some(Weight::new(1, 4)));
        assert_eq!(parse_weight(" 6 "), Some(Weight::from_integer(6)));
        assert_eq!(parse_weight("1/0"), None);
        assert_eq!(fmt_weight(&Weight::new(9, 4)), "9/4");
        assert_eq!(fmt_scalar(&ratio(-6, 4)), "-3/2");
    }
}
