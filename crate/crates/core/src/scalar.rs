//! Scalar abstractions shared by the integer and rational linear algebra.
//!
//! Integer code (Smith/Hermite normal forms, abelian group presentations) is
//! generic over [`IntegerScalar`]; rational code (chain complexes, ranks) is
//! generic over [`FieldScalar`]. Concrete aliases live at the crate root.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// A Euclidean integer type with exact arithmetic.
pub trait IntegerScalar:
    Integer + Signed + Clone + Debug + Display + std::hash::Hash + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;
    fn to_i64(&self) -> Option<i64>;
}

impl IntegerScalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_i64(&self) -> Option<i64> {
        Some(*self)
    }
}

impl IntegerScalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
}

impl IntegerScalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_i64(&self) -> Option<i64> {
        num_traits::ToPrimitive::to_i64(self)
    }
}

/// An exact field: zero tests are decisions, not tolerances.
pub trait FieldScalar: Num + Clone + Debug + Display + PartialEq + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> FieldScalar for Ratio<T>
where
    T: IntegerScalar,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v))
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_ratio<T: IntegerScalar + std::str::FromStr>(s: &str) -> Option<Ratio<T>> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: T = p.trim().parse().ok()?;
            let q: T = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Ratio::new(p, q))
        }
        None => Some(Ratio::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn parses_rationals() {
        let r: Ratio<BigInt> = parse_ratio("-3/6").unwrap();
        assert_eq!(r, Ratio::new(BigInt::from(-1), BigInt::from(2)));
        let r: Ratio<i64> = parse_ratio(" 7 ").unwrap();
        assert_eq!(r, Ratio::from_integer(7));
        assert!(parse_ratio::<i64>("1/0").is_none());
        assert!(parse_ratio::<i64>("x").is_none());
    }

    #[test]
    fn field_inverse() {
        let r = <Ratio<i64> as FieldScalar>::from_i64(4);
        assert_eq!(r.inv(), Ratio::new(1, 4));
    }
}
