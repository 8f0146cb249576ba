//! Exact rational scalars.
//!
//! Every coefficient, weight, level and root in the crate is a [`Rational`]:
//! an arbitrary-precision fraction kept in lowest terms with a positive
//! denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

pub use num_rational::BigRational as Rational;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q` (whitespace around the parts is ignored).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Comma separated list of rationals, e.g. `"1/2, 1/3"`.
pub fn parse_rational_list(text: &str) -> Option<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

pub fn ceil_to_i64(r: &Rational) -> i64 {
    to_i64(&r.ceil().to_integer())
}

pub fn floor_to_i64(r: &Rational) -> i64 {
    to_i64(&r.floor().to_integer())
}

fn to_i64(n: &BigInt) -> i64 {
    i64::try_from(n).expect("integer part exceeds i64")
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Serializes a rational as the string `"p/q"`.
pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

pub fn serialize_rationals<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(fmt_rational))
}

pub fn serialize_matrix<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        rows.iter()
            .map(|r| r.iter().map(fmt_rational).collect::<Vec<_>>()),
    )
}

/// A rational or `+∞`; used for minimal exponents and lower bounds.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    Finite(Rational),
    Infinity,
}

impl Extended {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(r) => Some(r),
            Extended::Infinity => None,
        }
    }
}

impl std::fmt::Display for Extended {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extended::Finite(r) => f.write_str(&fmt_rational(r)),
            Extended::Infinity => f.write_str("infinity"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_storage() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(fmt_rational(&rat(0, 5)), "0");
        assert_eq!(fmt_rational(&rat(10, 5)), "2");
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-5/6"), Some(rat(-5, 6)));
        assert_eq!(parse_rational(" 3 "), Some(int(3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(
            parse_rational_list("1/2,1/3"),
            Some(vec![rat(1, 2), rat(1, 3)])
        );
    }

    #[test]
    fn ordering_with_infinity() {
        assert!(Extended::Finite(rat(100, 1)) < Extended::Infinity);
        assert_eq!(Extended::Infinity.to_string(), "infinity");
    }

    #[test]
    fn ceil_floor() {
        assert_eq!(ceil_to_i64(&rat(5, 3)), 2);
        assert_eq!(floor_to_i64(&rat(5, 3)), 1);
        assert_eq!(ceil_to_i64(&rat(-1, 2)), 0);
        assert_eq!(floor_to_i64(&rat(-1, 2)), -1);
        assert_eq!(denominator_lcm(&[rat(1, 2), rat(1, 3)]), BigInt::from(6));
    }
}
