use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::UniPoly;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, Extended, Rational};

/// Monic polynomial in `s` that splits over Q, kept as distinct roots with
/// multiplicities. The empty list is the unit `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BFunction {
    /// Sorted by decreasing root.
    factors: Vec<(Rational, u32)>,
}

impl BFunction {
    pub fn unit() -> Self {
        Self::default()
    }

    /// Merges repeated roots; zero multiplicities are dropped.
    pub fn from_factors(factors: impl IntoIterator<Item = (Rational, u32)>) -> Self {
        let mut out: Vec<(Rational, u32)> = Vec::new();
        for (r, m) in factors {
            if m == 0 {
                continue;
            }
            match out.iter_mut().find(|(x, _)| *x == r) {
                Some(e) => e.1 += m,
                None => out.push((r, m)),
            }
        }
        out.sort_by(|a, b| b.0.cmp(&a.0));
        BFunction { factors: out }
    }

    /// Factors a nonzero polynomial (made monic first).
    pub fn from_poly(p: &UniPoly) -> Result<Self> {
        Ok(Self::from_factors(p.rational_roots()?))
    }

    pub fn factors(&self) -> &[(Rational, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, r: &Rational) -> u32 {
        self.factors
            .iter()
            .find(|(x, _)| x == r)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    /// Distinct roots, decreasing.
    pub fn roots(&self) -> impl Iterator<Item = &Rational> {
        self.factors.iter().map(|(r, _)| r)
    }

    pub fn largest_root(&self) -> Option<&Rational> {
        self.factors.first().map(|(r, _)| r)
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::from_roots(self.factors.iter().map(|(r, m)| (r, *m)))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.factors
            .iter()
            .fold(Rational::one(), |acc, (r, m)| acc * num_traits::pow(x - r, *m as usize))
    }

    /// `b(s - q)`: every root moves up by `q`.
    pub fn shift_roots(&self, q: &Rational) -> BFunction {
        Self::from_factors(self.factors.iter().map(|(r, m)| (r + q, *m)))
    }

    pub fn mul(&self, other: &BFunction) -> BFunction {
        Self::from_factors(self.factors.iter().chain(&other.factors).cloned())
    }
}

fn factor_text(r: &Rational) -> String {
    if r.is_zero() {
        "s".into()
    } else if r.is_negative() {
        format!("(s+{})", fmt_rational(&-r))
    } else {
        format!("(s-{})", fmt_rational(r))
    }
}

impl fmt::Display for BFunction {
    /// `(s+1)` first, then the other roots in decreasing order, e.g.
    /// `(s+1)(s+5/6)(s+7/6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let minus_one = int(-1);
        let ordered = self
            .factors
            .iter()
            .filter(|(r, _)| *r == minus_one)
            .chain(self.factors.iter().filter(|(r, _)| *r != minus_one));
        for (r, m) in ordered {
            f.write_str(&factor_text(r))?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for BFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `b` with one factor `(s+1)` removed.
pub fn reduced_bfunction(b: &BFunction) -> Result<BFunction> {
    let minus_one = int(-1);
    if b.multiplicity(&minus_one) == 0 {
        return Err(Error::MissingTrivialRoot);
    }
    Ok(BFunction::from_factors(b.factors.iter().map(|(r, m)| {
        if *r == minus_one {
            (r.clone(), m - 1)
        } else {
            (r.clone(), *m)
        }
    })))
}

/// Negative of the largest root of the reduced b-function; infinite when
/// that is the unit.
pub fn minimal_exponent(b: &BFunction) -> Result<Extended> {
    let reduced = reduced_bfunction(b)?;
    Ok(match reduced.largest_root() {
        Some(r) => Extended::Finite(-r),
        None => Extended::Infinity,
    })
}

/// Negative of the largest root.
pub fn lct_from_bfunction(b: &BFunction) -> Result<Rational> {
    b.largest_root().map(|r| -r).ok_or(Error::EmptyBFunction)
}

/// `(s+1) * b_tilde(s - q)`.
pub fn shifted_bfunction(b_tilde: &BFunction, q: u32) -> BFunction {
    b_tilde
        .shift_roots(&int(q as i64))
        .mul(&BFunction::from_factors([(int(-1), 1)]))
}
