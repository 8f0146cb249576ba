use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};

/// Dense univariate polynomial in `s`; `coeffs[i]` multiplies `s^i`. No
/// trailing zeros are kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `s - r`.
    pub fn linear(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn s() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_roots<'a>(roots: impl IntoIterator<Item = (&'a Rational, u32)>) -> Self {
        let mut p = Self::one();
        for (r, m) in roots {
            for _ in 0..m {
                p = p.mul(&Self::linear(r));
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        (0..e).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(a*s + c)`.
    pub fn compose_affine(&self, a: &Rational, c: &Rational) -> UniPoly {
        let lin = UniPoly::new(vec![c.clone(), a.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, k| acc.mul(&lin).add(&UniPoly::constant(k.clone())))
    }

    /// `p(s + c)`.
    pub fn shift(&self, c: &Rational) -> UniPoly {
        self.compose_affine(&Rational::one(), c)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => UniPoly::zero(),
        }
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, b) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * b;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Distinct rational roots with multiplicities, ascending. Fails when the
    /// polynomial is not a product of rational linear factors.
    pub fn rational_roots(&self) -> Result<Vec<(Rational, u32)>> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("zero polynomial has no root list".into()));
        }
        let mut rest = self.monic();
        let mut out = Vec::new();
        for r in root_candidates(&rest)? {
            let lin = UniPoly::linear(&r);
            let mut mult = 0;
            loop {
                let (q, rem) = rest.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((r, mult));
            }
        }
        if rest.degree() != Some(0) {
            return Err(Error::IrrationalRoots(self.to_string()));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }
}

/// Rational-root-theorem candidates for the squarefree part of `p`.
fn root_candidates(p: &UniPoly) -> Result<Vec<Rational>> {
    let sqfree = p.div_rem(&p.gcd(&p.derivative())).0;
    let mut cands = Vec::new();
    let mut q = sqfree;
    if q.coeff(0).is_zero() {
        cands.push(Rational::zero());
        q = q.div_rem(&UniPoly::s()).0;
    }
    if q.degree().unwrap_or(0) == 0 {
        return Ok(cands);
    }
    let lcm = q
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q
        .coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let a0 = divisors(&ints[0].abs()).ok_or_else(|| Error::IrrationalRoots(p.to_string()))?;
    let an = divisors(&ints.last().unwrap().abs())
        .ok_or_else(|| Error::IrrationalRoots(p.to_string()))?;
    for num in &a0 {
        for den in &an {
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(sign) * num, den.clone());
                if !cands.contains(&r) && q.eval(&r).is_zero() {
                    cands.push(r);
                }
            }
        }
    }
    Ok(cands)
}

/// Positive divisors by trial division; gives up on integers beyond 2^62.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64().filter(|&v| v < (1 << 62))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn roots_of_cusp_polynomial() {
        let b = UniPoly::from_roots([(&int(-1), 1), (&rat(-5, 6), 1), (&rat(-7, 6), 1)]);
        assert_eq!(
            b.rational_roots().unwrap(),
            vec![(rat(-7, 6), 1), (int(-1), 1), (rat(-5, 6), 1)]
        );
        let sq = UniPoly::from_roots([(&int(-1), 2), (&int(0), 3)]);
        assert_eq!(sq.rational_roots().unwrap(), vec![(int(-1), 2), (int(0), 3)]);
    }

    #[test]
    fn irrational_roots_rejected() {
        let p = UniPoly::new(vec![int(-2), int(0), int(1)]);
        assert!(matches!(p.rational_roots(), Err(Error::IrrationalRoots(_))));
    }

    #[test]
    fn shift_and_gcd() {
        let p = UniPoly::from_roots([(&int(2), 1), (&int(3), 1)]);
        assert_eq!(p.shift(&int(1)), UniPoly::from_roots([(&int(1), 1), (&int(2), 1)]));
        let q = UniPoly::from_roots([(&int(3), 2)]);
        assert_eq!(p.gcd(&q), UniPoly::linear(&int(3)));
        assert_eq!(p.to_string(), "s^2 - 5*s + 6");
    }
}
