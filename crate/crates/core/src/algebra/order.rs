use std::cmp::Ordering;

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::{Signed, Zero};

/// A monomial order: a total order compatible with multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    /// Compare by the weighted degree first, ties broken by `tie`.
    Weighted {
        weights: Vec<Rational>,
        tie: Box<MonomialOrder>,
    },
}


impl MonomialOrder {
    pub fn weighted(weights: Vec<Rational>, tie: MonomialOrder) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::NonPositiveWeight(crate::rational::fmt_rational(w)));
        }
        Ok(MonomialOrder::Weighted {
            weights,
            tie: Box::new(tie),
        })
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                // Smaller exponent in the last differing variable wins.
                for (x, y) in a.exps().iter().zip(b.exps()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Weighted { weights, tie } => {
                let wa = weighted_sum(a, weights);
                let wb = weighted_sum(b, weights);
                wa.cmp(&wb).then_with(|| tie.cmp(a, b))
            }
        }
    }
}

fn weighted_sum(m: &Monomial, w: &[Rational]) -> Rational {
    m.exps()
        .iter()
        .zip(w)
        .fold(Rational::zero(), |acc, (e, wi)| acc + wi * Rational::from_integer((*e).into()))
}
