use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::bfunction::BFunction;
use super::weights::WeightVector;
use crate::algebra::{
    standard_monomials, weighted_degree, Ideal, MonomialOrder, Polynomial, DEFAULT_CAP,
};
use crate::error::{Error, Result};
use crate::rational::{int, serialize_rationals, Rational};
use crate::weyl::{twisted_context, WeylContext, WeylOperator};

/// Weighted degrees of a monomial basis of the Milnor algebra `R/J_f`,
/// with how many basis monomials have each degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaSet {
    #[serde(serialize_with = "serialize_rationals")]
    pub values: Vec<Rational>,
    pub multiplicities: Vec<usize>,
}

impl SigmaSet {
    /// Dimension of the Milnor algebra.
    pub fn milnor_number(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

pub fn jacobian_ideal(f: &Polynomial) -> Result<Ideal> {
    let n = f.vars().len();
    Ideal::new(f.vars(), (0..n).map(|i| f.partial(i)))
}

pub fn sigma_set(f: &Polynomial, w: &WeightVector) -> Result<SigmaSet> {
    sigma_set_with_order(f, w, &MonomialOrder::GrevLex)
}

pub fn sigma_set_with_order(f: &Polynomial, w: &WeightVector, order: &MonomialOrder) -> Result<SigmaSet> {
    let basis = match standard_monomials(&jacobian_ideal(f)?, order, DEFAULT_CAP) {
        Ok(b) => b,
        Err(Error::PossiblyInfiniteQuotient { .. }) => return Err(Error::NonIsolatedSingularity),
        Err(e) => return Err(e),
    };
    if !basis.finite {
        return Err(Error::NonIsolatedSingularity);
    }
    let mut counts: BTreeMap<Rational, usize> = BTreeMap::new();
    for m in &basis.monomials {
        *counts.entry(weighted_degree(m, w.weights())?).or_default() += 1;
    }
    Ok(SigmaSet {
        values: counts.keys().cloned().collect(),
        multiplicities: counts.values().copied().collect(),
    })
}

/// `(s+1) * prod_{lambda in Sigma(f)} (s + lambda + |w|)`.
pub fn bs_weighted_homogeneous(f: &Polynomial, w: &WeightVector) -> Result<BFunction> {
    let sigma = sigma_set(f, w)?;
    let total = w.total();
    Ok(BFunction::from_factors(
        std::iter::once((int(-1), 1)).chain(sigma.values.iter().map(|l| (-(l + &total), 1))),
    ))
}

/// `f_i d_j - f_j d_i` for `i < j`, over the twisted context of `f`.
pub fn yano_annihilator_generators(f: &Polynomial) -> Result<(Arc<WeylContext>, Vec<WeylOperator>)> {
    let ctx = twisted_context(f.vars())?;
    let n = f.vars().len();
    let partials: Vec<Polynomial> = (0..n)
        .map(|i| f.partial(i).embed(ctx.coeff_vars()))
        .collect::<Result<_>>()?;
    let mut ops = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = WeylOperator::from_coefficient(&ctx, partials[i].clone())?;
            let b = WeylOperator::from_coefficient(&ctx, partials[j].clone())?;
            let op = &(&a * &WeylOperator::d(&ctx, j)) - &(&b * &WeylOperator::d(&ctx, i));
            ops.push(op);
        }
    }
    Ok((ctx, ops))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial_auto;
    use crate::bs::weights::validate_weighted_homogeneous;
    use crate::rational::rat;
    use crate::weyl::{act_on_twisted, TwistedElement};

    fn qh(f: &str, w: &[i64]) -> (Polynomial, WeightVector) {
        let f = parse_polynomial_auto(f).unwrap();
        let w: Vec<Rational> = w.iter().map(|&x| int(x)).collect();
        let w = validate_weighted_homogeneous(&f, &w).unwrap();
        (f, w)
    }

    #[test]
    fn sigma_examples() {
        let (f, w) = qh("x^2 + y^3", &[3, 2]);
        assert_eq!(sigma_set(&f, &w).unwrap().values, [int(0), rat(1, 3)]);
        let (f, w) = qh("x^2 + y^2 + z^2", &[1, 1, 1]);
        assert_eq!(sigma_set(&f, &w).unwrap().values, [int(0)]);
        let (f, w) = qh("x^3 + y^4", &[4, 3]);
        let s = sigma_set(&f, &w).unwrap();
        assert_eq!(
            s.values,
            [int(0), rat(1, 4), rat(1, 3), rat(1, 2), rat(7, 12), rat(5, 6)]
        );
        assert_eq!(s.milnor_number(), 6);
    }

    #[test]
    fn non_isolated() {
        let (f, w) = qh("x^2*y^2", &[1, 1]);
        assert_eq!(sigma_set(&f, &w), Err(Error::NonIsolatedSingularity));
    }

    #[test]
    fn b_functions() {
        let (f, w) = qh("x^2 + y^3", &[3, 2]);
        assert_eq!(bs_weighted_homogeneous(&f, &w).unwrap().to_string(), "(s+1)(s+5/6)(s+7/6)");
        let (f, w) = qh("x^2 + y^2", &[1, 1]);
        assert_eq!(bs_weighted_homogeneous(&f, &w).unwrap().to_string(), "(s+1)^2");
        let (f, w) = qh("x", &[1]);
        assert_eq!(bs_weighted_homogeneous(&f, &w).unwrap().to_string(), "(s+1)");
    }

    #[test]
    fn yano_generators_annihilate() {
        for (text, count) in [("x^2 + y^3", 1), ("x^2 + y^2 + z^2", 3), ("x", 0)] {
            let f = parse_polynomial_auto(text).unwrap();
            let (ctx, ops) = yano_annihilator_generators(&f).unwrap();
            assert_eq!(ops.len(), count);
            let e = TwistedElement::f_power_s(&ctx, &f, 0).unwrap();
            for op in ops {
                assert!(act_on_twisted(&op, &e).unwrap().is_zero());
            }
        }
    }
}
