//! Integer gradings of the polynomial ring that make given polynomials
//! homogeneous.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, SparseRow};
use crate::rational::Rational;

/// An integer weight vector on the variables.
pub type Grading = Vec<i64>;

pub fn weight(g: &Grading, m: &Monomial) -> i64 {
    g.iter().zip(m.exps()).map(|(w, &e)| w * e as i64).sum()
}

/// Basis of the lattice of integer weight vectors for which every given
/// polynomial is homogeneous. Each basis vector is primitive.
pub fn homogenizing_gradings(polys: &[&Polynomial], nvars: usize) -> Result<Vec<Grading>> {
    let mut rows: Vec<SparseRow<usize>> = Vec::new();
    for p in polys {
        let mut it = p.terms().map(|(m, _)| m);
        let Some(first) = it.next() else { continue };
        for m in it {
            let row: SparseRow<usize> = (0..nvars)
                .filter_map(|i| {
                    let d = m.exps()[i] as i64 - first.exps()[i] as i64;
                    (d != 0).then(|| (i, Rational::from_integer(d.into())))
                })
                .collect();
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    let columns: Vec<usize> = (0..nvars).collect();
    nullspace(&rows, &columns)
        .into_iter()
        .map(|v| {
            let lcm = v.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints: Vec<BigInt> = (0..nvars)
                .map(|i| {
                    v.get(&i)
                        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
                        .unwrap_or_else(BigInt::zero)
                })
                .collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            ints.iter()
                .map(|x| {
                    (x / &g)
                        .to_i64()
                        .ok_or_else(|| Error::InvalidArgument("grading weight overflow".into()))
                })
                .collect()
        })
        .collect()
}

/// Degree of a homogeneous polynomial under `g` (zero for the zero
/// polynomial).
pub fn degree(g: &Grading, p: &Polynomial) -> i64 {
    p.terms().next().map(|(m, _)| weight(g, m)).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial_auto;

    #[test]
    fn cusp_grading() {
        let f = parse_polynomial_auto("x^2 + y^3").unwrap();
        let gs = homogenizing_gradings(&[&f], 2).unwrap();
        assert_eq!(gs.len(), 1);
        let g = &gs[0];
        assert_eq!(g[0] * 2, g[1] * 3);
        let f = parse_polynomial_auto("x*y").unwrap();
        assert_eq!(homogenizing_gradings(&[&f], 2).unwrap().len(), 2);
    }
}
