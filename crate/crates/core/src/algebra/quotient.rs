use std::collections::BTreeSet;



use super::groebner::{groebner_basis, Ideal};
use super::monomial::Monomial;
use super::order::MonomialOrder;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 10_000;

/// Standard monomials of a quotient ring, sorted ascending by exponent
/// vector (lexicographically, first variable most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub monomials: Vec<Monomial>,
    pub finite: bool,
}

/// Monomials outside the initial ideal of `ideal`.
///
/// When some variable has no pure power among the leading monomials the
/// quotient is infinite; the returned list then holds only the standard
/// monomials of degree at most the largest leading-monomial degree (at most
/// `cap` of them) and `finite` is false.
pub fn standard_monomials(ideal: &Ideal, order: &MonomialOrder, cap: usize) -> Result<QuotientBasis> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be positive".into()));
    }
    let n = ideal.vars().len();
    let gb = groebner_basis(ideal, order);
    let leads: Vec<Monomial> = gb
        .iter()
        .map(|g| g.leading_term(order).unwrap().0.clone())
        .collect();
    if leads.iter().any(Monomial::is_one) {
        return Ok(QuotientBasis {
            monomials: Vec::new(),
            finite: true,
        });
    }
    let mut has_pure = vec![false; n];
    for m in &leads {
        if let Some(i) = m.pure_power_var() {
            has_pure[i] = true;
        }
    }
    let finite = has_pure.iter().all(|&b| b);
    let degree_limit = if finite {
        None
    } else {
        Some(leads.iter().map(Monomial::degree).max().unwrap_or(0))
    };

    let standard = |m: &Monomial| !leads.iter().any(|l| l.divides(m));
    let mut found: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier = vec![Monomial::one(n)];
    found.insert(Monomial::one(n));
    'grow: while let Some(m) = frontier.pop() {
        for i in 0..n {
            let next = m.times_var(i);
            if degree_limit.is_some_and(|d| next.degree() > d) {
                continue;
            }
            if standard(&next) && found.insert(next.clone()) {
                if found.len() >= cap {
                    if finite {
                        return Err(Error::PossiblyInfiniteQuotient { cap });
                    }
                    break 'grow;
                }
                frontier.push(next);
            }
        }
    }
    Ok(QuotientBasis {
        monomials: found.into_iter().collect(),
        finite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;
    use crate::algebra::varset::VarSet;

    fn basis(gens: &[&str]) -> QuotientBasis {
        let vs = VarSet::new(["x", "y"]).unwrap();
        let ps = gens.iter().map(|g| parse_polynomial(g, &vs).unwrap());
        let i = Ideal::new(&vs, ps).unwrap();
        standard_monomials(&i, &MonomialOrder::GrevLex, DEFAULT_CAP).unwrap()
    }

    fn exps(q: &QuotientBasis) -> Vec<Vec<u32>> {
        q.monomials.iter().map(|m| m.exps().to_vec()).collect()
    }

    #[test]
    fn cusp_jacobian() {
        let q = basis(&["2*x", "3*y^2"]);
        assert!(q.finite);
        assert_eq!(exps(&q), vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn e6_jacobian() {
        let q = basis(&["3*x^2", "4*y^3"]);
        assert!(q.finite);
        assert_eq!(
            exps(&q),
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]
        );
    }

    #[test]
    fn infinite_quotient_flagged() {
        let q = basis(&["x"]);
        assert!(!q.finite);
    }

    #[test]
    fn cap_exceeded() {
        let vs = VarSet::new(["x", "y"]).unwrap();
        let ps = ["x^5", "y^5"].iter().map(|g| parse_polynomial(g, &vs).unwrap());
        let i = Ideal::new(&vs, ps).unwrap();
        assert_eq!(
            standard_monomials(&i, &MonomialOrder::GrevLex, 10),
            Err(Error::PossiblyInfiniteQuotient { cap: 10 })
        );
    }
}
