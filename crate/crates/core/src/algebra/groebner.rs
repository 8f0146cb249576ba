use std::sync::Arc;



use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::polynomial::Polynomial;
use super::varset::{check_same, VarSet};
use crate::error::Result;

/// Ideal given by generators; zero generators are dropped, so an empty list
/// is the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    vars: Arc<VarSet>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(vars: &Arc<VarSet>, generators: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            check_same(vars, g.vars())?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal {
            vars: vars.clone(),
            generators: gens,
        })
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

fn lm<'a>(p: &'a Polynomial, order: &MonomialOrder) -> &'a Monomial {
    p.leading_term(order).expect("nonzero polynomial").0
}

/// Full reduction of `p` modulo `basis` (no particular basis properties are
/// assumed). Returns the remainder.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let leads: Vec<(Monomial, _)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let (m, c) = g.leading_term(order).unwrap();
            (m.clone(), (c.clone(), g))
        })
        .collect();
    let mut rest = p.clone();
    let mut rem = Polynomial::zero(p.vars());
    while let Some((m, c)) = rest.leading_term(order) {
        let (m, c) = (m.clone(), c.clone());
        match leads.iter().find(|(l, _)| l.divides(&m)) {
            Some((l, (lc, g))) => {
                let q = l.quotient_of(&m).unwrap();
                rest = &rest - &g.mul_term(&q, &(&c / lc));
            }
            None => {
                rest.add_term(m.clone(), -c.clone());
                rem.add_term(m, c);
            }
        }
    }
    rem
}

pub fn s_polynomial(a: &Polynomial, b: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (ma, ca) = a.leading_term(order).unwrap();
    let (mb, cb) = b.leading_term(order).unwrap();
    let l = ma.lcm(mb);
    let ta = a.mul_term(&ma.quotient_of(&l).unwrap(), &ca.recip());
    let tb = b.mul_term(&mb.quotient_of(&l).unwrap(), &cb.recip());
    &ta - &tb
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer–Möller update: inserts `h` (index `k` in `polys`) into the
/// current basis `g` and pair list `pairs`.
fn update(
    polys: &[Polynomial],
    g: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    k: usize,
    order: &MonomialOrder,
) {
    let lh = lm(&polys[k], order).clone();
    let mut c: Vec<(usize, Monomial)> = g
        .iter()
        .map(|&i| (i, lh.lcm(lm(&polys[i], order))))
        .collect();
    let mut d: Vec<(usize, Monomial)> = Vec::new();
    while let Some((i, l)) = c.pop() {
        let li = lm(&polys[i], order);
        let keep = lh.coprime(li)
            || (c.iter().all(|(_, l2)| !l2.divides(&l)) && d.iter().all(|(_, l2)| !l2.divides(&l)));
        if keep {
            d.push((i, l));
        }
    }
    let e = d
        .into_iter()
        .filter(|(i, _)| !lh.coprime(lm(&polys[*i], order)));
    let new_pairs: Vec<Pair> = e.map(|(i, l)| Pair { i, j: k, lcm: l }).collect();
    pairs.retain(|p| {
        let li = lm(&polys[p.i], order);
        let lj = lm(&polys[p.j], order);
        !(lh.divides(&p.lcm) && li.lcm(&lh) != p.lcm && lj.lcm(&lh) != p.lcm)
    });
    pairs.extend(new_pairs);
    g.retain(|&i| !lh.divides(lm(&polys[i], order)));
    g.push(k);
}

/// Reduced Gröbner basis, monic, sorted by decreasing leading monomial. The
/// zero ideal yields an empty list.
pub fn groebner_basis(ideal: &Ideal, order: &MonomialOrder) -> Vec<Polynomial> {
    let mut polys: Vec<Polynomial> = Vec::new();
    let mut g: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for gen in ideal.generators() {
        let current: Vec<Polynomial> = g.iter().map(|&i| polys[i].clone()).collect();
        let h = normal_form(gen, &current, order);
        if h.is_zero() {
            continue;
        }
        polys.push(h.monic(order));
        let k = polys.len() - 1;
        update(&polys, &mut g, &mut pairs, k, order);
    }
    while !pairs.is_empty() {
        // Normal strategy: the pair with the smallest lcm goes first.
        let best = (0..pairs.len())
            .min_by(|&a, &b| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(&polys[pair.i], &polys[pair.j], order);
        let current: Vec<Polynomial> = g.iter().map(|&i| polys[i].clone()).collect();
        let h = normal_form(&s, &current, order);
        if h.is_zero() {
            continue;
        }
        polys.push(h.monic(order));
        let k = polys.len() - 1;
        update(&polys, &mut g, &mut pairs, k, order);
    }
    reduce_basis(g.into_iter().map(|i| polys[i].clone()).collect(), order)
}

fn reduce_basis(mut basis: Vec<Polynomial>, order: &MonomialOrder) -> Vec<Polynomial> {
    basis.sort_by(|a, b| order.cmp(lm(b, order), lm(a, order)));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (idx, p) in basis.iter().enumerate() {
        let m = lm(p, order);
        let redundant = basis.iter().enumerate().any(|(j, q)| {
            let mq = lm(q, order);
            j != idx && mq.divides(m) && (mq != m || j > idx)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let (m, c) = {
            let (m, c) = minimal[i].leading_term(order).unwrap();
            (m.clone(), c.clone())
        };
        let mut tail = minimal[i].clone();
        tail.add_term(m.clone(), -c);
        let mut r = normal_form(&tail, &others, order);
        r.add_term(m, num_traits::One::one());
        out.push(r.monic(order));
    }
    out.sort_by(|a, b| order.cmp(lm(b, order), lm(a, order)));
    out
}

/// True iff `g` reduces to zero modulo the reduced Gröbner basis of `ideal`.
pub fn ideal_membership(g: &Polynomial, ideal: &Ideal, order: &MonomialOrder) -> Result<bool> {
    check_same(g.vars(), ideal.vars())?;
    if g.is_zero() {
        return Ok(true);
    }
    let gb = groebner_basis(ideal, order);
    Ok(normal_form(g, &gb, order).is_zero())
}

/// Checks the defining property of a Gröbner basis by reducing all
/// S-polynomials.
pub fn is_groebner_basis(basis: &[Polynomial], order: &MonomialOrder) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !normal_form(&s_polynomial(&basis[i], &basis[j], order), basis, order).is_zero() {
                return false;
            }
        }
    }
    basis.iter().all(|b| !b.is_zero())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal {
        let vs = VarSet::new(vars.iter().copied()).unwrap();
        let ps: Vec<Polynomial> = gens.iter().map(|g| parse_polynomial(g, &vs).unwrap()).collect();
        Ideal::new(&vs, ps).unwrap()
    }

    fn rendered(gb: &[Polynomial]) -> Vec<String> {
        gb.iter().map(|p| p.render()).collect()
    }

    #[test]
    fn monomial_generators_become_monic() {
        let i = ideal(&["x", "y"], &["2*x", "3*y^2"]);
        let gb = groebner_basis(&i, &MonomialOrder::GrevLex);
        assert_eq!(rendered(&gb), ["y^2", "x"]);
    }

    #[test]
    fn lex_example() {
        let i = ideal(&["x", "y"], &["x^2 - y", "y^2 - x"]);
        let gb = groebner_basis(&i, &MonomialOrder::Lex);
        let vs = i.vars().clone();
        let expected: Vec<Polynomial> = ["x - y^2", "y^4 - y"]
            .iter()
            .map(|g| parse_polynomial(g, &vs).unwrap())
            .collect();
        assert_eq!(gb, expected);
        assert!(is_groebner_basis(&gb, &MonomialOrder::Lex));
        for g in i.generators() {
            assert!(normal_form(g, &gb, &MonomialOrder::Lex).is_zero());
        }
    }

    #[test]
    fn unit_ideal() {
        let i = ideal(&["x", "y"], &["1"]);
        assert_eq!(rendered(&groebner_basis(&i, &MonomialOrder::GrevLex)), ["1"]);
        let j = ideal(&["x", "y"], &["x*y - 1", "x"]);
        assert_eq!(rendered(&groebner_basis(&j, &MonomialOrder::GrevLex)), ["1"]);
    }

    #[test]
    fn membership() {
        let i = ideal(&["x", "y"], &["2*x", "3*y^2"]);
        let vs = i.vars().clone();
        let o = MonomialOrder::GrevLex;
        assert!(ideal_membership(&parse_polynomial("y^2", &vs).unwrap(), &i, &o).unwrap());
        assert!(!ideal_membership(&parse_polynomial("y", &vs).unwrap(), &i, &o).unwrap());
    }

    #[test]
    fn cyclic_three() {
        let i = ideal(
            &["x", "y", "z"],
            &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"],
        );
        for o in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let gb = groebner_basis(&i, &o);
            assert!(is_groebner_basis(&gb, &o));
            for g in i.generators() {
                assert!(normal_form(g, &gb, &o).is_zero());
            }
        }
    }
}
