use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::algebra::varset::check_same;
use crate::algebra::{Monomial, Polynomial, UniPoly, VarSet};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Sparse coordinates of an element of `B_f`: `(j, x^u) -> c` stands for
/// `c x^u dt^j delta`.
pub(crate) type Vector = BTreeMap<(u32, Monomial), Rational>;

pub(crate) fn add_to(v: &mut Vector, key: (u32, Monomial), c: Rational) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&key) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                v.remove(&key);
            }
        }
        None => {
            v.insert(key, c);
        }
    }
}

/// The module `B_f = O_X[dt] delta` for a fixed polynomial `f`.
#[derive(Debug)]
pub struct BfModule {
    f: Polynomial,
    f_terms: Vec<(Monomial, Rational)>,
    partials: Vec<Vec<(Monomial, Rational)>>,
}

impl BfModule {
    pub fn new(f: Polynomial) -> Result<Arc<BfModule>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = f.vars().len();
        let partials = (0..n)
            .map(|i| {
                f.partial(i)
                    .terms()
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect()
            })
            .collect();
        let f_terms = f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        Ok(Arc::new(BfModule {
            f,
            f_terms,
            partials,
        }))
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.f.vars()
    }

    pub fn nvars(&self) -> usize {
        self.f.vars().len()
    }

    pub(crate) fn t_vec(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for ((j, u), c) in v {
            for (m, fc) in &self.f_terms {
                add_to(&mut out, (*j, u.mul(m)), c * fc);
            }
            if *j > 0 {
                add_to(&mut out, (j - 1, u.clone()), -(c * int(*j as i64)));
            }
        }
        out
    }

    pub(crate) fn dt_vec(&self, v: &Vector) -> Vector {
        v.iter()
            .map(|((j, u), c)| ((j + 1, u.clone()), c.clone()))
            .collect()
    }

    pub(crate) fn x_vec(&self, i: usize, v: &Vector) -> Vector {
        v.iter()
            .map(|((j, u), c)| ((*j, u.times_var(i)), c.clone()))
            .collect()
    }

    pub(crate) fn d_vec(&self, i: usize, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for ((j, u), c) in v {
            let e = u.exps()[i];
            if e > 0 {
                add_to(&mut out, (*j, u.with_exp(i, e - 1)), c * int(e as i64));
            }
            for (m, pc) in &self.partials[i] {
                add_to(&mut out, (j + 1, u.mul(m)), -(c * pc));
            }
        }
        out
    }

    /// `s = -dt t`.
    pub(crate) fn s_vec(&self, v: &Vector) -> Vector {
        let mut out = self.dt_vec(&self.t_vec(v));
        for c in out.values_mut() {
            *c = -c.clone();
        }
        out
    }

    fn same(&self, other: &BfModule) -> bool {
        std::ptr::eq(self, other) || self.f == other.f
    }
}

/// A finite sum `sum_j u_j dt^j delta` in `B_f`.
#[derive(Clone, Debug)]
pub struct BfElement {
    module: Arc<BfModule>,
    terms: Vector,
}

impl PartialEq for BfElement {
    fn eq(&self, other: &Self) -> bool {
        self.module.same(&other.module) && self.terms == other.terms
    }
}

impl BfElement {
    pub fn zero(module: &Arc<BfModule>) -> Self {
        BfElement {
            module: module.clone(),
            terms: Vector::new(),
        }
    }

    pub fn delta(module: &Arc<BfModule>) -> Self {
        Self::monomial(module, 0, Monomial::one(module.nvars()), Rational::one())
    }

    pub fn monomial(module: &Arc<BfModule>, j: u32, u: Monomial, c: Rational) -> Self {
        let mut terms = Vector::new();
        add_to(&mut terms, (j, u), c);
        BfElement {
            module: module.clone(),
            terms,
        }
    }

    /// Builds `sum_j u_j dt^j delta` from `(j, u_j)` pairs.
    pub fn from_components(
        module: &Arc<BfModule>,
        components: impl IntoIterator<Item = (u32, Polynomial)>,
    ) -> Result<Self> {
        let mut terms = Vector::new();
        for (j, u) in components {
            check_same(module.vars(), u.vars())?;
            for (m, c) in u.terms() {
                add_to(&mut terms, (j, m.clone()), c.clone());
            }
        }
        Ok(BfElement {
            module: module.clone(),
            terms,
        })
    }

    pub(crate) fn from_vector(module: &Arc<BfModule>, terms: Vector) -> Self {
        BfElement {
            module: module.clone(),
            terms,
        }
    }

    pub(crate) fn vector(&self) -> &Vector {
        &self.terms
    }

    pub fn module(&self) -> &Arc<BfModule> {
        &self.module
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn component(&self, j: u32) -> Polynomial {
        let vars = self.module.vars();
        let mut p = Polynomial::zero(vars);
        for ((k, m), c) in &self.terms {
            if *k == j {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for ((j, m), c) in &self.terms {
            out.entry(*j)
                .or_insert_with(|| Polynomial::zero(self.module.vars()))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Largest `j` with a nonzero component.
    pub fn dt_order(&self) -> Option<u32> {
        self.terms.keys().map(|(j, _)| *j).max()
    }

    /// Largest total degree of a component.
    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(_, m)| m.degree()).max()
    }

    fn check(&self, other: &BfElement) -> Result<()> {
        if self.module.same(&other.module) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(
                "elements of B_f for different f".to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &BfElement) -> Result<BfElement> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_to(&mut terms, k.clone(), c.clone());
        }
        Ok(Self::from_vector(&self.module, terms))
    }

    pub fn try_sub(&self, other: &BfElement) -> Result<BfElement> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> BfElement {
        if c.is_zero() {
            return Self::zero(&self.module);
        }
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        Self::from_vector(&self.module, terms)
    }

    /// Multiplies every component by the polynomial `g`.
    pub fn mul_poly(&self, g: &Polynomial) -> Result<BfElement> {
        check_same(self.module.vars(), g.vars())?;
        let mut terms = Vector::new();
        for ((j, u), c) in &self.terms {
            for (m, gc) in g.terms() {
                add_to(&mut terms, (*j, u.mul(m)), c * gc);
            }
        }
        Ok(Self::from_vector(&self.module, terms))
    }
}

impl fmt::Display for BfElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.components();
        if comps.is_empty() {
            return out.write_str("0");
        }
        for (k, (j, u)) in comps.iter().rev().enumerate() {
            let dt = match j {
                0 => "delta".to_string(),
                1 => "dt*delta".to_string(),
                _ => format!("dt^{j}*delta"),
            };
            let term = if u.is_constant() && u.constant_term().abs().is_one() {
                let sign = if u.constant_term().is_one() { "" } else { "-" };
                format!("{sign}{dt}")
            } else if u.num_terms() == 1 {
                format!("{u}*{dt}")
            } else {
                format!("({u})*{dt}")
            };
            match (k, term.strip_prefix('-')) {
                (0, _) => out.write_str(&term)?,
                (_, Some(rest)) => write!(out, " - {rest}")?,
                (_, None) => write!(out, " + {term}")?,
            }
        }
        Ok(())
    }
}

pub fn act_t(e: &BfElement) -> BfElement {
    BfElement::from_vector(&e.module, e.module.t_vec(&e.terms))
}

pub fn act_dt(e: &BfElement) -> BfElement {
    BfElement::from_vector(&e.module, e.module.dt_vec(&e.terms))
}

pub fn act_x(i: usize, e: &BfElement) -> Result<BfElement> {
    check_index(i, &e.module)?;
    Ok(BfElement::from_vector(&e.module, e.module.x_vec(i, &e.terms)))
}

/// Action of the coordinate derivation `d/dx_i`.
pub fn act_derivation(i: usize, e: &BfElement) -> Result<BfElement> {
    check_index(i, &e.module)?;
    Ok(BfElement::from_vector(&e.module, e.module.d_vec(i, &e.terms)))
}

/// Action of `s = -dt t`.
pub fn act_s(e: &BfElement) -> BfElement {
    BfElement::from_vector(&e.module, e.module.s_vec(&e.terms))
}

fn check_index(i: usize, module: &BfModule) -> Result<()> {
    if i < module.nvars() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "variable index {i} out of range for {} variables",
            module.nvars()
        )))
    }
}

/// Image of `P(s) u f^s` in `B_f`, that is `P(-dt t)` applied to `u delta`.
pub fn tau(p: &UniPoly, u: &Polynomial, module: &Arc<BfModule>) -> Result<BfElement> {
    let start = BfElement::from_components(module, [(0, u.clone())])?;
    let mut acc = Vector::new();
    // Horner: acc = acc * s + c_k
    for c in p.coeffs().iter().rev() {
        acc = module.s_vec(&acc);
        for (k, v) in &start.terms {
            add_to(&mut acc, k.clone(), v * c);
        }
    }
    Ok(BfElement::from_vector(module, acc))
}
