use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::parse::{parse_with, unknown_name, ParseTarget};
use crate::algebra::{Monomial, Polynomial, VarSet};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Commuting variables, each with a partner derivation, plus central
/// parameters. Operator coefficients are polynomials over the variables
/// followed by the parameters.
#[derive(Debug, PartialEq, Eq)]
pub struct WeylContext {
    vars: Arc<VarSet>,
    params: Vec<String>,
    coeff_vars: Arc<VarSet>,
}

impl WeylContext {
    pub fn new<S: AsRef<str>>(vars: &Arc<VarSet>, params: &[S]) -> Result<Arc<WeylContext>> {
        let coeff_vars = vars.extended(params)?;
        Ok(Arc::new(WeylContext {
            vars: vars.clone(),
            params: params.iter().map(|p| p.as_ref().to_string()).collect(),
            coeff_vars,
        }))
    }

    /// Variables `names` with the single central parameter `s`.
    pub fn with_s(vars: &Arc<VarSet>) -> Result<Arc<WeylContext>> {
        Self::new(vars, &["s"])
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn coeff_vars(&self) -> &Arc<VarSet> {
        &self.coeff_vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Index of parameter `name` inside the coefficient variable set.
    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params
            .iter()
            .position(|p| p == name)
            .map(|i| self.vars.len() + i)
    }
}

fn check_ctx(a: &Arc<WeylContext>, b: &Arc<WeylContext>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// Normally ordered operator `sum_beta h_beta * d^beta` with coefficients on
/// the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOperator {
    ctx: Arc<WeylContext>,
    terms: BTreeMap<Monomial, Polynomial>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// All exponent vectors `kappa <= beta` componentwise.
fn sub_exponents(beta: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Vec::with_capacity(beta.len())];
    for &b in beta.exps() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

impl WeylOperator {
    pub fn zero(ctx: &Arc<WeylContext>) -> Self {
        WeylOperator {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_coefficient(ctx: &Arc<WeylContext>, h: Polynomial) -> Result<Self> {
        Self::term(ctx, h, Monomial::one(ctx.nvars()))
    }

    pub fn constant(ctx: &Arc<WeylContext>, c: Rational) -> Self {
        Self::from_coefficient(ctx, Polynomial::constant(ctx.coeff_vars(), c)).unwrap()
    }

    pub fn one(ctx: &Arc<WeylContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    /// `h * d^beta`.
    pub fn term(ctx: &Arc<WeylContext>, h: Polynomial, beta: Monomial) -> Result<Self> {
        crate::algebra::varset::check_same(h.vars(), ctx.coeff_vars())?;
        if beta.len() != ctx.nvars() {
            return Err(Error::ContextMismatch);
        }
        let mut op = Self::zero(ctx);
        op.add_term(beta, h);
        Ok(op)
    }

    /// Multiplication by the `i`-th commuting variable.
    pub fn var(ctx: &Arc<WeylContext>, i: usize) -> Self {
        Self::from_coefficient(ctx, Polynomial::var_at(ctx.coeff_vars(), i)).unwrap()
    }

    pub fn param(ctx: &Arc<WeylContext>, name: &str) -> Result<Self> {
        let i = ctx
            .param_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Self::from_coefficient(ctx, Polynomial::var_at(ctx.coeff_vars(), i))
    }

    /// The derivation with respect to the `i`-th variable.
    pub fn d(ctx: &Arc<WeylContext>, i: usize) -> Self {
        Self::term(
            ctx,
            Polynomial::one(ctx.coeff_vars()),
            Monomial::var(ctx.nvars(), i),
        )
        .unwrap()
    }

    pub fn context(&self) -> &Arc<WeylContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Polynomial)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Order in the derivations (`None` for the zero operator).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, beta: Monomial, h: Polynomial) {
        if h.is_zero() {
            return;
        }
        match self.terms.get_mut(&beta) {
            Some(x) => {
                *x = &*x + &h;
                if x.is_zero() {
                    self.terms.remove(&beta);
                }
            }
            None => {
                self.terms.insert(beta, h);
            }
        }
    }

    pub fn try_add(&self, other: &WeylOperator) -> Result<WeylOperator> {
        check_ctx(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        for (b, h) in &other.terms {
            out.add_term(b.clone(), h.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &WeylOperator) -> Result<WeylOperator> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> WeylOperator {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> WeylOperator {
        let mut out = Self::zero(&self.ctx);
        for (b, h) in &self.terms {
            out.add_term(b.clone(), h.scale(c));
        }
        out
    }

    /// `d^kappa` applied to a coefficient polynomial.
    fn differentiate(&self, g: &Polynomial, kappa: &Monomial) -> Polynomial {
        let mut out = g.clone();
        for (i, &k) in kappa.exps().iter().enumerate() {
            for _ in 0..k {
                out = out.partial(i);
            }
        }
        out
    }

    /// Normal-ordered product `self * other`.
    pub fn try_mul(&self, other: &WeylOperator) -> Result<WeylOperator> {
        check_ctx(&self.ctx, &other.ctx)?;
        let mut out = Self::zero(&self.ctx);
        for (beta, h) in &self.terms {
            let kappas = sub_exponents(beta);
            for (gamma, g) in &other.terms {
                for kappa in &kappas {
                    let dg = self.differentiate(g, kappa);
                    if dg.is_zero() {
                        continue;
                    }
                    let c: BigInt = beta
                        .exps()
                        .iter()
                        .zip(kappa.exps())
                        .map(|(&b, &k)| binomial(b, k))
                        .product();
                    let rest: Vec<u32> = beta
                        .exps()
                        .iter()
                        .zip(kappa.exps())
                        .zip(gamma.exps())
                        .map(|((&b, &k), &g)| b - k + g)
                        .collect();
                    let coeff = (h * &dg).scale(&Rational::from_integer(c));
                    out.add_term(Monomial::new(rest), coeff);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> WeylOperator {
        (0..e).fold(Self::one(&self.ctx), |acc, _| &acc * self)
    }

    /// Classical adjoint: `h d^alpha` goes to `(-d)^alpha h`, normal ordered.
    pub fn adjoint(&self) -> WeylOperator {
        let mut out = Self::zero(&self.ctx);
        for (alpha, h) in &self.terms {
            let sign = if alpha.degree() % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            for kappa in sub_exponents(alpha) {
                let dh = self.differentiate(h, &kappa);
                if dh.is_zero() {
                    continue;
                }
                let c: BigInt = alpha
                    .exps()
                    .iter()
                    .zip(kappa.exps())
                    .map(|(&a, &k)| binomial(a, k))
                    .product();
                let rest = Monomial::new(
                    alpha
                        .exps()
                        .iter()
                        .zip(kappa.exps())
                        .map(|(&a, &k)| a - k)
                        .collect(),
                );
                out.add_term(rest, dh.scale(&(&sign * Rational::from_integer(c))));
            }
        }
        out
    }

    /// Applies the operator to a polynomial over the coefficient variables
    /// (parameters are treated as constants).
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        crate::algebra::varset::check_same(p.vars(), self.ctx.coeff_vars())?;
        let mut out = Polynomial::zero(self.ctx.coeff_vars());
        for (beta, h) in &self.terms {
            out = &out + &(h * &self.differentiate(p, beta));
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = self.ctx.vars().names();
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (beta, h) in self.terms.iter().rev() {
            let mut ds = Vec::new();
            for (i, &e) in beta.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => ds.push(format!("d{}", names[i])),
                    _ => ds.push(format!("d{}^{}", names[i], e)),
                }
            }
            let d = ds.join("*");
            let (neg, hs) = if h.num_terms() == 1 {
                let (_, c) = h.terms().next().unwrap();
                if c.is_negative() {
                    (true, (-h).render())
                } else {
                    (false, h.render())
                }
            } else {
                (false, format!("({})", h.render()))
            };
            let text = if d.is_empty() {
                hs
            } else if hs == "1" {
                d
            } else {
                format!("{hs}*{d}")
            };
            parts.push((neg, text));
        }
        let mut out = String::new();
        for (k, (neg, t)) in parts.into_iter().enumerate() {
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&t);
        }
        out
    }
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::ops::Add for &WeylOperator {
    type Output = WeylOperator;
    fn add(self, rhs: &WeylOperator) -> WeylOperator {
        self.try_add(rhs).expect("operator addition")
    }
}

impl std::ops::Sub for &WeylOperator {
    type Output = WeylOperator;
    fn sub(self, rhs: &WeylOperator) -> WeylOperator {
        self.try_sub(rhs).expect("operator subtraction")
    }
}

impl std::ops::Mul for &WeylOperator {
    type Output = WeylOperator;
    fn mul(self, rhs: &WeylOperator) -> WeylOperator {
        self.try_mul(rhs).expect("operator multiplication")
    }
}

pub fn weyl_mul(p: &WeylOperator, q: &WeylOperator) -> Result<WeylOperator> {
    p.try_mul(q)
}

pub fn classical_adjoint(p: &WeylOperator) -> WeylOperator {
    p.adjoint()
}

impl ParseTarget for WeylOperator {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        WeylOperator::neg(self)
    }
    fn scale(&self, c: &Rational) -> Self {
        WeylOperator::scale(self, c)
    }
    fn pow(&self, e: u32) -> Self {
        WeylOperator::pow(self, e)
    }
    fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (beta, h) = self.terms.iter().next().unwrap();
        (beta.is_one() && h.is_constant()).then(|| h.constant_term())
    }
}

/// Parses an operator such as `x*dy - 3/2*y^2*dx` or `s*dx^2`. A name `dv`
/// denotes the derivation in the variable `v`; parameters are only accepted
/// when the context has them.
pub fn parse_operator(text: &str, ctx: &Arc<WeylContext>) -> Result<WeylOperator> {
    parse_with(
        text,
        &|name, col| {
            if let Some(i) = ctx.vars().index_of(name) {
                return Ok(WeylOperator::var(ctx, i));
            }
            if ctx.param_index(name).is_some() {
                return WeylOperator::param(ctx, name);
            }
            if let Some(i) = name.strip_prefix('d').and_then(|v| ctx.vars().index_of(v)) {
                return Ok(WeylOperator::d(ctx, i));
            }
            Err(unknown_name(col, name))
        },
        &|c| WeylOperator::constant(ctx, c),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(vars: &[&str], params: &[&str]) -> Arc<WeylContext> {
        WeylContext::new(&VarSet::new(vars.iter().copied()).unwrap(), params).unwrap()
    }

    #[test]
    fn commutation() {
        let c = ctx(&["x"], &[]);
        let p = |t: &str| parse_operator(t, &c).unwrap();
        assert_eq!(&p("dx") * &p("x"), p("x*dx + 1"));
        assert_eq!(&p("x*dx") * &p("x*dx"), p("x^2*dx^2 + x*dx"));
        assert_eq!(p("dx*x").render(), "x*dx + 1");
    }

    #[test]
    fn adjoints() {
        let c = ctx(&["x", "t"], &[]);
        let p = |t: &str| parse_operator(t, &c).unwrap();
        assert_eq!(p("dx").adjoint(), p("-dx"));
        assert_eq!(p("x*dx").adjoint(), p("-x*dx - 1"));
        // s = -dt*t has adjoint t*dt = -s - 1
        let s = p("-dt*t");
        assert_eq!(s.adjoint(), p("t*dt"));
        assert_eq!(s.adjoint(), &s.neg() - &p("1"));
    }

    #[test]
    fn parameters_are_central() {
        let c = ctx(&["x"], &["s"]);
        let p = |t: &str| parse_operator(t, &c).unwrap();
        assert_eq!(&p("dx") * &p("s"), &p("s") * &p("dx"));
        assert_eq!(p("s*dx^2").order(), Some(2));
        assert!(parse_operator("s*dx", &ctx(&["x"], &[])).is_err());
    }

    #[test]
    fn apply_to_polynomial() {
        let c = ctx(&["x", "y"], &[]);
        let op = parse_operator("2*x*dy - 3*y^2*dx", &c).unwrap();
        let f = crate::algebra::parse_polynomial("x^2 + y^3", c.coeff_vars()).unwrap();
        assert!(op.apply(&f).unwrap().is_zero());
    }
}
