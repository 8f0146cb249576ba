//! Bounded-degree search for functional equations
//! `b(s) g f^s = P(s, x, d) (g f f^s)`.
//!
//! For fixed bounds the unknown coefficients of `P` (and of `b`, when it is
//! searched for) enter linearly, so each search is one exact linear system
//! over Q. The system is cut down using every integer grading making `f`
//! and `g` homogeneous: the equation is homogeneous of degree `-deg f` in
//! `P`, so only monomials `x^m s^k d^beta` with `W.m - W.beta = -W(f)` are
//! kept. Projecting any solution onto that component is again a solution,
//! so nothing is lost.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::bfunction::BFunction;
use crate::algebra::varset::check_same;
use crate::algebra::{Monomial, Polynomial, UniPoly};
use crate::error::{Error, Result};
use crate::grading::{self, homogenizing_gradings, Grading};
use crate::linalg::{Echelon, Insert, SparseRow};
use crate::rational::Rational;
use crate::weyl::{act_on_twisted, twisted_context, TwistedElement, WeylContext, WeylOperator};

/// A verified identity `b(s) g f^s = P (g f f^s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalEquationCertificate {
    pub b: BFunction,
    pub p: WeylOperator,
    pub g: Polynomial,
    pub f: Polynomial,
}

impl FunctionalEquationCertificate {
    /// Recomputes both sides in the twisted module.
    pub fn verify(&self) -> Result<bool> {
        let ctx = self.p.context();
        let gf = &self.g * &self.f;
        let source = TwistedElement::from_x_polynomial(ctx, &self.f, &gf)?;
        let lhs = act_on_twisted(&self.p, &source)?;
        let b = uni_in(&self.b.to_poly(), ctx);
        let target = TwistedElement::new(ctx, &self.f, &b * &self.g.embed(ctx.coeff_vars())?, 0)?;
        Ok(lhs == target)
    }

    /// The identity at the integer `s = m >= -1`: `P|_{s=m}` applied to
    /// `g f^(m+1)` equals `b(m) g f^m` (zero when `m = -1`).
    pub fn check_at_integer(&self, m: i64) -> Result<bool> {
        if m < -1 {
            return Err(Error::InvalidArgument("integer point must be >= -1".into()));
        }
        let ctx = self.p.context();
        let si = ctx.param_index("s").ok_or(Error::ContextMismatch)?;
        let mut specialized = WeylOperator::zero(ctx);
        for (beta, h) in self.p.terms() {
            let h = h.substitute(si, &Rational::from_integer(m.into()));
            specialized = &specialized + &WeylOperator::term(ctx, h, beta.clone())?;
        }
        let source = (&self.g * &self.f.pow((m + 1) as u32)).embed(ctx.coeff_vars())?;
        let lhs = specialized.apply(&source)?;
        let bm = self.b.eval(&Rational::from_integer(m.into()));
        let rhs = if m == -1 {
            if !bm.is_zero() {
                return Ok(false);
            }
            Polynomial::zero(ctx.coeff_vars())
        } else {
            (&self.g * &self.f.pow(m as u32)).embed(ctx.coeff_vars())?.scale(&bm)
        };
        Ok(lhs == rhs)
    }
}

impl Serialize for FunctionalEquationCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FunctionalEquationCertificate", 4)?;
        st.serialize_field("b", &self.b.to_string())?;
        st.serialize_field("operator", &self.p.render())?;
        st.serialize_field("g", &self.g.render())?;
        st.serialize_field("f", &self.f.render())?;
        st.end()
    }
}

/// `p(s)` as a polynomial over the coefficient variables of `ctx`.
fn uni_in(p: &UniPoly, ctx: &Arc<WeylContext>) -> Polynomial {
    let si = ctx.param_index("s").unwrap();
    let n = ctx.coeff_vars().len();
    Polynomial::from_terms(
        ctx.coeff_vars(),
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(e, c)| (Monomial::var(n, si).with_exp(si, e as u32), c.clone())),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Col {
    P(usize),
    B(usize),
}

struct Unknown {
    m: Monomial,
    k: u32,
    beta: Monomial,
}

struct System {
    ctx: Arc<WeylContext>,
    unknowns: Vec<Unknown>,
    rows: BTreeMap<Monomial, SparseRow<Col>>,
    /// `g f^r` over the coefficient variables.
    g_f_r: Polynomial,
}

fn exponent_vectors(n: usize, max_total: u32) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=max_total - used).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

fn build_system(
    f: &Polynomial,
    g: &Polynomial,
    max_order: u32,
    max_sdeg: u32,
    b_degree: u32,
) -> Result<System> {
    check_same(f.vars(), g.vars())?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = twisted_context(f.vars())?;
    let n = f.vars().len();
    let si = ctx.param_index("s").unwrap();
    let deg_f = f.total_degree().unwrap();
    let deg_g = g.total_degree().unwrap();
    let x_bound = b_degree * deg_f + deg_g + max_order * deg_f;
    let gradings: Vec<Grading> = homogenizing_gradings(&[f, g], n)?;
    let f_degrees: Vec<i64> = gradings.iter().map(|w| grading::degree(w, f)).collect();

    // d^beta (g f f^s) = A_beta f^(s - |beta|); T_beta = A_beta f^(r - |beta|).
    let gf = (g * f).embed(ctx.coeff_vars())?;
    let source = TwistedElement::new(&ctx, f, gf, 0)?;
    let f_lift = source.lifted_base().clone();
    let betas = exponent_vectors(n, max_order);
    let mut numerators: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for beta in &betas {
        let num = match (0..n).find(|&i| beta.exps()[i] > 0) {
            None => source.numerator().clone(),
            Some(i) => {
                let parent = beta.with_exp(i, beta.exps()[i] - 1);
                source.d_raw(&numerators[&parent], parent.degree(), i)
            }
        };
        numerators.insert(beta.clone(), num);
    }

    let xs = exponent_vectors(n, x_bound);
    let mut unknowns = Vec::new();
    let mut rows: BTreeMap<Monomial, SparseRow<Col>> = BTreeMap::new();
    for beta in &betas {
        let t_beta = &numerators[beta] * &f_lift.pow(max_order - beta.degree());
        if t_beta.is_zero() {
            continue;
        }
        for m in &xs {
            let homogeneous = gradings.iter().zip(&f_degrees).all(|(w, df)| {
                grading::weight(w, m) - grading::weight(w, beta) == -df
            });
            if !homogeneous {
                continue;
            }
            let mut m_lift = m.exps().to_vec();
            m_lift.push(0);
            for k in 0..=max_sdeg {
                let idx = unknowns.len();
                m_lift[si] = k;
                let shift = Monomial::new(m_lift.clone());
                for (u, c) in t_beta.terms() {
                    rows.entry(u.mul(&shift))
                        .or_default()
                        .insert(Col::P(idx), c.clone());
                }
                unknowns.push(Unknown {
                    m: m.clone(),
                    k,
                    beta: beta.clone(),
                });
            }
        }
    }
    let g_f_r = (g * &f.pow(max_order)).embed(ctx.coeff_vars())?;
    Ok(System {
        ctx,
        unknowns,
        rows,
        g_f_r,
    })
}

impl System {
    fn s_power(&self, e: u32) -> Polynomial {
        let si = self.ctx.param_index("s").unwrap();
        let n = self.ctx.coeff_vars().len();
        Polynomial::monomial(
            self.ctx.coeff_vars(),
            Monomial::one(n).with_exp(si, e),
            Rational::one(),
        )
    }

    /// Eliminates with right-hand side `rhs`; `None` when inconsistent.
    fn solve(&self, extra: &BTreeMap<Monomial, SparseRow<Col>>, rhs: &Polynomial) -> Option<Echelon<Col>> {
        let mut keys: Vec<&Monomial> = self.rows.keys().chain(extra.keys()).collect();
        keys.extend(rhs.terms().map(|(m, _)| m));
        keys.sort();
        keys.dedup();
        let mut e = Echelon::new();
        for k in keys {
            let mut row = self.rows.get(k).cloned().unwrap_or_default();
            if let Some(x) = extra.get(k) {
                row.extend(x.iter().map(|(c, v)| (c.clone(), v.clone())));
            }
            if e.insert(row, rhs.coeff(k)) == Insert::Inconsistent {
                return None;
            }
        }
        Some(e)
    }

    fn operator(&self, sol: &BTreeMap<Col, Rational>) -> Result<WeylOperator> {
        let si = self.ctx.param_index("s").unwrap();
        let mut p = WeylOperator::zero(&self.ctx);
        for (col, c) in sol {
            if let Col::P(i) = col {
                let u = &self.unknowns[*i];
                let mut e = u.m.exps().to_vec();
                e.push(0);
                e[si] = u.k;
                let h = Polynomial::monomial(self.ctx.coeff_vars(), Monomial::new(e), c.clone());
                p = &p + &WeylOperator::term(&self.ctx, h, u.beta.clone())?;
            }
        }
        Ok(p)
    }
}

/// Searches for `P` with derivative order `<= max_order` and `s`-degree
/// `<= max_sdeg` such that `b(s) g f^s = P (g f f^s)`. `Ok(None)` means no
/// such `P` exists within the bounds.
pub fn solve_functional_equation(
    f: &Polynomial,
    g: &Polynomial,
    b: &BFunction,
    max_order: u32,
    max_sdeg: u32,
) -> Result<Option<FunctionalEquationCertificate>> {
    let sys = build_system(f, g, max_order, max_sdeg, b.degree())?;
    let rhs = &uni_in(&b.to_poly(), &sys.ctx) * &sys.g_f_r;
    let Some(ech) = sys.solve(&BTreeMap::new(), &rhs) else {
        return Ok(None);
    };
    let cert = FunctionalEquationCertificate {
        b: b.clone(),
        p: sys.operator(&ech.particular_solution())?,
        g: g.clone(),
        f: f.clone(),
    };
    if !cert.verify()? {
        return Err(Error::InvalidArgument(
            "internal error: functional-equation certificate failed verification".into(),
        ));
    }
    Ok(Some(cert))
}

/// The monic `b` of least degree (at most `max_sdeg`) admitting a
/// functional equation within the bounds, with its certificate.
pub fn find_minimal_b_bounded(
    f: &Polynomial,
    g: &Polynomial,
    max_order: u32,
    max_sdeg: u32,
) -> Result<FunctionalEquationCertificate> {
    for d in 0..=max_sdeg {
        let sys = build_system(f, g, max_order, max_sdeg, d)?;
        // sum c T - sum_{e<d} b_e s^e g f^r = s^d g f^r
        let mut extra: BTreeMap<Monomial, SparseRow<Col>> = BTreeMap::new();
        for e in 0..d {
            let col = sys.s_power(e);
            for (m, c) in (&col * &sys.g_f_r).terms() {
                extra.entry(m.clone()).or_default().insert(Col::B(e as usize), -c.clone());
            }
        }
        let rhs = &sys.s_power(d) * &sys.g_f_r;
        let Some(ech) = sys.solve(&extra, &rhs) else {
            continue;
        };
        // Rows led by b-columns describe exactly which b are feasible.
        let b_of = |v: &BTreeMap<Col, Rational>, lead: Rational| {
            let mut coeffs: Vec<Rational> = (0..d as usize)
                .map(|e| v.get(&Col::B(e)).cloned().unwrap_or_else(Rational::zero))
                .collect();
            coeffs.push(lead);
            UniPoly::new(coeffs)
        };
        let particular = b_of(&ech.particular_solution(), Rational::one());
        let pivots: Vec<Col> = ech.pivot_keys().cloned().collect();
        let mut generator = particular.clone();
        for e in 0..d as usize {
            let col = Col::B(e);
            if !pivots.contains(&col) {
                let dir = b_of(&ech.kernel_vector(&col), Rational::zero());
                generator = generator.gcd(&dir);
            }
        }
        for candidate in [generator, particular] {
            let b = BFunction::from_poly(&candidate)?;
            if let Some(cert) = solve_functional_equation(f, g, &b, max_order, max_sdeg)? {
                return Ok(cert);
            }
        }
    }
    Err(Error::NoBFunctionWithinBounds {
        max_sdeg: max_sdeg as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial_auto;
    use crate::rational::{int, rat};

    fn one_like(f: &Polynomial) -> Polynomial {
        Polynomial::one(f.vars())
    }

    #[test]
    fn x_squared() {
        let f = parse_polynomial_auto("x^2").unwrap();
        let b = BFunction::from_factors([(int(-1), 1), (rat(-1, 2), 1)]);
        let cert = solve_functional_equation(&f, &one_like(&f), &b, 2, 0).unwrap().unwrap();
        assert_eq!(cert.p.render(), "1/4*dx^2");
        let too_small = BFunction::from_factors([(int(-1), 1)]);
        assert!(solve_functional_equation(&f, &one_like(&f), &too_small, 3, 2).unwrap().is_none());
    }

    #[test]
    fn laplacian() {
        let f = parse_polynomial_auto("x^2 + y^2").unwrap();
        let b = BFunction::from_factors([(int(-1), 2)]);
        let cert = solve_functional_equation(&f, &one_like(&f), &b, 2, 0).unwrap().unwrap();
        assert_eq!(cert.p.render(), "1/4*dx^2 + 1/4*dy^2");
    }

    #[test]
    fn minimal_b_small_cases() {
        let f = parse_polynomial_auto("x*y").unwrap();
        let cert = find_minimal_b_bounded(&f, &one_like(&f), 2, 2).unwrap();
        assert_eq!(cert.b.to_string(), "(s+1)^2");
        let f = parse_polynomial_auto("x").unwrap();
        let cert = find_minimal_b_bounded(&f, &one_like(&f), 1, 1).unwrap();
        assert_eq!(cert.b.to_string(), "(s+1)");
        for m in -1..=2 {
            assert!(cert.check_at_integer(m).unwrap());
        }
    }

    #[test]
    fn exhausted_bounds() {
        let f = parse_polynomial_auto("x^2").unwrap();
        assert_eq!(
            find_minimal_b_bounded(&f, &one_like(&f), 2, 1),
            Err(Error::NoBFunctionWithinBounds { max_sdeg: 1 })
        );
    }
}
