use std::sync::Arc;

use super::operator::{WeylContext, WeylOperator};
use crate::algebra::varset::check_same;
use crate::algebra::{Polynomial, VarSet};
use crate::error::{Error, Result};
use crate::rational::int;

/// `(num / f^power) * f^s` in `Q[x, s][1/f] f^s`. The numerator lives over
/// the variables followed by `s`. Canonical form: either `power == 0` or `f`
/// does not divide the numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedElement {
    ctx: Arc<WeylContext>,
    f: Polynomial,
    f_lift: Polynomial,
    num: Polynomial,
    power: u32,
}

/// Outcome of substituting an integer for `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialized {
    Value(Polynomial),
    /// `numerator / f^f_power` remains a genuine fraction.
    Residual { numerator: Polynomial, f_power: u32 },
}

/// Context for twisted elements over the variables of `f`: same variables,
/// one central parameter `s`.
pub fn twisted_context(vars: &Arc<VarSet>) -> Result<Arc<WeylContext>> {
    if vars.index_of("t").is_some() {
        return Err(Error::UnexpectedTVariable);
    }
    WeylContext::with_s(vars)
}

impl TwistedElement {
    pub fn new(ctx: &Arc<WeylContext>, f: &Polynomial, num: Polynomial, power: u32) -> Result<Self> {
        check_same(f.vars(), ctx.vars())?;
        check_same(num.vars(), ctx.coeff_vars())?;
        if ctx.param_index("s").is_none() {
            return Err(Error::ContextMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f_lift = f.embed(ctx.coeff_vars())?;
        let mut e = TwistedElement {
            ctx: ctx.clone(),
            f: f.clone(),
            f_lift,
            num,
            power,
        };
        e.canonicalize();
        Ok(e)
    }

    /// `g * f^s` for a polynomial `g` in the variables of `f`.
    pub fn from_x_polynomial(ctx: &Arc<WeylContext>, f: &Polynomial, g: &Polynomial) -> Result<Self> {
        Self::new(ctx, f, g.embed(ctx.coeff_vars())?, 0)
    }

    /// `f^(s+k)`.
    pub fn f_power_s(ctx: &Arc<WeylContext>, f: &Polynomial, k: i64) -> Result<Self> {
        let one = Polynomial::one(ctx.coeff_vars());
        if k >= 0 {
            Self::new(ctx, f, f.embed(ctx.coeff_vars())?.pow(k as u32), 0)
        } else {
            Self::new(ctx, f, one, (-k) as u32)
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn f_power(&self) -> u32 {
        self.power
    }

    pub fn base(&self) -> &Polynomial {
        &self.f
    }

    pub fn context(&self) -> &Arc<WeylContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `f` over the variables followed by `s`.
    pub fn lifted_base(&self) -> &Polynomial {
        &self.f_lift
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.power = 0;
            return;
        }
        while self.power > 0 {
            match self.num.div_exact(&self.f_lift) {
                Some(q) => {
                    self.num = q;
                    self.power -= 1;
                }
                None => break,
            }
        }
    }

    fn with(&self, num: Polynomial, power: u32) -> TwistedElement {
        let mut e = TwistedElement {
            num,
            power,
            ..self.clone()
        };
        e.canonicalize();
        e
    }

    /// Numerator over `f^power` for a larger power.
    fn numerator_at(&self, power: u32) -> Polynomial {
        &self.num * &self.f_lift.pow(power - self.power)
    }

    pub fn add(&self, other: &TwistedElement) -> Result<TwistedElement> {
        if self.f != other.f || *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch);
        }
        let p = self.power.max(other.power);
        Ok(self.with(&self.numerator_at(p) + &other.numerator_at(p), p))
    }

    pub fn scale_by(&self, h: &Polynomial) -> Result<TwistedElement> {
        check_same(h.vars(), self.ctx.coeff_vars())?;
        Ok(self.with(h * &self.num, self.power))
    }

    /// Raw derivative in variable `i`, without cancelling powers of `f`.
    pub(crate) fn d_raw(&self, num: &Polynomial, power: u32, i: usize) -> Polynomial {
        let s = Polynomial::var_at(self.ctx.coeff_vars(), self.ctx.param_index("s").unwrap());
        let shift = &s - &Polynomial::constant(self.ctx.coeff_vars(), int(power as i64));
        let a = &self.f_lift * &num.partial(i);
        let b = &(&shift * num) * &self.f_lift.partial(i);
        &a + &b
    }

    /// `d^beta` applied to `num / f^power`, returning the numerator over
    /// `f^(power + |beta|)`.
    pub(crate) fn derivative_numerator(&self, beta: &[u32]) -> (Polynomial, u32) {
        let mut num = self.num.clone();
        let mut power = self.power;
        for (i, &k) in beta.iter().enumerate() {
            for _ in 0..k {
                num = self.d_raw(&num, power, i);
                power += 1;
            }
        }
        (num, power)
    }

    /// `s -> m`.
    pub fn specialize_s(&self, m: i64) -> Specialized {
        let si = self.ctx.param_index("s").unwrap();
        let sub = self.num.substitute(si, &int(m));
        let g = restrict(&sub, self.ctx.vars());
        if g.is_zero() {
            return Specialized::Value(g);
        }
        let p = self.power as i64;
        if m >= p {
            Specialized::Value(&g * &self.f.pow((m - p) as u32))
        } else {
            Specialized::Residual {
                numerator: g,
                f_power: (p - m) as u32,
            }
        }
    }
}

/// Drops trailing variables that do not occur.
fn restrict(p: &Polynomial, target: &Arc<VarSet>) -> Polynomial {
    let n = target.len();
    Polynomial::from_terms(
        target,
        p.terms().map(|(m, c)| {
            debug_assert!(m.exps()[n..].iter().all(|&e| e == 0));
            (crate::algebra::Monomial::new(m.exps()[..n].to_vec()), c.clone())
        }),
    )
}

/// The `D[s]`-action on the twisted module.
pub fn act_on_twisted(p: &WeylOperator, e: &TwistedElement) -> Result<TwistedElement> {
    if **p.context() != *e.ctx {
        return Err(Error::ContextMismatch);
    }
    let top = e.power + p.order().unwrap_or(0);
    let mut acc = Polynomial::zero(e.ctx.coeff_vars());
    for (beta, h) in p.terms() {
        let (num, power) = e.derivative_numerator(beta.exps());
        let lifted = &num * &e.f_lift.pow(top - power);
        acc = &acc + &(h * &lifted);
    }
    Ok(e.with(acc, top))
}

pub fn specialize_s(e: &TwistedElement, m: i64) -> Specialized {
    e.specialize_s(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::weyl::operator::parse_operator;

    fn setup(vars: &[&str], f: &str) -> (Arc<WeylContext>, Polynomial) {
        let vs = VarSet::new(vars.iter().copied()).unwrap();
        let ctx = twisted_context(&vs).unwrap();
        let f = parse_polynomial(f, &vs).unwrap();
        (ctx, f)
    }

    fn num(ctx: &Arc<WeylContext>, t: &str) -> Polynomial {
        parse_polynomial(t, ctx.coeff_vars()).unwrap()
    }

    #[test]
    fn chain_rule() {
        let (ctx, f) = setup(&["x"], "x^2");
        let e = TwistedElement::f_power_s(&ctx, &f, 0).unwrap();
        let r = act_on_twisted(&parse_operator("dx", &ctx).unwrap(), &e).unwrap();
        assert_eq!(r.numerator(), &num(&ctx, "2*x*s"));
        assert_eq!(r.f_power(), 1);
    }

    #[test]
    fn quarter_second_derivative() {
        let (ctx, f) = setup(&["x"], "x^2");
        let e = TwistedElement::f_power_s(&ctx, &f, 1).unwrap();
        let r = act_on_twisted(&parse_operator("1/4*dx^2", &ctx).unwrap(), &e).unwrap();
        assert_eq!(r.numerator(), &num(&ctx, "(s+1)*(s+1/2)"));
        assert_eq!(r.f_power(), 0);
    }

    #[test]
    fn yano_operator_annihilates() {
        let (ctx, f) = setup(&["x", "y"], "x^2 + y^3");
        let e = TwistedElement::f_power_s(&ctx, &f, 0).unwrap();
        let op = parse_operator("2*x*dy - 3*y^2*dx", &ctx).unwrap();
        assert!(act_on_twisted(&op, &e).unwrap().is_zero());
    }

    #[test]
    fn specializations() {
        let (ctx, f) = setup(&["x"], "x^2");
        let vs = ctx.vars().clone();
        let e = TwistedElement::new(&ctx, &f, num(&ctx, "s"), 0).unwrap();
        assert_eq!(e.specialize_s(2), Specialized::Value(parse_polynomial("2*x^4", &vs).unwrap()));
        let e = TwistedElement::f_power_s(&ctx, &f, -1).unwrap();
        assert_eq!(
            e.specialize_s(0),
            Specialized::Residual {
                numerator: parse_polynomial("1", &vs).unwrap(),
                f_power: 1
            }
        );
        let e = TwistedElement::new(&ctx, &f, num(&ctx, "s + 1"), 0).unwrap();
        assert_eq!(e.specialize_s(-1), Specialized::Value(Polynomial::zero(&vs)));
    }

    #[test]
    fn canonical_form_cancels_f() {
        let (ctx, f) = setup(&["x", "y"], "x^2 + y^3");
        let e = TwistedElement::new(&ctx, &f, num(&ctx, "s*(x^2 + y^3)^2"), 3).unwrap();
        assert_eq!(e.f_power(), 1);
        assert_eq!(e.numerator(), &num(&ctx, "s"));
    }
}
