//! Identities for `s = -dt*t` in the Weyl algebra in `t`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::operator::{WeylContext, WeylOperator};
use crate::algebra::{UniPoly, VarSet};
use crate::rational::int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SIdentity {
    /// `P(s) t^m = t^m P(s - m)`
    TShift,
    /// `P(s) dt^m = dt^m P(s + m)`
    DtShift,
    /// `t^m dt^m = (-1)^m (s+1)(s+2)...(s+m)`
    TmDtm,
    /// `dt^m t^m = (-1)^m s(s-1)...(s-m+1)`
    DtmTm,
}

impl SIdentity {
    pub const ALL: [SIdentity; 4] = [
        SIdentity::TShift,
        SIdentity::DtShift,
        SIdentity::TmDtm,
        SIdentity::DtmTm,
    ];

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "t_shift" => Some(SIdentity::TShift),
            "dt_shift" => Some(SIdentity::DtShift),
            "tm_dtm" => Some(SIdentity::TmDtm),
            "dtm_tm" => Some(SIdentity::DtmTm),
            _ => None,
        }
    }
}

/// Context with the single variable `t`.
pub fn t_context() -> Arc<WeylContext> {
    WeylContext::new(&VarSet::new(["t"]).unwrap(), &[] as &[&str]).unwrap()
}

/// The operator `-dt*t`.
pub fn s_operator(ctx: &Arc<WeylContext>) -> WeylOperator {
    let t = WeylOperator::var(ctx, 0);
    let dt = WeylOperator::d(ctx, 0);
    (&dt * &t).neg()
}

/// `P(S)` for an operator `S`, by Horner's rule.
pub fn eval_at_operator(p: &UniPoly, s: &WeylOperator) -> WeylOperator {
    let ctx = s.context();
    p.coeffs().iter().rev().fold(WeylOperator::zero(ctx), |acc, c| {
        &(&acc * s) + &WeylOperator::constant(ctx, c.clone())
    })
}

fn product_of_shifts(s: &WeylOperator, shifts: impl Iterator<Item = i64>) -> WeylOperator {
    let ctx = s.context();
    shifts.fold(WeylOperator::one(ctx), |acc, j| {
        &acc * &(s + &WeylOperator::constant(ctx, int(j)))
    })
}

/// Checks one of the `s = -dt*t` identities by comparing normal forms in
/// the Weyl algebra in `t`. `p` is ignored by the two product identities.
pub fn check_s_identity(p: &UniPoly, m: u32, which: SIdentity) -> bool {
    let ctx = t_context();
    let s = s_operator(&ctx);
    let t_m = WeylOperator::var(&ctx, 0).pow(m);
    let dt_m = WeylOperator::d(&ctx, 0).pow(m);
    let sign = if m.is_multiple_of(2) { 1 } else { -1 };
    let (lhs, rhs) = match which {
        SIdentity::TShift => (
            &eval_at_operator(p, &s) * &t_m,
            &t_m * &eval_at_operator(&p.shift(&int(-(m as i64))), &s),
        ),
        SIdentity::DtShift => (
            &eval_at_operator(p, &s) * &dt_m,
            &dt_m * &eval_at_operator(&p.shift(&int(m as i64)), &s),
        ),
        SIdentity::TmDtm => (
            &t_m * &dt_m,
            product_of_shifts(&s, 1..=m as i64).scale(&int(sign)),
        ),
        SIdentity::DtmTm => (
            &dt_m * &t_m,
            product_of_shifts(&s, (0..m as i64).map(|j| -j)).scale(&int(sign)),
        ),
    };
    lhs == rhs
}
