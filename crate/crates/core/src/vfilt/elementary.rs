use num_traits::{Signed, Zero};

use crate::algebra::UniPoly;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, Rational};

/// Checks that every root `r` of `b` has `-r` in `[0, 1)` and that `m` is
/// the multiplicity of the root zero.
fn validate(b: &UniPoly, m: u32) -> Result<()> {
    if b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let roots = b.rational_roots()?;
    for (r, _) in &roots {
        if r.is_positive() || r <= &int(-1) {
            return Err(Error::RootOutOfRange(fmt_rational(r)));
        }
    }
    let zero_mult = roots
        .iter()
        .find(|(r, _)| r.is_zero())
        .map_or(0, |(_, k)| *k);
    if zero_mult != m {
        return Err(Error::InvalidArgument(format!(
            "m = {m} but s = 0 is a root of multiplicity {zero_mult}"
        )));
    }
    Ok(())
}

/// Cyclic annihilators of `V^k E / V^{k+1} E` for the elementary module
/// `E(b, P, Q)` with `p` and `q` generators: `(s+k)^m` with multiplicity
/// `p` and `(s+k) b(s+k)` with multiplicity `q`.
pub fn elementary_graded_annihilators(
    b: &UniPoly,
    m: u32,
    p: u32,
    q: u32,
    k: i64,
) -> Result<Vec<(UniPoly, u32)>> {
    validate(b, m)?;
    let shift = int(k);
    let lin = UniPoly::linear(&-&shift);
    Ok(vec![
        (lin.pow(m), p),
        (lin.mul(&b.shift(&shift)), q),
    ])
}

/// The same for the dual module: `(s+k+1)^m` with multiplicity `p` and
/// `(s+k+1) b(-s-k-1)` with multiplicity `q`, describing
/// `V^{>k} / V^{>k+1}`.
pub fn dual_elementary_graded_annihilators(
    b: &UniPoly,
    m: u32,
    p: u32,
    q: u32,
    k: i64,
) -> Result<Vec<(UniPoly, u32)>> {
    validate(b, m)?;
    let c: Rational = int(k + 1);
    let lin = UniPoly::linear(&-&c);
    Ok(vec![
        (lin.pow(m), p),
        (lin.mul(&b.compose_affine(&int(-1), &-&c)), q),
    ])
}
