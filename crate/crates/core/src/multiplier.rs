//! Monomial multiplier ideals, jumping numbers, and thresholds and root
//! bounds computed from numerical log resolution data.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, Polynomial};
use crate::bs::{bs_weighted_homogeneous, minimal_exponent, BFunction, WeightVector};
use crate::error::{Error, Result};
use crate::rational::{
    ceil_to_i64, floor_to_i64, fmt_rational, int, serialize_rational, serialize_rationals,
    Extended, Rational,
};
use crate::vfilt::{
    act_dt, membership_certify, monomial_variable_names, BfElement, Membership, Truncation,
    VModel,
};

/// `f = x_1^{a_1} ... x_n^{a_n}` with at least one positive exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialDivisor {
    exponents: Vec<u32>,
}

impl MonomialDivisor {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.iter().all(|&a| a == 0) {
            return Err(Error::InvalidArgument(
                "a monomial divisor needs a positive exponent".to_string(),
            ));
        }
        Ok(MonomialDivisor { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn model(&self) -> VModel {
        VModel::Snc {
            exponents: self.exponents.clone(),
        }
    }

    /// Common denominator of the jumps, `lcm(a_i)`.
    pub fn grid_denominator(&self) -> u64 {
        self.model().grid_denominator()
    }
}

/// A monomial ideal given by its minimal generators, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, generators: impl IntoIterator<Item = Monomial>) -> Self {
        let mut gens: Vec<Monomial> = generators.into_iter().collect();
        gens.sort();
        gens.dedup();
        let minimal: Vec<Monomial> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        MonomialIdeal {
            nvars,
            generators: minimal,
        }
    }

    pub fn principal(m: Monomial) -> Self {
        let n = m.len();
        Self::new(n, [m])
    }

    pub fn unit(nvars: usize) -> Self {
        Self::principal(Monomial::one(nvars))
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn render(&self, names: &[String]) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.render(names)).collect();
        format!("({})", gens.join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&monomial_variable_names(self.nvars)))
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `I(f^lambda) = (prod x_i^{max(ceil(lambda a_i) - 1, 0)})`.
pub fn i_lambda(a: &MonomialDivisor, lambda: &Rational) -> MonomialIdeal {
    let exps = a
        .exponents
        .iter()
        .map(|&ai| (ceil_to_i64(&(lambda * int(ai as i64))) - 1).max(0) as u32)
        .collect();
    MonomialIdeal::principal(Monomial::new(exps))
}

/// `J(lambda * div f) = (prod x_i^{floor(lambda a_i)})`.
pub fn multiplier_ideal_monomial(a: &MonomialDivisor, lambda: &Rational) -> MonomialIdeal {
    let exps = a
        .exponents
        .iter()
        .map(|&ai| floor_to_i64(&(lambda * int(ai as i64))).max(0) as u32)
        .collect();
    MonomialIdeal::principal(Monomial::new(exps))
}

/// Jumping numbers in `(0, bound]`: all `j / a_i` with `1 <= j <= bound a_i`.
pub fn jumping_numbers_monomial(a: &MonomialDivisor, bound: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    for &ai in a.exponents.iter().filter(|&&ai| ai > 0) {
        let top = floor_to_i64(&(bound * int(ai as i64)));
        for j in 1..=top {
            out.push(Rational::new(j.into(), (ai as i64).into()));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// One prime divisor `E` of a log resolution: `a` is its coefficient in the
/// pullback of `H`, `k` in the relative canonical divisor and `b` in the
/// pullback of `div(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionRow {
    pub a: u32,
    pub k: u32,
    #[serde(default)]
    pub b: u32,
    #[serde(default)]
    pub exceptional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LogResolutionData {
    rows: Vec<ResolutionRow>,
}

impl LogResolutionData {
    pub fn new(rows: Vec<ResolutionRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidArgument(
                "log resolution data needs at least one row".to_string(),
            ));
        }
        if rows.iter().any(|r| r.a == 0) {
            return Err(Error::InvalidArgument(
                "every row needs a >= 1".to_string(),
            ));
        }
        Ok(LogResolutionData { rows })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<ResolutionRow> = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("resolution data: {e}")))?;
        Self::new(rows)
    }

    pub fn rows(&self) -> &[ResolutionRow] {
        &self.rows
    }

    /// The cap `3 max(a_i)` on `l` used when none is given.
    pub fn default_ell_cap(&self) -> u32 {
        3 * self.rows.iter().map(|r| r.a).max().unwrap_or(1)
    }
}

fn ratio(num: u32, den: u32) -> Rational {
    Rational::new((num as i64).into(), (den as i64).into())
}

/// `lct = min (k + 1) / a`.
pub fn lct_from_resolution(data: &LogResolutionData) -> Rational {
    data.rows
        .iter()
        .map(|r| ratio(r.k + 1, r.a))
        .min()
        .expect("nonempty")
}

/// `lct_g = min (k + b + 1) / a`.
pub fn lct_g_from_resolution(data: &LogResolutionData) -> Rational {
    data.rows
        .iter()
        .map(|r| ratio(r.k + r.b + 1, r.a))
        .min()
        .expect("nonempty")
}

/// `min (k + 1) / a` over exceptional rows, or infinity without any.
pub fn min_exponent_lower_bound(data: &LogResolutionData) -> Extended {
    data.rows
        .iter()
        .filter(|r| r.exceptional)
        .map(|r| ratio(r.k + 1, r.a))
        .min()
        .map_or(Extended::Infinity, Extended::Finite)
}

/// Which root constraint to evaluate from resolution data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootBound {
    /// Candidates `-(k + l)/a` for roots of `b_f`.
    BfRoots,
    /// Upper bound `-min{1, (k+b+1)/a - m}` on roots of `b` of `g dt^m delta`.
    GDtmBound(u32),
    /// Upper bound `-min (k+b+1)/a` on roots of `b` of `g delta`.
    GDeltaBound,
    /// Candidates for roots of `b` of `dt^m delta`: negative integers and
    /// `m - (k + l)/a`.
    DtmRoots(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootBoundResult {
    Candidates(#[serde(serialize_with = "serialize_rationals")] Vec<Rational>),
    UpperBound(#[serde(serialize_with = "serialize_rational")] Rational),
}

impl RootBoundResult {
    /// True if `root` is allowed by this result.
    pub fn admits(&self, root: &Rational) -> bool {
        match self {
            RootBoundResult::Candidates(c) => c.binary_search(root).is_ok(),
            RootBoundResult::UpperBound(u) => root <= u,
        }
    }
}

/// Candidate root sets (with `1 <= l <= max_ell`, default `3 max(a_i)`)
/// or root upper bounds from a log resolution. With `exceptional_only`,
/// `DtmRoots` only uses exceptional rows, which is valid when `H` is
/// reduced and the strict transforms of its components are disjoint.
pub fn root_bound_candidates(
    data: &LogResolutionData,
    which: RootBound,
    max_ell: Option<u32>,
    exceptional_only: bool,
) -> RootBoundResult {
    let cap = max_ell.unwrap_or_else(|| data.default_ell_cap());
    let one = Rational::one();
    let candidates = |shift: u32, rows: &mut dyn Iterator<Item = &ResolutionRow>| {
        let mut out = Vec::new();
        for r in rows {
            for l in 1..=cap {
                out.push(int(shift as i64) - ratio(r.k + l, r.a));
            }
        }
        out
    };
    match which {
        RootBound::BfRoots => {
            let mut c = candidates(0, &mut data.rows.iter());
            c.sort();
            c.dedup();
            RootBoundResult::Candidates(c)
        }
        RootBound::DtmRoots(m) => {
            let mut rows = data
                .rows
                .iter()
                .filter(|r| !exceptional_only || r.exceptional);
            let mut c = candidates(m, &mut rows);
            c.extend((1..=cap as i64).map(|i| int(-i)));
            c.sort();
            c.dedup();
            RootBoundResult::Candidates(c)
        }
        RootBound::GDtmBound(m) => {
            let inner = lct_g_from_resolution(data) - int(m as i64);
            let inner = if inner < one { inner } else { one };
            RootBoundResult::UpperBound(-inner)
        }
        RootBound::GDeltaBound => RootBoundResult::UpperBound(-lct_g_from_resolution(data)),
    }
}

/// True iff `b(-lambda) = 0` for every given jumping number.
pub fn check_jumping_roots(b: &BFunction, jumps: &[Rational]) -> bool {
    jumps.iter().all(|l| b.eval(&-l).is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    CertifiedMember,
    NotInWindow,
    Unknown,
    OutsideWindow,
}

impl From<Membership> for Certification {
    fn from(m: Membership) -> Self {
        match m {
            Membership::CertifiedMember => Certification::CertifiedMember,
            Membership::NotInWindow => Certification::NotInWindow,
            Membership::Unknown => Certification::Unknown,
        }
    }
}

fn certify(e: &BfElement, model: &VModel, level: &Rational, trunc: &Truncation) -> Result<Certification> {
    match membership_certify(e, model, level, trunc) {
        Ok(m) => Ok(m.into()),
        Err(Error::OutsideWindow) => Ok(Certification::OutsideWindow),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BudurSaitoEntry {
    #[serde(serialize_with = "serialize_rational")]
    pub lambda: Rational,
    /// The level `V^{>lambda}` was read from.
    #[serde(serialize_with = "serialize_rational")]
    pub level: Rational,
    pub generator: String,
    pub outcome: Certification,
}

#[derive(Clone, Debug, Serialize)]
pub struct BudurSaitoReport {
    pub direction: &'static str,
    pub entries: Vec<BudurSaitoEntry>,
    pub all_certified: bool,
}

/// Certifies `g delta in V^{>lambda}` for the generator `g` of each
/// `J(lambda)`. Truncated snapshots only approximate `V` from inside, so
/// only this inclusion can be confirmed.
pub fn budur_saito_consistency(
    a: &MonomialDivisor,
    grid: &[Rational],
    trunc: &Truncation,
) -> Result<BudurSaitoReport> {
    let model = a.model();
    let module = model.module();
    let names = monomial_variable_names(a.nvars());
    let mut entries = Vec::new();
    for lambda in grid {
        let level = model.next_above(lambda);
        for g in multiplier_ideal_monomial(a, lambda).generators() {
            let e = BfElement::monomial(&module, 0, g.clone(), Rational::one());
            entries.push(BudurSaitoEntry {
                lambda: lambda.clone(),
                level: level.clone(),
                generator: g.render(&names),
                outcome: certify(&e, &model, &level, trunc)?,
            });
        }
    }
    let all_certified = entries
        .iter()
        .all(|e| e.outcome == Certification::CertifiedMember);
    Ok(BudurSaitoReport {
        direction: "J(lambda) delta in V^{>lambda} only; the reverse inclusion is not checked",
        entries,
        all_certified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MicrolocalCertificate {
    pub q: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub alpha: Rational,
    pub outcome: Certification,
}

#[derive(Clone, Debug, Serialize)]
pub struct MicrolocalReport {
    pub threshold: Extended,
    pub certificates: Vec<MicrolocalCertificate>,
}

/// The smallest `lambda` with a nontrivial microlocal multiplier ideal,
/// which equals the minimal exponent; for every grid point `q + alpha`
/// below it (`q <= 2`, `alpha in [0, 1)`) also certifies
/// `dt^q delta in V^{>alpha}` on a truncation.
pub fn microlocal_triviality_threshold(
    f: &Polynomial,
    w: &WeightVector,
    trunc: &Truncation,
) -> Result<MicrolocalReport> {
    let b = bs_weighted_homogeneous(f, w)?;
    let threshold = minimal_exponent(&b)?;
    let model = VModel::quasi_homogeneous(f.clone(), w.weights())?;
    let module = model.module();
    let n = model.grid_denominator() as i64;
    let mut certificates = Vec::new();
    let mut e = BfElement::delta(&module);
    for q in 0..=2u32 {
        for i in 0..n {
            let alpha = Rational::new(i.into(), n.into());
            let point = &alpha + int(q as i64);
            if Extended::Finite(point) >= threshold {
                continue;
            }
            let level = model.next_above(&alpha);
            certificates.push(MicrolocalCertificate {
                q,
                alpha,
                outcome: certify(&e, &model, &level, trunc)?,
            });
        }
        e = act_dt(&e);
    }
    Ok(MicrolocalReport {
        threshold,
        certificates,
    })
}

/// Renders a rational list as `{a, b, ...}`.
pub fn fmt_set(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(fmt_rational).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn row(a: u32, k: u32, exceptional: bool) -> ResolutionRow {
        ResolutionRow {
            a,
            k,
            b: 0,
            exceptional,
        }
    }

    pub(crate) fn cusp_data() -> LogResolutionData {
        LogResolutionData::new(vec![
            row(1, 0, false),
            row(2, 1, true),
            row(3, 2, true),
            row(6, 4, true),
        ])
        .unwrap()
    }

    #[test]
    fn ideals() {
        let a = MonomialDivisor::new(vec![2, 3]).unwrap();
        assert_eq!(i_lambda(&a, &rat(5, 6)).to_string(), "(x*y^2)");
        assert_eq!(i_lambda(&a, &rat(1, 3)).to_string(), "(1)");
        assert_eq!(i_lambda(&a, &int(0)).to_string(), "(1)");
        assert_eq!(multiplier_ideal_monomial(&a, &rat(5, 6)).to_string(), "(x*y^2)");
        assert_eq!(multiplier_ideal_monomial(&a, &int(1)).to_string(), "(x^2*y^3)");
        assert!(multiplier_ideal_monomial(&a, &rat(1, 4)).is_unit());
    }

    #[test]
    fn jumps() {
        let a = MonomialDivisor::new(vec![2, 3]).unwrap();
        let j = jumping_numbers_monomial(&a, &int(1));
        assert_eq!(j, vec![rat(1, 3), rat(1, 2), rat(2, 3), int(1)]);
        let smooth = MonomialDivisor::new(vec![1]).unwrap();
        assert_eq!(jumping_numbers_monomial(&smooth, &int(2)), vec![int(1), int(2)]);
    }

    #[test]
    fn resolution_numbers() {
        let data = cusp_data();
        assert_eq!(lct_from_resolution(&data), rat(5, 6));
        assert_eq!(min_exponent_lower_bound(&data), Extended::Finite(rat(5, 6)));
        let data = LogResolutionData::new(vec![row(1, 0, false)]).unwrap();
        assert_eq!(min_exponent_lower_bound(&data), Extended::Infinity);
        let data = LogResolutionData::new(vec![ResolutionRow {
            a: 2,
            k: 1,
            b: 3,
            exceptional: false,
        }])
        .unwrap();
        assert_eq!(lct_g_from_resolution(&data), rat(5, 2));
    }

    #[test]
    fn json_rows() {
        let data =
            LogResolutionData::from_json(r#"[{"a":2,"k":1,"exceptional":true},{"a":1,"k":0}]"#)
                .unwrap();
        assert_eq!(data.rows()[0].b, 0);
        assert!(!data.rows()[1].exceptional);
        assert!(LogResolutionData::from_json("[]").is_err());
        assert!(LogResolutionData::from_json(r#"[{"a":0,"k":1}]"#).is_err());
    }

    #[test]
    fn candidates() {
        let data = cusp_data();
        let c = root_bound_candidates(&data, RootBound::BfRoots, Some(7), false);
        for r in [rat(-5, 6), rat(-7, 6), int(-1)] {
            assert!(c.admits(&r));
        }
        assert_eq!(
            root_bound_candidates(&data, RootBound::GDeltaBound, None, false),
            RootBoundResult::UpperBound(rat(-5, 6))
        );
        let c = root_bound_candidates(&data, RootBound::DtmRoots(1), Some(7), true);
        assert!(c.admits(&rat(-1, 6)));
    }
}
