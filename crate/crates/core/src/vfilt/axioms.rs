use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::element::{add_to, BfElement, Vector};
use super::model::VModel;
use super::snapshot::{span_in_window, truncated_subspace, PieceSpace, SubspaceSnapshot, Truncation};
use crate::algebra::Monomial;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::rational::{fmt_rational, int, serialize_matrix, serialize_rational, Rational};

/// Largest power of `s + alpha` tried when measuring nilpotency.
pub const MAX_NILPOTENCY: u32 = 4;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Containments {
    /// `V^{>alpha}` lies in `V^alpha`.
    pub mono: Option<bool>,
    /// `t V^alpha` lies in `V^{alpha+1}`.
    pub t_up: Option<bool>,
    /// `V^{alpha+1}` lies in `t V^alpha` on the shrunken window (alpha > 0).
    pub t_eq: Option<bool>,
    /// `dt V^alpha` lies in `V^{alpha-1}`.
    pub dt_down: Option<bool>,
}

impl Containments {
    fn failed(&self) -> bool {
        [self.mono, self.t_up, self.t_eq, self.dt_down].contains(&Some(false))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    #[serde(serialize_with = "serialize_rational")]
    pub alpha: Rational,
    pub dim: usize,
    pub saturated: bool,
    pub containments: Containments,
    pub nilpotency_order: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub model: String,
    pub truncation: Truncation,
    pub levels: Vec<LevelReport>,
}

impl AxiomReport {
    /// No containment failed and every level has a measured nilpotency order.
    pub fn passed(&self) -> bool {
        self.levels
            .iter()
            .all(|l| !l.containments.failed() && l.nilpotency_order.is_some())
    }

    pub fn max_nilpotency(&self) -> Option<u32> {
        self.levels.iter().filter_map(|l| l.nilpotency_order).max()
    }
}

struct Cache<'a> {
    model: &'a VModel,
    trunc: &'a Truncation,
    snaps: BTreeMap<Rational, SubspaceSnapshot>,
}

impl<'a> Cache<'a> {
    fn new(model: &'a VModel, trunc: &'a Truncation) -> Self {
        Cache {
            model,
            trunc,
            snaps: BTreeMap::new(),
        }
    }

    fn ensure(&mut self, alpha: &Rational) {
        if !self.snaps.contains_key(alpha) {
            let snap = truncated_subspace(self.model, alpha, self.trunc);
            self.snaps.insert(alpha.clone(), snap);
        }
    }

    fn get(&self, alpha: &Rational) -> &SubspaceSnapshot {
        &self.snaps[alpha]
    }
}

fn first_missing<'v>(
    target: &SubspaceSnapshot,
    vectors: impl IntoIterator<Item = &'v Vector>,
) -> Option<&'v Vector> {
    vectors.into_iter().find(|v| !target.contains_vector(v))
}

/// Outcome of one containment: `Ok(result)` or a hard failure when every
/// snapshot involved is saturated.
fn judge(
    snap: &SubspaceSnapshot,
    check: &str,
    witness: Option<&Vector>,
    saturated: bool,
) -> Result<bool> {
    match witness {
        None => Ok(true),
        Some(w) if saturated => Err(Error::AxiomViolation {
            level: fmt_rational(&snap.alpha),
            check: check.to_string(),
            witness: BfElement::from_vector(&snap.module, w.clone()).to_string(),
        }),
        Some(_) => Ok(false),
    }
}

fn images(snap: &SubspaceSnapshot, op: impl Fn(&Vector) -> Vector) -> Vec<Vector> {
    snap.work_vectors().map(op).filter(|v| !v.is_empty()).collect()
}

fn shifted_s(snap: &SubspaceSnapshot, v: &Vector) -> Vector {
    let mut out = snap.module.s_vec(v);
    for (k, c) in v {
        add_to(&mut out, k.clone(), c * &snap.alpha);
    }
    out
}

/// Checks the V-filtration axioms on truncated snapshots at each level.
pub fn check_axioms(model: &VModel, levels: &[Rational], trunc: &Truncation) -> Result<AxiomReport> {
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "levels must be strictly increasing".to_string(),
        ));
    }
    let mut cache = Cache::new(model, trunc);
    let one = int(1);
    for a in levels {
        for b in [a.clone(), model.next_above(a), a + &one, a - &one] {
            cache.ensure(&b);
        }
    }
    let deg_f = model.module().f().total_degree().unwrap_or(0);
    let mut reports = Vec::new();
    for alpha in levels {
        let v = cache.get(alpha);
        let above = cache.get(&model.next_above(alpha));
        let plus = cache.get(&(alpha + &one));
        let minus = cache.get(&(alpha - &one));
        let mut c = Containments::default();

        let w = first_missing(v, above.space.basis());
        c.mono = Some(judge(v, "mono", w, v.saturated && above.saturated)?);

        let t_images = images(v, |x| v.module.t_vec(x));
        let t_in = span_in_window(&v.pieces, &t_images, &v.window);
        let w = first_missing(plus, &t_in);
        c.t_up = Some(judge(v, "t_up", w, v.saturated && plus.saturated)?);

        if alpha > &Rational::zero() {
            if let Some(inner) = v.window.shrink(1, deg_f) {
                let mut t_span = PieceSpace::default();
                for x in &t_images {
                    t_span.insert(&v.pieces, x);
                }
                let targets = span_in_window(&v.pieces, plus.space.basis(), &inner);
                let w = targets.iter().find(|x| !t_span.contains(&v.pieces, x));
                c.t_eq = Some(judge(v, "t_eq", w, v.saturated && plus.saturated)?);
            }
        }

        let dt_images = images(v, |x| v.module.dt_vec(x));
        let dt_in = span_in_window(&v.pieces, &dt_images, &v.window);
        let w = first_missing(minus, &dt_in);
        c.dt_down = Some(judge(v, "dt_down", w, v.saturated && minus.saturated)?);

        let mut cur: Vec<Vector> = v.work_vectors().cloned().collect();
        let mut nilpotency_order = None;
        for k in 1..=MAX_NILPOTENCY {
            cur = cur
                .iter()
                .map(|x| shifted_s(v, x))
                .filter(|x| !x.is_empty())
                .collect();
            let inside = span_in_window(&v.pieces, &cur, &v.window);
            if first_missing(above, &inside).is_none() {
                nilpotency_order = Some(k);
                break;
            }
        }

        reports.push(LevelReport {
            alpha: alpha.clone(),
            dim: v.dim(),
            saturated: v.saturated,
            containments: c,
            nilpotency_order,
        });
    }
    Ok(AxiomReport {
        model: model.to_string(),
        truncation: *trunc,
        levels: reports,
    })
}

/// Matrices of `t: Gr^alpha -> Gr^{alpha+1}` and `dt: Gr^{alpha+1} ->
/// Gr^alpha` on the window, in bases of representatives.
#[derive(Clone, Debug, Serialize)]
pub struct GrMaps {
    #[serde(serialize_with = "serialize_rational")]
    pub alpha: Rational,
    pub dim_gr_alpha: usize,
    pub dim_gr_alpha_plus_one: usize,
    /// `dim_gr_alpha_plus_one` rows; a column is zero when the image left
    /// the window (see `t_columns_in_window`).
    #[serde(serialize_with = "serialize_matrix")]
    pub t_matrix: Vec<Vec<Rational>>,
    pub t_columns_in_window: Vec<bool>,
    #[serde(serialize_with = "serialize_matrix")]
    pub dt_matrix: Vec<Vec<Rational>>,
    pub dt_columns_in_window: Vec<bool>,
    pub t_injective: bool,
    pub t_surjective: bool,
    pub dt_injective: bool,
    pub dt_surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum AugKey {
    Coord(u32, Monomial),
    Tag(usize),
}

/// Representatives of `upper / lower` taken from the basis of `upper`.
fn quotient_reps(upper: &SubspaceSnapshot, lower: &SubspaceSnapshot) -> Vec<Vector> {
    let mut space = lower.space.clone();
    upper
        .space
        .basis()
        .filter(|v| space.insert(&upper.pieces, v))
        .cloned()
        .collect::<Vec<_>>()
}

struct Coordinates {
    ech: Echelon<AugKey>,
}

impl Coordinates {
    fn new(reps: &[Vector], lower: &SubspaceSnapshot) -> Self {
        let mut ech = Echelon::new();
        for v in lower.space.basis() {
            ech.insert_vector(aug(v, None));
        }
        for (i, v) in reps.iter().enumerate() {
            ech.insert_vector(aug(v, Some(i)));
        }
        Coordinates { ech }
    }

    /// Coefficients of `w` on the representatives modulo the lower space.
    fn of(&self, w: &Vector, n: usize) -> Option<Vec<Rational>> {
        let (rest, _) = self.ech.reduce(aug(w, None), Rational::zero());
        let mut out = vec![Rational::zero(); n];
        for (k, c) in rest {
            match k {
                AugKey::Coord(..) => return None,
                AugKey::Tag(i) => out[i] = -c,
            }
        }
        Some(out)
    }
}

fn aug(v: &Vector, tag: Option<usize>) -> SparseRow<AugKey> {
    let mut row: SparseRow<AugKey> = v
        .iter()
        .map(|((j, m), c)| (AugKey::Coord(*j, m.clone()), c.clone()))
        .collect();
    if let Some(i) = tag {
        row.insert(AugKey::Tag(i), int(1));
    }
    row
}

fn matrix_rank(columns: &[Vec<Rational>]) -> usize {
    let mut e: Echelon<usize> = Echelon::new();
    for col in columns {
        let row = col
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        e.insert_vector(row);
    }
    e.rank()
}

fn transpose(columns: &[Vec<Rational>], rows: usize) -> Vec<Vec<Rational>> {
    (0..rows)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect()
}

/// Induced action of `t` and `dt` between `Gr^alpha` and `Gr^{alpha+1}`.
pub fn gr_action_maps(model: &VModel, alpha: &Rational, trunc: &Truncation) -> Result<GrMaps> {
    let one = int(1);
    let levels = [
        alpha.clone(),
        model.next_above(alpha),
        alpha + &one,
        model.next_above(&(alpha + &one)),
    ];
    let mut cache = Cache::new(model, trunc);
    for l in &levels {
        cache.ensure(l);
        if !cache.get(l).saturated {
            return Err(Error::Unsaturated(fmt_rational(l)));
        }
    }
    let [a, a_above, b, b_above] = levels.map(|l| cache.get(&l));
    let reps_a = quotient_reps(a, a_above);
    let reps_b = quotient_reps(b, b_above);
    let coords_a = Coordinates::new(&reps_a, a_above);
    let coords_b = Coordinates::new(&reps_b, b_above);

    let map = |reps: &[Vector],
               coords: &Coordinates,
               target_dim: usize,
               op: &dyn Fn(&Vector) -> Vector,
               check: &str|
     -> Result<(Vec<Vec<Rational>>, Vec<bool>)> {
        let mut cols = Vec::new();
        let mut inside = Vec::new();
        for v in reps {
            let w = op(v);
            if !a.window.contains_vector(&w) {
                cols.push(vec![Rational::zero(); target_dim]);
                inside.push(false);
                continue;
            }
            match coords.of(&w, target_dim) {
                Some(c) => cols.push(c),
                None => {
                    return Err(Error::AxiomViolation {
                        level: fmt_rational(alpha),
                        check: check.to_string(),
                        witness: BfElement::from_vector(&a.module, w).to_string(),
                    })
                }
            }
            inside.push(true);
        }
        Ok((cols, inside))
    };
    let module = a.module.clone();
    let (t_cols, t_in) = map(&reps_a, &coords_b, reps_b.len(), &|v| module.t_vec(v), "t_up")?;
    let (dt_cols, dt_in) = map(&reps_b, &coords_a, reps_a.len(), &|v| module.dt_vec(v), "dt_down")?;

    let evaluated = |cols: &[Vec<Rational>], inside: &[bool]| {
        cols.iter()
            .zip(inside)
            .filter(|(_, &i)| i)
            .map(|(c, _)| c.clone())
            .collect::<Vec<_>>()
    };
    let t_eval = evaluated(&t_cols, &t_in);
    let dt_eval = evaluated(&dt_cols, &dt_in);
    let t_rank = matrix_rank(&t_eval);
    let dt_rank = matrix_rank(&dt_eval);
    Ok(GrMaps {
        alpha: alpha.clone(),
        dim_gr_alpha: reps_a.len(),
        dim_gr_alpha_plus_one: reps_b.len(),
        t_matrix: transpose(&t_cols, reps_b.len()),
        t_columns_in_window: t_in,
        dt_matrix: transpose(&dt_cols, reps_a.len()),
        dt_columns_in_window: dt_in,
        t_injective: t_rank == t_eval.len(),
        t_surjective: t_rank == reps_b.len(),
        dt_injective: dt_rank == dt_eval.len(),
        dt_surjective: dt_rank == reps_a.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    CertifiedMember,
    /// Not in the saturated snapshot; says nothing about the true `V^alpha`.
    NotInWindow,
    Unknown,
}

/// Tries to certify `e in V^alpha` from the snapshot.
pub fn membership_certify(
    e: &BfElement,
    model: &VModel,
    alpha: &Rational,
    trunc: &Truncation,
) -> Result<Membership> {
    if e.module().f() != &model.polynomial() {
        return Err(Error::InvalidArgument(
            "element and model use different f".to_string(),
        ));
    }
    let window = trunc.window();
    if !window.contains_vector(e.vector()) {
        return Err(Error::OutsideWindow);
    }
    let snap = truncated_subspace(model, alpha, trunc);
    Ok(if snap.contains_vector(e.vector()) {
        Membership::CertifiedMember
    } else if snap.saturated {
        Membership::NotInWindow
    } else {
        Membership::Unknown
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn grid(n: i64, top: i64) -> Vec<Rational> {
        (0..=top * n).map(|i| rat(i, n)).collect()
    }

    #[test]
    fn normal_crossing_xy() {
        let model = VModel::snc(vec![1, 1]).unwrap();
        let levels: Vec<Rational> = (0..=4).map(|i| rat(i, 2)).collect();
        let report = check_axioms(&model, &levels, &Truncation::new(3, 8, 64)).unwrap();
        for l in &report.levels {
            eprintln!("{}", serde_json::to_string(l).unwrap());
        }
        assert!(report.passed());
    }

    #[test]
    fn smooth_gr_is_zero_at_half() {
        let maps = gr_action_maps(&VModel::Smooth, &rat(1, 2), &Truncation::new(2, 4, 64)).unwrap();
        assert_eq!(maps.dim_gr_alpha, 0);
        assert_eq!(maps.dim_gr_alpha_plus_one, 0);
        let _ = grid(1, 1);
    }
}
