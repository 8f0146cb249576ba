use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::element::{BfElement, BfModule, Vector};
use super::model::{seed_vectors, VModel};
use crate::algebra::Monomial;
use crate::grading::{self, Grading};
use crate::linalg::{Echelon, SparseRow};
use crate::rational::Rational;

/// Bounds of the finite-dimensional window `{sum_{j<=J} u_j dt^j delta :
/// deg u_j <= D}` and of the closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub max_dt_order: u32,
    pub max_x_degree: u32,
    pub max_op_words: u32,
    /// Extra `(order, degree)` room used while closing; defaults to
    /// `(1, deg f)`.
    pub margin: Option<(u32, u32)>,
}

impl Truncation {
    pub fn new(max_dt_order: u32, max_x_degree: u32, max_op_words: u32) -> Self {
        Truncation {
            max_dt_order,
            max_x_degree,
            max_op_words,
            margin: None,
        }
    }

    pub fn with_margin(mut self, order: u32, degree: u32) -> Self {
        self.margin = Some((order, degree));
        self
    }

    pub(crate) fn window(&self) -> Window {
        Window {
            max_j: self.max_dt_order,
            max_deg: self.max_x_degree,
        }
    }

    pub(crate) fn work_window(&self, deg_f: u32) -> Window {
        let (dj, dd) = self.margin.unwrap_or((1, deg_f));
        Window {
            max_j: self.max_dt_order + dj,
            max_deg: self.max_x_degree + dd,
        }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::new(3, 12, 64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Window {
    pub max_j: u32,
    pub max_deg: u32,
}

impl Window {
    pub fn contains(&self, j: u32, m: &Monomial) -> bool {
        j <= self.max_j && m.degree() <= self.max_deg
    }

    pub fn contains_vector(&self, v: &Vector) -> bool {
        v.keys().all(|(j, m)| self.contains(*j, m))
    }

    /// Shrinks by `(dj, dd)`, or `None` if nothing is left.
    pub fn shrink(&self, dj: u32, dd: u32) -> Option<Window> {
        Some(Window {
            max_j: self.max_j.checked_sub(dj)?,
            max_deg: self.max_deg.checked_sub(dd)?,
        })
    }
}

/// Column key with the coordinates outside the window ordered first, so
/// that echelon rows led by an inside key span the intersection with the
/// window.
pub(crate) type TierKey = (u8, u32, Monomial);

/// Linear operators used to close a set of generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ClosureOp {
    X(usize),
    D(usize),
    Euler(usize),
    T,
    S,
}

impl ClosureOp {
    fn all(n: usize) -> Vec<ClosureOp> {
        let mut ops = Vec::new();
        for i in 0..n {
            ops.push(ClosureOp::X(i));
            ops.push(ClosureOp::D(i));
            ops.push(ClosureOp::Euler(i));
        }
        ops.push(ClosureOp::T);
        ops.push(ClosureOp::S);
        ops
    }

    fn apply(&self, module: &BfModule, v: &Vector) -> Vector {
        match *self {
            ClosureOp::X(i) => module.x_vec(i, v),
            ClosureOp::D(i) => module.d_vec(i, v),
            ClosureOp::Euler(i) => module.x_vec(i, &module.d_vec(i, v)),
            ClosureOp::T => module.t_vec(v),
            ClosureOp::S => module.s_vec(v),
        }
    }
}

/// Splits `B_f` into the weight spaces of every grading making `f`
/// homogeneous (with `dt` of weight `-deg f`). All closure operators are
/// homogeneous, so row reduction happens piece by piece.
#[derive(Clone, Debug)]
pub(crate) struct Pieces {
    gradings: Vec<(Grading, i64)>,
}

impl Pieces {
    pub fn new(module: &BfModule) -> Pieces {
        let f = module.f();
        let gradings = grading::homogenizing_gradings(&[f], module.nvars())
            .unwrap_or_default()
            .into_iter()
            .map(|g| {
                let d = grading::degree(&g, f);
                (g, d)
            })
            .collect();
        Pieces { gradings }
    }

    pub fn of_key(&self, j: u32, m: &Monomial) -> Vec<i64> {
        self.gradings
            .iter()
            .map(|(g, d)| grading::weight(g, m) - j as i64 * d)
            .collect()
    }

    /// Splits a vector into homogeneous parts.
    pub fn split(&self, v: &Vector) -> BTreeMap<Vec<i64>, Vector> {
        let mut out: BTreeMap<Vec<i64>, Vector> = BTreeMap::new();
        for ((j, m), c) in v {
            out.entry(self.of_key(*j, m))
                .or_default()
                .insert((*j, m.clone()), c.clone());
        }
        out
    }
}

pub(crate) fn tiered(v: &Vector, tier: impl Fn(u32, &Monomial) -> u8) -> SparseRow<TierKey> {
    v.iter()
        .map(|((j, m), c)| ((tier(*j, m), *j, m.clone()), c.clone()))
        .collect()
}

pub(crate) fn untiered(row: &SparseRow<TierKey>) -> Vector {
    row.iter()
        .map(|((_, j, m), c)| ((*j, m.clone()), c.clone()))
        .collect()
}

/// A subspace of a window, stored as one echelon form per weight space.
#[derive(Clone, Debug, Default)]
pub(crate) struct PieceSpace {
    pieces: BTreeMap<Vec<i64>, Echelon<(u32, Monomial)>>,
}

impl PieceSpace {
    pub fn insert(&mut self, pieces: &Pieces, v: &Vector) -> bool {
        let mut grew = false;
        for (p, part) in pieces.split(v) {
            grew |= self.pieces.entry(p).or_default().insert_vector(part);
        }
        grew
    }

    pub fn contains(&self, pieces: &Pieces, v: &Vector) -> bool {
        pieces.split(v).into_iter().all(|(p, part)| match self.pieces.get(&p) {
            Some(e) => e.contains(&part),
            None => part.is_empty(),
        })
    }

    pub fn dim(&self) -> usize {
        self.pieces.values().map(|e| e.rank()).sum()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vector> {
        self.pieces.values().flat_map(|e| e.rows())
    }
}

/// Span of `vectors` intersected with `window`.
pub(crate) fn span_in_window<'a>(
    pieces: &Pieces,
    vectors: impl IntoIterator<Item = &'a Vector>,
    window: &Window,
) -> Vec<Vector> {
    let tier = |j: u32, m: &Monomial| u8::from(window.contains(j, m));
    let mut ech: BTreeMap<Vec<i64>, Echelon<TierKey>> = BTreeMap::new();
    for v in vectors {
        for (p, part) in pieces.split(v) {
            ech.entry(p).or_default().insert_vector(tiered(&part, tier));
        }
    }
    let inside = (1u8, 0u32, Monomial::new(Vec::new()));
    ech.values()
        .flat_map(|e| e.rows_from(&inside).map(untiered).collect::<Vec<_>>())
        .collect()
}

/// Truncated inner approximation of `V^alpha B_f`.
#[derive(Clone, Debug)]
pub struct SubspaceSnapshot {
    pub(crate) alpha: Rational,
    pub(crate) module: Arc<BfModule>,
    pub(crate) pieces: Pieces,
    pub(crate) window: Window,
    pub(crate) space: PieceSpace,
    pub(crate) seeds: Vec<Vector>,
    /// Vectors of the working window in order of discovery, with the round
    /// in which each was found.
    pub(crate) discovered: Vec<(u32, Vector)>,
    pub(crate) saturated: bool,
    pub(crate) rounds: u32,
}

impl SubspaceSnapshot {
    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    pub fn basis(&self) -> Vec<BfElement> {
        self.space
            .basis()
            .map(|v| BfElement::from_vector(&self.module, v.clone()))
            .collect()
    }

    pub fn in_window(&self, e: &BfElement) -> bool {
        self.window.contains_vector(e.vector())
    }

    pub fn contains(&self, e: &BfElement) -> bool {
        self.in_window(e) && self.space.contains(&self.pieces, e.vector())
    }

    pub(crate) fn contains_vector(&self, v: &Vector) -> bool {
        self.window.contains_vector(v) && self.space.contains(&self.pieces, v)
    }

    /// Basis of the part of the closure inside the working window.
    pub(crate) fn work_vectors(&self) -> impl Iterator<Item = &Vector> {
        self.discovered.iter().map(|(_, v)| v)
    }

    /// Re-derives every discovered vector from the seeds: each must lie in
    /// the span of the seeds and of the images of vectors found in earlier
    /// rounds.
    pub fn replay(&self) -> bool {
        let ops = ClosureOp::all(self.module.nvars());
        let mut span = PieceSpace::default();
        for s in &self.seeds {
            span.insert(&self.pieces, s);
        }
        let mut k = 0;
        let mut round = 0;
        while k < self.discovered.len() {
            let start = k;
            while k < self.discovered.len() && self.discovered[k].0 == round {
                if !span.contains(&self.pieces, &self.discovered[k].1) {
                    return false;
                }
                k += 1;
            }
            for (_, v) in &self.discovered[start..k] {
                for op in &ops {
                    span.insert(&self.pieces, &op.apply(&self.module, v));
                }
            }
            round += 1;
        }
        self.space
            .basis()
            .all(|v| span.contains(&self.pieces, v))
    }
}

/// Closes the generators of `V^alpha` under `x_i`, `d/dx_i`, `x_i d/dx_i`,
/// `t` and `s` inside the working window, then intersects with the window.
pub fn truncated_subspace(model: &VModel, alpha: &Rational, trunc: &Truncation) -> SubspaceSnapshot {
    let module = model.module();
    let deg_f = module.f().total_degree().unwrap_or(0);
    let window = trunc.window();
    let work = trunc.work_window(deg_f);
    let pieces = Pieces::new(&module);
    let seeds = seed_vectors(model, &module, alpha, work.max_j, work.max_deg);
    let tier = |j: u32, m: &Monomial| {
        if window.contains(j, m) {
            2u8
        } else if work.contains(j, m) {
            1
        } else {
            0
        }
    };
    let mut ech: BTreeMap<Vec<i64>, Echelon<TierKey>> = BTreeMap::new();
    let add = |ech: &mut BTreeMap<Vec<i64>, Echelon<TierKey>>, v: &Vector, out: &mut Vec<Vector>| {
        for (p, part) in pieces.split(v) {
            let e = ech.entry(p).or_default();
            if let Some(k) = e.insert_pivot(tiered(&part, tier)) {
                if k.0 >= 1 {
                    out.push(untiered(e.row(&k).unwrap()));
                }
            }
        }
    };
    let mut frontier = Vec::new();
    for s in &seeds {
        add(&mut ech, s, &mut frontier);
    }
    let ops = ClosureOp::all(module.nvars());
    let mut discovered = Vec::new();
    let mut rounds = 0;
    let saturated = loop {
        if frontier.is_empty() {
            break true;
        }
        discovered.extend(frontier.iter().map(|v| (rounds, v.clone())));
        if rounds == trunc.max_op_words {
            break false;
        }
        rounds += 1;
        let mut next = Vec::new();
        for v in &frontier {
            for op in &ops {
                let img = op.apply(&module, v);
                if !img.is_empty() {
                    add(&mut ech, &img, &mut next);
                }
            }
        }
        frontier = next;
    };
    let inside = (2u8, 0u32, Monomial::new(Vec::new()));
    let mut space = PieceSpace::default();
    for e in ech.values() {
        for row in e.rows_from(&inside) {
            space.insert(&pieces, &untiered(row));
        }
    }
    SubspaceSnapshot {
        alpha: alpha.clone(),
        module,
        pieces,
        window,
        space,
        seeds,
        discovered,
        saturated,
        rounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use num_traits::One;

    fn mono(module: &Arc<BfModule>, j: u32, e: &[u32]) -> BfElement {
        BfElement::monomial(module, j, Monomial::new(e.to_vec()), Rational::one())
    }

    #[test]
    fn smooth_level_zero_is_everything() {
        let trunc = Truncation::new(2, 3, 64);
        let snap = truncated_subspace(&VModel::Smooth, &int(0), &trunc);
        assert!(snap.is_saturated());
        assert_eq!(snap.dim(), 3 * 4);
        let snap = truncated_subspace(&VModel::Smooth, &int(1), &trunc);
        assert_eq!(snap.dim(), 3 * 4);
        let snap = truncated_subspace(&VModel::Smooth, &int(2), &trunc);
        assert!(!snap.contains(&BfElement::delta(&snap.module)));
        assert!(snap.replay());
    }

    #[test]
    fn normal_crossing_at_one() {
        let model = VModel::snc(vec![1, 1]).unwrap();
        let trunc = Truncation::new(3, 8, 64);
        let snap = truncated_subspace(&model, &int(1), &trunc);
        let m = snap.module.clone();
        assert!(snap.contains(&mono(&m, 0, &[1, 1])));
        assert!(snap.contains(&BfElement::delta(&m)));
        let snap = truncated_subspace(&model, &rat(3, 2), &trunc);
        assert!(snap.contains(&mono(&m, 0, &[1, 1])));
        assert!(!snap.contains(&BfElement::delta(&m)));
        assert!(snap.replay());
    }

    #[test]
    fn large_level_is_empty() {
        let model = VModel::snc(vec![2, 3]).unwrap();
        let snap = truncated_subspace(&model, &int(5), &Truncation::new(1, 6, 64));
        assert_eq!(snap.dim(), 0);
    }
}
