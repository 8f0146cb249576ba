//! Exact sparse row echelon forms over Q.
//!
//! Rows are maps from an ordered column key to a coefficient. Every stored
//! row has a distinct leading (smallest) key and a leading coefficient of
//! one; rows are not reduced against later pivots. This is enough for rank,
//! membership and back substitution, and it has a useful projection
//! property: the rows whose leading key is at least `k` span the
//! intersection of the row space with the coordinate subspace of keys
//! `>= k`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type SparseRow<K> = BTreeMap<K, Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    Added,
    Redundant,
    Inconsistent,
}

/// Row echelon form of an augmented system `row . x = rhs`.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    pivots: BTreeMap<K, (SparseRow<K>, Rational)>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
        }
    }
}

pub(crate) fn axpy<K: Ord + Clone>(row: &mut SparseRow<K>, c: &Rational, other: &SparseRow<K>) {
    for (k, v) in other {
        let prod = c * v;
        match row.get_mut(k) {
            Some(x) => {
                *x += prod;
                if x.is_zero() {
                    row.remove(k);
                }
            }
            None => {
                if !prod.is_zero() {
                    row.insert(k.clone(), prod);
                }
            }
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Eliminates leading entries that hit a pivot. On return the row is
    /// empty or its leading key is not a pivot.
    pub fn reduce(&self, mut row: SparseRow<K>, mut rhs: Rational) -> (SparseRow<K>, Rational) {
        while let Some((k, c)) = row.first_key_value() {
            let Some((prow, prhs)) = self.pivots.get(k) else {
                break;
            };
            let c = -c.clone();
            axpy(&mut row, &c, prow);
            rhs += &c * prhs;
        }
        (row, rhs)
    }

    pub fn insert(&mut self, row: SparseRow<K>, rhs: Rational) -> Insert {
        match self.insert_keyed(row, rhs) {
            Ok(_) => Insert::Added,
            Err(false) => Insert::Redundant,
            Err(true) => Insert::Inconsistent,
        }
    }

    /// Like `insert`, returning the new pivot key; `Err(inconsistent)` when
    /// the rank did not grow.
    fn insert_keyed(&mut self, row: SparseRow<K>, rhs: Rational) -> std::result::Result<K, bool> {
        let (mut row, mut rhs) = self.reduce(row, rhs);
        let Some((k, c)) = row.first_key_value() else {
            return Err(!rhs.is_zero());
        };
        let k = k.clone();
        if !c.is_one() {
            let inv = c.recip();
            for v in row.values_mut() {
                *v *= &inv;
            }
            rhs *= inv;
        }
        self.pivots.insert(k.clone(), (row, rhs));
        Ok(k)
    }

    /// Inserts a homogeneous row and returns the pivot key of the new row.
    pub fn insert_pivot(&mut self, row: SparseRow<K>) -> Option<K> {
        self.insert_keyed(row, Rational::zero()).ok()
    }

    pub fn row(&self, pivot: &K) -> Option<&SparseRow<K>> {
        self.pivots.get(pivot).map(|(r, _)| r)
    }

    /// Inserts a homogeneous row; true if the rank grew.
    pub fn insert_vector(&mut self, row: SparseRow<K>) -> bool {
        self.insert(row, Rational::zero()) == Insert::Added
    }

    pub fn contains(&self, row: &SparseRow<K>) -> bool {
        self.reduce(row.clone(), Rational::zero()).0.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseRow<K>> {
        self.pivots.values().map(|(r, _)| r)
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.pivots.keys()
    }

    /// Rows whose leading key is `>= k`.
    pub fn rows_from<'a>(&'a self, k: &K) -> impl Iterator<Item = &'a SparseRow<K>> + 'a {
        self.pivots.range(k.clone()..).map(|(_, (r, _))| r)
    }

    /// Back substitution with every free variable set to zero.
    pub fn particular_solution(&self) -> BTreeMap<K, Rational> {
        self.back_substitute(BTreeMap::new(), true)
    }

    fn back_substitute(&self, mut x: BTreeMap<K, Rational>, with_rhs: bool) -> BTreeMap<K, Rational> {
        for (k, (row, rhs)) in self.pivots.iter().rev() {
            let mut v = if with_rhs { rhs.clone() } else { Rational::zero() };
            for (j, c) in row.range(k.clone()..).skip(1) {
                if let Some(xj) = x.get(j) {
                    v -= c * xj;
                }
            }
            if !v.is_zero() {
                x.insert(k.clone(), v);
            }
        }
        x
    }

    /// Nullspace vector of the homogeneous system with free column `free`
    /// set to one and all other free columns zero.
    pub fn kernel_vector(&self, free: &K) -> BTreeMap<K, Rational> {
        debug_assert!(!self.pivots.contains_key(free));
        let mut x = BTreeMap::new();
        x.insert(free.clone(), Rational::one());
        self.back_substitute(x, false)
    }
}

/// Basis of `{x : rows . x = 0}` over the given columns.
pub fn nullspace<K: Ord + Clone>(rows: &[SparseRow<K>], columns: &[K]) -> Vec<BTreeMap<K, Rational>> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert_vector(r.clone());
    }
    columns
        .iter()
        .filter(|c| !e.pivots.contains_key(*c))
        .map(|c| e.kernel_vector(c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn row(entries: &[(u32, i64)]) -> SparseRow<u32> {
        entries.iter().map(|&(k, v)| (k, int(v))).collect()
    }

    #[test]
    fn solve_small_system() {
        // x + y = 3, x - y = 1
        let mut e = Echelon::new();
        assert_eq!(e.insert(row(&[(0, 1), (1, 1)]), int(3)), Insert::Added);
        assert_eq!(e.insert(row(&[(0, 1), (1, -1)]), int(1)), Insert::Added);
        assert_eq!(e.insert(row(&[(0, 2)]), int(4)), Insert::Redundant);
        let x = e.particular_solution();
        assert_eq!(x[&0], int(2));
        assert_eq!(x[&1], int(1));
        assert_eq!(e.insert(row(&[(1, 1)]), int(5)), Insert::Inconsistent);
    }

    #[test]
    fn kernel() {
        let rows = vec![row(&[(0, 1), (1, 1), (2, 1)])];
        let ns = nullspace(&rows, &[0, 1, 2]);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s: Rational = v.values().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn projection_property() {
        let mut e = Echelon::new();
        e.insert_vector(row(&[(0, 1), (2, 1)]));
        e.insert_vector(row(&[(0, 1), (3, 1)]));
        // span contains e2 - e3, which lives on keys >= 1
        let tail: Vec<_> = e.rows_from(&1).cloned().collect();
        assert_eq!(tail.len(), 1);
        assert!(tail[0].keys().all(|&k| k >= 1));
    }
}
