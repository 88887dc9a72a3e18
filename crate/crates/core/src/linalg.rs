//! Exact sparse row echelon forms over the rationals.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A sparse row: column index to nonzero coefficient.
pub type SparseRow = BTreeMap<usize, Scalar>;

fn axpy(target: &mut SparseRow, row: &SparseRow, c: &Scalar) {
    for (&j, x) in row {
        let e = target.entry(j).or_insert_with(Scalar::zero);
        *e += &(c * x);
        if e.is_zero() {
            target.remove(&j);
        }
    }
}

/// Reduced row echelon form with leftmost pivots: every row has leading
/// coefficient one and vanishes in every other pivot column.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseRow)> {
        self.rows.iter().map(|(&p, r)| (p, r))
    }

    /// Remainder of `v` modulo the row space; zero exactly when `v` lies in it.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut out = v.clone();
        let hits: Vec<usize> = out.keys().copied().filter(|j| self.rows.contains_key(j)).collect();
        for p in hits {
            if let Some(c) = out.get(&p).cloned() {
                axpy(&mut out, &self.rows[&p], &-c);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseRow) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds a row; returns its new pivot if it was independent.
    pub fn insert(&mut self, v: &SparseRow) -> Option<usize> {
        let mut r = self.reduce(v);
        let (&p, lead) = r.iter().next()?;
        let inv = lead.recip();
        for x in r.values_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &r, &-c);
            }
        }
        self.rows.insert(p, r);
        Some(p)
    }

    /// Basis of the null space of the map whose rows were inserted, as
    /// vectors in `ncols` coordinates, one per free column.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseRow> {
        (0..ncols)
            .filter(|j| !self.rows.contains_key(j))
            .map(|f| {
                let mut v = SparseRow::new();
                v.insert(f, Scalar::one());
                for (&p, row) in &self.rows {
                    if let Some(c) = row.get(&f) {
                        v.insert(p, -c);
                    }
                }
                v
            })
            .collect()
    }
}

/// An ordered coordinate system on a finite set of keys.
#[derive(Clone, Debug)]
pub struct Coordinates<K> {
    keys: Vec<K>,
    index: HashMap<K, usize>,
}

impl<K: Clone + Eq + Hash> Coordinates<K> {
    pub fn new(keys: Vec<K>) -> Self {
        let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Coordinates { keys, index }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn position(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    /// Coordinates of a linear combination; `None` if a key is unknown.
    pub fn row<'a, I>(&self, terms: I) -> Option<SparseRow>
    where
        K: 'a,
        I: IntoIterator<Item = (&'a K, &'a Scalar)>,
    {
        let mut r = SparseRow::new();
        for (k, c) in terms {
            let i = self.position(k)?;
            let e = r.entry(i).or_insert_with(Scalar::zero);
            *e += c;
            if e.is_zero() {
                r.remove(&i);
            }
        }
        Some(r)
    }
}
