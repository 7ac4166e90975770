use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Rational, SparseVec};

/// Incrementally built row echelon basis of a subspace of ℚ^cols.
///
/// Every stored row has leading coefficient 1 at a column no other row leads
/// at. Rows are not back-substituted against each other until [`Echelon::into_rref`].
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<SparseVec>,
    pivot_of_col: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivot_of_col: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col].is_some()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.is_pivot(c)).collect()
    }

    /// Fully reduces `v` modulo the stored row space. The result has no entry
    /// at any pivot column, so it is the canonical representative of the coset.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut work: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        let mut cursor = 0;
        loop {
            let next = work
                .range(cursor..)
                .map(|(c, _)| *c)
                .find(|&c| self.pivot_of_col[c].is_some());
            let Some(col) = next else { break };
            let coef = work.remove(&col).expect("entry present");
            let row = &self.rows[self.pivot_of_col[col].expect("pivot")];
            for (j, x) in &row[1..] {
                let entry = work.entry(*j).or_insert_with(Rational::zero);
                *entry -= &coef * x;
                if entry.is_zero() {
                    work.remove(j);
                }
            }
            cursor = col + 1;
        }
        work.into_iter().collect()
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the spanning set. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: &[(usize, Rational)]) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let lead = r[0].1.clone();
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, x) in r.iter_mut() {
                *x *= &inv;
            }
        }
        let col = r[0].0;
        self.pivot_of_col[col] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    /// Back-substitutes and returns the reduced row echelon rows (sorted by
    /// pivot column) together with the pivot list.
    pub fn into_rref(self) -> (Vec<SparseVec>, Vec<usize>) {
        let pivots = self.pivots();
        let mut done = Echelon::new(self.cols);
        let mut finished: Vec<SparseVec> = Vec::with_capacity(pivots.len());
        for &col in pivots.iter().rev() {
            let row = &self.rows[self.pivot_of_col[col].expect("pivot")];
            let mut tail = done.reduce(&row[1..]);
            let mut full = Vec::with_capacity(tail.len() + 1);
            full.push((col, Rational::one()));
            full.append(&mut tail);
            done.pivot_of_col[col] = Some(done.rows.len());
            done.rows.push(full.clone());
            finished.push(full);
        }
        finished.reverse();
        (finished, pivots)
    }
}
