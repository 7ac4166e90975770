use crate::exactq::{Rational, RationalMatrix, SparseVec};
use crate::protoperad::{BinaryQuadraticProtoperad, Components};
use crate::walls::{Brick, Wall};

use super::normalized::{LevelKey, NormalizedBar};
use super::proto_bar::{LBrick, ProtoBar};
use super::permutation_sign;

/// Levelization `Bar(P) → N(P)`: a wall with `r` bricks goes to the signed
/// sum of its linear extensions read as leveled walls with one brick per
/// level, the sign being that of the permutation from canonical order.
pub struct Levelization<'a, 'p> {
    pub bar: ProtoBar<'a, 'p>,
    pub normalized: NormalizedBar<'a, 'p>,
}

fn linear_extensions(rel: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let m = rel.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    let mut used = vec![false; m];
    fn rec(rel: &[Vec<bool>], cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let m = rel.len();
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in 0..m {
            if !used[x] && (0..m).all(|y| !rel[y][x] || used[y]) {
                used[x] = true;
                cur.push(x);
                rec(rel, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(rel, &mut cur, &mut used, &mut out);
    out
}

impl<'a, 'p> Levelization<'a, 'p> {
    pub fn new(comps: &'a Components<'p>, n: usize, rho: usize) -> Self {
        Self {
            bar: ProtoBar::new(comps, n, rho),
            normalized: NormalizedBar::new(comps, n, rho),
        }
    }

    fn column(&self, n: usize, key: &[LBrick], r: usize) -> SparseVec {
        let bricks: Vec<Brick> = key.iter().map(|b| b.brick).collect();
        let rel = Wall::from_word(n, &bricks).order_relation();
        let identity: Vec<usize> = (0..key.len()).collect();
        let mut col: Vec<(usize, Rational)> = linear_extensions(&rel)
            .into_iter()
            .map(|ext| {
                let target: LevelKey = ext.iter().map(|&i| vec![key[i]]).collect();
                let row = self.normalized.index_of(r, &target).expect("leveled wall in the basis");
                (row, Rational::from_integer(permutation_sign(&identity, &ext).into()))
            })
            .collect();
        col.sort_by_key(|e| e.0);
        col
    }

    /// Matrix of the levelization in degree `r` (rows index `N_r`).
    pub fn matrix(&self, n: usize, r: usize) -> RationalMatrix {
        let cols = crate::par::map(self.bar.basis(r), |k| self.column(n, k, r));
        RationalMatrix::from_sparse_columns(self.normalized.dim(r), &cols)
    }
}

/// Levelization in top degree `rho` on `1..=n`.
pub fn levelization_matrix(p: &BinaryQuadraticProtoperad, n: usize, rho: usize) -> RationalMatrix {
    let comps = Components::new(p);
    Levelization::new(&comps, n, rho).matrix(n, rho)
}
