use std::collections::HashMap;

use num_traits::One;

use crate::exactq::{collect_sparse, Rational, RationalMatrix, SparseVec};
use crate::protoperad::{BinaryQuadraticProtoperad, Components, Letter};
use crate::walls::{brick_size, canonical_order, enum_walls, fmt_brick, Brick, Wall};

use super::{permutation_sign, ChainComplex};

/// A brick labeled by basis element `index` of `P^{(weight)}(brick)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LBrick {
    pub brick: Brick,
    pub weight: usize,
    pub index: usize,
}

pub(crate) fn fmt_lbrick(b: &LBrick) -> String {
    format!("{}^{}#{}", fmt_brick(b.brick), b.weight, b.index)
}

/// All labelings of `bricks` by basis elements with weights summing to `total`.
pub(crate) fn labelings(comps: &Components, bricks: &[Brick], total: usize) -> Vec<Vec<LBrick>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(bricks.len());
    fn rec(comps: &Components, bricks: &[Brick], left: usize, cur: &mut Vec<LBrick>, out: &mut Vec<Vec<LBrick>>) {
        let k = cur.len();
        if k == bricks.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let b = bricks[k];
        let min_w = brick_size(b) - 1;
        // the remaining bricks need at least their own minimal weights
        let reserve: usize = bricks[k + 1..].iter().map(|&c| brick_size(c) - 1).sum();
        if left < min_w + reserve {
            return;
        }
        for w in min_w..=left - reserve {
            for index in 0..comps.dim(brick_size(b), w) {
                cur.push(LBrick { brick: b, weight: w, index });
                rec(comps, bricks, left - w, cur, out);
                cur.pop();
            }
        }
    }
    rec(comps, bricks, total, &mut cur, &mut out);
    out
}

/// Coordinates of the product (bottom bricks first) of labeled bricks that
/// together cover `support`.
pub(crate) fn multiply(comps: &Components, support: Brick, bottom_up: &[LBrick]) -> SparseVec {
    let weight = bottom_up.iter().map(|b| b.weight).sum();
    let word: Vec<Letter> = bottom_up
        .iter()
        .flat_map(|b| comps.basis_word(b.brick, b.weight, b.index))
        .collect();
    comps.reduce_global(support, weight, &word)
}

/// The protoperadic bar complex `Bar(P)(1..=n)` in weight `rho`: degree `r`
/// is spanned by connected walls with `r` bricks, each labeled by a basis
/// element of a positive-weight component of `P`; the differential contracts
/// pairs of consecutive bricks that meet and multiplies their labels.
pub struct ProtoBar<'a, 'p> {
    comps: &'a Components<'p>,
    n: usize,
    rho: usize,
    bases: Vec<Vec<Vec<LBrick>>>,
    index: Vec<HashMap<Vec<LBrick>, usize>>,
}

impl<'a, 'p> ProtoBar<'a, 'p> {
    pub fn new(comps: &'a Components<'p>, n: usize, rho: usize) -> Self {
        let sizes: Vec<usize> = (2..=n).collect();
        let mut bases = vec![Vec::new()];
        for r in 1..=rho {
            let walls = enum_walls(n, r, &sizes);
            let per_wall = crate::par::map(&walls, |w| labelings(comps, w.bricks(), rho));
            bases.push(per_wall.into_iter().flatten().collect::<Vec<_>>());
        }
        let index = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect())
            .collect();
        Self {
            comps,
            n,
            rho,
            bases,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn basis(&self, r: usize) -> &[Vec<LBrick>] {
        &self.bases[r]
    }

    pub fn dim(&self, r: usize) -> usize {
        self.bases.get(r).map_or(0, Vec::len)
    }

    pub fn index_of(&self, r: usize, key: &[LBrick]) -> Option<usize> {
        self.index[r].get(key).copied()
    }

    fn column(&self, key: &[LBrick]) -> SparseVec {
        let r = key.len();
        let bricks: Vec<Brick> = key.iter().map(|b| b.brick).collect();
        let rel = Wall::from_word(self.n, &bricks).order_relation();
        let mut entries = Vec::new();
        for a in 0..r {
            for b in a + 1..r {
                if !rel[a][b] || (a + 1..b).any(|c| rel[a][c] && rel[c][b]) {
                    continue;
                }
                // sign of moving the two suspended factors to the front
                let front = if (a + b - 1) % 2 == 0 { Rational::one() } else { -Rational::one() };
                let support = bricks[a] | bricks[b];
                let before: Vec<usize> = (a + 1..b).filter(|&c| !rel[a][c]).collect();
                let after: Vec<usize> = (a + 1..b).filter(|&c| rel[a][c]).collect();
                // bottom-up word with the merged brick marked by `None`
                let mut ids: Vec<Option<usize>> = (0..a).map(Some).collect();
                ids.extend(before.iter().map(|&c| Some(c)));
                ids.push(None);
                ids.extend(after.iter().map(|&c| Some(c)));
                ids.extend((b + 1..r).map(Some));
                let word: Vec<Brick> = ids.iter().map(|id| id.map_or(support, |c| bricks[c])).collect();
                let canon: Vec<Option<usize>> = canonical_order(&word).into_iter().map(|k| ids[k]).collect();
                // (merged, rest in old order) -> canonical order
                let mut start: Vec<Option<usize>> = vec![None];
                start.extend((0..r).filter(|&c| c != a && c != b).map(Some));
                let sign = &front * Rational::from_integer(permutation_sign(&start, &canon).into());
                let weight = key[a].weight + key[b].weight;
                for (k, q) in multiply(self.comps, support, &[key[a], key[b]]) {
                    let target: Vec<LBrick> = canon
                        .iter()
                        .map(|id| match id {
                            Some(c) => key[*c],
                            None => LBrick { brick: support, weight, index: k },
                        })
                        .collect();
                    let row = self.index[r - 1][&target];
                    entries.push((row, &sign * q));
                }
            }
        }
        collect_sparse(entries)
    }

    /// Boundary out of degree `r`, rows indexing degree `r − 1`.
    pub fn differential(&self, r: usize) -> RationalMatrix {
        let cols = crate::par::map(&self.bases[r], |k| self.column(k));
        RationalMatrix::from_sparse_columns(self.dim(r - 1), &cols)
    }

    pub fn complex(&self) -> ChainComplex {
        let labels = self
            .bases
            .iter()
            .map(|b| b.iter().map(|k| fmt_key(k)).collect())
            .collect();
        let boundaries = (1..=self.rho).map(|r| self.differential(r)).collect();
        ChainComplex::new(self.rho, labels, boundaries)
    }
}

fn fmt_key(k: &[LBrick]) -> String {
    k.iter().map(fmt_lbrick).collect::<Vec<_>>().join(" < ")
}

/// `d_{sμ₂}` from walls with `rho` weight-one bricks to walls with one
/// weight-two brick, on `1..=n`.
pub fn proto_bar_differential(p: &BinaryQuadraticProtoperad, n: usize, rho: usize) -> RationalMatrix {
    let comps = Components::new(p);
    ProtoBar::new(&comps, n, rho).differential(rho)
}
