use std::collections::HashMap;

use num_traits::One;

use crate::exactq::{collect_sparse, Rational, SparseVec};
use crate::protoperad::Components;
use crate::walls::{brick_min, enum_leveled_walls, Brick, Partition};

use super::proto_bar::{fmt_lbrick, labelings, multiply, LBrick};
use super::ChainComplex;

/// Leveled wall with labeled bricks; bricks inside a level sorted by minimum.
pub type LevelKey = Vec<Vec<LBrick>>;

/// Normalized bar complex `N(P)(1..=n)` in weight `rho`: degree `p` is
/// spanned by leveled walls with `p` levels and labeled bricks, and
/// `d = Σ_i (−1)^i (merge levels i and i+1)`.
pub struct NormalizedBar<'a, 'p> {
    comps: &'a Components<'p>,
    n: usize,
    rho: usize,
    bases: Vec<Vec<LevelKey>>,
    index: Vec<HashMap<LevelKey, usize>>,
}

impl<'a, 'p> NormalizedBar<'a, 'p> {
    pub fn new(comps: &'a Components<'p>, n: usize, rho: usize) -> Self {
        let sizes: Vec<usize> = (2..=n).collect();
        let mut bases = vec![Vec::new()];
        for p in 1..=rho {
            let mut keys = Vec::new();
            for total in p..=rho {
                for lw in enum_leveled_walls(n, p, total, &sizes) {
                    let flat: Vec<Brick> = lw.levels().iter().flatten().copied().collect();
                    for lab in labelings(comps, &flat, rho) {
                        let mut it = lab.into_iter();
                        let key: LevelKey = lw
                            .levels()
                            .iter()
                            .map(|l| it.by_ref().take(l.len()).collect())
                            .collect();
                        keys.push(key);
                    }
                }
            }
            keys.sort();
            bases.push(keys);
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

    pub fn basis(&self, p: usize) -> &[LevelKey] {
        &self.bases[p]
    }

    pub fn dim(&self, p: usize) -> usize {
        self.bases.get(p).map_or(0, Vec::len)
    }

    pub fn index_of(&self, p: usize, key: &LevelKey) -> Option<usize> {
        self.index[p].get(key).copied()
    }

    /// Product of two adjacent levels as a combination of merged levels.
    fn merge(&self, lower: &[LBrick], upper: &[LBrick]) -> Vec<(Vec<LBrick>, Rational)> {
        let blocks = Partition::from_connected_sets(self.n, lower.iter().chain(upper).map(|b| b.brick));
        let mut acc: Vec<(Vec<LBrick>, Rational)> = vec![(Vec::new(), Rational::one())];
        for &block in blocks.blocks() {
            let bottom: Vec<LBrick> = lower.iter().filter(|b| b.brick & block != 0).copied().collect();
            let top: Vec<LBrick> = upper.iter().filter(|b| b.brick & block != 0).copied().collect();
            let options: Vec<(LBrick, Rational)> = match (bottom.len(), top.len()) {
                (0, 0) => continue,
                (1, 0) => vec![(bottom[0], Rational::one())],
                (0, 1) => vec![(top[0], Rational::one())],
                _ => {
                    let all: Vec<LBrick> = bottom.iter().chain(&top).copied().collect();
                    let weight = all.iter().map(|b| b.weight).sum();
                    multiply(self.comps, block, &all)
                        .into_iter()
                        .map(|(k, q)| (LBrick { brick: block, weight, index: k }, q))
                        .collect()
                }
            };
            let mut next = Vec::with_capacity(acc.len() * options.len());
            for (lvl, c) in &acc {
                for (b, q) in &options {
                    let mut l = lvl.clone();
                    l.push(*b);
                    next.push((l, c * q));
                }
            }
            acc = next;
        }
        for (l, _) in acc.iter_mut() {
            l.sort_by_key(|b| brick_min(b.brick));
        }
        acc
    }

    fn column(&self, key: &LevelKey) -> SparseVec {
        let p = key.len();
        let mut entries = Vec::new();
        for i in 0..p.saturating_sub(1) {
            let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            for (level, q) in self.merge(&key[i], &key[i + 1]) {
                let mut target: LevelKey = Vec::with_capacity(p - 1);
                target.extend_from_slice(&key[..i]);
                target.push(level);
                target.extend_from_slice(&key[i + 2..]);
                let row = self.index[p - 1][&target];
                entries.push((row, &sign * q));
            }
        }
        collect_sparse(entries)
    }

    pub fn complex(&self) -> ChainComplex {
        let labels = self
            .bases
            .iter()
            .map(|b| {
                b.iter()
                    .map(|k| {
                        k.iter()
                            .map(|l| l.iter().map(fmt_lbrick).collect::<Vec<_>>().join(" "))
                            .collect::<Vec<_>>()
                            .join(" | ")
                    })
                    .collect()
            })
            .collect();
        let columns = (1..=self.rho)
            .map(|p| crate::par::map(&self.bases[p], |k| self.column(k)))
            .collect();
        ChainComplex::from_columns(self.rho, labels, columns)
    }
}

/// Convenience wrapper building its own component cache.
pub fn normalized_bar_complex(p: &crate::protoperad::BinaryQuadraticProtoperad, n: usize, rho: usize) -> ChainComplex {
    let comps = Components::new(p);
    NormalizedBar::new(&comps, n, rho).complex()
}
