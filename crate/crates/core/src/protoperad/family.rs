use crate::exactq::{collect_sparse, Rational, RationalMatrix, SparseVec};
use crate::quadalg::QuadraticAlgebra;
use crate::walls::{brick_elems, brick_from_elems, Brick, Partition};

use super::presentation::{weight2_basis, BinaryQuadraticProtoperad};

/// The quadratic algebra `A(P, n)` together with the meaning of each
/// generator: generator `k` is `(v_ν)_{ij}` with `labels[k] = (ν, {i, j})`.
#[derive(Clone, Debug)]
pub struct FamilyAlgebra {
    pub n: usize,
    pub algebra: QuadraticAlgebra,
    pub labels: Vec<(usize, Brick)>,
}

impl FamilyAlgebra {
    pub fn generator_of(&self, gen: usize, pair: Brick) -> usize {
        self.labels
            .iter()
            .position(|&(g, b)| g == gen && b == pair)
            .expect("generator label present")
    }

    /// Partition of `1..=n` induced by all index pairs in the given words.
    pub fn partition_split(&self, words: &[Vec<usize>]) -> Partition {
        Partition::from_connected_sets(self.n, words.iter().flatten().map(|&k| self.labels[k].1))
    }
}

fn pair_name(base: &str, pair: Brick, n: usize) -> String {
    let e = brick_elems(pair);
    if n <= 9 {
        format!("{base}{}{}", e[0], e[1])
    } else {
        format!("{base}_{}_{}", e[0], e[1])
    }
}

/// Builds `A(P, n)`: generators `(v_ν)_{ij}` for `i < j`, listed in the
/// right-lexicographic order of the index pairs (so `x_{ij} < x_{kl}` iff
/// `j < l`, or `j = l` and `i < k`); relations are the arity-2 relations on
/// every pair, the arity-3 relations on every triple (bottom brick first),
/// and commutators of generators on disjoint pairs.
pub fn build_algebra(p: &BinaryQuadraticProtoperad, n: usize) -> FamilyAlgebra {
    assert!(n >= 2, "A(P, n) needs n ≥ 2");
    let g = p.num_generators();
    let mut labels = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            for nu in 0..g {
                labels.push((nu, brick_from_elems(&[i, j])));
            }
        }
    }
    let names: Vec<String> = labels
        .iter()
        .map(|&(nu, b)| pair_name(&p.generators()[nu].name, b, n))
        .collect();
    let k = labels.len();
    let index = |nu: usize, b: Brick| labels.iter().position(|&l| l == (nu, b)).expect("label");
    let col = |a: usize, b: usize| a * k + b;
    let mut rows: Vec<SparseVec> = Vec::new();

    let relabel = |b: Brick, map: &[usize]| brick_from_elems(&brick_elems(b).iter().map(|&s| map[s - 1]).collect::<Vec<_>>());
    for arity in [2usize, 3] {
        let basis = weight2_basis(g, arity);
        let rels = p.relations(arity);
        for sub in subsets(n, arity) {
            for r in rels.rows() {
                let row: Vec<(usize, Rational)> = r
                    .iter()
                    .map(|(c, q)| {
                        let x = &basis[*c];
                        let lo = index(x.bottom_gen, relabel(x.bottom, &sub));
                        let hi = index(x.top_gen, relabel(x.top, &sub));
                        (col(lo, hi), q.clone())
                    })
                    .collect();
                rows.push(collect_sparse(row));
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            if labels[a].1 & labels[b].1 == 0 && a < b {
                let one = Rational::from_integer(1.into());
                rows.push(collect_sparse([(col(a, b), one.clone()), (col(b, a), -one)]));
            }
        }
    }
    let algebra = QuadraticAlgebra::new(names, &RationalMatrix::from_sparse_rows(k * k, rows))
        .expect("generator names are distinct");
    FamilyAlgebra { n, algebra, labels }
}

/// Increasing `k`-subsets of `1..=n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..=n {
            cur.push(s);
            rec(s + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}
