//! Shared fixtures and hand-written oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::PathBuf;

use num_rational::BigRational;
use num_traits::{One, Zero};
use pkit::exactq::rational::int;
use pkit::barhom::Levelization;
use pkit::exactq::{Rational, RationalMatrix};
use pkit::protoperad::{BinaryQuadraticProtoperad, ProtoperadJson};
use pkit::quadalg::QuadraticAlgebra;
use pkit::walls::{brick_from_elems, Brick};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn dlie() -> BinaryQuadraticProtoperad {
    let text = std::fs::read_to_string(fixture("dlie.json")).unwrap();
    let j: ProtoperadJson = serde_json::from_str(&text).unwrap();
    j.to_protoperad().unwrap()
}

/// Pairs `i < j` of `1..=n` in right-lex order (by `j`, then `i`).
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (2..=n).flat_map(|j| (1..j).map(move |i| (i, j))).collect()
}

pub fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push((i, j, k));
            }
        }
    }
    out
}

pub fn disjoint_pairs(n: usize) -> Vec<((usize, usize), (usize, usize))> {
    let ps = pairs(n);
    let mut out = Vec::new();
    for &(a, b) in &ps {
        for &(u, v) in &ps {
            if a != u && a != v && b != u && b != v {
                out.push(((a, b), (u, v)));
            }
        }
    }
    out
}

/// Index of `x_ij` in the generator list of `a` (names `x{i}{j}`, with an
/// optional dual star).
pub fn gen(a: &QuadraticAlgebra, i: usize, j: usize) -> usize {
    let plain = format!("x{i}{j}");
    a.generator_index(&plain)
        .or_else(|| a.generator_index(&format!("{plain}*")))
        .unwrap_or_else(|| panic!("no generator {plain}"))
}

pub type Term = ((usize, usize), (usize, usize), i64);

/// Relation vector over degree-2 columns `a·g + b` of `alg`.
pub fn relation_row(alg: &QuadraticAlgebra, terms: &[Term]) -> Vec<(usize, Rational)> {
    let g = alg.num_generators();
    let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
    for &((i, j), (k, l), c) in terms {
        *m.entry(gen(alg, i, j) * g + gen(alg, k, l)).or_insert_with(Rational::zero) += int(c);
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// R(DLie, n), written out by hand.
pub fn dlie_relations_by_hand(n: usize) -> Vec<Vec<Term>> {
    let mut rels = Vec::new();
    for (i, j, k) in triples(n) {
        rels.push(vec![((i, j), (j, k), 1), ((j, k), (i, k), -1), ((i, k), (i, j), -1)]);
        rels.push(vec![((j, k), (i, j), 1), ((i, k), (j, k), -1), ((i, j), (i, k), -1)]);
    }
    for ((a, b), (u, v)) in disjoint_pairs(n) {
        if (a, b) < (u, v) {
            rels.push(vec![((a, b), (u, v), 1), ((u, v), (a, b), -1)]);
        }
    }
    rels
}

/// Rewriting rules 1-6 of W^n: `(lhs, rhs terms)`.
pub type Rule = (((usize, usize), (usize, usize)), Vec<Term>);

pub fn w_rules_by_hand(n: usize) -> Vec<Rule> {
    let mut rules = Vec::new();
    for (i, j) in pairs(n) {
        rules.push((((i, j), (i, j)), vec![]));
    }
    for (i, j, k) in triples(n) {
        rules.push((((j, k), (i, k)), vec![((i, j), (j, k), -1)]));
        rules.push((((i, k), (i, j)), vec![((i, j), (j, k), -1)]));
        rules.push((((j, k), (i, j)), vec![((i, j), (i, k), -1)]));
        rules.push((((i, k), (j, k)), vec![((i, j), (i, k), 1)]));
    }
    // x_uv x_ij -> -x_ij x_uv for disjoint pairs with x_ij < x_uv (right-lex)
    let rank = |p: (usize, usize)| (p.1, p.0);
    for ((a, b), (u, v)) in disjoint_pairs(n) {
        if rank((a, b)) < rank((u, v)) {
            rules.push((((u, v), (a, b)), vec![((a, b), (u, v), -1)]));
        }
    }
    rules
}

/// Exact rank by dense Gauss-Jordan, independent of the library's sparse code.
pub fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = BigRational::one() / rows[rank][c].clone();
        for x in rows[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Graded dimensions of `T(V)/(R)` through degree `d` from the rank of the
/// spanning set `{u r v}` of each ideal component.
pub fn naive_hilbert(g: usize, relations: &[Vec<(usize, Rational)>], d: usize) -> Vec<u64> {
    let mut out = vec![1u64];
    for deg in 1..=d {
        let cols = g.pow(deg as u32);
        let mut rows = Vec::new();
        if deg >= 2 {
            for left in 0..=deg - 2 {
                let right = deg - 2 - left;
                for u in 0..g.pow(left as u32) {
                    for v in 0..g.pow(right as u32) {
                        for r in relations {
                            let mut row = vec![BigRational::zero(); cols];
                            for (c, x) in r {
                                let idx = (u * g * g + c) * g.pow(right as u32) + v;
                                row[idx] += x;
                            }
                            rows.push(row);
                        }
                    }
                }
            }
        }
        out.push((cols - dense_rank(rows)) as u64);
    }
    out
}

/// Connected walls by brute force: every word of bricks, connectedness by
/// flood fill, equivalence by exhaustive commutation of adjacent disjoint
/// bricks. Returns one representative word per class.
pub fn brute_force_walls(n: usize, bricks: usize, sizes: &[usize]) -> Vec<Vec<Brick>> {
    let alphabet: Vec<Brick> = (1u32..(1 << n))
        .filter(|s| sizes.contains(&(s.count_ones() as usize)))
        .collect();
    if bricks == 0 || alphabet.is_empty() {
        return Vec::new();
    }
    let mut words: Vec<Vec<Brick>> = vec![vec![]];
    for _ in 0..bricks {
        words = words
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&b| {
                    let mut x = w.clone();
                    x.push(b);
                    x
                })
            })
            .collect();
    }
    let mut seen: BTreeSet<Vec<Brick>> = BTreeSet::new();
    let mut reps = Vec::new();
    for w in words.into_iter().filter(|w| connected(n, w)) {
        if seen.contains(&w) {
            continue;
        }
        let mut queue = VecDeque::from([w.clone()]);
        seen.insert(w.clone());
        while let Some(x) = queue.pop_front() {
            for i in 0..x.len().saturating_sub(1) {
                if x[i] & x[i + 1] == 0 {
                    let mut y = x.clone();
                    y.swap(i, i + 1);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        reps.push(w);
    }
    reps
}

fn connected(n: usize, word: &[Brick]) -> bool {
    let mut reached: Brick = 1;
    loop {
        let next = word.iter().filter(|&&b| b & reached != 0).fold(reached, |acc, &b| acc | b);
        if next == reached {
            return reached == (1 << n) - 1;
        }
        reached = next;
    }
}

pub fn b(elems: &[usize]) -> Brick {
    brick_from_elems(elems)
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Rank of `span(E·Z_r) + B_r(N)` minus rank of `B_r(N)`: the dimension of
/// the image of `H_r(Bar)` in `H_r(N)`.
pub fn image_in_homology(lev: &Levelization, n: usize, r: usize, rho: usize) -> usize {
    let e = lev.matrix(n, r);
    let cycles = if r == 0 {
        (0..lev.bar.dim(0)).map(|i| vec![(i, int(1))]).collect()
    } else {
        lev.bar.differential(r).kernel_basis()
    };
    let mut rows: Vec<_> = cycles.iter().map(|z| e.mul_vec(z)).collect();
    let boundaries = if r < rho {
        lev.normalized.complex().boundary(r + 1).transpose().rows().to_vec()
    } else {
        Vec::new()
    };
    let b_rank = RationalMatrix::from_sparse_rows(lev.normalized.dim(r), boundaries.clone()).rank();
    rows.extend(boundaries);
    RationalMatrix::from_sparse_rows(lev.normalized.dim(r), rows).rank() - b_rank
}
