use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::exactq::{collect_sparse, Echelon, Rational, SparseVec};
use crate::walls::{brick_elems, canonical_order, enum_walls, Brick};

use super::presentation::{weight2_basis, BinaryQuadraticProtoperad};

/// A brick of a labeled wall: two inputs and a generator.
pub type Letter = (Brick, usize);

/// Bottom-up word of letters reordered into canonical wall order.
pub fn canonical_trace(word: &[Letter]) -> Vec<Letter> {
    let bricks: Vec<Brick> = word.iter().map(|l| l.0).collect();
    canonical_order(&bricks).into_iter().map(|i| word[i]).collect()
}

/// Order-preserving bijection between a set of elements `ground` and `1..=m`.
#[derive(Clone, Debug)]
pub struct Relabel {
    elems: Vec<usize>,
}

impl Relabel {
    pub fn new(ground: Brick) -> Self {
        Self {
            elems: brick_elems(ground),
        }
    }

    pub fn m(&self) -> usize {
        self.elems.len()
    }

    pub fn compress(&self, b: Brick) -> Brick {
        brick_elems(b).iter().fold(0, |acc, s| {
            let pos = self.elems.binary_search(s).expect("element of the ground set");
            acc | (1 << pos)
        })
    }

    pub fn expand(&self, b: Brick) -> Brick {
        brick_elems(b).iter().fold(0, |acc, &s| acc | (1 << (self.elems[s - 1] - 1)))
    }
}

/// Weight-`w` component `P^{(w)}(1..=m)`: connected labeled walls with `w`
/// two-element bricks modulo the span of all `u·r·v` with `r` a relation.
/// The basis is the set of walls that are not pivots of the relation span.
#[derive(Debug)]
pub struct Component {
    m: usize,
    weight: usize,
    traces: Vec<Vec<Letter>>,
    index: HashMap<Vec<Letter>, usize>,
    ideal: Echelon,
    basis: Vec<usize>,
    basis_pos: HashMap<usize, usize>,
}

impl Component {
    fn build(p: &BinaryQuadraticProtoperad, m: usize, weight: usize) -> Self {
        let g = p.num_generators();
        let mut traces = Vec::new();
        if m >= 2 {
            for w in enum_walls(m, weight, &[2]) {
                let mut labels = vec![0usize; weight];
                loop {
                    traces.push(w.bricks().iter().copied().zip(labels.iter().copied()).collect::<Vec<_>>());
                    // next label tuple, last position fastest
                    let mut k = weight;
                    while k > 0 && labels[k - 1] + 1 == g {
                        labels[k - 1] = 0;
                        k -= 1;
                    }
                    if k == 0 {
                        break;
                    }
                    labels[k - 1] += 1;
                }
            }
        }
        traces.sort();
        let index: HashMap<Vec<Letter>, usize> = traces.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut ideal = Echelon::new(traces.len());
        if weight >= 2 {
            let rels: Vec<_> = [2usize, 3]
                .iter()
                .map(|&a| (weight2_basis(g, a), p.relations(a).rows().to_vec()))
                .collect();
            let mut seen: HashSet<SparseVec> = HashSet::new();
            for t in &traces {
                for row in relation_rows(t, &rels, &index) {
                    if !row.is_empty() && seen.insert(row.clone()) {
                        ideal.insert(&row);
                    }
                }
            }
        }
        let basis: Vec<usize> = (0..traces.len()).filter(|&c| !ideal.is_pivot(c)).collect();
        let basis_pos = basis.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        Self {
            m,
            weight,
            traces,
            index,
            ideal,
            basis,
            basis_pos,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn free_dim(&self) -> usize {
        self.traces.len()
    }

    /// Representative wall of basis element `k` (canonical, on `1..=m`).
    pub fn basis_trace(&self, k: usize) -> &[Letter] {
        &self.traces[self.basis[k]]
    }

    /// Coordinates of a labeled wall on `1..=m` (any bottom-up word).
    pub fn reduce_word(&self, word: &[Letter]) -> SparseVec {
        let t = canonical_trace(word);
        let c = *self.index.get(&t).expect("connected wall of the right weight");
        self.reduce_columns(&[(c, Rational::from_integer(1.into()))])
    }

    fn reduce_columns(&self, v: &[(usize, Rational)]) -> SparseVec {
        self.ideal
            .reduce(v)
            .into_iter()
            .map(|(c, q)| (self.basis_pos[&c], q))
            .collect()
    }
}

type RelData = (Vec<super::presentation::Weight2>, Vec<SparseVec>);

/// All rows `u·r·v` obtained by cutting out a pair of bricks of `t` that are
/// adjacent in the vertical order and substituting each relation on their
/// support.
fn relation_rows(t: &[Letter], rels: &[RelData], index: &HashMap<Vec<Letter>, usize>) -> Vec<SparseVec> {
    let bricks: Vec<Brick> = t.iter().map(|l| l.0).collect();
    let r = bricks.len();
    let mut out = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            if bricks[a] & bricks[b] == 0 {
                continue;
            }
            // b is the next brick above a on a shared element iff no brick
            // strictly between them meets both chains; check directly
            if (a + 1..b).any(|c| above(&bricks, a, c) && above(&bricks, c, b)) {
                continue;
            }
            let before: Vec<usize> = (a + 1..b).filter(|&c| !above(&bricks, a, c)).collect();
            let after: Vec<usize> = (a + 1..b).filter(|&c| above(&bricks, a, c)).collect();
            let support = bricks[a] | bricks[b];
            let relabel = Relabel::new(support);
            let (basis, rows) = &rels[relabel.m() - 2];
            for row in rows {
                let entries = row.iter().map(|(c, q)| {
                    let x = &basis[*c];
                    let mut word: Vec<Letter> = Vec::with_capacity(r);
                    word.extend(t[..a].iter().copied());
                    word.extend(before.iter().map(|&c| t[c]));
                    word.push((relabel.expand(x.bottom), x.bottom_gen));
                    word.push((relabel.expand(x.top), x.top_gen));
                    word.extend(after.iter().map(|&c| t[c]));
                    word.extend(t[b + 1..].iter().copied());
                    (index[&canonical_trace(&word)], q.clone())
                });
                out.push(collect_sparse(entries));
            }
        }
    }
    out
}

/// `c` lies above `a` in the order generated by the canonical sequence.
fn above(bricks: &[Brick], a: usize, c: usize) -> bool {
    if c <= a {
        return false;
    }
    // reachability along meeting bricks with increasing positions
    let mut reach = vec![false; c + 1];
    reach[a] = true;
    for k in a + 1..=c {
        reach[k] = (a..k).any(|j| reach[j] && bricks[j] & bricks[k] != 0);
    }
    reach[c]
}

/// Lazily built components `P^{(w)}(1..=m)`, shared between threads.
#[derive(Debug)]
pub struct Components<'p> {
    p: &'p BinaryQuadraticProtoperad,
    cache: Mutex<HashMap<(usize, usize), Arc<Component>>>,
}

impl<'p> Components<'p> {
    pub fn new(p: &'p BinaryQuadraticProtoperad) -> Self {
        Self {
            p,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn protoperad(&self) -> &BinaryQuadraticProtoperad {
        self.p
    }

    pub fn get(&self, m: usize, weight: usize) -> Arc<Component> {
        if let Some(c) = self.cache.lock().expect("cache lock").get(&(m, weight)) {
            return c.clone();
        }
        let built = Arc::new(Component::build(self.p, m, weight));
        self.cache
            .lock()
            .expect("cache lock")
            .entry((m, weight))
            .or_insert(built)
            .clone()
    }

    /// `dim P^{(w)}` on a ground set of size `m`.
    pub fn dim(&self, m: usize, weight: usize) -> usize {
        if m < 2 || weight + 1 < m {
            return 0;
        }
        self.get(m, weight).dim()
    }

    /// Product of labeled walls given as bottom-up words in global
    /// coordinates on `support`: coordinates in `P^{(w)}(support)`.
    pub fn reduce_global(&self, support: Brick, weight: usize, word: &[Letter]) -> SparseVec {
        let rl = Relabel::new(support);
        let local: Vec<Letter> = word.iter().map(|&(b, g)| (rl.compress(b), g)).collect();
        self.get(rl.m(), weight).reduce_word(&local)
    }

    /// Basis element `k` of `P^{(w)}(support)` as a word in global coordinates.
    pub fn basis_word(&self, support: Brick, weight: usize, k: usize) -> Vec<Letter> {
        let rl = Relabel::new(support);
        self.get(rl.m(), weight)
            .basis_trace(k)
            .iter()
            .map(|&(b, g)| (rl.expand(b), g))
            .collect()
    }
}
