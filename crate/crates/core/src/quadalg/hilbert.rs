use std::collections::HashMap;

use crate::exactq::{collect_sparse, Echelon, Rational, SparseVec};

use super::{derive_rewrite_system, quadratic_dual, LinComb, MonomialOrder, QuadError, QuadraticAlgebra, RewriteSystem, Word};

/// Number of words of each length `0..=max_degree` with no left-hand side as
/// a factor. These are the graded dimensions when the system is confluent.
pub fn hilbert_coeffs(rs: &RewriteSystem, max_degree: usize) -> Result<Vec<u64>, QuadError> {
    if !rs.is_confluent() {
        return Err(QuadError::NotConfluent(super::check_confluence(rs).failures.len()));
    }
    Ok(normal_word_counts(rs, max_degree))
}

fn normal_word_counts(rs: &RewriteSystem, max_degree: usize) -> Vec<u64> {
    let g = rs.generators().len();
    let mut out = vec![1u64];
    // ending[b] = normal words of the current length ending in b
    let mut ending = vec![1u64; g];
    for d in 1..=max_degree {
        if d > 1 {
            let mut next = vec![0u64; g];
            for (b, slot) in next.iter_mut().enumerate() {
                for (a, &cnt) in ending.iter().enumerate() {
                    if !rs.is_lhs(a, b) {
                        *slot = slot.saturating_add(cnt);
                    }
                }
            }
            ending = next;
        }
        out.push(ending.iter().fold(0u64, |s, &c| s.saturating_add(c)));
    }
    out
}

/// Index of a word of length `d` in `0..g^d` (base `g`, first letter most
/// significant).
fn word_index(w: &[usize], g: usize) -> usize {
    w.iter().fold(0, |acc, &x| acc * g + x)
}

fn index_word(mut i: usize, d: usize, g: usize) -> Word {
    let mut w = vec![0; d];
    for slot in w.iter_mut().rev() {
        *slot = i % g;
        i /= g;
    }
    w
}

/// Echelon basis of the degree-`d` part of the two-sided ideal generated by
/// the relations, in word-index coordinates.
fn ideal_component(a: &QuadraticAlgebra, d: usize) -> Echelon {
    let g = a.num_generators();
    let cols = g.pow(d as u32);
    let mut ech = Echelon::new(cols);
    if d < 2 {
        return ech;
    }
    let rels = a.relation_combos();
    for p in 0..d - 1 {
        let (left, right) = (g.pow(p as u32), g.pow((d - 2 - p) as u32));
        for u in 0..left {
            for v in 0..right {
                for r in &rels {
                    let row = collect_sparse(
                        r.iter().map(|(w, c)| ((u * g * g + word_index(w, g)) * right + v, c.clone())),
                    );
                    ech.insert(&row);
                }
            }
        }
    }
    ech
}

/// Graded dimensions `g^d − dim I_d` by spanning the relation ideal
/// explicitly. Exponential in `d`; meant for small cases and cross-checks.
pub fn ideal_dims(a: &QuadraticAlgebra, max_degree: usize) -> Vec<u64> {
    let g = a.num_generators();
    (0..=max_degree)
        .map(|d| (g.pow(d as u32) - ideal_component(a, d).rank()) as u64)
        .collect()
}

/// Orders tried before falling back to linear algebra.
fn quick_orders(g: usize) -> [MonomialOrder; 2] {
    let o = MonomialOrder::identity(g);
    let r = o.reversed();
    [o, r]
}

fn confluent_system(a: &QuadraticAlgebra) -> Option<RewriteSystem> {
    quick_orders(a.num_generators())
        .iter()
        .map(|o| derive_rewrite_system(a, o))
        .find(|rs| rs.is_confluent())
}

/// Graded dimensions of `a` up to `max_degree`: normal-word counts when the
/// default or reversed order is confluent, otherwise [`ideal_dims`].
pub fn graded_dims(a: &QuadraticAlgebra, max_degree: usize) -> Vec<u64> {
    match confluent_system(a) {
        Some(rs) => normal_word_counts(&rs, max_degree),
        None => ideal_dims(a, max_degree),
    }
}

/// Like [`graded_dims`], but gives up instead of spanning an ideal with more
/// than `max_cols` words in the top degree.
pub fn try_graded_dims(a: &QuadraticAlgebra, max_degree: usize, max_cols: usize) -> Option<Vec<u64>> {
    if let Some(rs) = confluent_system(a) {
        return Some(normal_word_counts(&rs, max_degree));
    }
    let top = (a.num_generators() as u128).checked_pow(max_degree as u32)?;
    (top <= max_cols as u128).then(|| ideal_dims(a, max_degree))
}

/// `Σ_{i+j=d} (−1)^j h(i) k(j) = [d = 0]` for all `d` covered by both lists.
pub fn koszul_identity_holds(h: &[u64], k: &[u64]) -> bool {
    let top = h.len().min(k.len());
    (0..top).all(|d| {
        let s: i128 = (0..=d)
            .map(|j| {
                let t = h[d - j] as i128 * k[j] as i128;
                if j % 2 == 0 { t } else { -t }
            })
            .sum();
        s == i128::from(d == 0)
    })
}

/// Hilbert-series test `H_A(t)·H_{A!}(−t) = 1` up to degree `max_degree`.
pub fn koszul_numerical_check(a: &QuadraticAlgebra, max_degree: usize) -> bool {
    let h = graded_dims(a, max_degree);
    let k = graded_dims(&quadratic_dual(a), max_degree);
    koszul_identity_holds(&h, &k)
}

enum Reducer {
    Rewriting(RewriteSystem),
    Linear(Vec<Echelon>),
}

/// Basis of the graded components `A_0 … A_D` with reduction of arbitrary
/// homogeneous elements to coordinates. Uses normal words of a confluent
/// rewriting system when one is at hand, otherwise non-pivot words of the
/// explicitly spanned ideal.
pub struct NormalBasis {
    g: usize,
    reducer: Reducer,
    words: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
}

impl NormalBasis {
    pub fn new(a: &QuadraticAlgebra, max_degree: usize) -> Self {
        match confluent_system(a) {
            Some(rs) => Self::from_system(rs, max_degree),
            None => Self::linear(a, max_degree),
        }
    }

    /// Panics if `rs` is not confluent.
    pub fn from_system(rs: RewriteSystem, max_degree: usize) -> Self {
        assert!(rs.is_confluent(), "normal words need a confluent system");
        let g = rs.generators().len();
        let mut words: Vec<Vec<Word>> = vec![vec![Vec::new()]];
        for d in 1..=max_degree {
            let mut next = Vec::new();
            for w in &words[d - 1] {
                for x in 0..g {
                    if d == 1 || !rs.is_lhs(w[d - 2], x) {
                        let mut v = w.clone();
                        v.push(x);
                        next.push(v);
                    }
                }
            }
            next.sort();
            words.push(next);
        }
        Self::assemble(g, Reducer::Rewriting(rs), words)
    }

    fn linear(a: &QuadraticAlgebra, max_degree: usize) -> Self {
        let g = a.num_generators();
        let echs: Vec<Echelon> = (0..=max_degree).map(|d| ideal_component(a, d)).collect();
        let words = echs
            .iter()
            .enumerate()
            .map(|(d, e)| {
                (0..e.cols())
                    .filter(|&c| !e.is_pivot(c))
                    .map(|c| index_word(c, d, g))
                    .collect()
            })
            .collect();
        Self::assemble(g, Reducer::Linear(echs), words)
    }

    fn assemble(g: usize, reducer: Reducer, words: Vec<Vec<Word>>) -> Self {
        let index = words
            .iter()
            .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
            .collect();
        Self { g, reducer, words, index }
    }

    pub fn max_degree(&self) -> usize {
        self.words.len() - 1
    }

    pub fn dim(&self, d: usize) -> usize {
        self.words[d].len()
    }

    pub fn dims(&self) -> Vec<u64> {
        self.words.iter().map(|w| w.len() as u64).collect()
    }

    pub fn words(&self, d: usize) -> &[Word] {
        &self.words[d]
    }

    /// Coordinates of a homogeneous element of degree `d`.
    pub fn reduce(&self, d: usize, lc: &LinComb) -> SparseVec {
        debug_assert!(lc.keys().all(|w| w.len() == d));
        let reduced: Vec<(Word, Rational)> = match &self.reducer {
            Reducer::Rewriting(rs) => rs
                .reduce(lc, super::Strategy::Leftmost, None)
                .into_iter()
                .collect(),
            Reducer::Linear(echs) => {
                let v = collect_sparse(lc.iter().map(|(w, c)| (word_index(w, self.g), c.clone())));
                echs[d]
                    .reduce(&v)
                    .into_iter()
                    .map(|(i, c)| (index_word(i, d, self.g), c))
                    .collect()
            }
        };
        collect_sparse(reduced.into_iter().map(|(w, c)| (self.index[d][&w], c)))
    }

    /// Coordinates of the product of basis element `i` of degree `di` with
    /// basis element `j` of degree `dj`.
    pub fn product(&self, di: usize, i: usize, dj: usize, j: usize) -> SparseVec {
        let mut w = self.words[di][i].clone();
        w.extend_from_slice(&self.words[dj][j]);
        self.reduce(di + dj, &LinComb::from([(w, Rational::from_integer(1.into()))]))
    }
}
