use std::fmt;

use serde::{Deserialize, Serialize};

use super::{
    brick_elems, brick_from_elems, brick_min, bricks_of_sizes, fmt_brick, full_set,
    Brick, Partition, WallError, MAX_N,
};

/// Order in which the bricks of `word` appear in canonical form. `word` must
/// list the bricks bottom-up along some linear extension of the vertical
/// order (any word does: a later brick sits above every earlier brick it
/// meets). Returns indices into `word`.
pub fn canonical_order(word: &[Brick]) -> Vec<usize> {
    let levels = minimal_levels(word);
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_by_key(|&i| (levels[i], brick_min(word[i]), brick_elems(word[i])));
    idx
}

fn minimal_levels(word: &[Brick]) -> Vec<usize> {
    let mut levels: Vec<usize> = Vec::with_capacity(word.len());
    for (k, &b) in word.iter().enumerate() {
        let lvl = (0..k)
            .filter(|&j| word[j] & b != 0)
            .map(|j| levels[j] + 1)
            .max()
            .unwrap_or(0);
        levels.push(lvl);
    }
    levels
}

/// A wall on `1..=n`, stored as its canonical brick sequence.
///
/// Elements not covered by any brick are read as implicit singleton bricks
/// (this is how words in the generators `x_ij` are viewed as walls).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall {
    n: usize,
    bricks: Vec<Brick>,
}

/// JSON form: `{"bricks":[[1,2],[2,3]],"order":[[0,1]]}`; an order pair
/// `[a,b]` means brick `a` lies directly below brick `b` on a shared element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallJson {
    pub bricks: Vec<Vec<usize>>,
    pub order: Vec<[usize; 2]>,
}

impl Wall {
    /// Wall obtained by stacking the bricks of `word` bottom to top.
    pub fn from_word(n: usize, word: &[Brick]) -> Self {
        assert!((1..=MAX_N).contains(&n), "ground set out of range");
        let full = full_set(n);
        assert!(word.iter().all(|b| *b != 0 && b & !full == 0), "brick outside ground set");
        let bricks = canonical_order(word).into_iter().map(|i| word[i]).collect();
        Self { n, bricks }
    }

    /// Builds a wall from bricks and explicit "below" pairs, checking that the
    /// pairs are exactly generated by the per-element orders.
    pub fn from_order(n: usize, bricks: &[Brick], below: &[(usize, usize)]) -> Result<Self, WallError> {
        if !(1..=MAX_N).contains(&n) {
            return Err(WallError::GroundSet(n));
        }
        let full = full_set(n);
        for &b in bricks {
            if b == 0 || b & !full != 0 {
                return Err(WallError::BadBrick(brick_elems(b), n));
            }
        }
        let m = bricks.len();
        for &(a, b) in below {
            if a >= m || b >= m || a == b {
                return Err(WallError::BadOrderPair(a, b));
            }
        }
        // Kahn's algorithm, smallest index first.
        let mut indeg = vec![0usize; m];
        for &(_, b) in below {
            indeg[b] += 1;
        }
        let mut order = Vec::with_capacity(m);
        let mut ready: std::collections::BTreeSet<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
        while let Some(&i) = ready.iter().next() {
            ready.remove(&i);
            order.push(i);
            for &(a, b) in below {
                if a == i {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.insert(b);
                    }
                }
            }
        }
        if order.len() < m {
            return Err(WallError::Cyclic);
        }
        let given = closure(m, below);
        for a in 0..m {
            for b in a + 1..m {
                if bricks[a] & bricks[b] != 0 && !given[a][b] && !given[b][a] {
                    return Err(WallError::Unordered(a, b));
                }
            }
        }
        let word: Vec<Brick> = order.iter().map(|&i| bricks[i]).collect();
        let wall = Wall::from_word(n, &word);
        // The canonical order relation must coincide with the given one.
        let canon = canonical_order(&word);
        let pos_of_input: Vec<usize> = canon.iter().map(|&k| order[k]).collect();
        let rel = wall.order_relation();
        for (x, &ia) in pos_of_input.iter().enumerate() {
            for (y, &ib) in pos_of_input.iter().enumerate() {
                if given[ia][ib] != rel[x][y] {
                    return Err(WallError::SpuriousOrder(ia, ib));
                }
            }
        }
        Ok(wall)
    }

    pub fn from_json(n: usize, json: &WallJson) -> Result<Self, WallError> {
        let bricks: Vec<Brick> = json
            .bricks
            .iter()
            .map(|b| {
                if b.iter().any(|&s| s == 0 || s > n) || b.is_empty() {
                    Err(WallError::BadBrick(b.clone(), n))
                } else {
                    Ok(brick_from_elems(b))
                }
            })
            .collect::<Result<_, _>>()?;
        let below: Vec<(usize, usize)> = json.order.iter().map(|p| (p[0], p[1])).collect();
        Self::from_order(n, &bricks, &below)
    }

    pub fn to_json(&self) -> WallJson {
        WallJson {
            bricks: self.bricks.iter().map(|b| brick_elems(*b)).collect(),
            order: self.successions().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bricks(&self) -> &[Brick] {
        &self.bricks
    }

    pub fn len(&self) -> usize {
        self.bricks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bricks.is_empty()
    }

    /// Minimal level of each brick (longest chain strictly below it).
    pub fn levels(&self) -> Vec<usize> {
        minimal_levels(&self.bricks)
    }

    /// Pairs `(a, b)` of brick indices where `b` is the next brick above `a`
    /// on some shared element, sorted and deduplicated.
    pub fn successions(&self) -> Vec<(usize, usize)> {
        let mut out = std::collections::BTreeSet::new();
        for s in 0..self.n {
            let chain: Vec<usize> = (0..self.bricks.len())
                .filter(|&i| self.bricks[i] & (1 << s) != 0)
                .collect();
            for w in chain.windows(2) {
                out.insert((w[0], w[1]));
            }
        }
        out.into_iter().collect()
    }

    /// `rel[a][b]` iff brick `a` is strictly below brick `b` in the canonical
    /// partial order.
    pub fn order_relation(&self) -> Vec<Vec<bool>> {
        closure(self.bricks.len(), &self.successions())
    }

    /// Projection onto partitions: unions of bricks over the classes of the
    /// "meet and succeed" relation, with uncovered elements as singletons.
    pub fn kappa(&self) -> Partition {
        // Bricks that share an element are always comparable, and the chain of
        // bricks on that element links them by successions, so the classes
        // are the components of the intersection graph.
        Partition::from_connected_sets(self.n, self.bricks.iter().copied())
    }

    pub fn is_connected(&self) -> bool {
        self.kappa().is_trivial()
    }

    /// True when some brick lies strictly between `a` and `b`.
    pub fn has_brick_between(&self, rel: &[Vec<bool>], a: usize, b: usize) -> bool {
        (0..self.bricks.len()).any(|c| rel[a][c] && rel[c][b])
    }
}

fn closure(m: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut rel = vec![vec![false; m]; m];
    for &(a, b) in pairs {
        rel[a][b] = true;
    }
    for k in 0..m {
        let via = rel[k].clone();
        for row in rel.iter_mut().filter(|r| r[k]) {
            for (x, &y) in row.iter_mut().zip(&via) {
                *x |= y;
            }
        }
    }
    rel
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bricks.iter().map(|b| fmt_brick(*b)).collect();
        write!(f, "[{}]", parts.join(" < "))
    }
}

/// All connected walls on `1..=n` with exactly `bricks` bricks whose sizes lie
/// in `sizes`, each in canonical form.
///
/// Canonical sequences are grown brick by brick: appending `x` to a canonical
/// sequence keeps it canonical iff the sort key of `x` exceeds that of the
/// last brick, and every prefix of a canonical sequence is canonical, so each
/// wall is produced exactly once.
pub fn enum_walls(n: usize, bricks: usize, sizes: &[usize]) -> Vec<Wall> {
    let alphabet = bricks_of_sizes(n, sizes);
    let max_size = sizes.iter().copied().filter(|&s| s <= n).max().unwrap_or(0);
    if bricks == 0 || alphabet.is_empty() || (max_size < 2 && n > 1) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut seq: Vec<Brick> = Vec::with_capacity(bricks);
    let mut levels: Vec<usize> = Vec::with_capacity(bricks);
    grow(n, bricks, max_size, &alphabet, &mut seq, &mut levels, &mut out);
    out
}

type Key = (usize, usize, Vec<usize>);

fn grow(
    n: usize,
    target: usize,
    max_size: usize,
    alphabet: &[Brick],
    seq: &mut Vec<Brick>,
    levels: &mut Vec<usize>,
    out: &mut Vec<Wall>,
) {
    let remaining = target - seq.len();
    let comps = Partition::from_connected_sets(n, seq.iter().copied()).len();
    // each further brick can merge at most `max_size` components into one
    if comps - 1 > remaining * (max_size.saturating_sub(1)) {
        return;
    }
    if remaining == 0 {
        if comps == 1 {
            out.push(Wall {
                n,
                bricks: seq.clone(),
            });
        }
        return;
    }
    let last_key: Option<Key> = seq
        .last()
        .map(|&b| (levels[levels.len() - 1], brick_min(b), brick_elems(b)));
    for &x in alphabet {
        let lvl = seq
            .iter()
            .zip(levels.iter())
            .filter(|(b, _)| **b & x != 0)
            .map(|(_, l)| l + 1)
            .max()
            .unwrap_or(0);
        let key: Key = (lvl, brick_min(x), brick_elems(x));
        if let Some(k) = &last_key {
            if key <= *k {
                continue;
            }
        }
        seq.push(x);
        levels.push(lvl);
        grow(n, target, max_size, alphabet, seq, levels, out);
        seq.pop();
        levels.pop();
    }
}
