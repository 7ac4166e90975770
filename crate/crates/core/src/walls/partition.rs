use std::fmt;

use serde::Serialize;

use super::{brick_elems, brick_min, fmt_brick, full_set, Brick};

/// Set partition of `1..=n` with blocks sorted by minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Brick>,
}

impl Partition {
    /// Normalizes the block order. Panics if the blocks do not partition `1..=n`.
    pub fn new(n: usize, mut blocks: Vec<Brick>) -> Self {
        let mut seen = 0;
        for &b in &blocks {
            assert!(b != 0 && b & seen == 0, "blocks overlap or are empty");
            seen |= b;
        }
        assert_eq!(seen, full_set(n), "blocks do not cover the ground set");
        blocks.sort_by_key(|b| brick_min(*b));
        Self { n, blocks }
    }

    /// Connected components of the graph on `1..=n` whose edges join the
    /// elements of each given set; uncovered elements become singletons.
    pub fn from_connected_sets(n: usize, sets: impl IntoIterator<Item = Brick>) -> Self {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for set in sets {
            let elems = brick_elems(set);
            if let Some((&first, rest)) = elems.split_first() {
                for &e in rest {
                    let (a, b) = (find(&mut parent, first - 1), find(&mut parent, e - 1));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut blocks = vec![0 as Brick; n];
        for s in 0..n {
            let r = find(&mut parent, s);
            blocks[r] |= 1 << s;
        }
        Self::new(n, blocks.into_iter().filter(|b| *b != 0).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Brick] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| brick_elems(*b)).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "{}", fmt_brick(*b))?;
        }
        Ok(())
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_lists().serialize(s)
    }
}

/// All set partitions of `1..=n`, generated from restricted growth strings.
pub fn enum_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let n = rgs.len();
        if i == n {
            let mut blocks = vec![0 as Brick; max + 1];
            for (s, &b) in rgs.iter().enumerate() {
                blocks[b] |= 1 << s;
            }
            out.push(Partition::new(n, blocks));
            return;
        }
        for b in 0..=max + 1 {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    if n == 0 {
        return out;
    }
    rec(1, 0, &mut rgs, &mut out);
    out
}

/// Ordered pairs `(I, J)` of partitions whose two-layer wall (blocks of `I`
/// below blocks of `J`) is connected.
pub fn enum_xconn(n: usize) -> Vec<(Partition, Partition)> {
    let parts = enum_partitions(n);
    let mut out = Vec::new();
    for i in &parts {
        for j in &parts {
            let joined = Partition::from_connected_sets(
                n,
                i.blocks().iter().chain(j.blocks()).copied(),
            );
            if joined.is_trivial() {
                out.push((i.clone(), j.clone()));
            }
        }
    }
    out
}
