use std::fmt;

use super::{brick_min, bricks_of_sizes, fmt_brick, Brick, Partition, Wall, WallError};

/// A wall presented as a bottom-up sequence of levels, each a nonempty set of
/// pairwise disjoint bricks (sorted by minimum element).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeveledWall {
    n: usize,
    levels: Vec<Vec<Brick>>,
}

impl LeveledWall {
    pub fn new(n: usize, mut levels: Vec<Vec<Brick>>) -> Result<Self, WallError> {
        if levels.is_empty() {
            return Err(WallError::BadLevels("no levels".into()));
        }
        for (i, lvl) in levels.iter_mut().enumerate() {
            if lvl.is_empty() {
                return Err(WallError::BadLevels(format!("level {i} is empty")));
            }
            let mut seen = 0;
            for &b in lvl.iter() {
                if b & seen != 0 {
                    return Err(WallError::BadLevels(format!("level {i} has overlapping bricks")));
                }
                seen |= b;
            }
            lvl.sort_by_key(|b| brick_min(*b));
        }
        let lw = Self { n, levels };
        if !lw.partition().is_trivial() {
            return Err(WallError::Disconnected);
        }
        Ok(lw)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[Vec<Brick>] {
        &self.levels
    }

    pub fn brick_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    fn partition(&self) -> Partition {
        Partition::from_connected_sets(self.n, self.levels.iter().flatten().copied())
    }
}

impl fmt::Display for LeveledWall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .levels
            .iter()
            .map(|l| l.iter().map(|b| fmt_brick(*b)).collect::<Vec<_>>().join(""))
            .collect();
        write!(f, "{}", parts.join(" | "))
    }
}

/// Forgets the levels: bricks of level `i` sit below the bricks of level `j > i`
/// they meet.
pub fn unlevelize(lw: &LeveledWall) -> Wall {
    let word: Vec<Brick> = lw.levels.iter().flatten().copied().collect();
    Wall::from_word(lw.n, &word)
}

/// All leveled walls with `p` nonempty levels and `total` bricks of allowed
/// sizes whose unlevelization is connected.
pub fn enum_leveled_walls(n: usize, p: usize, total: usize, sizes: &[usize]) -> Vec<LeveledWall> {
    if p == 0 || total < p {
        return Vec::new();
    }
    let antichains = disjoint_families(&bricks_of_sizes(n, sizes));
    let mut out = Vec::new();
    let mut levels: Vec<Vec<Brick>> = Vec::with_capacity(p);
    fn rec(
        n: usize,
        p: usize,
        left: usize,
        fams: &[Vec<Brick>],
        levels: &mut Vec<Vec<Brick>>,
        out: &mut Vec<LeveledWall>,
    ) {
        let slots = p - levels.len();
        if slots == 0 {
            if left == 0 {
                if let Ok(lw) = LeveledWall::new(n, levels.clone()) {
                    out.push(lw);
                }
            }
            return;
        }
        for f in fams {
            // every later level needs at least one brick
            if f.len() + (slots - 1) > left {
                continue;
            }
            levels.push(f.clone());
            rec(n, p, left - f.len(), fams, levels, out);
            levels.pop();
        }
    }
    rec(n, p, total, &antichains, &mut levels, &mut out);
    out
}

/// Nonempty sets of pairwise disjoint bricks from `alphabet`, each sorted by
/// minimum element.
pub(crate) fn disjoint_families(alphabet: &[Brick]) -> Vec<Vec<Brick>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(alpha: &[Brick], start: usize, used: Brick, cur: &mut Vec<Brick>, out: &mut Vec<Vec<Brick>>) {
        for i in start..alpha.len() {
            if alpha[i] & used == 0 {
                cur.push(alpha[i]);
                let mut f = cur.clone();
                f.sort_by_key(|b| brick_min(*b));
                out.push(f);
                rec(alpha, i + 1, used | alpha[i], cur, out);
                cur.pop();
            }
        }
    }
    rec(alphabet, 0, 0, &mut cur, &mut out);
    out
}

/// Leveled walls with `p` levels whose unlevelization is `w`: level
/// assignments that strictly increase along the partial order and hit every
/// level. For `p = w.len()` these are the linear extensions of `w`.
pub fn level_fibers(w: &Wall, p: usize) -> Result<Vec<LeveledWall>, WallError> {
    if !w.is_connected() {
        return Err(WallError::Disconnected);
    }
    let m = w.len();
    if p == 0 || p > m {
        return Ok(Vec::new());
    }
    let rel = w.order_relation();
    let mut assign = vec![0usize; m];
    let mut out = Vec::new();
    // Canonical order is a linear extension, so predecessors are assigned first.
    fn rec(
        k: usize,
        p: usize,
        w: &Wall,
        rel: &[Vec<bool>],
        assign: &mut Vec<usize>,
        out: &mut Vec<LeveledWall>,
    ) {
        let m = w.len();
        if k == m {
            let mut levels = vec![Vec::new(); p];
            for (i, &l) in assign.iter().enumerate() {
                levels[l].push(w.bricks()[i]);
            }
            if levels.iter().all(|l| !l.is_empty()) {
                out.push(LeveledWall::new(w.n(), levels).expect("fiber of a connected wall"));
            }
            return;
        }
        let lo = (0..k).filter(|&j| rel[j][k]).map(|j| assign[j] + 1).max().unwrap_or(0);
        for l in lo..p {
            // a brick on the same level as one it meets is impossible
            assign[k] = l;
            rec(k + 1, p, w, rel, assign, out);
        }
    }
    rec(0, p, w, &rel, &mut assign, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walls::brick_from_elems as b;

    #[test]
    fn leveled_counts() {
        assert_eq!(enum_leveled_walls(2, 1, 1, &[2]).len(), 1);
        assert_eq!(enum_leveled_walls(3, 2, 2, &[2]).len(), 6);
        assert_eq!(enum_leveled_walls(2, 2, 2, &[2]).len(), 1);
    }

    #[test]
    fn unlevelize_examples() {
        let lw = LeveledWall::new(3, vec![vec![b(&[1, 2])], vec![b(&[2, 3])]]).unwrap();
        assert_eq!(unlevelize(&lw), Wall::from_word(3, &[b(&[1, 2]), b(&[2, 3])]));
        assert_eq!(
            LeveledWall::new(4, vec![vec![b(&[1, 2]), b(&[3, 4])]]),
            Err(WallError::Disconnected)
        );
        let lw = LeveledWall::new(2, vec![vec![b(&[1, 2])], vec![b(&[1, 2])]]).unwrap();
        assert_eq!(unlevelize(&lw).bricks(), &[b(&[1, 2]), b(&[1, 2])]);
    }

    #[test]
    fn fibers() {
        let stacked = Wall::from_word(2, &[b(&[1, 2]), b(&[1, 2])]);
        assert_eq!(level_fibers(&stacked, 2).unwrap().len(), 1);
        let apart = Wall::from_word(4, &[b(&[1, 2]), b(&[3, 4])]);
        assert_eq!(level_fibers(&apart, 2), Err(WallError::Disconnected));
        // {1,2} and {3,4} both below the bridge {2,3}
        let bridge = Wall::from_word(4, &[b(&[1, 2]), b(&[3, 4]), b(&[2, 3])]);
        assert_eq!(level_fibers(&bridge, 3).unwrap().len(), 2);
        assert_eq!(level_fibers(&bridge, 2).unwrap().len(), 1);
        for lw in level_fibers(&bridge, 3).unwrap() {
            assert_eq!(unlevelize(&lw), bridge);
        }
    }
}
