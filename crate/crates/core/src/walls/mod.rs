//! Partitions, walls and leveled walls over the ordered ground set `1..=n`.
//!
//! A brick is a subset of the ground set stored as a bitmask (bit `s-1` for
//! element `s`). A wall is a family of bricks where the bricks containing a
//! common element are totally ordered bottom to top. Walls are kept in a
//! canonical brick sequence: every brick gets its minimal level (length of the
//! longest chain below it) and bricks are sorted by `(level, min element,
//! brick)`. Since two bricks on the same level are disjoint the key never
//! ties, so structural equality of the sequence is wall equality.

mod leveled;
mod partition;
mod wall;

pub use leveled::{enum_leveled_walls, level_fibers, unlevelize, LeveledWall};
pub use partition::{enum_partitions, enum_xconn, Partition};
pub use wall::{canonical_order, enum_walls, Wall, WallJson};

/// Bitmask subset of `1..=n`.
pub type Brick = u32;

/// Largest supported ground set.
pub const MAX_N: usize = 31;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WallError {
    #[error("ground set size {0} outside 1..={MAX_N}")]
    GroundSet(usize),
    #[error("brick {0:?} is empty or leaves the ground set 1..={1}")]
    BadBrick(Vec<usize>, usize),
    #[error("order pair ({0}, {1}) refers to a missing brick")]
    BadOrderPair(usize, usize),
    #[error("vertical order is cyclic")]
    Cyclic,
    #[error("bricks {0} and {1} share an element but are not ordered")]
    Unordered(usize, usize),
    #[error("order pair ({0}, {1}) is not implied by shared elements")]
    SpuriousOrder(usize, usize),
    #[error("wall is not connected")]
    Disconnected,
    #[error("leveled wall is invalid: {0}")]
    BadLevels(String),
}

pub fn brick_from_elems(elems: &[usize]) -> Brick {
    elems.iter().fold(0, |m, &s| m | (1 << (s - 1)))
}

pub fn brick_elems(b: Brick) -> Vec<usize> {
    (0..32).filter(|i| b & (1 << i) != 0).map(|i| i + 1).collect()
}

pub fn brick_min(b: Brick) -> usize {
    b.trailing_zeros() as usize + 1
}

pub fn brick_size(b: Brick) -> usize {
    b.count_ones() as usize
}

pub fn full_set(n: usize) -> Brick {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// All bricks of `1..=n` whose cardinality lies in `sizes`, in increasing
/// `(min element, elements)` order.
pub fn bricks_of_sizes(n: usize, sizes: &[usize]) -> Vec<Brick> {
    let mut out: Vec<Brick> = (1..=full_set(n))
        .filter(|b| sizes.contains(&brick_size(*b)))
        .collect();
    out.sort_by_key(|b| (brick_min(*b), brick_elems(*b)));
    out
}

pub(crate) fn fmt_brick(b: Brick) -> String {
    let e: Vec<String> = brick_elems(b).iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", e.join(","))
}
