//! Bar complexes over ℚ and their homology: the reduced bar complex of a
//! quadratic algebra, the normalized bar complex on leveled walls, the
//! protoperadic bar complex on walls and the levelization map between the
//! last two.

mod alg_bar;
mod complex;
mod levelization;
mod normalized;
mod proto_bar;

pub use alg_bar::{
    bar_alg_complex, bar_alg_complex_with, connected_bar_component, connected_bar_component_with,
    partition_split,
};
pub use complex::{homology_ranks, ChainComplex, HomologyEntry, HomologyReport};
pub use levelization::{levelization_matrix, Levelization};
pub use normalized::{normalized_bar_complex, NormalizedBar};
pub use proto_bar::{proto_bar_differential, LBrick, ProtoBar};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BarError {
    #[error("boundary composite into degree {degree} is nonzero")]
    NotAComplex { degree: usize },
}

/// Compositions of `total` into `parts` positive parts, lexicographic.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == parts {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = parts - cur.len();
        if left < slots {
            return;
        }
        for x in 1..=left - (slots - 1) {
            cur.push(x);
            rec(left - x, parts, cur, out);
            cur.pop();
        }
    }
    if parts > 0 {
        rec(total, parts, &mut cur, &mut out);
    }
    out
}

/// Sign of the permutation taking sequence `from` to sequence `to` (same
/// distinct elements).
pub(crate) fn permutation_sign<T: PartialEq>(from: &[T], to: &[T]) -> i64 {
    let pos: Vec<usize> = to
        .iter()
        .map(|x| from.iter().position(|y| y == x).expect("same elements"))
        .collect();
    let inversions = (0..pos.len())
        .flat_map(|i| (i + 1..pos.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| pos[i] > pos[j])
        .count();
    if inversions % 2 == 0 { 1 } else { -1 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_counts() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn signs() {
        assert_eq!(permutation_sign(&[1, 2, 3], &[1, 2, 3]), 1);
        assert_eq!(permutation_sign(&[1, 2, 3], &[2, 1, 3]), -1);
        assert_eq!(permutation_sign(&[1, 2, 3], &[2, 3, 1]), 1);
    }
}
