use std::collections::HashMap;

use num_traits::One;

use crate::exactq::{collect_sparse, Rational};
use crate::protoperad::FamilyAlgebra;
use crate::quadalg::{NormalBasis, QuadraticAlgebra, Word};
use crate::walls::Partition;

use super::{compositions, ChainComplex};

/// Basis element of the bar complex: one `(degree, index)` per tensor factor.
type BarKey = Vec<(usize, usize)>;

fn bar_complex(
    a: &QuadraticAlgebra,
    nb: &NormalBasis,
    rho: usize,
    keep: &(dyn Fn(&[&Word]) -> bool + Sync),
) -> ChainComplex {
    let mut bases: Vec<Vec<BarKey>> = vec![Vec::new()];
    for p in 1..=rho {
        let mut keys = Vec::new();
        for comp in compositions(rho, p) {
            let mut cur: BarKey = Vec::with_capacity(p);
            expand(nb, &comp, &mut cur, &mut keys, keep);
        }
        bases.push(keys);
    }
    let index: Vec<HashMap<BarKey, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect())
        .collect();
    let labels = bases
        .iter()
        .map(|b| {
            b.iter()
                .map(|k| {
                    k.iter()
                        .map(|&(d, i)| a.format_word(&nb.words(d)[i]))
                        .collect::<Vec<_>>()
                        .join(" | ")
                })
                .collect()
        })
        .collect();
    let columns = (1..=rho)
        .map(|p| {
            crate::par::map(&bases[p], |key| {
                let mut entries = Vec::new();
                for i in 0..key.len().saturating_sub(1) {
                    let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
                    let (di, xi) = key[i];
                    let (dj, xj) = key[i + 1];
                    for (k, q) in nb.product(di, xi, dj, xj) {
                        let mut target = Vec::with_capacity(key.len() - 1);
                        target.extend_from_slice(&key[..i]);
                        target.push((di + dj, k));
                        target.extend_from_slice(&key[i + 2..]);
                        let row = *index[p - 1]
                            .get(&target)
                            .expect("summand is closed under the differential");
                        entries.push((row, &sign * q));
                    }
                }
                collect_sparse(entries)
            })
        })
        .collect();
    ChainComplex::from_columns(rho, labels, columns)
}

fn expand(
    nb: &NormalBasis,
    comp: &[usize],
    cur: &mut BarKey,
    out: &mut Vec<BarKey>,
    keep: &(dyn Fn(&[&Word]) -> bool + Sync),
) {
    if cur.len() == comp.len() {
        let words: Vec<&Word> = cur.iter().map(|&(d, i)| &nb.words(d)[i]).collect();
        if keep(&words) {
            out.push(cur.clone());
        }
        return;
    }
    let d = comp[cur.len()];
    for i in 0..nb.dim(d) {
        cur.push((d, i));
        expand(nb, comp, cur, out, keep);
        cur.pop();
    }
}

/// Reduced bar complex of `a` in weight `rho`: degree `p` is spanned by
/// `s a_1 | … | s a_p` with basis elements `a_i` of positive degrees summing
/// to `rho`, and `d = Σ_i (−1)^i (… | s(a_i a_{i+1}) | …)`.
pub fn bar_alg_complex(a: &QuadraticAlgebra, rho: usize) -> ChainComplex {
    let nb = NormalBasis::new(a, rho);
    bar_complex(a, &nb, rho, &|_| true)
}

/// Same, with graded components taken from a given normal basis.
pub fn bar_alg_complex_with(a: &QuadraticAlgebra, nb: &NormalBasis, rho: usize) -> ChainComplex {
    bar_complex(a, nb, rho, &|_| true)
}

/// Partition of `1..=n` joined by the index pairs of all letters.
pub fn partition_split(fam: &FamilyAlgebra, label: &[Word]) -> Partition {
    fam.partition_split(label)
}

/// Summand of the bar complex of `A(P, n)` whose labels join all of `1..=n`.
pub fn connected_bar_component(fam: &FamilyAlgebra, rho: usize) -> ChainComplex {
    let nb = NormalBasis::new(&fam.algebra, rho);
    connected_bar_component_with(fam, &nb, rho)
}

pub fn connected_bar_component_with(fam: &FamilyAlgebra, nb: &NormalBasis, rho: usize) -> ChainComplex {
    let keep = |ws: &[&Word]| {
        let owned: Vec<Word> = ws.iter().map(|w| (*w).clone()).collect();
        fam.partition_split(&owned).is_trivial()
    };
    bar_complex(&fam.algebra, nb, rho, &keep)
}
