mod common;

use std::collections::BTreeSet;

use common::{dlie, gen, naive_hilbert, dlie_relations_by_hand, w_rules_by_hand, relation_row, Term};
use pkit::exactq::RationalMatrix;
use pkit::exactq::row_space_equal;
use pkit::protoperad::build_algebra;
use pkit::quadalg::{
    check_confluence, derive_rewrite_system, graded_dims, hilbert_coeffs, koszul_identity_holds, quadratic_dual,
    LinComb, MonomialOrder, QuadraticAlgebra, RewriteSystem, Strategy,
};
use proptest::prelude::*;

fn w(n: usize) -> QuadraticAlgebra {
    quadratic_dual(&build_algebra(&dlie(), n).algebra)
}

fn standard_system(n: usize) -> RewriteSystem {
    let a = w(n);
    let g = a.num_generators();
    derive_rewrite_system(&a, &MonomialOrder::identity(g))
}

fn rule_rows(a: &QuadraticAlgebra, rules: impl Iterator<Item = ((usize, usize), (usize, usize), Vec<Term>)>) -> RationalMatrix {
    let g = a.num_generators();
    let rows = rules
        .map(|(l1, l2, rhs)| {
            let mut terms = vec![(l1, l2, 1)];
            terms.extend(rhs.into_iter().map(|(x, y, c)| (x, y, -c)));
            relation_row(a, &terms)
        })
        .collect();
    RationalMatrix::from_sparse_rows(g * g, rows)
}

#[test]
fn generator_order_is_right_lex() {
    for n in 2..=5 {
        let a = build_algebra(&dlie(), n).algebra;
        for (k, (i, j)) in common::pairs(n).into_iter().enumerate() {
            assert_eq!(gen(&a, i, j), k);
        }
    }
}

#[test]
fn relations_match_the_displayed_presentation() {
    for n in 2..=5 {
        let a = build_algebra(&dlie(), n).algebra;
        let g = a.num_generators();
        let rows = dlie_relations_by_hand(n).iter().map(|r| relation_row(&a, r)).collect();
        let expected = RationalMatrix::from_sparse_rows(g * g, rows);
        assert!(row_space_equal(a.relations(), &expected).unwrap(), "n={n}");
    }
}

#[test]
fn rules_for_w3_w4_w5() {
    for n in 3..=5 {
        let a = w(n);
        let rs = standard_system(n);
        let expected = w_rules_by_hand(n);
        let lhs: BTreeSet<Vec<usize>> = rs.rules().iter().map(|r| r.lhs.clone()).collect();
        let expected_lhs: BTreeSet<Vec<usize>> = expected
            .iter()
            .map(|((p, q), _)| vec![gen(&a, p.0, p.1), gen(&a, q.0, q.1)])
            .collect();
        assert_eq!(lhs, expected_lhs, "lhs sets n={n}");
        let derived = RationalMatrix::from_sparse_rows(
            a.num_generators().pow(2),
            rs.rules()
                .iter()
                .map(|r| {
                    let g = a.num_generators();
                    let mut row = vec![(r.lhs[0] * g + r.lhs[1], num_traits::One::one())];
                    row.extend(r.rhs.iter().map(|(w, c)| (w[0] * g + w[1], -c.clone())));
                    row
                })
                .collect(),
        );
        let by_hand = rule_rows(&a, expected.into_iter().map(|((p, q), rhs)| (p, q, rhs)));
        assert!(row_space_equal(&derived, &by_hand).unwrap(), "rules n={n}");
        assert!(row_space_equal(&by_hand, a.relations()).unwrap(), "rules span R^perp n={n}");
    }
}

#[test]
fn w_is_confluent_under_the_standard_order() {
    for n in 3..=5 {
        // critical monomials are words abc with ab and bc both leading terms
        let a = w(n);
        let lhs: BTreeSet<(usize, usize)> = w_rules_by_hand(n)
            .iter()
            .map(|((p, q), _)| (gen(&a, p.0, p.1), gen(&a, q.0, q.1)))
            .collect();
        let crit = lhs.iter().map(|&(_, y)| lhs.iter().filter(|&&(z, _)| z == y).count()).sum::<usize>();
        let rep = check_confluence(&standard_system(n));
        assert!(rep.confluent, "n={n}");
        assert!(rep.failures.is_empty());
        assert_eq!(rep.critical_count, crit, "n={n}");
    }
}

#[test]
fn hilbert_series_against_naive_ranks() {
    for n in 2..=3 {
        for (alg, d) in [(build_algebra(&dlie(), n).algebra, 4), (w(n), 4)] {
            let g = alg.num_generators();
            let naive = naive_hilbert(g, alg.relations().rows(), d);
            assert_eq!(graded_dims(&alg, d), naive, "n={n}");
        }
    }
    let a4 = build_algebra(&dlie(), 4).algebra;
    assert_eq!(naive_hilbert(6, a4.relations().rows(), 3), vec![1, 6, 25, 90]);
    assert_eq!(graded_dims(&a4, 3), vec![1, 6, 25, 90]);
}

#[test]
fn w_hilbert_is_the_stairway_polynomial() {
    // H_{W^n}(t) = (1+t)(1+2t)...(1+(n-1)t)
    for n in 2..=5 {
        let mut poly = vec![1u64];
        for k in 1..n as u64 {
            let mut next = vec![0u64; poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i] += c;
                next[i + 1] += c * k;
            }
            poly = next;
        }
        poly.resize(7, 0);
        let h = hilbert_coeffs(&standard_system(n), 6).unwrap();
        assert_eq!(h, poly, "n={n}");
        let ha = graded_dims(&build_algebra(&dlie(), n).algebra, 6);
        assert!(koszul_identity_holds(&ha, &h), "n={n}");
    }
}

fn lincomb(words: &[Vec<usize>]) -> LinComb {
    words
        .iter()
        .enumerate()
        .map(|(k, w)| (w.clone(), pkit::exactq::rational::int(k as i64 + 1)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_strategy_independent_on_w4(words in prop::collection::vec(prop::collection::vec(0usize..6, 2..6), 1..4)) {
        let rs = standard_system(4);
        let lc = lincomb(&words);
        let left = rs.reduce(&lc, Strategy::Leftmost, None);
        let right = rs.reduce(&lc, Strategy::Rightmost, None);
        prop_assert_eq!(left, right);
    }
}
