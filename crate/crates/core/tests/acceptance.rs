//! Acceptance suite: one PASS/FAIL line per criterion, each with a pinned
//! runtime limit. All comparisons are exact (tolerance 0).

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use pkit::barhom::{bar_alg_complex, connected_bar_component, homology_ranks, ChainComplex, Levelization, NormalizedBar, ProtoBar};
use pkit::exactq::{row_space_equal, RationalMatrix};
use pkit::protoperad::{build_algebra, free_dim, koszul_dual_dim, Components};
use pkit::quadalg::{
    certify_pinned, check_confluence, derive_rewrite_system, graded_dims, hilbert_coeffs, quadratic_dual, AlgebraJson,
    MonomialOrder,
};
use pkit::walls::enum_walls;

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn presentation() -> Result<String, String> {
    let p = dlie();
    for (n, gens) in [(2, 1), (3, 3), (4, 6)] {
        let a = build_algebra(&p, n).algebra;
        ensure!(a.num_generators() == gens, "n={n}: {} generators", a.num_generators());
        let g = gens;
        let rows = dlie_relations_by_hand(n).iter().map(|r| relation_row(&a, r)).collect();
        let expected = RationalMatrix::from_sparse_rows(g * g, rows);
        ensure!(row_space_equal(a.relations(), &expected).unwrap(), "n={n}: relation space differs");
    }
    ensure!(build_algebra(&p, 2).algebra.relation_dim() == 0, "R(DLie,2) ≠ 0");
    let r3 = build_algebra(&p, 3).algebra.relation_dim();
    let r4 = build_algebra(&p, 4).algebra.relation_dim();
    ensure!(r3 == 2, "dim R(DLie,3) = {r3}");
    // four triples contribute two relations each, plus the commutators
    // of {1,2}|{3,4}, {1,3}|{2,4}, {1,4}|{2,3}
    ensure!(r4 == 4 * 2 + 3, "dim R(DLie,4) = {r4}");
    Ok("generators 1, 3, 6; dim R = 0, 2, 11".into())
}

fn rewriting_rules() -> Result<String, String> {
    let mut counts = Vec::new();
    for n in 3..=5 {
        let a = quadratic_dual(&build_algebra(&dlie(), n).algebra);
        let g = a.num_generators();
        let rs = derive_rewrite_system(&a, &MonomialOrder::identity(g));
        let rules = w_rules_by_hand(n);
        let lhs: BTreeSet<Vec<usize>> = rs.rules().iter().map(|r| r.lhs.clone()).collect();
        let expected_lhs: BTreeSet<Vec<usize>> =
            rules.iter().map(|((p, q), _)| vec![gen(&a, p.0, p.1), gen(&a, q.0, q.1)]).collect();
        ensure!(lhs == expected_lhs, "n={n}: leading terms differ");
        let derived: Vec<_> = rs
            .rules()
            .iter()
            .map(|r| {
                let mut row = vec![(r.lhs[0] * g + r.lhs[1], pkit::exactq::rational::int(1))];
                row.extend(r.rhs.iter().map(|(w, c)| (w[0] * g + w[1], -c.clone())));
                row
            })
            .collect();
        let by_hand: Vec<_> = rules
            .iter()
            .map(|((p, q), rhs)| {
                let mut terms = vec![(*p, *q, 1)];
                terms.extend(rhs.iter().map(|&(x, y, c)| (x, y, -c)));
                relation_row(&a, &terms)
            })
            .collect();
        let same = row_space_equal(
            &RationalMatrix::from_sparse_rows(g * g, derived),
            &RationalMatrix::from_sparse_rows(g * g, by_hand),
        )
        .unwrap();
        ensure!(same, "n={n}: rules differ from 1-6");
        counts.push(rs.rules().len());
    }
    Ok(format!("rule counts {counts:?} for n = 3, 4, 5"))
}

fn confluence() -> Result<String, String> {
    let mut crit = Vec::new();
    for n in 3..=5 {
        let a = quadratic_dual(&build_algebra(&dlie(), n).algebra);
        let rep = check_confluence(&derive_rewrite_system(&a, &MonomialOrder::identity(a.num_generators())));
        ensure!(rep.confluent && rep.failures.is_empty(), "W^{n}: {} failures", rep.failures.len());
        crit.push(rep.critical_count);
    }
    let o = Command::new(env!("CARGO_BIN_EXE_pkit"))
        .args(["check", fixture("dlie.json").to_str().unwrap(), "--max-arity", "5"])
        .output()
        .map_err(|e| e.to_string())?;
    let out = String::from_utf8_lossy(&o.stdout);
    ensure!(o.status.code() == Some(0), "check exited {:?}", o.status.code());
    ensure!(out.trim_end().ends_with("CertifiedThroughArity(5)"), "check said {out}");
    Ok(format!("critical monomials {crit:?}, all confluent; CertifiedThroughArity(5)"))
}

fn negative_control() -> Result<String, String> {
    let path = fixture("x2_minus_yx.json");
    let j: AlgebraJson = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let a = j.to_algebra().unwrap();
    let order = MonomialOrder::from_ascending(&j.pinned_order().unwrap().unwrap());
    let cert = certify_pinned(&a, &order);
    ensure!(!cert.is_certified(), "reported confluent");
    let fail = &cert.attempts[0].report.failures;
    ensure!(fail.len() == 1, "{} failures", fail.len());
    let (x, y) = (a.generator_index("x").unwrap(), a.generator_index("y").unwrap());
    ensure!(fail[0].monomial == vec![x, x, x], "failing monomial {:?}", fail[0].monomial);
    // x·x·x → y·x·x → y·y·x on the left, x·x·x → x·y·x on the right
    let forms: BTreeSet<Vec<usize>> = fail[0]
        .normal_forms
        .iter()
        .flat_map(|lc| lc.keys().cloned())
        .collect();
    ensure!(forms == BTreeSet::from([vec![y, y, x], vec![x, y, x]]), "normal forms {forms:?}");
    let o = Command::new(env!("CARGO_BIN_EXE_pkit"))
        .args(["check", path.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(o.status.code() == Some(2), "exit {:?}", o.status.code());
    Ok("x³ reaches y·y·x and x·y·x; exit 2".into())
}

fn hilbert_identity() -> Result<String, String> {
    let p = dlie();
    for n in 2..=4 {
        let a = build_algebra(&p, n).algebra;
        let w = quadratic_dual(&a);
        let hw = hilbert_coeffs(&derive_rewrite_system(&w, &MonomialOrder::identity(w.num_generators())), 6)
            .map_err(|e| e.to_string())?;
        let ha = graded_dims(&a, 6);
        for d in 0..=6 {
            let s: i64 = (0..=d).map(|j| (-1i64).pow(j as u32) * ha[d - j] as i64 * hw[j] as i64).sum();
            ensure!(s == i64::from(d == 0), "n={n} d={d}: sum {s}");
        }
        if n == 3 {
            ensure!(ha == vec![1, 3, 7, 15, 31, 63, 127], "h_A = {ha:?}");
            ensure!(hw == vec![1, 3, 2, 0, 0, 0, 0], "h_W = {hw:?}");
        }
    }
    Ok("Σ(−1)^j h_A(i) h_W(j) = [d=0] for d ≤ 6, n = 2, 3, 4".into())
}

fn dual_dims() -> Result<String, String> {
    let p = dlie();
    let mut top = Vec::new();
    for n in 2..=4 {
        for rho in 1..=4 {
            let k = koszul_dual_dim(&p, n, rho);
            let expected = if rho == n - 1 { factorial(n - 1) } else { 0 };
            ensure!(k == expected, "n={n} rho={rho}: {k}");
            if rho == n - 1 {
                top.push(k);
            }
        }
    }
    Ok(format!("top dimensions {top:?}, zero elsewhere"))
}

fn squares_to_zero(c: &ChainComplex) -> bool {
    (2..=c.top_degree()).all(|p| c.boundary(p - 1).mul(c.boundary(p)).unwrap().is_zero())
}

fn d_squared() -> Result<String, String> {
    let p = dlie();
    let comps = Components::new(&p);
    let mut count = 0;
    for n in 2..=4 {
        let fam = build_algebra(&p, n);
        for rho in 1..=4 {
            for (what, c) in [
                ("algebra bar", bar_alg_complex(&fam.algebra, rho)),
                ("connected bar", connected_bar_component(&fam, rho)),
                ("normalized bar", NormalizedBar::new(&comps, n, rho).complex()),
                ("protoperad bar", ProtoBar::new(&comps, n, rho).complex()),
            ] {
                ensure!(squares_to_zero(&c), "{what} n={n} rho={rho}");
                count += 1;
            }
        }
    }
    Ok(format!("{count} complexes"))
}

fn concentration() -> Result<String, String> {
    let p = dlie();
    for n in 2..=4 {
        let fam = build_algebra(&p, n);
        for rho in 1..=4 {
            let h = homology_ranks(&connected_bar_component(&fam, rho)).map_err(|e| e.to_string())?;
            ensure!(h.support().iter().all(|&d| d == rho), "n={n} rho={rho}: support {:?}", h.support());
            let k = koszul_dual_dim(&p, n, rho);
            ensure!(h.dim(rho) == k, "n={n} rho={rho}: H = {} vs {k}", h.dim(rho));
        }
    }
    Ok("homology only in degree ρ, equal to the Koszul-dual dimension".into())
}

fn levelization() -> Result<String, String> {
    let p = dlie();
    let comps = Components::new(&p);
    for n in 2..=3 {
        for rho in 1..=3 {
            let lev = Levelization::new(&comps, n, rho);
            let bar = lev.bar.complex();
            let nb = lev.normalized.complex();
            let hb = homology_ranks(&bar).map_err(|e| e.to_string())?;
            let hn = homology_ranks(&nb).map_err(|e| e.to_string())?;
            for r in 0..=rho {
                let e = lev.matrix(n, r);
                ensure!(e.rank() == bar.dim(r), "n={n} rho={rho} r={r}: not injective");
                if r >= 1 {
                    let lhs = lev.matrix(n, r - 1).mul(bar.boundary(r)).unwrap();
                    let rhs = nb.boundary(r).mul(&e).unwrap();
                    ensure!(lhs == rhs, "n={n} rho={rho} r={r}: not a chain map");
                }
                ensure!(hb.dim(r) == hn.dim(r), "n={n} rho={rho} r={r}: homology dims differ");
                ensure!(
                    image_in_homology(&lev, n, r, rho) == hn.dim(r),
                    "n={n} rho={rho} r={r}: not onto homology"
                );
            }
        }
    }
    Ok("injective chain map, iso on homology for n, ρ ≤ 3".into())
}

fn wall_oracle() -> Result<String, String> {
    let p = dlie();
    let mut total = 0;
    for n in 1..=4 {
        for rho in 1..=3 {
            let fast = enum_walls(n, rho, &[2]).len();
            let slow = brute_force_walls(n, rho, &[2]).len();
            ensure!(fast == slow, "n={n} rho={rho}: {fast} vs {slow}");
            ensure!(free_dim(p.generators(), n, rho) == slow as u64, "free_dim n={n} rho={rho}");
            total += fast;
        }
    }
    Ok(format!("{total} walls agree"))
}

fn main() {
    let criteria: [(usize, &str, Duration, Check); 10] = [
        (1, "presentation of A(DLie,n)", Duration::from_secs(1), presentation),
        (2, "rewriting rules of W^n", Duration::from_secs(5), rewriting_rules),
        (3, "confluence and certification", Duration::from_secs(120), confluence),
        (4, "negative control", Duration::from_secs(5), negative_control),
        (5, "Hilbert identity", Duration::from_secs(30), hilbert_identity),
        (6, "Koszul-dual dimensions", Duration::from_secs(60), dual_dims),
        (7, "d² = 0", Duration::from_secs(120), d_squared),
        (8, "homology concentration", Duration::from_secs(120), concentration),
        (9, "levelization", Duration::from_secs(60), levelization),
        (10, "wall oracle", Duration::from_secs(30), wall_oracle),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, name, limit, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str()) || k.to_string() == *f) {
            continue;
        }
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let res = match res {
            Ok(msg) if took > limit => Err(format!("{msg}; exceeded {limit:?}")),
            other => other,
        };
        match res {
            Ok(msg) => println!("criterion {k:>2} PASS  {name} [{took:.2?} ≤ {limit:?}]: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k:>2} FAIL  {name} [{took:.2?}]: {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
