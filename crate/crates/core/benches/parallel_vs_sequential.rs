use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pkit::barhom::{connected_bar_component, homology_ranks, NormalizedBar};
use pkit::par;
use pkit::protoperad::{build_algebra, check_koszul, BinaryQuadraticProtoperad, CheckConfig, Components, ProtoperadJson};
use pkit::quadalg::{check_confluence, derive_rewrite_system, quadratic_dual, MonomialOrder};

fn dlie() -> BinaryQuadraticProtoperad {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/dlie.json");
    let j: ProtoperadJson = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    j.to_protoperad().unwrap()
}

const MODES: [(&str, bool); 2] = [("parallel", false), ("sequential", true)];

fn confluence(c: &mut Criterion) {
    let w = quadratic_dual(&build_algebra(&dlie(), 5).algebra);
    let rs = derive_rewrite_system(&w, &MonomialOrder::identity(w.num_generators()));
    let mut g = c.benchmark_group("confluence_w5");
    for (name, seq) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            par::set_sequential(seq);
            b.iter(|| check_confluence(&rs))
        });
    }
    g.finish();
}

fn bar_homology(c: &mut Criterion) {
    let p = dlie();
    let fam = build_algebra(&p, 4);
    let mut g = c.benchmark_group("bar_homology_n4_w4");
    g.sample_size(10);
    for (name, seq) in MODES {
        g.bench_function(BenchmarkId::new("connected", name), |b| {
            par::set_sequential(seq);
            b.iter(|| homology_ranks(&connected_bar_component(&fam, 4)).unwrap())
        });
        g.bench_function(BenchmarkId::new("normalized", name), |b| {
            par::set_sequential(seq);
            b.iter(|| {
                let comps = Components::new(&p);
                homology_ranks(&NormalizedBar::new(&comps, 4, 4).complex()).unwrap()
            })
        });
    }
    g.finish();
}

fn full_check(c: &mut Criterion) {
    let p = dlie();
    let cfg = CheckConfig::default();
    let mut g = c.benchmark_group("check_dlie_through_5");
    g.sample_size(10);
    for (name, seq) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            par::set_sequential(seq);
            b.iter(|| check_koszul(&p, &cfg))
        });
    }
    g.finish();
    par::set_sequential(false);
}

criterion_group!(benches, confluence, bar_homology, full_check);
criterion_main!(benches);
