use serde::Serialize;
use serde_json::{json, Value};

use crate::barhom::{connected_bar_component_with, homology_ranks, HomologyReport, ProtoBar};
use crate::quadalg::{
    candidate_orders, certify_koszul, hilbert_coeffs, koszul_identity_holds, quadratic_dual, try_graded_dims,
    Certificate, NormalBasis,
};

use super::{build_algebra, BinaryQuadraticProtoperad, Components};

/// Largest number of degree-`D` words spanned explicitly when no confluent
/// order gives the Hilbert series directly.
const IDEAL_SPAN_LIMIT: usize = 50_000;

/// Dimension of the weight-`rho` part of the Koszul dual coprotoperad on
/// `1..=n`: kernel of the bar differential out of walls with `rho`
/// weight-one bricks.
pub fn koszul_dual_dim(p: &BinaryQuadraticProtoperad, n: usize, rho: usize) -> usize {
    let comps = Components::new(p);
    let bar = ProtoBar::new(&comps, n, rho);
    let d = bar.differential(rho);
    bar.dim(rho) - d.rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub max_arity: usize,
    pub bar_arity: usize,
    pub hilbert_degree: usize,
    pub order_budget: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            max_arity: 5,
            bar_arity: 3,
            hilbert_degree: 6,
            order_budget: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    CertifiedThroughArity(usize),
    InconclusiveAtArity(usize),
}

impl std::fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerdictStatus::CertifiedThroughArity(n) => write!(f, "CertifiedThroughArity({n})"),
            VerdictStatus::InconclusiveAtArity(n) => write!(f, "InconclusiveAtArity({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertCheck {
    pub algebra: Vec<u64>,
    pub dual: Vec<u64>,
    pub identity_holds: bool,
}

/// Bar cross-check in one weight: homology of the connected summand of the
/// bar complex of `A(P, n)` against the kernel of the protoperadic bar
/// differential.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarCheck {
    pub weight: usize,
    pub homology: HomologyReport,
    pub koszul_dual_dim: usize,
    pub concentrated: bool,
    pub top_matches: bool,
}

#[derive(Clone, Debug)]
pub struct ArityReport {
    pub n: usize,
    pub generator_count: usize,
    pub relation_dim: usize,
    pub certificate: Certificate,
    pub hilbert: Option<HilbertCheck>,
    pub bar_checks: Vec<BarCheck>,
}

impl ArityReport {
    pub fn passed(&self) -> bool {
        self.certificate.is_certified()
            && self.hilbert.as_ref().is_none_or(|h| h.identity_holds)
            && self.bar_checks.iter().all(|b| b.concentrated && b.top_matches)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "generator_count": self.generator_count,
            "relation_dim": self.relation_dim,
            "certificate": self.certificate.to_json(),
            "hilbert": self.hilbert,
            "bar_checks": self.bar_checks,
            "passed": self.passed(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct KoszulVerdict {
    pub status: VerdictStatus,
    pub config: CheckConfig,
    pub arities: Vec<ArityReport>,
}

impl KoszulVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self.status, VerdictStatus::CertifiedThroughArity(_))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.to_string(),
            "max_arity": self.config.max_arity,
            "bar_arity": self.config.bar_arity,
            "hilbert_degree": self.config.hilbert_degree,
            "order_budget": self.config.order_budget,
            "dual_symmetry_convention": "invariant pairing: dual generators keep their symmetry",
            "arities": self.arities.iter().map(ArityReport::to_json).collect::<Vec<_>>(),
        })
    }
}

fn check_arity(p: &BinaryQuadraticProtoperad, n: usize, cfg: &CheckConfig) -> ArityReport {
    let fam = build_algebra(p, n);
    let a = &fam.algebra;
    let orders = candidate_orders(a.num_generators(), cfg.order_budget);
    let certificate = certify_koszul(a, &orders);
    let dual = quadratic_dual(a);
    let d = cfg.hilbert_degree;
    let direct = certificate
        .witness()
        .filter(|w| !w.on_dual)
        .and_then(|w| hilbert_coeffs(&w.system, d).ok());
    let h_a = direct.or_else(|| try_graded_dims(a, d, IDEAL_SPAN_LIMIT));
    let h_d = try_graded_dims(&dual, d, IDEAL_SPAN_LIMIT);
    let hilbert = match (h_a, h_d) {
        (Some(algebra), Some(dual)) => {
            let identity_holds = koszul_identity_holds(&algebra, &dual);
            Some(HilbertCheck {
                algebra,
                dual,
                identity_holds,
            })
        }
        _ => None,
    };
    let mut bar_checks = Vec::new();
    if n <= cfg.bar_arity {
        let comps = Components::new(p);
        let nb = NormalBasis::new(a, n);
        for rho in 1..=n {
            let c = connected_bar_component_with(&fam, &nb, rho);
            let homology = homology_ranks(&c).expect("bar differential squares to zero");
            let bar = ProtoBar::new(&comps, n, rho);
            let kdim = bar.dim(rho) - bar.differential(rho).rank();
            bar_checks.push(BarCheck {
                weight: rho,
                concentrated: homology.concentrated_in(rho),
                top_matches: homology.dim(rho) == kdim,
                koszul_dual_dim: kdim,
                homology,
            });
        }
    }
    ArityReport {
        n,
        generator_count: a.num_generators(),
        relation_dim: a.relation_dim(),
        certificate,
        hilbert,
        bar_checks,
    }
}

/// Certifies `A(P, n)` for `n = 2..=max_arity` and cross-checks bar homology
/// for `n ≤ bar_arity`. A positive verdict only covers the arities checked.
pub fn check_koszul(p: &BinaryQuadraticProtoperad, cfg: &CheckConfig) -> KoszulVerdict {
    assert!(cfg.max_arity >= 2, "max arity must be at least 2");
    let arities: Vec<usize> = (2..=cfg.max_arity).collect();
    let arities = crate::par::map(&arities, |&n| check_arity(p, n, cfg));
    let status = match arities.iter().find(|r| !r.passed()) {
        Some(r) => VerdictStatus::InconclusiveAtArity(r.n),
        None => VerdictStatus::CertifiedThroughArity(cfg.max_arity),
    };
    KoszulVerdict {
        status,
        config: *cfg,
        arities,
    }
}
