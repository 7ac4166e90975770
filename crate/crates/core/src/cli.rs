//! Command-line front end. `run` returns the process exit code:
//! 0 success / certified, 2 inconclusive, 1 input or usage error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::barhom::{connected_bar_component, homology_ranks, NormalizedBar};
use crate::exactq::row_space_equal;
use crate::protoperad::{
    build_algebra, check_koszul, dual_presentation, BinaryQuadraticProtoperad, CheckConfig, Components,
    KoszulVerdict, ProtoperadJson,
};
use crate::quadalg::{
    candidate_orders, certify_koszul, certify_pinned, quadratic_dual, try_graded_dims, AlgebraJson, Certificate,
    MonomialOrder, QuadraticAlgebra,
};
use crate::walls::enum_walls;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "pkit", version, about = "Koszulness certificates for binary quadratic protoperads")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify A(P, n) for n = 2..=max-arity (or a single algebra presentation).
    Check {
        input: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_arity: usize,
        #[arg(long, default_value_t = 3)]
        bar_arity: usize,
        #[arg(long, default_value_t = 6)]
        hilbert_degree: usize,
        /// Number of random generator orders tried after the default and its reverse.
        #[arg(long, default_value_t = 8)]
        orders: usize,
    },
    /// Quadratic dual of a presentation; with --algebra, of A(P, n) instead.
    Dual {
        input: PathBuf,
        #[arg(long, value_name = "N")]
        algebra: Option<usize>,
    },
    /// List connected walls.
    Walls {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bricks: usize,
        /// Allowed brick sizes.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        sizes: Vec<usize>,
    },
    /// Homology of the connected bar summand of A(P, n) and of the normalized bar.
    Bar {
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weight: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    Input { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: std::io::Error },
}

/// Parsed input file.
pub enum Input {
    Protoperad(BinaryQuadraticProtoperad),
    Algebra(QuadraticAlgebra, Option<Vec<usize>>),
}

fn input_err(path: &Path, msg: impl Into<String>) -> CliError {
    CliError::Input {
        path: path.display().to_string(),
        msg: msg.into(),
    }
}

fn parse_strict<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        if field == "." || field.is_empty() {
            input_err(path, inner.to_string())
        } else {
            input_err(path, format!("{field}: {inner}"))
        }
    })
}

/// Reads a protoperad (`relations2`/`relations3`) or algebra (`relations`)
/// presentation, rejecting unknown fields.
pub fn read_input(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| input_err(path, e.to_string()))?;
    let probe: Value = serde_json::from_str(&text).map_err(|e| input_err(path, e.to_string()))?;
    let is_algebra = probe.get("relations").is_some()
        || probe
            .get("generators")
            .and_then(Value::as_array)
            .is_some_and(|g| g.iter().all(Value::is_string) && !g.is_empty());
    if is_algebra {
        let j: AlgebraJson = parse_strict(path, &text)?;
        let a = j.to_algebra().map_err(|e| input_err(path, e.to_string()))?;
        let order = j.pinned_order().map_err(|e| input_err(path, e.to_string()))?;
        Ok(Input::Algebra(a, order))
    } else {
        let j: ProtoperadJson = parse_strict(path, &text)?;
        let p = j.to_protoperad().map_err(|e| input_err(path, e.to_string()))?;
        Ok(Input::Protoperad(p))
    }
}

fn read_protoperad(path: &Path) -> Result<BinaryQuadraticProtoperad, CliError> {
    match read_input(path)? {
        Input::Protoperad(p) => Ok(p),
        Input::Algebra(..) => Err(input_err(path, "expected a protoperad presentation")),
    }
}

struct Report {
    json: Value,
    text: String,
    code: i32,
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema": crate::SCHEMA, "command": command });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    v
}

fn certificate_text(out: &mut String, c: &Certificate) {
    use std::fmt::Write as _;
    match c.witness() {
        Some(w) => {
            let side = if w.on_dual { "quadratic dual" } else { "algebra" };
            let order = w.system.names(&w.system.order().ascending()).join(" < ");
            let _ = writeln!(out, "  PBW certificate on the {side}, order {order}");
            let _ = writeln!(out, "  {} rules, {} critical monomials, all confluent", w.system.rules().len(), w.report.critical_count);
            for r in w.system.rules() {
                let _ = writeln!(out, "    {} -> {}", w.system.format_word(&r.lhs), w.system.format_lincomb(&r.rhs));
            }
        }
        None => {
            let _ = writeln!(out, "  no confluent order among {} attempts", c.attempts.len());
            if let Some(b) = c.best_failure() {
                let order = b.system.names(&b.system.order().ascending()).join(" < ");
                let _ = writeln!(
                    out,
                    "  fewest failures: {} of {} critical monomials, order {order}",
                    b.report.failures.len(),
                    b.report.critical_count
                );
                for f in &b.report.failures {
                    let show = |t: &[crate::quadalg::LinComb]| {
                        let mut s = vec![b.system.format_word(&f.monomial)];
                        s.extend(t.iter().map(|lc| b.system.format_lincomb(lc)));
                        s.join(" ~> ")
                    };
                    let _ = writeln!(out, "    {}", b.system.format_word(&f.monomial));
                    let _ = writeln!(out, "      left : {}", show(&f.left_trace));
                    let _ = writeln!(out, "      right: {}", show(&f.right_trace));
                }
            }
        }
    }
}

fn verdict_text(v: &KoszulVerdict) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    for r in &v.arities {
        let _ = writeln!(
            out,
            "arity {}: {} generators, {} relations",
            r.n, r.generator_count, r.relation_dim
        );
        certificate_text(&mut out, &r.certificate);
        match &r.hilbert {
            Some(h) => {
                let _ = writeln!(out, "  Hilbert A: {:?}", h.algebra);
                let _ = writeln!(out, "  Hilbert A!: {:?}", h.dual);
                let _ = writeln!(out, "  H_A(t)·H_A!(-t) = 1: {}", h.identity_holds);
            }
            None => {
                let _ = writeln!(out, "  Hilbert check skipped (dimensions too large to span)");
            }
        }
        for b in &r.bar_checks {
            let dims: Vec<String> = b.homology.entries.iter().map(|e| format!("{}:{}", e.degree, e.dim)).collect();
            let _ = writeln!(
                out,
                "  bar weight {}: homology {} concentrated={} koszul dual dim {}",
                b.weight,
                dims.join(" "),
                b.concentrated,
                b.koszul_dual_dim
            );
        }
    }
    let _ = writeln!(out, "{}", v.status);
    out
}

fn cmd_check(path: &Path, cfg: CheckConfig) -> Result<Report, CliError> {
    if cfg.max_arity < 2 {
        return Err(CliError::Usage("--max-arity must be at least 2".into()));
    }
    if cfg.bar_arity < 2 || cfg.bar_arity > cfg.max_arity {
        return Err(CliError::Usage("--bar-arity must lie in 2..=max-arity".into()));
    }
    if cfg.hilbert_degree < 2 {
        return Err(CliError::Usage("--hilbert-degree must be at least 2".into()));
    }
    match read_input(path)? {
        Input::Protoperad(p) => {
            let v = check_koszul(&p, &cfg);
            let code = if v.is_certified() { EXIT_OK } else { EXIT_INCONCLUSIVE };
            Ok(Report {
                json: envelope("check", v.to_json()),
                text: verdict_text(&v),
                code,
            })
        }
        Input::Algebra(a, pinned) => {
            let cert = match &pinned {
                Some(asc) => certify_pinned(&a, &MonomialOrder::from_ascending(asc)),
                None => certify_koszul(&a, &candidate_orders(a.num_generators(), cfg.order_budget)),
            };
            let d = cfg.hilbert_degree;
            let h = try_graded_dims(&a, d, 50_000);
            let hd = try_graded_dims(&quadratic_dual(&a), d, 50_000);
            let status = if cert.is_certified() { "PBWKoszul" } else { "Inconclusive" };
            let mut text = String::from("algebra\n");
            certificate_text(&mut text, &cert);
            text.push_str(status);
            text.push('\n');
            let json = envelope(
                "check",
                json!({
                    "status": status,
                    "pinned_order": pinned.is_some(),
                    "certificate": cert.to_json(),
                    "hilbert": {"algebra": h, "dual": hd},
                }),
            );
            let code = if cert.is_certified() { EXIT_OK } else { EXIT_INCONCLUSIVE };
            Ok(Report { json, text, code })
        }
    }
}

fn cmd_dual(path: &Path, algebra: Option<usize>) -> Result<Report, CliError> {
    match (read_input(path)?, algebra) {
        (Input::Protoperad(p), None) => {
            let d = dual_presentation(&p);
            let back = dual_presentation(&d);
            let involution = [2, 3]
                .iter()
                .all(|&a| row_space_equal(back.relations(a), p.relations(a)).unwrap_or(false));
            let pres = serde_json::to_value(d.to_json()).expect("serializable");
            let text = format!(
                "dual generators: {}\narity 2 relations ({}):\n{}arity 3 relations ({}):\n{}involution check: {involution}\n",
                d.generators().iter().map(|g| g.name.as_str()).collect::<Vec<_>>().join(", "),
                d.relations(2).nrows(),
                lines(&d.display_relations(2)),
                d.relations(3).nrows(),
                lines(&d.display_relations(3)),
            );
            eprintln!("dual: involution check {}", if involution { "passed" } else { "FAILED" });
            Ok(Report {
                json: pres,
                text,
                code: if involution { EXIT_OK } else { EXIT_INCONCLUSIVE },
            })
        }
        (Input::Protoperad(p), Some(n)) => {
            if n < 2 {
                return Err(CliError::Usage("--algebra needs n ≥ 2".into()));
            }
            let a = build_algebra(&p, n).algebra;
            Ok(algebra_dual_report(&a))
        }
        (Input::Algebra(a, _), None) => Ok(algebra_dual_report(&a)),
        (Input::Algebra(..), Some(_)) => Err(CliError::Usage("--algebra expects a protoperad presentation".into())),
    }
}

fn lines(v: &[String]) -> String {
    v.iter().map(|l| format!("  {l}\n")).collect()
}

fn algebra_dual_report(a: &QuadraticAlgebra) -> Report {
    let d = quadratic_dual(a);
    let text = format!(
        "dual generators: {}\nrelations ({}):\n{}",
        d.generators().join(", "),
        d.relation_dim(),
        lines(&d.display_relations())
    );
    Report {
        json: serde_json::to_value(d.to_json()).expect("serializable"),
        text,
        code: EXIT_OK,
    }
}

fn cmd_walls(n: usize, bricks: usize, sizes: &[usize]) -> Result<Report, CliError> {
    if !(1..=crate::walls::MAX_N).contains(&n) {
        return Err(CliError::Usage(format!("--n must lie in 1..={}", crate::walls::MAX_N)));
    }
    let walls = enum_walls(n, bricks, sizes);
    let list: Vec<Value> = walls
        .iter()
        .map(|w| serde_json::to_value(w.to_json()).expect("serializable"))
        .collect();
    let mut text = format!("{} connected walls\n", walls.len());
    for w in &walls {
        text.push_str(&format!("  {w}\n"));
    }
    Ok(Report {
        json: envelope("walls", json!({"n": n, "bricks": bricks, "sizes": sizes, "count": walls.len(), "walls": list})),
        text,
        code: EXIT_OK,
    })
}

fn cmd_bar(path: &Path, n: usize, weight: usize) -> Result<Report, CliError> {
    if n < 2 || weight < 1 {
        return Err(CliError::Usage("bar needs --n ≥ 2 and --weight ≥ 1".into()));
    }
    if n > 5 || weight > 5 {
        return Err(CliError::Usage("bar is limited to --n ≤ 5 and --weight ≤ 5".into()));
    }
    let p = read_protoperad(path)?;
    let fam = build_algebra(&p, n);
    let conn = connected_bar_component(&fam, weight);
    let comps = Components::new(&p);
    let norm = NormalizedBar::new(&comps, n, weight).complex();
    let hc = homology_ranks(&conn).map_err(|e| CliError::Usage(e.to_string()))?;
    let hn = homology_ranks(&norm).map_err(|e| CliError::Usage(e.to_string()))?;
    let agree = hc == hn && conn.dims() == norm.dims();
    let table = |h: &crate::barhom::HomologyReport| {
        h.entries
            .iter()
            .map(|e| json!({"n": n, "weight": weight, "degree": e.degree, "chain_dim": e.chain_dim, "dim": e.dim}))
            .collect::<Vec<_>>()
    };
    let mut text = format!("n = {n}, weight = {weight}\ndegree  chains  H(connected bar)  chains  H(normalized bar)\n");
    for (a, b) in hc.entries.iter().zip(&hn.entries) {
        text.push_str(&format!(
            "{:>6}  {:>6}  {:>16}  {:>6}  {:>17}\n",
            a.degree, a.chain_dim, a.dim, b.chain_dim, b.dim
        ));
    }
    text.push_str(&format!("agreement: {agree}\n"));
    Ok(Report {
        json: envelope(
            "bar",
            json!({"n": n, "weight": weight, "connected_bar": table(&hc), "normalized_bar": table(&hn), "agreement": agree}),
        ),
        text,
        code: if agree { EXIT_OK } else { EXIT_INCONCLUSIVE },
    })
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let body = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => report.text.clone(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Output {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).map_err(|source| CliError::Output {
                path: "stdout".into(),
                source,
            })
        }
    }
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Check {
            input,
            max_arity,
            bar_arity,
            hilbert_degree,
            orders,
        } => cmd_check(
            input,
            CheckConfig {
                max_arity: *max_arity,
                bar_arity: *bar_arity,
                hilbert_degree: *hilbert_degree,
                order_budget: *orders,
            },
        ),
        Command::Dual { input, algebra } => cmd_dual(input, *algebra),
        Command::Walls { n, bricks, sizes } => cmd_walls(*n, *bricks, sizes),
        Command::Bar { input, n, weight } => cmd_bar(input, *n, *weight),
    };
    match result.and_then(|r| emit(&cli, &r).map(|_| r.code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
