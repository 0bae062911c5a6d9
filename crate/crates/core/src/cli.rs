//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::classifier::{
    classify_cycle_twists, find_twists_with, table1_report, theorem_report, SearchConfig,
    TwistFamilies,
};
use crate::error::{Error, Result};
use crate::finite_graphs::{
    apply_twist_metric, check_antipodal_law, complete_multipartite, crown_graph, cycle_graph,
    find_isometry, icosahedron, is_metrically_homogeneous, rook_graph, FiniteMetricGraph,
};
use crate::parameter_space::{table1_rows, ParameterTuple, TupleRecord, K1};
use crate::permutations::{GenericKind, Twist};
use crate::twistability::{check_twistable, Catalog, TwistVerdict};

/// Environment variable that overrides `--jobs`.
pub const JOBS_ENV: &str = "MHG_TWIST_JOBS";

#[derive(Debug, Parser)]
#[command(
    name = "mhg-twist",
    version,
    about = "Twists of metrically homogeneous graphs"
)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print rho, rho_inv, tau0 and tau1 in cycle notation.
    Twists {
        #[arg(long)]
        delta: u32,
    },
    /// Decide twistability of one parameter tuple; prints JSON.
    Check {
        #[arg(long)]
        delta: u32,
        /// Integer or "inf".
        #[arg(long)]
        k1: K1,
        #[arg(long)]
        k2: u32,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        cprime: u32,
        /// rho | rho-inv | tau0 | tau1 | mu:N:K | transposition:A:B | cycle notation
        #[arg(long)]
        sigma: String,
    },
    /// Exhaustive twist search over a range of diameters.
    Classify {
        #[arg(long)]
        delta_min: u32,
        #[arg(long)]
        delta_max: u32,
        /// Write per-tuple verdicts as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also compare the families with the table of twistable tuples.
        #[arg(long)]
        verify_table1: bool,
    },
    /// Twists of the n-cycle.
    Cycle {
        #[arg(long)]
        n: u32,
    },
    /// Apply a twist to an explicit finite graph.
    Finite {
        /// cycle:N | crown:N | icosahedron | rook:M | multipartite:A,B,.. | file:PATH
        #[arg(long)]
        graph: String,
        #[arg(long)]
        sigma: String,
    },
    /// Print the expected twistable tuples for one diameter as CSV.
    Table1 {
        #[arg(long)]
        delta: u32,
    },
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let jobs = match std::env::var(JOBS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(j) if j > 0 => Some(j),
            _ => {
                let _ = writeln!(err, "error: {JOBS_ENV}={v:?} is not a positive integer");
                return 2;
            }
        },
        Err(_) => cli.jobs,
    };
    match dispatch(cli.command, jobs, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cmd: Command, jobs: Option<usize>, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Twists { delta } => {
            for kind in GenericKind::ALL {
                writeln!(out, "{} = {}", kind.name(), kind.twist(delta)?)?;
            }
            Ok(0)
        }
        Command::Check {
            delta,
            k1,
            k2,
            c,
            cprime,
            sigma,
        } => {
            let p = ParameterTuple::from_c_pair(delta, k1, k2, c, cprime)?;
            let t = parse_sigma(delta, &sigma)?;
            let v = check_twistable(&p, &t)?;
            writeln!(out, "{}", serde_json::to_string(&v.to_record())?)?;
            Ok(0)
        }
        Command::Classify {
            delta_min,
            delta_max,
            out: csv_path,
            verify_table1,
        } => classify(delta_min, delta_max, csv_path, verify_table1, jobs, out),
        Command::Cycle { n } => {
            let twists = classify_cycle_twists(n)?;
            let mut ok = true;
            for c in &twists {
                ok &= c.verified;
                let status = if c.verified { "verified" } else { "FAILED" };
                writeln!(out, "mu{}\t{}\t{}", c.k, c.twist, status)?;
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Finite { graph, sigma } => {
            let g = parse_graph(&graph)?;
            let t = parse_sigma(g.diameter(), &sigma)?;
            let tm = apply_twist_metric(&g, &t)?;
            let twisted = tm.graph();
            let homogeneous = match &twisted {
                Some(h) => Some(is_metrically_homogeneous(h)?.is_homogeneous()),
                None => None,
            };
            let isometric = twisted
                .as_ref()
                .map(|h| find_isometry(h.metric(), g.metric()).is_some());
            let report = json!({
                "graph": {
                    "n": g.len(),
                    "edges": g.edge_count(),
                    "diameter": g.diameter(),
                    "bipartite": g.is_bipartite(),
                    "antipodal_law": check_antipodal_law(&g),
                },
                "sigma": t.to_string(),
                "report": tm.report,
                "valid": tm.report.is_valid(),
                "twisted_homogeneous": homogeneous,
                "isometric_to_original": isometric,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(0)
        }
        Command::Table1 { delta } => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "kind",
                "delta",
                "K1",
                "K2",
                "C",
                "Cprime",
                "bipartite",
                "exceptional",
            ])?;
            for r in table1_rows(delta)? {
                let p = r.params;
                w.write_record([
                    r.kind.name().to_owned(),
                    delta.to_string(),
                    p.k1().to_string(),
                    p.k2().to_string(),
                    p.c().to_string(),
                    p.c_prime().to_string(),
                    r.bipartite.to_string(),
                    r.exceptional.to_string(),
                ])?;
            }
            w.flush()?;
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct CsvRow {
    sigma: String,
    delta: u32,
    #[serde(rename = "K1")]
    k1: K1,
    #[serde(rename = "K2")]
    k2: u32,
    #[serde(rename = "C")]
    c: u32,
    #[serde(rename = "Cprime")]
    c_prime: u32,
    verdict: &'static str,
    witness: String,
}

fn classify(
    delta_min: u32,
    delta_max: u32,
    csv_path: Option<PathBuf>,
    verify_table1: bool,
    jobs: Option<usize>,
    out: &mut dyn Write,
) -> Result<i32> {
    if delta_min > delta_max {
        return Err(Error::InvalidArgument(format!(
            "--delta-min {delta_min} exceeds --delta-max {delta_max}"
        )));
    }
    let cfg = SearchConfig {
        jobs,
        ..Default::default()
    };
    let mut pass = true;
    let mut per_delta = Vec::new();
    let mut rows = Vec::new();
    for delta in delta_min..=delta_max {
        let families = find_twists_with(delta, &cfg)?;
        let theorem = theorem_report(delta, &families)?;
        pass &= theorem.pass;
        let mut entry = json!({
            "delta": delta,
            "theorem": {
                "pass": theorem.pass,
                "twists": theorem.found.iter().map(|(t, names)| json!({
                    "sigma": t.to_string(),
                    "names": names.iter().map(|k| k.name()).collect::<Vec<_>>(),
                    "family_size": families[t].len(),
                })).collect::<Vec<_>>(),
                "coincidences": theorem.coincidences.iter().map(|(t, names)| json!({
                    "sigma": t.to_string(),
                    "names": names.iter().map(|k| k.name()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "extra": theorem.extra.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "missing": theorem.missing.iter().map(ToString::to_string).collect::<Vec<_>>(),
            },
        });
        if verify_table1 {
            let t1 = table1_report(delta, &families)?;
            pass &= t1.pass;
            entry["table1"] = json!({
                "pass": t1.pass,
                "rows": t1.rows.iter().map(|r| json!({
                    "kind": r.row.kind.name(),
                    "params": TupleRecord::from(r.row.params),
                    "bipartite": r.row.bipartite,
                    "exceptional": r.row.exceptional,
                    "status": if r.found { "PASS" } else { "FAIL" },
                })).collect::<Vec<_>>(),
                "unlisted": t1.unlisted.iter().map(|(k, p)| json!({
                    "kind": k.name(),
                    "params": TupleRecord::from(*p),
                })).collect::<Vec<_>>(),
            });
        }
        per_delta.push(entry);
        if csv_path.is_some() {
            rows.extend(verdict_rows(delta, &families)?);
        }
    }
    if let Some(path) = csv_path {
        let mut w = csv::Writer::from_path(path)?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
    }
    let summary = json!({ "pass": pass, "deltas": per_delta });
    writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?;
    Ok(if pass { 0 } else { 1 })
}

/// One row per (generic twist, candidate tuple), followed by the family
/// members of any other twist found.
fn verdict_rows(delta: u32, families: &TwistFamilies) -> Result<Vec<CsvRow>> {
    let catalog = Catalog::new(delta)?;
    let named = crate::classifier::named_generic_twists(delta)?;
    let mut rows = Vec::new();
    let row = |t: &Twist, p: &ParameterTuple, v: &TwistVerdict| CsvRow {
        sigma: t.to_string(),
        delta,
        k1: p.k1(),
        k2: p.k2(),
        c: p.c(),
        c_prime: p.c_prime(),
        verdict: v.outcome(),
        witness: match v {
            TwistVerdict::Twistable { image } => format!(
                "image=({},{},{},{})",
                image.k1(),
                image.k2(),
                image.c(),
                image.c_prime()
            ),
            other => other.witness_text(),
        },
    };
    for t in named.keys() {
        for (n, p) in catalog.tuples().iter().enumerate() {
            rows.push(row(t, p, &catalog.check_index(n, t)));
        }
    }
    for (t, fam) in families.iter().filter(|(t, _)| !named.contains_key(*t)) {
        for m in fam {
            rows.push(row(
                t,
                &m.params,
                &TwistVerdict::Twistable { image: m.image },
            ));
        }
    }
    Ok(rows)
}

/// Parses a twist description for diameter `delta`.
pub fn parse_sigma(delta: u32, s: &str) -> Result<Twist> {
    let s = s.trim();
    if let Ok(kind) = s.parse::<GenericKind>() {
        return kind.twist(delta);
    }
    let nums = |rest: &str| -> Result<Vec<u32>> {
        rest.split(':')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad number {x:?} in {s:?}")))
            })
            .collect()
    };
    if let Some(rest) = s.strip_prefix("mu:") {
        let v = nums(rest)?;
        let [n, k] = v[..] else {
            return Err(Error::Parse(format!("expected mu:N:K, got {s:?}")));
        };
        let t = Twist::mu(n, k)?;
        if t.delta() != delta {
            return Err(Error::DimensionMismatch {
                left: delta,
                right: t.delta(),
            });
        }
        return Ok(t);
    }
    if let Some(rest) = s.strip_prefix("transposition:") {
        let v = nums(rest)?;
        let [a, b] = v[..] else {
            return Err(Error::Parse(format!(
                "expected transposition:A:B, got {s:?}"
            )));
        };
        return Twist::transposition(delta, a, b);
    }
    if s.starts_with('(') {
        return Twist::from_cycles(delta, s);
    }
    Err(Error::Parse(format!(
        "unknown twist {s:?}; expected rho, rho-inv, tau0, tau1, mu:N:K, transposition:A:B or cycle notation"
    )))
}

/// Parses a graph description such as `cycle:7` or `file:g.txt`.
pub fn parse_graph(s: &str) -> Result<FiniteMetricGraph> {
    let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
    let size = || -> Result<usize> {
        arg.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad size in graph spec {s:?}")))
    };
    match kind {
        "icosahedron" if arg.is_empty() => Ok(icosahedron()),
        "cycle" => cycle_graph(size()?),
        "crown" => crown_graph(size()?),
        "rook" => rook_graph(size()?),
        "multipartite" => {
            let parts = arg
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad part list in {s:?}")))?;
            complete_multipartite(&parts)
        }
        "file" => {
            let text = std::fs::read_to_string(arg)?;
            if arg.ends_with(".json") {
                FiniteMetricGraph::from_json(&text)
            } else {
                FiniteMetricGraph::read_edge_list(text.as_bytes())
            }
        }
        _ => Err(Error::Parse(format!(
            "unknown graph {s:?}; expected cycle:N, crown:N, icosahedron, rook:M, multipartite:A,B,.. or file:PATH"
        ))),
    }
}
