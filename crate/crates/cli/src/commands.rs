use std::fs;
use std::path::{Path, PathBuf};
use std::thread;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use sqcolor::choosability::{
    find_bad_assignment, is_l_colorable, list_chromatic_oracle, BadSearchOutcome, ListAssignment, OracleConfig,
    Outcome, PaletteCap,
};
use sqcolor::construction::{build_iterated, LabeledGraph};
use sqcolor::verify::{gap_report, verify_claims_with_square, Claim, VerificationReport};
use sqcolor::Graph;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;

/// What a command produced: exit code, files written and a JSON summary
/// for the manifest.
pub struct Run {
    pub code: u8,
    pub outputs: Vec<PathBuf>,
    pub summary: Value,
    pub workers: Option<usize>,
}

impl Run {
    fn new(code: u8, summary: Value) -> Self {
        Run {
            code,
            outputs: Vec::new(),
            summary,
            workers: None,
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Writes to `out`, or to stdout when no path is given.
fn emit<T: Serialize>(value: &T, out: Option<&Path>, run: &mut Run) -> Result<()> {
    let text = to_json(value)?;
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            run.outputs.push(path.to_path_buf());
        }
        None => print!("{text}"),
    }
    Ok(())
}

pub fn construct(n: usize, rounds: usize, out: Option<&Path>, dot: Option<&Path>) -> Result<Run> {
    let g = build_iterated(n, rounds)?;
    let mut run = Run::new(
        EXIT_OK,
        json!({ "vertices": g.graph().vertex_count(), "edges": g.graph().edge_count() }),
    );
    emit(&g, out, &mut run)?;
    if let Some(path) = dot {
        let labels = g.display_labels();
        fs::write(path, g.graph().to_dot(Some(&labels))).with_context(|| format!("writing {}", path.display()))?;
        run.outputs.push(path.to_path_buf());
    }
    Ok(run)
}

/// Claims that share one pass over the graph.
fn claim_groups(claims: &[Claim]) -> Vec<Vec<Claim>> {
    let shared: [&[Claim]; 4] = [
        &Claim::ALL[..4],
        &[Claim::Independent],
        &[Claim::Step1],
        &[Claim::StAdjacent, Claim::MainBipartite],
    ];
    shared
        .iter()
        .map(|group| group.iter().copied().filter(|c| claims.contains(c)).collect::<Vec<_>>())
        .filter(|g| !g.is_empty())
        .collect()
}

/// Runs the claim groups on up to `workers` threads. Reports are sorted by
/// claim afterwards, so the result does not depend on scheduling.
fn run_claims(g: &LabeledGraph, claims: &[Claim], workers: usize) -> Result<Vec<VerificationReport>> {
    let gsq = g.graph().square();
    let groups = claim_groups(claims);
    let workers = workers.clamp(1, groups.len().max(1));
    let results: Vec<Result<Vec<VerificationReport>>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let mine: Vec<Claim> = groups.iter().skip(w).step_by(workers).flatten().copied().collect();
                let gsq = &gsq;
                scope.spawn(move || verify_claims_with_square(g, gsq, &mine).map_err(anyhow::Error::from))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verifier thread panicked")).collect()
    });
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    let order = |r: &VerificationReport| Claim::ALL.iter().position(|c| c.id() == r.claim);
    reports.sort_by_key(order);
    Ok(reports)
}

pub fn verify(g: &LabeledGraph, claims: &[Claim], out_dir: Option<&Path>, workers: usize) -> Result<Run> {
    let reports = run_claims(g, claims, workers)?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.claim.as_str()).collect();
    let code = if failed.is_empty() { EXIT_OK } else { EXIT_FAIL };
    let status: serde_json::Map<String, Value> = reports
        .iter()
        .map(|r| (r.claim.clone(), serde_json::to_value(r.status).unwrap()))
        .collect();
    let mut run = Run::new(code, json!({ "claims": status, "failed": failed }));
    run.workers = Some(workers);
    match out_dir {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for r in &reports {
                emit(r, Some(&dir.join(format!("{}.json", r.claim))), &mut run)?;
            }
        }
        None => emit(&reports, None, &mut run)?,
    }
    Ok(run)
}

pub fn bounds(n: usize, rounds: usize, out: Option<&Path>) -> Result<Run> {
    let report = gap_report(n, rounds)?;
    let code = if report.certified { EXIT_OK } else { EXIT_FAIL };
    let mut run = Run::new(
        code,
        json!({
            "chi_upper": report.chi_upper,
            "list_lower": report.list_lower,
            "gap_lower": report.gap_lower,
            "certified": report.certified,
        }),
    );
    emit(&report, out, &mut run)?;
    Ok(run)
}

pub fn solve(g: &Graph, lists: &ListAssignment, budget: u64, out: Option<&Path>) -> Result<Run> {
    let report = is_l_colorable(g, lists, budget)?;
    let code = match report.outcome {
        Outcome::Colorable { .. } => EXIT_OK,
        Outcome::Uncolorable => EXIT_FAIL,
        Outcome::Unknown => EXIT_UNKNOWN,
    };
    let mut run = Run::new(code, json!({ "nodes": report.nodes }));
    emit(&report, out, &mut run)?;
    Ok(run)
}

pub fn oracle(g: &Graph, config: OracleConfig, out: Option<&Path>) -> Result<Run> {
    let result = list_chromatic_oracle(g, config)?;
    let code = if result.list_chromatic.is_some() { EXIT_OK } else { EXIT_UNKNOWN };
    let mut run = Run::new(
        code,
        json!({ "list_chromatic": result.list_chromatic, "chromatic": result.chromatic }),
    );
    emit(&result, out, &mut run)?;
    Ok(run)
}

pub fn badsearch(g: &Graph, k: usize, palette: usize, budget: u64, out: Option<&Path>) -> Result<Run> {
    let search = find_bad_assignment(g, k, palette, budget)?;
    let code = match search.outcome {
        BadSearchOutcome::Found { .. } => EXIT_OK,
        BadSearchOutcome::Exhausted => EXIT_FAIL,
        BadSearchOutcome::BudgetExceeded => EXIT_UNKNOWN,
    };
    let mut run = Run::new(code, json!({ "assignments_checked": search.assignments_checked }));
    emit(&search, out, &mut run)?;
    Ok(run)
}

/// DOT output for a labeled or plain graph file.
pub fn export_dot(graph_path: &Path, out: Option<&Path>) -> Result<Run> {
    let text = fs::read_to_string(graph_path).with_context(|| format!("reading {}", graph_path.display()))?;
    let dot = match serde_json::from_str::<LabeledGraph>(&text) {
        Ok(g) => g.graph().to_dot(Some(&g.display_labels())),
        Err(_) => serde_json::from_str::<Graph>(&text)
            .with_context(|| format!("parsing {}", graph_path.display()))?
            .to_dot(None),
    };
    let mut run = Run::new(EXIT_OK, Value::Null);
    match out {
        Some(path) => {
            fs::write(path, dot).with_context(|| format!("writing {}", path.display()))?;
            run.outputs.push(path.to_path_buf());
        }
        None => print!("{dot}"),
    }
    Ok(run)
}

pub fn palette_rule(cap: Option<usize>) -> PaletteCap {
    cap.map_or(PaletteCap::PerVertex, PaletteCap::Fixed)
}

pub fn load_labeled(graph: Option<&Path>, n: Option<usize>, rounds: usize) -> Result<LabeledGraph> {
    match (graph, n) {
        (Some(path), None) => read_json(path),
        (None, Some(n)) => Ok(build_iterated(n, rounds)?),
        _ => bail!("give either --graph or --n"),
    }
}
