//! `sqcolor`: build the graphs, verify their structure, and run the
//! list-coloring tools from the shell.
//!
//! Exit codes: 0 pass or colorable, 1 definite failure, 2 unknown or budget
//! exhausted, 3 usage or precondition error.

mod commands;
mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Parser, Subcommand};
use serde_json::json;

use sqcolor::choosability::OracleConfig;
use sqcolor::verify::Claim;

use commands::Run;
use manifest::RunManifest;

const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "sqcolor", version, about = "Bipartite graphs with non-chromatic-choosable squares")]
struct Cli {
    /// Write a run manifest here, also when the command fails
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build G_n^t and write it as labeled graph JSON
    Construct {
        #[arg(long)]
        n: usize,
        /// Duplication rounds; 0 gives H_n
        #[arg(long, default_value_t = 1)]
        rounds: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a DOT rendering
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check structural claims and write one certificate per claim
    Verify {
        #[arg(long, conflicts_with = "n")]
        graph: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        rounds: usize,
        /// `all`, `lemma-nw`, or a comma-separated list of claim ids
        #[arg(long, default_value = "all")]
        claims: String,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, env = "SQCOLOR_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Bounds on the chromatic and list chromatic numbers of the square
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        rounds: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a graph can be colored from given lists
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lists: PathBuf,
        /// Search node limit; 0 means none
        #[arg(long, default_value_t = 0)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force list chromatic number of a small graph
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        #[arg(long, default_value_t = 8)]
        size_guard: usize,
        /// Fixed palette size; defaults to k times the vertex count
        #[arg(long)]
        palette: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a k-list assignment with no proper coloring
    Badsearch {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        palette: usize,
        /// Limit on complete assignments examined; 0 means none
        #[arg(long, default_value_t = 0)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a graph file as DOT
    ExportDot {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Construct { .. } => "construct",
            Command::Verify { .. } => "verify",
            Command::Bounds { .. } => "bounds",
            Command::Solve { .. } => "solve",
            Command::Oracle { .. } => "oracle",
            Command::Badsearch { .. } => "badsearch",
            Command::ExportDot { .. } => "export-dot",
        }
    }

    fn inputs(&self) -> Vec<&Path> {
        match self {
            Command::Verify { graph, .. } => graph.iter().map(PathBuf::as_path).collect(),
            Command::Solve { graph, lists, .. } => vec![graph, lists],
            Command::Oracle { graph, .. } | Command::Badsearch { graph, .. } | Command::ExportDot { graph, .. } => {
                vec![graph]
            }
            Command::Construct { .. } | Command::Bounds { .. } => Vec::new(),
        }
    }

    fn params(&self) -> serde_json::Value {
        match self {
            Command::Construct { n, rounds, out, dot } => json!({ "n": n, "rounds": rounds, "out": out, "dot": dot }),
            Command::Verify { graph, n, rounds, claims, out_dir, workers } => json!({
                "graph": graph, "n": n, "rounds": rounds, "claims": claims, "out_dir": out_dir, "workers": workers,
            }),
            Command::Bounds { n, rounds, out } => json!({ "n": n, "rounds": rounds, "out": out }),
            Command::Solve { graph, lists, budget, out } => {
                json!({ "graph": graph, "lists": lists, "budget": budget, "out": out })
            }
            Command::Oracle { graph, max_k, size_guard, palette, out } => json!({
                "graph": graph, "max_k": max_k, "size_guard": size_guard, "palette": palette, "out": out,
            }),
            Command::Badsearch { graph, k, palette, budget, out } => {
                json!({ "graph": graph, "k": k, "palette": palette, "budget": budget, "out": out })
            }
            Command::ExportDot { graph, out } => json!({ "graph": graph, "out": out }),
        }
    }

    fn run(&self) -> Result<Run> {
        match self {
            Command::Construct { n, rounds, out, dot } => commands::construct(*n, *rounds, out.as_deref(), dot.as_deref()),
            Command::Verify { graph, n, rounds, claims, out_dir, workers } => {
                let claims = Claim::parse_filter(claims)?;
                let g = commands::load_labeled(graph.as_deref(), *n, *rounds)?;
                commands::verify(&g, &claims, out_dir.as_deref(), *workers)
            }
            Command::Bounds { n, rounds, out } => commands::bounds(*n, *rounds, out.as_deref()),
            Command::Solve { graph, lists, budget, out } => {
                let g = commands::read_json(graph)?;
                let lists = commands::read_json(lists)?;
                commands::solve(&g, &lists, *budget, out.as_deref())
            }
            Command::Oracle { graph, max_k, size_guard, palette, out } => {
                let g = commands::read_json(graph)?;
                let config = OracleConfig {
                    max_k: *max_k,
                    size_guard: *size_guard,
                    palette: commands::palette_rule(*palette),
                };
                commands::oracle(&g, config, out.as_deref())
            }
            Command::Badsearch { graph, k, palette, budget, out } => {
                let g = commands::read_json(graph)?;
                commands::badsearch(&g, *k, *palette, *budget, out.as_deref())
            }
            Command::ExportDot { graph, out } => commands::export_dot(graph, out.as_deref()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let mut manifest = RunManifest::new(cli.command.name(), cli.command.params());
    manifest.digest_inputs(&cli.command.inputs());

    let start = Instant::now();
    let code = match cli.command.run() {
        Ok(run) => {
            manifest.outputs = run.outputs;
            manifest.summary = run.summary;
            manifest.workers = run.workers;
            run.code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            manifest.error = Some(format!("{e:#}"));
            EXIT_USAGE
        }
    };
    manifest.finish(start.elapsed(), code);
    if let Some(path) = &cli.manifest {
        if let Err(e) = manifest.write(path) {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    ExitCode::from(code)
}
