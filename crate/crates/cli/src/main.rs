use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use zm_splines::grids::{
    audit_labeling, build_dual, build_mesh, construct_rank_one_labeling, dual_positions,
};
use zm_splines::io::{
    graph_from_json, graph_to_json, module_to_json, spline_from_json, spline_from_value, to_pretty,
    IoError,
};
use zm_splines::quotient::{
    canonical_lift, project_spline, quotient_graph, scaled_lift, QuotientContext,
};
use zm_splines::reduce::simplify;
use zm_splines::solver::{enumerate_splines, is_spline, OracleOptions, SplineCheck, DEFAULT_CAP};
use zm_splines::{rank_one_zm, solve, LabeledGraph, Modulus, RankOneVerdict, SplineError};

/// Splines on edge-labeled graphs over Z/mZ.
///
/// Graphs are JSON files `{"modulus", "vertices", "edges": [{"u", "v", "label"}]}`;
/// `-` reads from stdin. Exit status is 0 on success, 1 when the input
/// violates a mathematical precondition and 2 on I/O or parse errors.
#[derive(Parser)]
#[command(name = "splines", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a minimal generating set of the spline module and its size.
    Solve {
        graph: PathBuf,
        /// Restrict to splines vanishing at this vertex.
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// List every spline by exhaustive search.
    Oracle {
        graph: PathBuf,
        /// Refuse searches with more states than this.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Test whether a vector is a spline and express it in the generators.
    Member { graph: PathBuf, spline: PathBuf },
    /// Contract (0)-edges and merge parallel edges; the log goes to stderr.
    Reduce { graph: PathBuf },
    /// Decide whether only constant splines exist, with a certificate.
    RankOne { graph: PathBuf },
    /// Reduce the labels modulo an ideal, or project a spline with `--spline`.
    Quotient {
        graph: PathBuf,
        /// Generator d of the ideal (d); 0 means the zero ideal.
        #[arg(long)]
        ideal: u64,
        #[arg(long)]
        spline: Option<PathBuf>,
    },
    /// Lift a spline on the quotient graph back to the original modulus.
    Lift {
        graph: PathBuf,
        /// Spline over Z_d on the quotient graph.
        spline: PathBuf,
        #[arg(long)]
        ideal: u64,
        /// Multiply by this element of the complementary ideal instead of the idempotent.
        #[arg(long)]
        scale: Option<u64>,
    },
    /// Emit the dual graph of a Clough-Tocher refined rows x cols grid.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 12)]
        modulus: u64,
        #[arg(long, value_enum, default_value_t = LabelScheme::Unit)]
        label_scheme: LabelScheme,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a labeled grid dual against the zero-edge lower bound.
    Audit { graph: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelScheme {
    Unit,
    RankOne,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

enum CliError {
    Input(String),
    Domain(SplineError),
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Spline(e) => CliError::Domain(e),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SplineError> for CliError {
    fn from(e: SplineError) -> Self {
        CliError::Domain(e)
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    let result = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn load_graph(path: &Path) -> Result<LabeledGraph, CliError> {
    Ok(graph_from_json(&read_input(path)?)?)
}

fn json_out<T: Serialize>(value: &T) -> String {
    to_pretty(value)
}

fn verdict_json(g: &LabeledGraph, r: &RankOneVerdict) -> Value {
    let trees: Option<Vec<Value>> = r.witness_trees.as_ref().map(|trees| {
        trees.iter().map(|(q, edges)| json!({ "prime_power": q, "edges": edges })).collect()
    });
    json!({
        "verdict": if r.verdict { "rank one" } else { "not rank one" },
        "rank_one": r.verdict,
        "failing_check": r.failing_check.map(|c| c.to_string()),
        "trees": trees,
        "witness": r.witness_spline.as_ref().map(|p| p.values().to_vec()),
        "vertices": g.names(),
    })
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Solve { graph, basepoint } => {
            let g = load_graph(&graph)?;
            let module = solve(&g)?;
            let module = match basepoint {
                Some(name) => module.based_module_named(&name)?,
                None => module,
            };
            Ok(module_to_json(&module))
        }
        Command::Oracle { graph, cap } => {
            let g = load_graph(&graph)?;
            let splines = enumerate_splines(&g, &OracleOptions::with_cap(cap))?;
            let rows: Vec<&[u64]> = splines.iter().map(|p| p.values()).collect();
            Ok(json_out(&json!({ "vertices": g.names(), "count": rows.len(), "splines": rows })))
        }
        Command::Member { graph, spline } => {
            let g = load_graph(&graph)?;
            let p = spline_from_json(&g, &read_input(&spline)?)?;
            let out = match is_spline(&g, p.values())? {
                SplineCheck::Violated { edge } => {
                    json!({ "is_spline": false, "member": false, "violated_edge": edge, "coefficients": null })
                }
                SplineCheck::Valid => {
                    let module = solve(&g)?;
                    let coefficients = module.membership(&p)?;
                    json!({ "is_spline": true, "member": coefficients.is_some(), "coefficients": coefficients })
                }
            };
            Ok(json_out(&out))
        }
        Command::Reduce { graph } => {
            let g = load_graph(&graph)?;
            let trace = simplify(&g);
            let stderr = io::stderr();
            let mut log = stderr.lock();
            for step in &trace.log {
                let _ = writeln!(log, "{step}");
            }
            Ok(graph_to_json(&trace.graph))
        }
        Command::RankOne { graph } => {
            let g = load_graph(&graph)?;
            let verdict = rank_one_zm(&g)?;
            Ok(json_out(&verdict_json(&g, &verdict)))
        }
        Command::Quotient { graph, ideal, spline } => {
            let g = load_graph(&graph)?;
            let ctx = QuotientContext::from_divisor(ideal, g.modulus())?;
            match spline {
                None => Ok(graph_to_json(&quotient_graph(&g, &ctx)?)),
                Some(path) => {
                    let p = spline_from_json(&g, &read_input(&path)?)?;
                    Ok(json_out(&project_spline(&g, &p, &ctx)?.values()))
                }
            }
        }
        Command::Lift { graph, spline, ideal, scale } => {
            let g = load_graph(&graph)?;
            let ctx = QuotientContext::from_divisor(ideal, g.modulus())?;
            let text = read_input(&spline)?;
            let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?;
            let q = spline_from_value(ctx.target(), g.names(), &value)?;
            let lifted = match scale {
                Some(j) => scaled_lift(&g, &q, j, &ctx)?,
                None => canonical_lift(&g, &q, &ctx)?,
            };
            Ok(json_out(&lifted.values()))
        }
        Command::Grid { rows, cols, modulus, label_scheme, format } => {
            let mesh = build_mesh(rows, cols)?;
            let dual = build_dual(&mesh, Modulus::new(modulus)?);
            let dual = match label_scheme {
                LabelScheme::Unit => dual,
                LabelScheme::RankOne => construct_rank_one_labeling(&dual)?,
            };
            Ok(match format {
                Format::Json => graph_to_json(&dual),
                Format::Dot => dual.to_dot_with_positions(Some(&dual_positions(&mesh))),
            })
        }
        Command::Audit { graph } => {
            let g = load_graph(&graph)?;
            let report = audit_labeling(&g)?;
            let mut out = serde_json::to_value(&report).expect("serializable");
            out["bound_holds"] = Value::from(report.bound_holds());
            out["rank_one"] = verdict_json(&g, &report.verdict);
            Ok(json_out(&out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
