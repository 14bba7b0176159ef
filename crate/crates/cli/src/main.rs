//! `pa-gamma` command-line interface.
//!
//! Every subcommand prints JSON (or a table path) on success. On failure it
//! exits with status 1 and writes one line `{"error": {"kind": ..., "message": ...}}`
//! to stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pa_gamma::format::round_sig;
use pa_gamma::harness::{fit_panel_json, run_figure1, run_fit_panel, ExperimentConfig};
use pa_gamma::netgen::{generate_with_edges, write_edge_list};
use pa_gamma::{estimate_gamma_from_degrees, fit_ansatz, generate, solve_gamma, Error, GrowthParams, Result};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "pa-gamma",
    version,
    about = "Expected power-law exponent of preferential-attachment networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the exponent at a given number of links per node.
    Solve {
        #[arg(long)]
        m: u64,
    },
    /// Grow one network and summarise its degrees.
    Generate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        seed: u64,
        /// Write the edge list, one "u v" pair per line.
        #[arg(long)]
        edges: Option<PathBuf>,
        /// Write the degree sequence, one integer per line.
        #[arg(long)]
        degrees: Option<PathBuf>,
    },
    /// Maximum-likelihood exponent of a degree list (one integer per line).
    Estimate {
        #[arg(long)]
        degrees: PathBuf,
        /// Lower cutoff; defaults to the smallest value in the file.
        #[arg(long)]
        k_min: Option<u64>,
    },
    /// Fit 3 - (m + alpha)^(-beta) to "m,gamma" rows.
    Fit {
        #[arg(long)]
        points: PathBuf,
    },
    /// Simulate, estimate and tabulate the left panel.
    Figure1 {
        #[arg(long)]
        config: PathBuf,
    },
    /// Solve, fit and extrapolate the right panel.
    FitPanel {
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": { "kind": e.kind(), "message": e.to_string() } }));
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<Value> {
    match command {
        Command::Solve { m } => {
            let s = solve_gamma(m)?;
            Ok(json!({
                "m": s.m,
                "gamma": round_sig(s.gamma),
                "residual": round_sig(s.residual),
                "bracket": [round_sig(s.bracket.0), round_sig(s.bracket.1)],
            }))
        }
        Command::Generate {
            n,
            m,
            seed,
            edges,
            degrees,
        } => {
            let params = GrowthParams::new(n, m, seed)?;
            let seq = match &edges {
                Some(path) => {
                    let (seq, list) = generate_with_edges(params)?;
                    write_edge_list(path, &list)?;
                    seq
                }
                None => generate(params)?,
            };
            if let Some(path) = &degrees {
                let text: String = seq.degrees().iter().map(|d| format!("{d}\n")).collect();
                fs::write(path, text)?;
            }
            Ok(json!({
                "n": n,
                "m": m,
                "seed": seed,
                "edges": params.edge_count(),
                "total_degree": seq.total_degree(),
                "mean_degree": round_sig(seq.mean_degree()),
                "min_degree": seq.min_degree(),
                "max_degree": seq.max_degree(),
            }))
        }
        Command::Estimate { degrees, k_min } => {
            let values = read_integers(&degrees)?;
            let k_min = match k_min {
                Some(k) => k,
                None => *values
                    .iter()
                    .min()
                    .ok_or_else(|| Error::Degenerate(format!("{} holds no degrees", degrees.display())))?,
            };
            let est = estimate_gamma_from_degrees(&values, k_min)?;
            Ok(json!({
                "gamma_hat": round_sig(est.gamma_hat),
                "k_min": est.k_min,
                "n_tail": est.n_tail,
                "log_likelihood": round_sig(est.log_likelihood),
            }))
        }
        Command::Fit { points } => {
            let pts = read_points(&points)?;
            let fit = fit_ansatz(&pts)?;
            Ok(json!({
                "alpha": round_sig(fit.alpha),
                "beta": round_sig(fit.beta),
                "alpha_stderr": round_sig(fit.alpha_stderr),
                "beta_stderr": round_sig(fit.beta_stderr),
                "rss": round_sig(fit.rss),
                "residuals": fit.residuals.iter().map(|r| round_sig(*r)).collect::<Vec<_>>(),
                "iterations": fit.iterations,
            }))
        }
        Command::Figure1 { config } => {
            let config = ExperimentConfig::from_path(&config)?;
            let table = run_figure1(&config)?;
            Ok(json!({
                "csv": config.output_dir.join("figure1.csv"),
                "rows": table.rows.iter().map(|r| json!({
                    "m": r.m,
                    "N": r.n,
                    "mean_gamma": round_sig(r.mean_gamma_hat),
                    "std_gamma": round_sig(r.std_gamma_hat),
                    "theory_gamma": round_sig(r.theory_gamma),
                    "realizations": r.n_realizations,
                })).collect::<Vec<_>>(),
            }))
        }
        Command::FitPanel { config } => {
            let config = ExperimentConfig::from_path(&config)?;
            let panel = run_fit_panel(&config)?;
            for w in &panel.warnings {
                eprintln!("warning: {w}");
            }
            Ok(fit_panel_json(&panel))
        }
    }
}

fn parse_error(path: &Path, line: usize, msg: &str) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        message: format!("line {line}: {msg}"),
    }
}

fn read_integers(path: &Path) -> Result<Vec<u64>> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse()
                .map_err(|_| parse_error(path, i + 1, "expected a non-negative integer"))
        })
        .collect()
}

/// Reads `m,gamma` rows; a non-numeric first row is taken as a header.
fn read_points(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(',').map(str::trim);
        let (Some(a), Some(b)) = (fields.next(), fields.next()) else {
            return Err(parse_error(path, i + 1, "expected m,gamma"));
        };
        match (a.parse::<f64>(), b.parse::<f64>()) {
            (Ok(m), Ok(g)) => out.push((m, g)),
            _ if i == 0 => continue,
            _ => return Err(parse_error(path, i + 1, "expected numeric m,gamma")),
        }
    }
    Ok(out)
}
