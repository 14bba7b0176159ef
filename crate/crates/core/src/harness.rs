//! Experiment orchestration for the two exponent panels.
//!
//! * [`run_figure1`] simulates `realizations` networks per `(m, N)`, estimates
//!   the exponent of each and tabulates mean and sample standard deviation
//!   next to the solved exponent.
//! * [`run_fit_panel`] solves the exponent over `m_values`, fits the ansatz
//!   on `m ∈ [1, 10]` and samples the fitted curve beyond that range.
//!
//! Files written to `output_dir`:
//!
//! | file | content |
//! |---|---|
//! | `figure1.csv` | `m,N,mean_gamma,std_gamma,theory_gamma,realizations` |
//! | `replicates/gamma_m{m}_N{N}.csv` | `replicate,seed,gamma_hat` per realization |
//! | `figure1_theory.dat` | `m gamma` |
//! | `figure1_N{N}.dat` | `m mean std` |
//! | `fit_points.dat` | `m gamma` (solved) |
//! | `fit_curve.dat` | `m gamma_hat` (fitted, extrapolated) |
//! | `fit_params.json` | fitted parameters and diagnostics |
//! | `figure1.svg`, `fit_panel.svg` | optional renderings |

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::estimate_gamma;
use crate::exec::Execution;
use crate::fit::{fit_ansatz, FitResult};
use crate::format::{fmt_sig, round_sig};
use crate::netgen::{generate, GrowthParams};
use crate::plot::{self, Panel, Series, Style};
use crate::theory::{gamma_curve, GammaSolution};

pub const CSV_HEADER: &str = "m,N,mean_gamma,std_gamma,theory_gamma,realizations";
/// Means outside this band abort the run.
pub const SANITY_BAND: (f64, f64) = (1.5, 3.5);
/// The ansatz is fitted on this range of `m`.
pub const FIT_RANGE: (u64, u64) = (1, 10);
/// Alternative value of `α` quoted in the literature next to 0.9205.
pub const TEXT_ALPHA: f64 = 0.925;

const COLORS: [&str; 6] = ["#d62728", "#2ca02c", "#1f77b4", "#9467bd", "#ff7f0e", "#8c564b"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub m_values: Vec<u64>,
    pub n_values: Vec<u64>,
    pub realizations: usize,
    pub base_seed: u64,
    pub output_dir: PathBuf,
    /// Worker threads for the replicate pool; `None` uses all cores.
    pub workers: Option<usize>,
    pub execution: Execution,
    /// Also write SVG renderings.
    pub svg: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            m_values: (1..=10).collect(),
            n_values: vec![1_000, 10_000, 100_000],
            realizations: 30,
            base_seed: 20_130_901,
            output_dir: PathBuf::from("figure1_out"),
            workers: None,
            execution: Execution::Parallel,
            svg: false,
        }
    }
}

impl ExperimentConfig {
    /// Reads a JSON object or flat `key = value` lines (`#` starts a comment).
    ///
    /// List values accept comma-separated integers and inclusive ranges,
    /// e.g. `m_values = 1..10` or `n_values = 1000, 10000`.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(message) => Error::Parse {
                path: path.to_path_buf(),
                message,
            },
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let config = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?
        } else {
            Self::parse_key_values(text)?
        };
        config.validate()?;
        Ok(config)
    }

    fn parse_key_values(text: &str) -> Result<Self> {
        let mut c = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::Config(format!("line {}: invalid {what} {value:?}", lineno + 1));
            match key {
                "m_values" => c.m_values = parse_int_list(value).ok_or_else(|| bad("list"))?,
                "n_values" => c.n_values = parse_int_list(value).ok_or_else(|| bad("list"))?,
                "realizations" => c.realizations = value.parse().map_err(|_| bad("integer"))?,
                "base_seed" => c.base_seed = value.parse().map_err(|_| bad("integer"))?,
                "output_dir" => c.output_dir = PathBuf::from(value),
                "workers" => c.workers = Some(value.parse().map_err(|_| bad("integer"))?),
                "execution" => c.execution = value.parse().map_err(|_| bad("execution mode"))?,
                "svg" => c.svg = value.parse().map_err(|_| bad("boolean"))?,
                other => return Err(Error::Config(format!("line {}: unknown key {other:?}", lineno + 1))),
            }
        }
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_values.is_empty() {
            return Err(Error::Config("m_values must not be empty".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::Config("n_values must not be empty".into()));
        }
        if self.realizations < 1 {
            return Err(Error::Config("realizations must be >= 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be >= 1".into()));
        }
        for &m in &self.m_values {
            for &n in &self.n_values {
                GrowthParams::new(n, m, 0).map_err(|e| Error::Config(format!("m={m} N={n}: {e}")))?;
            }
        }
        Ok(())
    }
}

fn parse_int_list(value: &str) -> Option<Vec<u64>> {
    let mut out = Vec::new();
    for part in value.trim_matches(|c| c == '[' || c == ']').split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.trim().parse().ok()?;
            let b: u64 = b.trim().trim_start_matches('=').trim().parse().ok()?;
            if a > b {
                return None;
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().ok()?);
        }
    }
    Some(out)
}

const fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one replicate: `h ← splitmix64(h ⊕ splitmix64(x))` folded over
/// `x = m, N, index` starting from `h = base_seed`.
pub fn replicate_seed(base_seed: u64, m: u64, n: u64, index: u64) -> u64 {
    [m, n, index]
        .into_iter()
        .fold(base_seed, |h, x| splitmix64(h ^ splitmix64(x)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub m: u64,
    pub n: u64,
    pub mean_gamma_hat: f64,
    /// Sample standard deviation (n - 1 denominator); 0 for one realization.
    pub std_gamma_hat: f64,
    pub theory_gamma: f64,
    pub n_realizations: usize,
    /// Per-replicate `(seed, γ̂)` in replicate order.
    #[serde(skip)]
    pub replicates: Vec<(u64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentTable {
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentTable {
    pub fn row(&self, m: u64, n: u64) -> Option<&ExperimentRow> {
        self.rows.iter().find(|r| r.m == m && r.n == n)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.m,
                r.n,
                fmt_sig(r.mean_gamma_hat),
                fmt_sig(r.std_gamma_hat),
                fmt_sig(r.theory_gamma),
                r.n_realizations
            );
        }
        out
    }
}

/// Mean and sample standard deviation, reduced over sorted values so the
/// result does not depend on completion order.
pub fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mean = sorted.iter().sum::<f64>() / n;
    if sorted.len() < 2 {
        return (mean, 0.0);
    }
    let var = sorted.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Simulates, estimates and tabulates; writes CSV, per-replicate and plot files.
pub fn run_figure1(config: &ExperimentConfig) -> Result<ExperimentTable> {
    let table = simulate_figure1(config)?;
    write_figure1(config, &table)?;
    Ok(table)
}

/// [`run_figure1`] without touching the filesystem.
pub fn simulate_figure1(config: &ExperimentConfig) -> Result<ExperimentTable> {
    config.validate()?;
    let exec = config.execution;
    let theory = gamma_curve(&config.m_values, exec)?;

    let tasks: Vec<(u64, u64, u64)> = config
        .m_values
        .iter()
        .flat_map(|&m| {
            config
                .n_values
                .iter()
                .flat_map(move |&n| (0..config.realizations as u64).map(move |i| (m, n, i)))
        })
        .collect();

    let results = exec.install(config.workers, || {
        exec.map(&tasks, |&(m, n, i)| {
            let seed = replicate_seed(config.base_seed, m, n, i);
            GrowthParams::new(n, m, seed)
                .and_then(generate)
                .and_then(|seq| estimate_gamma(&seq))
                .map(|est| (seed, est.gamma_hat))
                .map_err(|e| e.context(format!("m={m} N={n} replicate={i}")))
        })
    });
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::with_capacity(config.m_values.len() * config.n_values.len());
    for (chunk, (&(m, n, _), sol)) in results.chunks(config.realizations).zip(
        tasks.iter().step_by(config.realizations).zip(
            theory
                .iter()
                .flat_map(|s| std::iter::repeat_n(s, config.n_values.len())),
        ),
    ) {
        debug_assert_eq!(sol.m, m);
        let gammas: Vec<f64> = chunk.iter().map(|&(_, g)| g).collect();
        let (mean, std) = mean_and_std(&gammas);
        if !(mean > SANITY_BAND.0 && mean < SANITY_BAND.1) {
            return Err(Error::Sanity(format!(
                "m={m} N={n}: mean estimate {mean} outside ({}, {}); per-replicate values {gammas:?}",
                SANITY_BAND.0, SANITY_BAND.1
            )));
        }
        rows.push(ExperimentRow {
            m,
            n,
            mean_gamma_hat: mean,
            std_gamma_hat: std,
            theory_gamma: sol.gamma,
            n_realizations: gammas.len(),
            replicates: chunk.to_vec(),
        });
    }
    Ok(ExperimentTable { rows })
}

fn write_figure1(config: &ExperimentConfig, table: &ExperimentTable) -> Result<()> {
    let dir = &config.output_dir;
    let rep_dir = dir.join("replicates");
    fs::create_dir_all(&rep_dir)?;
    fs::write(dir.join("figure1.csv"), table.to_csv())?;

    for row in &table.rows {
        let mut out = String::from("replicate,seed,gamma_hat\n");
        for (i, (seed, g)) in row.replicates.iter().enumerate() {
            let _ = writeln!(out, "{i},{seed},{}", fmt_sig(*g));
        }
        fs::write(rep_dir.join(format!("gamma_m{}_N{}.csv", row.m, row.n)), out)?;
    }

    let mut theory = String::from("# m gamma\n");
    let mut seen = Vec::new();
    for row in &table.rows {
        if !seen.contains(&row.m) {
            seen.push(row.m);
            let _ = writeln!(theory, "{} {}", row.m, fmt_sig(row.theory_gamma));
        }
    }
    fs::write(dir.join("figure1_theory.dat"), theory)?;

    for &n in &config.n_values {
        let mut out = String::from("# m mean std\n");
        for row in table.rows.iter().filter(|r| r.n == n) {
            let _ = writeln!(
                out,
                "{} {} {}",
                row.m,
                fmt_sig(row.mean_gamma_hat),
                fmt_sig(row.std_gamma_hat)
            );
        }
        fs::write(dir.join(format!("figure1_N{n}.dat")), out)?;
    }

    if config.svg {
        let mut series = vec![Series {
            label: "theory".into(),
            color: "black",
            style: Style::Line,
            points: seen
                .iter()
                .filter_map(|&m| table.rows.iter().find(|r| r.m == m).map(|r| (m as f64, r.theory_gamma)))
                .collect(),
            errors: vec![],
        }];
        for (i, &n) in config.n_values.iter().enumerate() {
            let rows: Vec<_> = table.rows.iter().filter(|r| r.n == n).collect();
            series.push(Series {
                label: format!("N = {n}"),
                color: COLORS[i % COLORS.len()],
                style: Style::ErrorBars,
                points: rows.iter().map(|r| (r.m as f64, r.mean_gamma_hat)).collect(),
                errors: rows.iter().map(|r| r.std_gamma_hat).collect(),
            });
        }
        let panel = Panel {
            title: "estimated vs expected exponent".into(),
            x_label: "m".into(),
            y_label: "gamma".into(),
            series,
        };
        fs::write(dir.join("figure1.svg"), plot::render(&[panel]))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitPanel {
    pub fit: FitResult,
    /// Solved exponent at every configured `m`.
    pub points: Vec<GammaSolution>,
    /// The `m` values the fit used.
    pub fit_m_values: Vec<u64>,
    /// Whether [`TEXT_ALPHA`] lies inside the fit's confidence interval for `α`.
    pub text_alpha_in_interval: bool,
    pub warnings: Vec<String>,
}

/// Solves the exponent over `m_values`, fits the ansatz on `m ∈ [1, 10]`
/// and writes the points and fitted curve.
pub fn run_fit_panel(config: &ExperimentConfig) -> Result<FitPanel> {
    let panel = compute_fit_panel(config)?;
    write_fit_panel(config, &panel)?;
    Ok(panel)
}

/// [`run_fit_panel`] without touching the filesystem.
pub fn compute_fit_panel(config: &ExperimentConfig) -> Result<FitPanel> {
    if config.m_values.is_empty() {
        return Err(Error::Config("m_values must not be empty".into()));
    }
    let points = gamma_curve(&config.m_values, config.execution)?;
    let in_range: Vec<&GammaSolution> = points
        .iter()
        .filter(|s| (FIT_RANGE.0..=FIT_RANGE.1).contains(&s.m))
        .collect();
    let fit_points: Vec<(f64, f64)> = in_range.iter().map(|s| (s.m as f64, s.gamma)).collect();
    let fit = fit_ansatz(&fit_points)?;

    let mut warnings = Vec::new();
    let span = in_range.iter().map(|s| s.m).max().unwrap_or(0) - in_range.iter().map(|s| s.m).min().unwrap_or(0);
    if span < FIT_RANGE.1 - FIT_RANGE.0 {
        warnings.push(format!(
            "fit uses m in [{}, {}] only; extrapolated values are poorly constrained",
            in_range.first().map_or(0, |s| s.m),
            in_range.last().map_or(0, |s| s.m)
        ));
    }
    let (lo, hi) = fit.alpha_interval();
    let text_alpha_in_interval = (lo..=hi).contains(&TEXT_ALPHA);
    if !text_alpha_in_interval {
        warnings.push(format!(
            "alternative alpha {TEXT_ALPHA} lies outside the fitted interval [{}, {}]",
            fmt_sig(lo),
            fmt_sig(hi)
        ));
    }
    Ok(FitPanel {
        fit,
        fit_m_values: in_range.iter().map(|s| s.m).collect(),
        points,
        text_alpha_in_interval,
        warnings,
    })
}

/// Points on the fitted curve from `m = 1` to `m_end`, log-spaced past 10.
pub fn fitted_curve_samples(fit: &FitResult, m_end: f64) -> Result<Vec<(f64, f64)>> {
    let mut ms: Vec<f64> = (0..=90).map(|i| 1.0 + i as f64 * 0.1).collect();
    if m_end > 10.0 {
        let steps = 100;
        let ratio = (m_end / 10.0).powf(1.0 / steps as f64);
        ms.extend((1..=steps).map(|i| 10.0 * ratio.powi(i)));
    }
    ms.into_iter().map(|m| Ok((m, fit.predict(m)?))).collect()
}

fn write_fit_panel(config: &ExperimentConfig, panel: &FitPanel) -> Result<()> {
    let dir = &config.output_dir;
    fs::create_dir_all(dir)?;

    let mut pts = String::from("# m gamma\n");
    for s in &panel.points {
        let _ = writeln!(pts, "{} {}", s.m, fmt_sig(s.gamma));
    }
    fs::write(dir.join("fit_points.dat"), pts)?;

    let max_m = panel.points.iter().map(|s| s.m).max().unwrap_or(10) as f64;
    let curve = fitted_curve_samples(&panel.fit, (10.0 * max_m).max(100.0))?;
    let mut out = String::from("# m gamma_hat\n");
    for (m, g) in &curve {
        let _ = writeln!(out, "{} {}", fmt_sig(*m), fmt_sig(*g));
    }
    fs::write(dir.join("fit_curve.dat"), out)?;
    fs::write(dir.join("fit_params.json"), fit_panel_json(panel).to_string() + "\n")?;

    if config.svg {
        let svg = plot::render(&[Panel {
            title: "solved exponent and fitted curve".into(),
            x_label: "m".into(),
            y_label: "gamma".into(),
            series: vec![
                Series {
                    label: "fit".into(),
                    color: "black",
                    style: Style::Line,
                    points: curve,
                    errors: vec![],
                },
                Series {
                    label: "solved".into(),
                    color: COLORS[0],
                    style: Style::Markers,
                    points: panel.points.iter().map(|s| (s.m as f64, s.gamma)).collect(),
                    errors: vec![],
                },
            ],
        }]);
        fs::write(dir.join("fit_panel.svg"), svg)?;
    }
    Ok(())
}

/// JSON summary of a fit panel, numbers rounded to 12 significant digits.
pub fn fit_panel_json(panel: &FitPanel) -> serde_json::Value {
    let f = &panel.fit;
    let (alo, ahi) = f.alpha_interval();
    let (blo, bhi) = f.beta_interval();
    serde_json::json!({
        "alpha": round_sig(f.alpha),
        "beta": round_sig(f.beta),
        "alpha_stderr": round_sig(f.alpha_stderr),
        "beta_stderr": round_sig(f.beta_stderr),
        "alpha_interval": [round_sig(alo), round_sig(ahi)],
        "beta_interval": [round_sig(blo), round_sig(bhi)],
        "rss": round_sig(f.rss),
        "iterations": f.iterations,
        "fit_m_values": panel.fit_m_values,
        "text_alpha": TEXT_ALPHA,
        "text_alpha_in_interval": panel.text_alpha_in_interval,
        "warnings": panel.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn key_value_config() {
        let c = ExperimentConfig::parse(
            "# small run\nm_values = 1..3, 7\nn_values = 100,1000\nrealizations = 4\nbase_seed = 9\n\
             output_dir = out/x\nworkers = 2\nexecution = sequential\nsvg = true\n",
        )
        .unwrap();
        assert_eq!(c.m_values, vec![1, 2, 3, 7]);
        assert_eq!(c.n_values, vec![100, 1000]);
        assert_eq!(c.realizations, 4);
        assert_eq!(c.base_seed, 9);
        assert_eq!(c.output_dir, PathBuf::from("out/x"));
        assert_eq!(c.workers, Some(2));
        assert_eq!(c.execution, Execution::Sequential);
        assert!(c.svg);
    }

    #[test]
    fn json_config_with_defaults() {
        let c = ExperimentConfig::parse(r#"{"m_values": [1, 2], "realizations": 3}"#).unwrap();
        assert_eq!(c.m_values, vec![1, 2]);
        assert_eq!(c.n_values, ExperimentConfig::default().n_values);
        assert_eq!(c.realizations, 3);
    }

    #[test]
    fn config_errors() {
        assert!(matches!(ExperimentConfig::parse("m_values = "), Err(Error::Config(_))));
        assert!(matches!(
            ExperimentConfig::parse(r#"{"m_values": []}"#),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            ExperimentConfig::parse("realizations = 0"),
            Err(Error::Config(_))
        ));
        assert!(matches!(ExperimentConfig::parse("colour = red"), Err(Error::Config(_))));
        assert!(matches!(
            ExperimentConfig::parse("m_values = 5..2"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            ExperimentConfig::parse("m_values = 10\nn_values = 11"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            ExperimentConfig::parse(r#"{"bogus": 1}"#),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn default_grid_seeds_are_distinct() {
        let c = ExperimentConfig::default();
        let mut seen = HashSet::new();
        for &m in &c.m_values {
            for &n in &c.n_values {
                for i in 0..c.realizations as u64 {
                    assert!(seen.insert(replicate_seed(c.base_seed, m, n, i)));
                }
            }
        }
        assert_eq!(seen.len(), 900);
        assert_ne!(replicate_seed(1, 2, 3, 4), replicate_seed(2, 2, 3, 4));
    }

    #[test]
    fn sample_std() {
        let (mean, std) = mean_and_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(mean, 2.5);
        assert!((std - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_and_std(&[2.0]), (2.0, 0.0));
        assert_eq!(mean_and_std(&[3.0, 1.0, 2.0]), mean_and_std(&[1.0, 2.0, 3.0]));
    }

    #[test]
    fn single_row_table() {
        let c = ExperimentConfig {
            m_values: vec![1],
            n_values: vec![100],
            realizations: 2,
            ..Default::default()
        };
        let t = simulate_figure1(&c).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].n_realizations, 2);
        assert_eq!(t.rows[0].replicates.len(), 2);
        let csv = t.to_csv();
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(csv.lines().count(), 2);
    }

    #[test]
    fn short_fit_range_warns() {
        let c = ExperimentConfig {
            m_values: vec![1, 2, 3],
            ..Default::default()
        };
        let panel = compute_fit_panel(&c).unwrap();
        assert!(panel.fit.beta > 0.0);
        assert!(panel.warnings.iter().any(|w| w.contains("poorly constrained")));
        let empty = ExperimentConfig {
            m_values: vec![],
            ..Default::default()
        };
        assert!(matches!(compute_fit_panel(&empty), Err(Error::Config(_))));
    }

    #[test]
    fn fit_uses_only_one_to_ten() {
        let c = ExperimentConfig {
            m_values: (1..=20).collect(),
            ..Default::default()
        };
        let panel = compute_fit_panel(&c).unwrap();
        assert_eq!(panel.fit_m_values, (1..=10).collect::<Vec<_>>());
        assert_eq!(panel.points.len(), 20);
        assert_eq!(panel.fit.residuals.len(), 10);
    }
}
