//! The `seriate` command-line tool.
//!
//! Exit codes: 0 success, 2 invalid arguments or parameters, 3 parse or I/O
//! failure, 4 subsample budget exhausted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Deserialize;

use crate::alphascan::{pick_alpha, scan_alpha, AlphaDiagnostics, ScanConfig};
use crate::error::{Error, Result};
use crate::eval::{ordering_error, precision_agreement};
use crate::graph::Graph;
use crate::graphon::{sample_graph, GraphonSpec};
use crate::io;
use crate::ordering::Ordering;
use crate::refine::{
    iterative_estimate, FixedOrderHook, InitialOrderer, IterativeOptions, MainEstimateHook,
    ThresholdRule,
};
use crate::sketch::{desk_default_params, main_estimate, paper_default_params, SketchParams};

#[derive(Debug, Parser)]
#[command(
    name = "seriate",
    version,
    about = "Recover latent vertex orders from graphon samples"
)]
pub struct Cli {
    /// Random seed; falls back to SERIATE_SEED, then 0.
    #[arg(long, global = true, env = "SERIATE_SEED")]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a graph; writes the edge list and a latents sidecar.
    Sample(SampleArgs),
    /// Coarse ordering of a graph.
    Seriate(SeriateArgs),
    /// Coarse ordering followed by iterative refinement.
    Refine(RefineArgs),
    /// Score an ordering against latents.
    Eval(EvalArgs),
    /// Run a grid of sample, order and evaluate steps from a JSON config.
    Experiment(ExperimentArgs),
    /// Diagnostics over a grid of thresholds.
    AlphaScan(AlphaScanArgs),
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// `step:p=0.8,q=0.1,d=0.2`, `constant:c=0.5`, `profile:0=0.9,0.3=0.1`, or JSON.
    #[arg(long)]
    pub graphon: String,
    #[arg(long)]
    pub n: usize,
    /// Latents sidecar (default: `<out>.latents`).
    #[arg(long)]
    pub latents: Option<PathBuf>,
}

#[derive(Debug, Args, Clone, Default)]
pub struct SketchOverrides {
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub zeta: Option<usize>,
    #[arg(long)]
    pub max_attempts: Option<usize>,
    /// Use the asymptotic parameter formulas unchanged.
    #[arg(long)]
    pub paper_params: bool,
}

impl SketchOverrides {
    pub fn params(&self, n: usize) -> SketchParams {
        let mut p = if self.paper_params {
            paper_default_params(n)
        } else {
            desk_default_params(n)
        };
        if let Some(m) = self.m {
            p.m = m;
        }
        if let Some(t) = self.t {
            p.t = t;
        }
        if let Some(z) = self.zeta {
            p.zeta = z;
        }
        if let Some(a) = self.max_attempts {
            p.max_attempts = a;
        } else if self.t.is_some() {
            p.max_attempts = p.max_attempts.max(p.t.saturating_mul(20));
        }
        p
    }
}

#[derive(Debug, Args)]
pub struct SeriateArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub alpha: f64,
    #[command(flatten)]
    pub sketch: SketchOverrides,
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub epsilon: f64,
    /// Ordering of all vertices to use in place of the coarse estimate.
    #[arg(long)]
    pub initial: Option<PathBuf>,
    /// Use the asymptotic refinement thresholds.
    #[arg(long)]
    pub paper_params: bool,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub ordering: PathBuf,
    pub latents: PathBuf,
    /// Precision level for the agreement check.
    #[arg(long)]
    pub d: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    pub config: PathBuf,
}

#[derive(Debug, Args)]
pub struct AlphaScanArgs {
    pub graph: PathBuf,
    /// Comma-separated candidates (default 0.02, 0.03, ..., 0.30).
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<f64>>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let seed = cli.seed.unwrap_or(0);
    let body = || -> Result<()> {
        match &cli.command {
            Command::Sample(a) => cmd_sample(a, seed, cli.out.as_deref()),
            Command::Seriate(a) => {
                let text = cmd_seriate(a, seed)?;
                emit(cli.out.as_deref(), &text)
            }
            Command::Refine(a) => {
                let text = cmd_refine(a, seed)?;
                emit(cli.out.as_deref(), &text)
            }
            Command::Eval(a) => {
                let text = cmd_eval(a)?;
                emit(cli.out.as_deref(), &text)
            }
            Command::Experiment(a) => {
                let config = ExperimentConfig::load(&a.config)?;
                let out = cli.out.clone().or_else(|| config.output.clone());
                let text = cmd_experiment(&config)?;
                emit(out.as_deref(), &text)
            }
            Command::AlphaScan(a) => {
                let text = cmd_alpha_scan(a, seed)?;
                emit(cli.out.as_deref(), &text)
            }
        }
    };
    match cli.threads {
        Some(0) => Err(Error::InvalidParameter("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(body),
        None => body(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "alpha = {alpha} must lie in (0, 1)"
        )))
    }
}

pub fn cmd_sample(a: &SampleArgs, seed: u64, out: Option<&Path>) -> Result<()> {
    let spec: GraphonSpec = a.graphon.parse()?;
    let out = out.ok_or_else(|| Error::InvalidParameter("sample needs --out".into()))?;
    let s = sample_graph(&spec, a.n, seed)?;
    let latents_path = a.latents.clone().unwrap_or_else(|| {
        let mut p = out.as_os_str().to_owned();
        p.push(".latents");
        PathBuf::from(p)
    });
    fs::write(out, io::format_edge_list(&s.graph))?;
    fs::write(
        latents_path,
        io::format_latents(s.latents.as_deref().unwrap_or_default()),
    )?;
    Ok(())
}

pub fn cmd_seriate(a: &SeriateArgs, seed: u64) -> Result<String> {
    check_alpha(a.alpha)?;
    let g = io::read_edge_list(&a.graph)?;
    let sigma = main_estimate(&g, a.alpha, &a.sketch.params(g.n()), seed)?;
    Ok(io::format_ordering(&sigma))
}

fn refine_options(paper_params: bool) -> IterativeOptions {
    IterativeOptions {
        rule: if paper_params {
            ThresholdRule::Asymptotic
        } else {
            ThresholdRule::Desk
        },
        ..IterativeOptions::default()
    }
}

pub fn cmd_refine(a: &RefineArgs, seed: u64) -> Result<String> {
    check_alpha(a.alpha)?;
    let g = io::read_edge_list(&a.graph)?;
    let hook: Box<dyn InitialOrderer> = match &a.initial {
        Some(p) => {
            let full = io::read_ordering(p)?;
            if full.n() != g.n() {
                return Err(Error::SizeMismatch {
                    expected: g.n(),
                    got: full.n(),
                });
            }
            Box::new(FixedOrderHook { full })
        }
        None => Box::new(MainEstimateHook { alpha: a.alpha }),
    };
    let out = iterative_estimate(
        &g,
        a.epsilon,
        hook.as_ref(),
        seed,
        refine_options(a.paper_params),
    )?;
    Ok(io::format_ordering(&out.ordering))
}

pub const EVAL_HEADER: [&str; 7] = [
    "n",
    "error_d",
    "misordered_pairs",
    "chosen_correct",
    "d",
    "agrees",
    "worst_gap",
];

pub fn cmd_eval(a: &EvalArgs) -> Result<String> {
    let sigma = io::read_ordering(&a.ordering)?;
    let latents = io::read_latents(&a.latents)?;
    let report = ordering_error(&sigma, &latents)?;
    let (d, agrees, gap) = match a.d {
        Some(d) => {
            let (ok, gap) = precision_agreement(&sigma, &latents, d)?;
            (d.to_string(), ok.to_string(), gap.to_string())
        }
        None => Default::default(),
    };
    let direction = match report.chosen_correct {
        crate::eval::Direction::Forward => "forward",
        crate::eval::Direction::Reverse => "reverse",
    };
    csv_text(
        &EVAL_HEADER,
        [vec![
            sigma.n().to_string(),
            report.error_d.to_string(),
            report.misordered_pairs.to_string(),
            direction.to_string(),
            d,
            agrees,
            gap,
        ]],
        None,
    )
}

fn csv_text(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
    footer: Option<[String; 2]>,
) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    let to_io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(header).map_err(to_io)?;
    for r in rows {
        w.write_record(&r).map_err(to_io)?;
    }
    if let Some(f) = footer {
        w.write_record(&f).map_err(to_io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Default candidate grid for threshold scans.
pub fn default_alpha_grid() -> Vec<f64> {
    (2..=30).map(|k| k as f64 / 100.0).collect()
}

pub fn cmd_alpha_scan(a: &AlphaScanArgs, seed: u64) -> Result<String> {
    let g = io::read_edge_list(&a.graph)?;
    let grid = a.grid.clone().unwrap_or_else(default_alpha_grid);
    let mut config = ScanConfig::for_size(g.n(), seed);
    config.trials = a.trials;
    config.epsilon = a.epsilon;
    if let Some(m) = a.m {
        config.m = m;
    }
    let diags = scan_alpha(&g, &grid, &config)?;
    let chosen = pick_alpha(&diags).map_or_else(|| "NONE".to_string(), |x| x.to_string());
    csv_text(
        &AlphaDiagnostics::CSV_HEADER,
        diags.iter().map(|d| d.csv_record(None)),
        Some(["chosen_alpha".to_string(), chosen]),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanKeyword {
    Scan,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum AlphaChoice {
    Fixed(f64),
    Scan(ScanKeyword),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    SketchOnly,
    FullIterative,
}

impl Pipeline {
    fn name(self) -> &'static str {
        match self {
            Pipeline::SketchOnly => "sketch-only",
            Pipeline::FullIterative => "full-iterative",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    pub m: Option<usize>,
    pub t: Option<usize>,
    pub zeta: Option<usize>,
    pub max_attempts: Option<usize>,
    #[serde(default)]
    pub paper_params: bool,
}

/// JSON experiment description. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub graphon: GraphonSpec,
    pub n_list: Vec<usize>,
    pub seeds: Vec<u64>,
    /// A number or `"scan"`.
    pub alpha: AlphaChoice,
    /// Candidates when `alpha` is `"scan"`.
    #[serde(default)]
    pub alpha_grid: Option<Vec<f64>>,
    #[serde(default = "default_pipelines")]
    pub pipelines: Vec<Pipeline>,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub params: ParamOverrides,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn default_pipelines() -> Vec<Pipeline> {
    vec![Pipeline::SketchOnly]
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        self.graphon.validate()?;
        if self.n_list.is_empty() || self.seeds.is_empty() || self.pipelines.is_empty() {
            return Err(Error::InvalidParameter(
                "n_list, seeds and pipelines must be nonempty".into(),
            ));
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n < 3) {
            return Err(Error::TooSmall { need: 3, got: n });
        }
        if let AlphaChoice::Fixed(a) = self.alpha {
            check_alpha(a)?;
        }
        if self.pipelines.contains(&Pipeline::FullIterative) {
            match self.epsilon {
                Some(e) if e > 0.0 && e < 0.5 => {}
                _ => {
                    return Err(Error::InvalidParameter(
                        "full-iterative needs epsilon in (0, 0.5)".into(),
                    ))
                }
            }
        }
        Ok(())
    }

    fn sketch_overrides(&self) -> SketchOverrides {
        let p = &self.params;
        SketchOverrides {
            m: p.m,
            t: p.t,
            zeta: p.zeta,
            max_attempts: p.max_attempts,
            paper_params: p.paper_params,
        }
    }
}

pub const EXPERIMENT_HEADER: [&str; 10] = [
    "graphon",
    "n",
    "seed",
    "pipeline",
    "alpha",
    "error_d",
    "error_over_sqrt_n",
    "error_over_n_eps",
    "wall_ms",
    "status",
];

fn status_of(e: &Error) -> String {
    match e {
        Error::BudgetExhausted { .. } => "budget_exhausted".into(),
        other => format!("error: {other}"),
    }
}

fn run_cell(
    config: &ExperimentConfig,
    g: &Graph,
    latents: &[f64],
    alpha: f64,
    pipeline: Pipeline,
    seed: u64,
) -> Result<usize> {
    let sigma: Ordering = match pipeline {
        Pipeline::SketchOnly => {
            main_estimate(g, alpha, &config.sketch_overrides().params(g.n()), seed)?
        }
        Pipeline::FullIterative => {
            let eps = config.epsilon.expect("validated");
            let hook = MainEstimateHook { alpha };
            iterative_estimate(
                g,
                eps,
                &hook,
                seed,
                refine_options(config.params.paper_params),
            )?
            .ordering
        }
    };
    Ok(ordering_error(&sigma, latents)?.error_d)
}

/// Rows in `(n, seed, pipeline)` order; failures are recorded in the status
/// column and do not stop the run.
pub fn experiment_rows(config: &ExperimentConfig) -> Vec<Vec<String>> {
    let cells: Vec<(usize, u64)> = config
        .n_list
        .iter()
        .flat_map(|&n| config.seeds.iter().map(move |&s| (n, s)))
        .collect();
    let tag = config.graphon.tag();
    cells
        .par_iter()
        .map(|&(n, seed)| {
            let mut rows = Vec::new();
            let sampled = sample_graph(&config.graphon, n, seed);
            let alpha = sampled
                .as_ref()
                .map_err(status_of)
                .and_then(|s| match &config.alpha {
                    AlphaChoice::Fixed(a) => Ok(*a),
                    AlphaChoice::Scan(_) => {
                        let grid = config.alpha_grid.clone().unwrap_or_else(default_alpha_grid);
                        let diags = scan_alpha(&s.graph, &grid, &ScanConfig::for_size(n, seed))
                            .map_err(|e| status_of(&e))?;
                        pick_alpha(&diags).ok_or_else(|| "no_alpha".to_string())
                    }
                });
            for &pipeline in &config.pipelines {
                let start = Instant::now();
                let (alpha_s, outcome) = match (&sampled, &alpha) {
                    (Ok(s), Ok(a)) => {
                        let latents = s.latents.as_deref().unwrap_or_default();
                        (
                            a.to_string(),
                            run_cell(config, &s.graph, latents, *a, pipeline, seed)
                                .map_err(|e| status_of(&e)),
                        )
                    }
                    (_, Err(status)) => (String::new(), Err(status.clone())),
                    (Err(e), _) => (String::new(), Err(status_of(e))),
                };
                let wall_ms = start.elapsed().as_millis().to_string();
                let (err, over_sqrt, over_eps, status) = match outcome {
                    Ok(e) => {
                        let nf = n as f64;
                        let over_eps = config
                            .epsilon
                            .map(|eps| (e as f64 / nf.powf(eps)).to_string())
                            .unwrap_or_default();
                        (
                            e.to_string(),
                            (e as f64 / nf.sqrt()).to_string(),
                            over_eps,
                            "ok".to_string(),
                        )
                    }
                    Err(s) => (String::new(), String::new(), String::new(), s),
                };
                rows.push(vec![
                    tag.clone(),
                    n.to_string(),
                    seed.to_string(),
                    pipeline.name().to_string(),
                    alpha_s,
                    err,
                    over_sqrt,
                    over_eps,
                    wall_ms,
                    status,
                ]);
            }
            rows
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn cmd_experiment(config: &ExperimentConfig) -> Result<String> {
    csv_text(&EXPERIMENT_HEADER, experiment_rows(config), None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parses_and_rejects_unknown_keys() {
        let ok = r#"{"graphon": {"variant": "step", "p": 0.8, "q": 0.1, "d": 0.2},
                     "n_list": [50], "seeds": [1, 2], "alpha": 0.1}"#;
        let c = ExperimentConfig::parse(ok).unwrap();
        assert_eq!(c.pipelines, vec![Pipeline::SketchOnly]);
        assert_eq!(c.alpha, AlphaChoice::Fixed(0.1));
        let scan = ok.replace("0.1}", "\"scan\"}");
        assert_eq!(
            ExperimentConfig::parse(&scan).unwrap().alpha,
            AlphaChoice::Scan(ScanKeyword::Scan)
        );
        let extra = ok.replace("\"seeds\"", "\"colour\": 1, \"seeds\"");
        assert!(matches!(
            ExperimentConfig::parse(&extra),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn config_validation() {
        let base = r#"{"graphon": {"variant": "constant", "c": 0.5}, "n_list": NL, "seeds": [1], "alpha": 0.1 PIPE}"#;
        let make = |nl: &str, pipe: &str| base.replace("NL", nl).replace("PIPE", pipe);
        assert!(ExperimentConfig::parse(&make("[]", "")).is_err());
        assert!(
            ExperimentConfig::parse(&make("[10]", r#", "pipelines": ["full-iterative"]"#)).is_err()
        );
        assert!(ExperimentConfig::parse(&make(
            "[10]",
            r#", "pipelines": ["full-iterative"], "epsilon": 0.6"#
        ))
        .is_err());
        assert!(ExperimentConfig::parse(&make(
            "[10]",
            r#", "pipelines": ["full-iterative"], "epsilon": 0.45"#
        ))
        .is_ok());
    }

    #[test]
    fn overrides_apply_on_top_of_defaults() {
        let o = SketchOverrides {
            m: Some(20),
            ..Default::default()
        };
        let p = o.params(500);
        assert_eq!(p.m, 20);
        assert_eq!(p.t, desk_default_params(500).t);
        let o = SketchOverrides {
            t: Some(7),
            ..Default::default()
        };
        assert!(o.params(500).max_attempts >= 140);
        assert!(
            SketchOverrides {
                paper_params: true,
                ..Default::default()
            }
            .params(500)
            .asymptotic
        );
    }

    #[test]
    fn csv_quotes_fields() {
        let text = csv_text(
            &["a", "b"],
            [vec!["x,y".to_string(), "z".to_string()]],
            None,
        )
        .unwrap();
        assert_eq!(text, "a,b\n\"x,y\",z\n");
    }
}
