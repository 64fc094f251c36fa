use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use htea_core::oracle::{brute_force_max_matching, build_level_chain, exact_expected_runtime_jump};
use htea_core::theory::{
    heavy_tailed_jump_scale, optimal_rate_band, rate_deviation_penalty, static_rate_bounds, worst_case_scale,
};
use htea_core::{
    run_many, CompleteBipartiteVc, Graph, Jump, LeadingOnes, Matching, MutationSpec, OneMax, Problem, RunConfig,
};

use crate::args::{parse_beta, Rate, Sizes};
use crate::row::{Operator, Row, Source};

/// Largest `n` for which rows get an exact oracle value.
pub const ORACLE_MAX_N: usize = 200;

pub const DEFAULT_BETA: f64 = 1.5;

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Common {
    pub seed: u64,
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemKind {
    Jump,
    Onemax,
    Leadingones,
    VertexCover,
    Matching,
}

impl ProblemKind {
    fn id(self) -> &'static str {
        match self {
            ProblemKind::Jump => "jump",
            ProblemKind::Onemax => "onemax",
            ProblemKind::Leadingones => "leadingones",
            ProblemKind::VertexCover => "vertex-cover",
            ProblemKind::Matching => "matching",
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemKind,
    /// String lengths: `20`, `10..30` or `10..30:5`.
    #[arg(long)]
    pub n: Option<Sizes>,
    /// Jump gap, or small side of the complete bipartite graph for vertex cover.
    #[arg(long)]
    pub m: Option<usize>,
    /// Edge list file for matching: a `vertices edges` header, then one `u v` pair per line.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Matching size that counts as success (default: ⌈OPT/(1+ε)⌉ with OPT
    /// found by exhaustive search).
    #[arg(long)]
    pub target: Option<usize>,
    /// Approximation slack ε for the default matching target.
    #[arg(long, default_value_t = 0.0, value_parser = parse_epsilon)]
    pub epsilon: f64,
    /// Standard-bit mutation rates: numbers, `c/n` or `m/n`.
    #[arg(long, value_delimiter = ',')]
    pub static_rate: Vec<Rate>,
    /// Power-law exponents for heavy-tailed mutation.
    #[arg(long, value_delimiter = ',', value_parser = parse_beta)]
    pub fmut_beta: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    pub runs: u64,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, conflicts_with = "fmut_beta", required_unless_present = "fmut_beta")]
    pub static_rate: Option<Rate>,
    #[arg(long, value_parser = parse_beta)]
    pub fmut_beta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: Option<usize>,
    /// Rates for the static-rate bounds (default `m/n`).
    #[arg(long, value_delimiter = ',')]
    pub static_rate: Vec<Rate>,
    /// Exponents for the heavy-tailed scales (default 1.5).
    #[arg(long, value_delimiter = ',', value_parser = parse_beta)]
    pub fmut_beta: Vec<f64>,
    /// Relative rate deviations for the slow-down factor.
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct Fig2Args {
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    #[arg(long, default_value = "10..30:5")]
    pub n: Sizes,
    #[arg(long, value_delimiter = ',', value_parser = parse_beta, default_values_t = [1.5, 2.0, 3.0])]
    pub beta: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    pub runs: u64,
    /// Cells whose exact expected runtime exceeds this many evaluations
    /// per run are reported from the oracle instead of simulated.
    #[arg(long, default_value_t = 100_000_000)]
    pub cap: u64,
    /// Report every cell from the oracle.
    #[arg(long)]
    pub oracle_only: bool,
}

struct Cell {
    operator: Operator,
    rate_or_beta: f64,
    spec: MutationSpec,
}

fn operators(rates: &[Rate], betas: &[f64], n: usize, m: Option<usize>) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for rate in rates {
        let p = rate.resolve(n, m).map_err(|e| anyhow!("--static-rate {rate}: {e}"))?;
        cells.push(Cell { operator: Operator::Static, rate_or_beta: p, spec: MutationSpec::StaticRate(p) });
    }
    for &beta in betas {
        cells.push(Cell { operator: Operator::Fmut, rate_or_beta: beta, spec: MutationSpec::HeavyTailed(beta) });
    }
    if cells.is_empty() {
        cells.push(Cell {
            operator: Operator::Fmut,
            rate_or_beta: DEFAULT_BETA,
            spec: MutationSpec::HeavyTailed(DEFAULT_BETA),
        });
    }
    Ok(cells)
}

fn simulate<P: Problem>(
    problem: &P,
    id: &'static str,
    m: usize,
    cell: &Cell,
    runs: u64,
    common: Common,
) -> Result<Row> {
    let n = problem.dimension();
    let config = RunConfig::new(n, cell.spec.clone()).with_budget(common.budget).with_seed(common.seed);
    let summary = run_many(problem, &config, runs)?;
    Ok(Row {
        problem: id,
        n,
        m,
        operator: cell.operator,
        rate_or_beta: cell.rate_or_beta,
        runs,
        mean_evals: summary.mean,
        median_evals: summary.median,
        stddev_evals: summary.stddev,
        success_rate: summary.success_rate,
        oracle_exact: None,
        bound_lower: None,
        bound_upper: None,
        source: Source::Sim,
        seed: common.seed,
    })
}

fn parse_epsilon(s: &str) -> std::result::Result<f64, String> {
    let eps: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if eps >= 0.0 && eps.is_finite() {
        Ok(eps)
    } else {
        Err(format!("epsilon must be non-negative, got {eps}"))
    }
}

/// Smallest matching size within a factor `1 + eps` of `opt`.
fn approximation_target(opt: usize, eps: f64) -> usize {
    // The tolerance keeps exact quotients such as 5 / 1.25 from rounding up.
    ((opt as f64 / (1.0 + eps)) - 1e-9).ceil().max(0.0) as usize
}

/// Exact jump runtime when the instance is small enough.
fn jump_oracle(n: usize, m: usize, spec: &MutationSpec) -> Result<Option<f64>> {
    if n > ORACLE_MAX_N {
        return Ok(None);
    }
    Ok(Some(exact_expected_runtime_jump(n, m, spec)?))
}

fn attach_jump_context(row: &mut Row, m: usize, spec: &MutationSpec) -> Result<()> {
    row.oracle_exact = jump_oracle(row.n, m, spec)?;
    if let MutationSpec::StaticRate(p) = *spec {
        if p <= 0.5 {
            let b = static_rate_bounds(row.n, m, p)?;
            row.bound_lower = Some(b.lower);
            row.bound_upper = Some(b.upper);
        }
    }
    Ok(())
}

pub fn run(args: &RunArgs, common: Common) -> Result<Vec<Row>> {
    let id = args.problem.id();
    let mut rows = Vec::new();
    if args.problem == ProblemKind::Matching {
        if args.n.is_some() {
            bail!("--n is not used with --problem matching; the string length is the edge count");
        }
        let path = args.graph.as_ref().ok_or_else(|| anyhow!("--problem matching needs --graph"))?;
        let graph = Graph::from_file(path).with_context(|| format!("--graph {}", path.display()))?;
        let target = match args.target {
            Some(t) => t,
            None => {
                let opt = brute_force_max_matching(&graph).context("--target is required for graphs this large")?;
                approximation_target(opt, args.epsilon)
            }
        };
        let n = graph.edge_count();
        let problem = Matching::new(graph, target);
        for cell in operators(&args.static_rate, &args.fmut_beta, n, Some(target))? {
            rows.push(simulate(&problem, id, target, &cell, args.runs, common)?);
        }
        return Ok(rows);
    }

    let sizes = args.n.as_ref().ok_or_else(|| anyhow!("--problem {id} needs --n"))?;
    let needs_m = matches!(args.problem, ProblemKind::Jump | ProblemKind::VertexCover);
    if needs_m && args.m.is_none() {
        bail!("--problem {id} needs --m");
    }
    for &n in &sizes.0 {
        for cell in operators(&args.static_rate, &args.fmut_beta, n, args.m)? {
            let row = match args.problem {
                ProblemKind::Jump => {
                    let m = args.m.unwrap_or_default();
                    let problem = Jump::new(m, n).with_context(|| format!("--n {n} --m {m}"))?;
                    let mut row = simulate(&problem, id, m, &cell, args.runs, common)?;
                    attach_jump_context(&mut row, m, &cell.spec)?;
                    row
                }
                ProblemKind::VertexCover => {
                    let m = args.m.unwrap_or_default();
                    let problem = CompleteBipartiteVc::new(m, n).with_context(|| format!("--n {n} --m {m}"))?;
                    simulate(&problem, id, m, &cell, args.runs, common)?
                }
                ProblemKind::Onemax => simulate(&OneMax { n }, id, 0, &cell, args.runs, common)?,
                ProblemKind::Leadingones => simulate(&LeadingOnes { n }, id, 0, &cell, args.runs, common)?,
                ProblemKind::Matching => unreachable!(),
            };
            rows.push(row);
        }
    }
    Ok(rows)
}

pub struct ExactReport {
    pub line: String,
    pub row: Row,
}

pub fn exact(args: &ExactArgs, common: Common) -> Result<ExactReport> {
    let (n, m) = (args.n, args.m);
    let cell = match (args.static_rate, args.fmut_beta) {
        (Some(rate), _) => operators(&[rate], &[], n, Some(m))?.remove(0),
        (None, Some(beta)) => operators(&[], &[beta], n, Some(m))?.remove(0),
        (None, None) => bail!("one of --static-rate or --fmut-beta is required"),
    };
    let chain = build_level_chain(n, m, &cell.spec).with_context(|| format!("--n {n} --m {m}"))?;
    let exact = chain.expected_runtime()?;
    let plateau = chain.hitting_times()?[n - m];
    let band = optimal_rate_band(n, m)?;

    let mut row = Row {
        problem: "jump",
        n,
        m,
        operator: cell.operator,
        rate_or_beta: cell.rate_or_beta,
        runs: 0,
        mean_evals: Some(exact),
        median_evals: None,
        stddev_evals: None,
        success_rate: 1.0,
        oracle_exact: Some(exact),
        bound_lower: None,
        bound_upper: None,
        source: Source::Oracle,
        seed: common.seed,
    };
    if let MutationSpec::StaticRate(p) = cell.spec {
        if p <= 0.5 {
            let b = static_rate_bounds(n, m, p)?;
            row.bound_lower = Some(b.lower);
            row.bound_upper = Some(b.upper);
        }
    }
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
    let line = format!(
        "n={n} m={m} operator={} rate_or_beta={} exact={exact} plateau_escape={plateau} bound_lower={} bound_upper={} \
         best_static_band=[{}, {}]",
        cell.operator.as_str(),
        cell.rate_or_beta,
        opt(row.bound_lower),
        opt(row.bound_upper),
        band.lower,
        band.upper,
    );
    Ok(ExactReport { line, row })
}

pub fn theory(args: &TheoryArgs) -> Result<Vec<[String; 6]>> {
    let n = args.n;
    let betas = if args.fmut_beta.is_empty() { vec![DEFAULT_BETA] } else { args.fmut_beta.clone() };
    let mut table = Vec::new();
    let mut push = |bound: &str, m: Option<usize>, parameter: String, lower: Option<f64>, upper: Option<f64>| {
        let s = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        table.push([
            bound.to_string(),
            n.to_string(),
            m.map(|m| m.to_string()).unwrap_or_default(),
            parameter,
            s(lower),
            s(upper),
        ]);
    };

    if let Some(m) = args.m {
        let rates = if args.static_rate.is_empty() { vec![Rate::GapOverLength] } else { args.static_rate.clone() };
        for rate in rates {
            let p = rate.resolve(n, Some(m)).map_err(|e| anyhow!("--static-rate {rate}: {e}"))?;
            let b = static_rate_bounds(n, m, p)?;
            push("static_rate", Some(m), p.to_string(), Some(b.lower), Some(b.upper));
        }
        let band = optimal_rate_band(n, m)?;
        push("best_static_band", Some(m), String::new(), Some(band.lower), Some(band.upper));
        for &eps in &args.eps {
            push("deviation_penalty", Some(m), eps.to_string(), Some(rate_deviation_penalty(m, eps)?), None);
        }
        for &beta in &betas {
            push(
                "heavy_tailed_jump_scale",
                Some(m),
                beta.to_string(),
                None,
                Some(heavy_tailed_jump_scale(n, m, beta)?),
            );
        }
    } else if !args.static_rate.is_empty() || !args.eps.is_empty() {
        bail!("--static-rate and --eps need --m");
    }
    for &beta in &betas {
        push("worst_case_scale", None, beta.to_string(), None, Some(worst_case_scale(n, beta)?));
    }
    Ok(table)
}

pub const THEORY_HEADER: [&str; 6] = ["bound", "n", "m", "parameter", "lower", "upper"];

pub fn fig2(args: &Fig2Args, common: Common) -> Result<Vec<Row>> {
    let m = args.m;
    let mut rows = Vec::new();
    for &n in &args.n.0 {
        let problem = Jump::new(m, n).with_context(|| format!("--n {n} --m {m}"))?;
        for cell in operators(&[Rate::PerLength(1.0)], &args.beta, n, Some(m))? {
            let oracle = jump_oracle(n, m, &cell.spec)?;
            let use_oracle = match oracle {
                Some(t) => args.oracle_only || t > args.cap as f64,
                None if args.oracle_only => bail!("--oracle-only supports n <= {ORACLE_MAX_N}, got {n}"),
                None => false,
            };
            let mut row = if use_oracle {
                Row {
                    problem: "jump",
                    n,
                    m,
                    operator: cell.operator,
                    rate_or_beta: cell.rate_or_beta,
                    runs: 0,
                    mean_evals: oracle,
                    median_evals: None,
                    stddev_evals: None,
                    success_rate: 1.0,
                    oracle_exact: None,
                    bound_lower: None,
                    bound_upper: None,
                    source: Source::Oracle,
                    seed: common.seed,
                }
            } else {
                simulate(&problem, "jump", m, &cell, args.runs, common)?
            };
            attach_jump_context(&mut row, m, &cell.spec)?;
            rows.push(row);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_targets() {
        assert_eq!(approximation_target(5, 0.0), 5);
        assert_eq!(approximation_target(5, 1.0), 3);
        assert_eq!(approximation_target(5, 0.25), 4);
        assert_eq!(approximation_target(5, 0.2), 5);
        assert!(parse_epsilon("-0.1").is_err());
    }
}
