//! The (1+1) EA main loop.
//!
//! A run starts from a uniform random string (evaluation 1), then repeatedly
//! mutates the parent, evaluates the offspring and keeps it when its fitness
//! is at least the parent's. It stops the first time an optimal string is
//! evaluated or when the evaluation budget is spent.

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::mutation::{MutationSpec, Mutator};
use crate::problems::Problem;
use crate::rng::{trial_stream, Stream};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub spec: MutationSpec,
    /// Maximum number of fitness evaluations, initial point included.
    pub budget: u64,
    pub seed: u64,
    pub trial_index: u64,
}

impl RunConfig {
    pub fn new(n: usize, spec: MutationSpec) -> Self {
        Self { n, spec, budget: DEFAULT_BUDGET, seed: 0, trial_index: 0 }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trial(mut self, trial_index: u64) -> Self {
        self.trial_index = trial_index;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult<F> {
    pub evaluations: u64,
    pub success: bool,
    pub best_fitness: F,
    /// `α` of the mutation that produced the optimum, for heavy-tailed runs.
    pub alpha_at_success: Option<usize>,
}

/// Runs the EA, calling `observe` with the parent and its fitness after
/// initialization and after every accepted offspring.
pub fn run_observed<P, O>(problem: &P, config: &RunConfig, mut observe: O) -> Result<RunResult<P::Fitness>>
where
    P: Problem,
    O: FnMut(&BitString, &P::Fitness),
{
    if problem.dimension() != config.n {
        return Err(Error::DimensionMismatch { expected: problem.dimension(), actual: config.n });
    }
    if config.budget < 1 {
        return Err(Error::Domain("budget must be at least 1".into()));
    }
    let mutator = Mutator::new(&config.spec, config.n)?;
    let mut rng: Stream = trial_stream(config.seed, config.trial_index);

    let mut parent = BitString::random(config.n, &mut rng);
    let mut parent_fitness = problem.fitness(&parent);
    let mut evaluations = 1u64;
    observe(&parent, &parent_fitness);
    if problem.is_optimum(&parent) {
        return Ok(RunResult { evaluations, success: true, best_fitness: parent_fitness, alpha_at_success: None });
    }

    let mut child = parent.clone();
    while evaluations < config.budget {
        let flips = mutator.mutate_into(&parent, &mut child, &mut rng);
        let child_fitness = problem.fitness(&child);
        evaluations += 1;
        if child_fitness >= parent_fitness {
            std::mem::swap(&mut parent, &mut child);
            parent_fitness = child_fitness;
            observe(&parent, &parent_fitness);
            if problem.is_optimum(&parent) {
                return Ok(RunResult {
                    evaluations,
                    success: true,
                    best_fitness: parent_fitness,
                    alpha_at_success: flips.alpha,
                });
            }
        } else if problem.is_optimum(&child) {
            // An optimum is never worse than a non-optimal parent for the
            // problems here, but the predicate is checked on every evaluation.
            return Ok(RunResult {
                evaluations,
                success: true,
                best_fitness: child_fitness,
                alpha_at_success: flips.alpha,
            });
        }
    }
    Ok(RunResult { evaluations, success: false, best_fitness: parent_fitness, alpha_at_success: None })
}

/// Runs the EA once.
pub fn run<P: Problem>(problem: &P, config: &RunConfig) -> Result<RunResult<P::Fitness>> {
    run_observed(problem, config, |_, _| {})
}

/// How independent trials are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon thread pool; identical to `Sequential` without the `parallel` feature.
    #[default]
    Parallel,
}

/// Results of independent trials, ordered by trial index.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary<F> {
    /// Statistics over evaluation counts of successful runs only; `None`
    /// when no run succeeded.
    pub mean: Option<f64>,
    pub median: Option<f64>,
    /// Sample standard deviation (`n - 1` denominator), 0 for one success.
    pub stddev: Option<f64>,
    pub success_rate: f64,
    pub results: Vec<RunResult<F>>,
}

impl<F> Summary<F> {
    pub fn from_results(results: Vec<RunResult<F>>) -> Self {
        let mut evals: Vec<f64> = results.iter().filter(|r| r.success).map(|r| r.evaluations as f64).collect();
        let success_rate = evals.len() as f64 / results.len().max(1) as f64;
        if evals.is_empty() {
            return Self { mean: None, median: None, stddev: None, success_rate, results };
        }
        let count = evals.len() as f64;
        let mean = evals.iter().sum::<f64>() / count;
        let stddev = if evals.len() > 1 {
            (evals.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (count - 1.0)).sqrt()
        } else {
            0.0
        };
        evals.sort_by(f64::total_cmp);
        let mid = evals.len() / 2;
        let median = if evals.len() % 2 == 1 { evals[mid] } else { 0.5 * (evals[mid - 1] + evals[mid]) };
        Self { mean: Some(mean), median: Some(median), stddev: Some(stddev), success_rate, results }
    }
}

/// Runs trials `0..trials`; trial `k` uses the stream derived from
/// `(base.seed, k)`, so results do not depend on scheduling.
pub fn run_many<P: Problem>(problem: &P, base: &RunConfig, trials: u64) -> Result<Summary<P::Fitness>> {
    run_many_with(problem, base, trials, Execution::default())
}

pub fn run_many_with<P: Problem>(
    problem: &P,
    base: &RunConfig,
    trials: u64,
    execution: Execution,
) -> Result<Summary<P::Fitness>> {
    if trials < 1 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    let one = |k: u64| run(problem, &base.clone().with_trial(k));
    let results = match execution {
        Execution::Sequential => (0..trials).map(one).collect::<Result<Vec<_>>>()?,
        Execution::Parallel => parallel_trials(trials, one)?,
    };
    Ok(Summary::from_results(results))
}

#[cfg(feature = "parallel")]
fn parallel_trials<T, F>(trials: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    (0..trials).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_trials<T, F>(trials: u64, f: F) -> Result<Vec<T>>
where
    F: Fn(u64) -> Result<T>,
{
    (0..trials).map(f).collect()
}
