//! Exact expected optimization times of the (1+1) EA on jump functions and
//! exact maximum matchings of small graphs.
//!
//! Jump fitness depends only on the number of ones, so the EA's parent
//! performs a Markov chain on the levels `0..=n`. With elitist selection the
//! chain never moves to a worse level; processing levels from the best
//! downwards, every expected hitting time follows from already known ones:
//!
//! ```text
//! E_i = (1 + Σ_{j better than i} P[i→j] E_j) / Σ_{j better than i} P[i→j]
//! ```
//!
//! Staying in level `i` (rejected offspring and same-level offspring) only
//! contributes to the geometric waiting time.

use crate::engine::Execution;
use crate::error::{Error, Result};
use crate::mutation::{MutationSpec, RateAtom};
use crate::numerics::{binomial_pmf, ln_binomial, sum_ascending};
use crate::problems::{Graph, Jump};

/// Level-to-level offspring probabilities for one mutation operator.
///
/// `entry(i, j)` is the probability that mutating a parent with `i` ones
/// yields an offspring with `j` ones. Independent of the jump gap `m`, so
/// one proposal serves every `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelProposal {
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl LevelProposal {
    pub fn build(n: usize, spec: &MutationSpec) -> Result<Self> {
        Self::from_atoms(n, &spec.rate_atoms(n)?)
    }

    pub fn from_atoms(n: usize, atoms: &[RateAtom]) -> Result<Self> {
        Self::from_atoms_with(n, atoms, Execution::default())
    }

    /// Like [`from_atoms`](Self::from_atoms), computing rows as `execution` says.
    pub fn from_atoms_with(n: usize, atoms: &[RateAtom], execution: Execution) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("string length must be positive".into()));
        }
        let ln_choose: Vec<Vec<f64>> =
            (0..=n).map(|a| (0..=a).map(|k| ln_binomial(a as u64, k as u64)).collect()).collect();
        let logs: Vec<(f64, f64, f64)> =
            atoms.iter().map(|a| (a.probability.ln(), a.rate.ln(), (-a.rate).ln_1p())).collect();
        let row = |i: usize| -> Vec<f64> {
            (0..=n)
                .map(|j| {
                    // b ones turn to zero, c = j - i + b zeros turn to one.
                    let b_min = i.saturating_sub(j);
                    let b_max = i.min(n - j);
                    let mut terms = Vec::with_capacity((b_max + 1 - b_min) * logs.len());
                    for b in b_min..=b_max {
                        let c = j + b - i;
                        let flips = (b + c) as f64;
                        let ln_ways = ln_choose[i][b] + ln_choose[n - i][c];
                        for &(ln_w, ln_p, ln_q) in &logs {
                            terms.push((ln_w + ln_ways + flips * ln_p + (n as f64 - flips) * ln_q).exp());
                        }
                    }
                    sum_ascending(terms)
                })
                .collect()
        };
        let rows = match execution {
            Execution::Sequential => (0..=n).map(row).collect(),
            Execution::Parallel => parallel_rows(n + 1, row),
        };
        Ok(Self { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, from: usize, to: usize) -> f64 {
        self.rows[from][to]
    }

    pub fn row(&self, from: usize) -> &[f64] {
        &self.rows[from]
    }
}

#[cfg(feature = "parallel")]
fn parallel_rows<F: Fn(usize) -> Vec<f64> + Sync + Send>(count: usize, row: F) -> Vec<Vec<f64>> {
    use rayon::prelude::*;
    (0..count).into_par_iter().map(row).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_rows<F: Fn(usize) -> Vec<f64>>(count: usize, row: F) -> Vec<Vec<f64>> {
    (0..count).map(row).collect()
}

/// The level chain of the (1+1) EA on `Jump_{m,n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelChain {
    jump: Jump,
    proposal: LevelProposal,
    /// Levels in increasing fitness:
    /// `n-1, n-2, .., n-m+1, 0, 1, .., n-m, n`.
    fitness_rank: Vec<usize>,
}

impl LevelChain {
    pub fn new(m: usize, proposal: LevelProposal) -> Result<Self> {
        let jump = Jump::new(m, proposal.n())?;
        let n = proposal.n();
        let fitness_rank = (n - m + 1..n).rev().chain(0..=n - m).chain(std::iter::once(n)).collect();
        Ok(Self { jump, proposal, fitness_rank })
    }

    pub fn n(&self) -> usize {
        self.jump.n()
    }

    pub fn m(&self) -> usize {
        self.jump.m()
    }

    pub fn proposal(&self) -> &LevelProposal {
        &self.proposal
    }

    pub fn fitness_rank(&self) -> &[usize] {
        &self.fitness_rank
    }

    /// Expected number of iterations to reach the optimum from each level
    /// (`0` for level `n`).
    pub fn hitting_times(&self) -> Result<Vec<f64>> {
        let n = self.n();
        let mut times = vec![0.0; n + 1];
        for (rank, &level) in self.fitness_rank.iter().enumerate().rev().skip(1) {
            let better = &self.fitness_rank[rank + 1..];
            let escape = sum_ascending(better.iter().map(|&j| self.proposal.entry(level, j)).collect());
            if escape <= 0.0 || !escape.is_finite() {
                return Err(Error::UnreachableLevel { level });
            }
            let mut weighted: Vec<f64> = better.iter().map(|&j| self.proposal.entry(level, j) * times[j]).collect();
            weighted.push(1.0);
            times[level] = sum_ascending(weighted) / escape;
        }
        Ok(times)
    }

    /// Expected number of fitness evaluations until the optimum is
    /// evaluated, counting the uniformly random initial point.
    pub fn expected_runtime(&self) -> Result<f64> {
        let n = self.n();
        let times = self.hitting_times()?;
        let mut terms: Vec<f64> = (0..=n).map(|i| binomial_pmf(n as u64, i as u64, 0.5) * times[i]).collect();
        terms.push(1.0);
        Ok(sum_ascending(terms))
    }
}

/// Builds the level chain for `Jump_{m,n}` under `spec`.
pub fn build_level_chain(n: usize, m: usize, spec: &MutationSpec) -> Result<LevelChain> {
    Jump::new(m, n)?;
    LevelChain::new(m, LevelProposal::build(n, spec)?)
}

/// Exact `E[T]` of the (1+1) EA with `spec` on `Jump_{m,n}`.
pub fn exact_expected_runtime_jump(n: usize, m: usize, spec: &MutationSpec) -> Result<f64> {
    build_level_chain(n, m, spec)?.expected_runtime()
}

/// Edge limit of [`brute_force_max_matching`].
pub const MAX_BRUTE_FORCE_EDGES: usize = 24;

/// Size of a maximum matching by exhaustive branch and bound over edges.
pub fn brute_force_max_matching(g: &Graph) -> Result<usize> {
    if g.edge_count() > MAX_BRUTE_FORCE_EDGES {
        return Err(Error::TooManyEdges { edges: g.edge_count(), limit: MAX_BRUTE_FORCE_EDGES });
    }
    fn search(edges: &[(usize, usize)], idx: usize, used: &mut [bool], size: usize, best: &mut usize, cap: usize) {
        if size > *best {
            *best = size;
        }
        if idx == edges.len() || *best == cap || size + (edges.len() - idx) <= *best {
            return;
        }
        let (u, w) = edges[idx];
        if !used[u] && !used[w] {
            used[u] = true;
            used[w] = true;
            search(edges, idx + 1, used, size + 1, best, cap);
            used[u] = false;
            used[w] = false;
        }
        search(edges, idx + 1, used, size, best, cap);
    }
    let mut used = vec![false; g.vertex_count()];
    let mut best = 0;
    let cap = g.vertex_count() / 2;
    search(g.edges(), 0, &mut used, 0, &mut best, cap);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::binomial;
    use crate::power_law::PowerLaw;

    #[test]
    fn row_scheduling_does_not_change_proposal() {
        let atoms = MutationSpec::HeavyTailed(1.5).rate_atoms(40).unwrap();
        let seq = LevelProposal::from_atoms_with(40, &atoms, Execution::Sequential).unwrap();
        let par = LevelProposal::from_atoms_with(40, &atoms, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn rate_half_gives_uniform_rows() {
        let p = LevelProposal::build(4, &MutationSpec::StaticRate(0.5)).unwrap();
        for i in 0..=4 {
            for j in 0..=4 {
                assert!((p.entry(i, j) - binomial(4, j as u64) / 16.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn no_flip_probability() {
        let p = LevelProposal::build(4, &MutationSpec::StaticRate(0.25)).unwrap();
        assert!((p.entry(0, 0) - 0.316_406_25).abs() < 1e-15);
    }

    #[test]
    fn rows_sum_to_one() {
        let p = LevelProposal::build(30, &MutationSpec::HeavyTailed(1.5)).unwrap();
        for i in 0..=30 {
            let s: f64 = sum_ascending(p.row(i).to_vec());
            assert!((s - 1.0).abs() < 1e-10, "row {i}: {s}");
        }
    }

    #[test]
    fn fitness_rank_matches_jump_order() {
        let chain = build_level_chain(12, 3, &MutationSpec::StaticRate(0.1)).unwrap();
        assert_eq!(chain.fitness_rank(), &[11, 10, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 12]);
        let j = Jump::new(3, 12).unwrap();
        assert!(chain.fitness_rank().windows(2).all(|w| j.value_at_level(w[0]) < j.value_at_level(w[1])));
    }

    #[test]
    fn plateau_time_is_geometric() {
        for &(n, m, p) in &[(20usize, 3usize, 0.05), (30, 5, 1.0 / 6.0), (50, 4, 0.5)] {
            let chain = build_level_chain(n, m, &MutationSpec::StaticRate(p)).unwrap();
            let e = chain.hitting_times().unwrap()[n - m];
            let expected = 1.0 / (p.powi(m as i32) * (1.0 - p).powi((n - m) as i32));
            assert!((e / expected - 1.0).abs() < 1e-12, "n={n} m={m}: {e} vs {expected}");
        }
    }

    #[test]
    fn small_instance_plateau_term() {
        let chain = build_level_chain(4, 2, &MutationSpec::StaticRate(0.5)).unwrap();
        assert!((chain.hitting_times().unwrap()[2] - 16.0).abs() < 1e-12);
    }

    #[test]
    fn heavy_tailed_chain_is_rate_mixture() {
        let n = 24;
        let beta = 1.5;
        let heavy = LevelProposal::build(n, &MutationSpec::HeavyTailed(beta)).unwrap();
        let dist = PowerLaw::for_length(beta, n).unwrap();
        let statics: Vec<(f64, LevelProposal)> = dist
            .atoms()
            .map(|(a, w)| (w, LevelProposal::build(n, &MutationSpec::StaticRate(a as f64 / n as f64)).unwrap()))
            .collect();
        for i in 0..=n {
            for j in 0..=n {
                let mix: f64 = statics.iter().map(|(w, p)| w * p.entry(i, j)).sum();
                assert!((heavy.entry(i, j) - mix).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_invalid_gap() {
        assert!(exact_expected_runtime_jump(10, 1, &MutationSpec::StaticRate(0.1)).is_err());
        assert!(exact_expected_runtime_jump(10, 6, &MutationSpec::StaticRate(0.1)).is_err());
    }

    #[test]
    fn matching_oracle_small_graphs() {
        assert_eq!(brute_force_max_matching(&Graph::triangle()).unwrap(), 1);
        assert_eq!(brute_force_max_matching(&Graph::path(3)).unwrap(), 2);
        assert_eq!(brute_force_max_matching(&Graph::petersen()).unwrap(), 5);
        assert_eq!(brute_force_max_matching(&Graph::new(4, vec![]).unwrap()).unwrap(), 0);
        // Star K_{1,5}: only one edge can be chosen.
        let star = Graph::new(6, (1..6).map(|v| (0, v)).collect()).unwrap();
        assert_eq!(brute_force_max_matching(&star).unwrap(), 1);
        let big = Graph::path(25);
        assert_eq!(
            brute_force_max_matching(&big),
            Err(Error::TooManyEdges { edges: 25, limit: MAX_BRUTE_FORCE_EDGES })
        );
    }
}
