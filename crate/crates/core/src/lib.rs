//! The (1+1) evolutionary algorithm with standard-bit and heavy-tailed
//! (power-law rate) mutation, together with exact runtime oracles and
//! closed-form runtime bounds for jump functions.
//!
//! * [`power_law`]: the discrete power law on `[1..⌊n/2⌋]`.
//! * [`mutation`]: standard-bit mutation, `fmut_β`, exact Hamming-distance laws.
//! * [`problems`]: OneMax, LeadingOnes, Jump, vertex cover on complete
//!   bipartite graphs, maximum matching.
//! * [`engine`]: the EA loop, budgets, seeded parallel trials.
//! * [`theory`]: closed-form bounds.
//! * [`oracle`]: exact expected runtimes on jump functions via the level
//!   chain, brute-force maximum matching.
//!
//! With the default `parallel` feature, independent trials and proposal
//! rows are computed on the rayon pool. Results are identical without it.

pub mod bitstring;
pub mod engine;
pub mod error;
pub mod mutation;
pub mod numerics;
pub mod oracle;
pub mod power_law;
pub mod problems;
pub mod rng;
pub mod theory;

pub use bitstring::BitString;
pub use engine::{run, run_many, run_many_with, run_observed, Execution, RunConfig, RunResult, Summary};
pub use error::{Error, Result};
pub use mutation::{Flips, MutationSpec, Mutator, RateAtom};
pub use power_law::PowerLaw;
pub use problems::{CompleteBipartiteVc, Graph, Jump, LeadingOnes, LexFitness, Matching, OneMax, Problem};
