//! Fitness functions and their optimum predicates.

mod matching;
mod pseudo_boolean;
mod vertex_cover;

use std::cmp::Ordering;
use std::fmt::Debug;

pub use matching::{matching_fitness, Graph, Matching};
pub use pseudo_boolean::{jump, leadingones, onemax, Jump, LeadingOnes, OneMax};
pub use vertex_cover::CompleteBipartiteVc;

use crate::bitstring::BitString;

/// A maximization problem on bit strings of a fixed length.
pub trait Problem: Sync {
    type Fitness: Ord + Copy + Debug + Send;

    fn dimension(&self) -> usize;

    fn fitness(&self, x: &BitString) -> Self::Fitness;

    /// Termination predicate of the EA.
    fn is_optimum(&self, x: &BitString) -> bool;
}

/// Integer pair compared lexicographically, `primary` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LexFitness {
    pub primary: i64,
    pub secondary: i64,
}

impl LexFitness {
    pub fn new(primary: i64, secondary: i64) -> Self {
        Self { primary, secondary }
    }
}

impl Ord for LexFitness {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.primary, self.secondary).cmp(&(other.primary, other.secondary))
    }
}

impl PartialOrd for LexFitness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        assert!(LexFitness::new(0, -5) > LexFitness::new(-1, 0));
        assert!(LexFitness::new(0, 3) > LexFitness::new(0, 2));
        assert_eq!(LexFitness::new(2, 2).cmp(&LexFitness::new(2, 2)), Ordering::Equal);
    }
}
