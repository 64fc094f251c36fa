use super::{LexFitness, Problem};
use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// Minimum vertex cover on the complete bipartite graph `K_{m, n-m}`.
///
/// Vertices `0..m` form the small side `V₁`, vertices `m..n` the large side
/// `V₂`; every `V₁ × V₂` pair is an edge. Fitness is
/// `(-uncovered edges, -selected vertices)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompleteBipartiteVc {
    m: usize,
    n: usize,
}

impl CompleteBipartiteVc {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 1 || 2 * m > n {
            return Err(Error::InvalidProblem(format!(
                "complete bipartite cover needs 1 <= m <= n - m, got m = {m}, n = {n}"
            )));
        }
        Ok(Self { m, n })
    }

    pub fn small_side(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Selected vertices in `(V₁, V₂)`.
    fn side_counts(&self, x: &BitString) -> (usize, usize) {
        let a = x.bits()[..self.m].iter().filter(|&&b| b).count();
        let b = x.bits()[self.m..].iter().filter(|&&b| b).count();
        (a, b)
    }

    /// Indicator string of `V₁`, the minimum cover.
    pub fn small_side_cover(&self) -> BitString {
        BitString::from_bits((0..self.n).map(|i| i < self.m).collect())
    }

    /// Indicator string of `V₂`, the local optimum.
    pub fn large_side_cover(&self) -> BitString {
        BitString::from_bits((0..self.n).map(|i| i >= self.m).collect())
    }

    pub fn uncovered_edges(&self, x: &BitString) -> usize {
        let (a, b) = self.side_counts(x);
        (self.m - a) * (self.n - self.m - b)
    }
}

impl Problem for CompleteBipartiteVc {
    type Fitness = LexFitness;

    fn dimension(&self) -> usize {
        self.n
    }

    fn fitness(&self, x: &BitString) -> LexFitness {
        let (a, b) = self.side_counts(x);
        LexFitness::new(-((self.m - a) as i64 * (self.n - self.m - b) as i64), -((a + b) as i64))
    }

    fn is_optimum(&self, x: &BitString) -> bool {
        let (a, b) = self.side_counts(x);
        let small = a == self.m && b == 0;
        let large = a == 0 && b == self.n - self.m;
        small || (self.m == self.n - self.m && large)
    }
}
