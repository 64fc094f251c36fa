use super::Problem;
use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// Number of ones.
pub fn onemax(x: &BitString) -> usize {
    x.count_ones()
}

/// Length of the longest all-ones prefix.
pub fn leadingones(x: &BitString) -> usize {
    x.bits().iter().take_while(|&&b| b).count()
}

/// `Jump_{m,n}`: `m + |x|` on `|x| ≤ n - m` and at the optimum, `n - |x|`
/// inside the valley.
pub fn jump(prob: &Jump, x: &BitString) -> i64 {
    prob.value_at_level(x.count_ones())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneMax {
    pub n: usize,
}

impl Problem for OneMax {
    type Fitness = usize;

    fn dimension(&self) -> usize {
        self.n
    }

    fn fitness(&self, x: &BitString) -> usize {
        onemax(x)
    }

    fn is_optimum(&self, x: &BitString) -> bool {
        x.is_all_ones()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeadingOnes {
    pub n: usize,
}

impl Problem for LeadingOnes {
    type Fitness = usize;

    fn dimension(&self) -> usize {
        self.n
    }

    fn fitness(&self, x: &BitString) -> usize {
        leadingones(x)
    }

    fn is_optimum(&self, x: &BitString) -> bool {
        x.is_all_ones()
    }
}

/// The jump function with gap `m` on strings of length `n`, `m ∈ [2..⌊n/2⌋]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Jump {
    n: usize,
    m: usize,
}

impl Jump {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if n < 4 || m < 2 || m > n / 2 {
            return Err(Error::InvalidProblem(format!("jump needs n >= 4 and m in [2..n/2], got n = {n}, m = {m}")));
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Fitness of every string with `ones` ones.
    pub fn value_at_level(&self, ones: usize) -> i64 {
        let (n, m, k) = (self.n as i64, self.m as i64, ones as i64);
        if k <= n - m || k == n {
            m + k
        } else {
            n - k
        }
    }
}

impl Problem for Jump {
    type Fitness = i64;

    fn dimension(&self) -> usize {
        self.n
    }

    fn fitness(&self, x: &BitString) -> i64 {
        jump(self, x)
    }

    fn is_optimum(&self, x: &BitString) -> bool {
        x.is_all_ones()
    }
}
