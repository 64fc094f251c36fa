use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// A fixed-length bit string, the search-space element of every problem.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn zeros(n: usize) -> Self {
        Self { bits: vec![false; n] }
    }

    pub fn ones(n: usize) -> Self {
        Self { bits: vec![true; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Uniform random string of length `n`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self { bits: (0..n).map(|_| rng.random::<bool>()).collect() }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.bits[i] = value;
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `‖x‖₁`.
    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_all_ones(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    /// Hamming distance; only defined between strings of equal length.
    pub fn hamming(&self, other: &BitString) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), actual: other.len() });
        }
        Ok(self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count())
    }

    /// Overwrites `self` with `other`, reusing the allocation.
    pub fn copy_from(&mut self, other: &BitString) {
        self.bits.clone_from(&other.bits);
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidProblem(format!("not a bit: {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}
