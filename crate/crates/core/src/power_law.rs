//! The discrete power law on `[1..N]`, `Pr[α] = α^{-β} / C` with
//! `C = Σ_{i=1}^{N} i^{-β}`.

use rand::Rng;

use crate::error::{Error, Result};

/// Discrete power-law distribution with exponent `beta` on `[1..support_max]`.
///
/// Immutable after construction; sampling is inverse transform over a
/// precomputed cumulative table.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerLaw {
    beta: f64,
    support_max: usize,
    normalizer: f64,
    /// `cumulative[k - 1] = Pr[X <= k]`; the last entry is exactly 1.
    cumulative: Vec<f64>,
}

impl PowerLaw {
    pub fn new(beta: f64, support_max: usize) -> Result<Self> {
        if beta.is_nan() || beta <= 1.0 || beta.is_infinite() {
            return Err(Error::ExponentTooSmall(beta));
        }
        if support_max < 1 {
            return Err(Error::EmptySupport);
        }
        // Tail sums, smallest terms first: tails[k] = Σ_{i=k+1}^{N} i^{-β}.
        let mut tails = vec![0.0; support_max + 1];
        let mut acc = crate::numerics::CompensatedSum::new();
        for i in (1..=support_max).rev() {
            acc.add((i as f64).powf(-beta));
            tails[i - 1] = acc.value();
        }
        let normalizer = tails[0];
        let cumulative = (1..=support_max).map(|k| 1.0 - tails[k] / normalizer).collect();
        Ok(Self { beta, support_max, normalizer, cumulative })
    }

    /// The distribution used by heavy-tailed mutation on bit strings of
    /// length `n`: support `[1..⌊n/2⌋]`.
    pub fn for_length(beta: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::EmptySupport);
        }
        Self::new(beta, n / 2)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn support_max(&self) -> usize {
        self.support_max
    }

    /// `C = Σ_{i=1}^{N} i^{-β}`.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    /// `Pr[X = alpha]`. Values outside the support are an error rather than 0.
    pub fn pmf(&self, alpha: usize) -> Result<f64> {
        if alpha < 1 || alpha > self.support_max {
            return Err(Error::OutsideSupport { value: alpha, max: self.support_max });
        }
        Ok((alpha as f64).powf(-self.beta) / self.normalizer)
    }

    /// `(alpha, Pr[X = alpha])` over the whole support.
    pub fn atoms(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        (1..=self.support_max).map(move |a| (a, (a as f64).powf(-self.beta) / self.normalizer))
    }

    /// Draws from the distribution by binary search on the cumulative table.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        if self.support_max == 1 {
            return 1;
        }
        let u: f64 = rng.random();
        let idx = self.cumulative.partition_point(|&c| c <= u);
        idx.min(self.support_max - 1) + 1
    }

    /// `E[X] = C^{-1} Σ α^{1-β}`.
    pub fn mean(&self) -> f64 {
        let terms: Vec<f64> = (1..=self.support_max).rev().map(|a| (a as f64).powf(1.0 - self.beta)).collect();
        terms.into_iter().collect::<crate::numerics::CompensatedSum>().value() / self.normalizer
    }
}

impl rand::distr::Distribution<usize> for PowerLaw {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        PowerLaw::sample(self, rng)
    }
}
