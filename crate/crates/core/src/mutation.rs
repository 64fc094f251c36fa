//! Standard-bit mutation, the heavy-tailed operator `fmut_β`, and exact
//! probabilities of the Hamming distance they produce.
//!
//! Offspring are generated by drawing the number of flipped bits
//! `K ~ Bin(n, p)` and then flipping `K` distinct positions chosen uniformly.
//! This has the same law as flipping every bit independently with
//! probability `p`.

use rand::seq::index;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::numerics::{binomial, binomial_pmf, sum_ascending};
use crate::power_law::PowerLaw;

/// One atom of an explicit mutation-rate distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateAtom {
    pub rate: f64,
    pub probability: f64,
}

/// How the per-bit mutation rate is chosen in each iteration.
#[derive(Debug, Clone, PartialEq)]
pub enum MutationSpec {
    /// Fixed rate `p ∈ (0, 1/2]`.
    StaticRate(f64),
    /// `fmut_β`: rate `α/n` with `α` drawn from the power law on `[1..⌊n/2⌋]`.
    HeavyTailed(f64),
    /// Rate drawn from a finite distribution on `(0, 1/2]`.
    ExplicitRateDistribution(Vec<RateAtom>),
}

fn check_rate(p: f64) -> Result<()> {
    if p > 0.0 && p <= 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidRate(p))
    }
}

impl MutationSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            MutationSpec::StaticRate(p) => check_rate(*p),
            MutationSpec::HeavyTailed(beta) => {
                if *beta > 1.0 && beta.is_finite() {
                    Ok(())
                } else {
                    Err(Error::ExponentTooSmall(*beta))
                }
            }
            MutationSpec::ExplicitRateDistribution(atoms) => {
                if atoms.is_empty() {
                    return Err(Error::InvalidRateDistribution("no atoms".into()));
                }
                for a in atoms {
                    check_rate(a.rate)?;
                    if a.probability.is_nan() || a.probability < 0.0 {
                        return Err(Error::InvalidRateDistribution(format!("negative probability {}", a.probability)));
                    }
                }
                let total = sum_ascending(atoms.iter().map(|a| a.probability).collect());
                if (total - 1.0).abs() > 8.0 * f64::EPSILON {
                    return Err(Error::InvalidRateDistribution(format!("probabilities sum to {total}")));
                }
                Ok(())
            }
        }
    }

    /// The `(rate, probability)` mixture this spec induces on strings of length `n`.
    pub fn rate_atoms(&self, n: usize) -> Result<Vec<RateAtom>> {
        self.validate()?;
        Ok(match self {
            MutationSpec::StaticRate(p) => vec![RateAtom { rate: *p, probability: 1.0 }],
            MutationSpec::HeavyTailed(beta) => PowerLaw::for_length(*beta, n)?
                .atoms()
                .map(|(alpha, w)| RateAtom { rate: alpha as f64 / n as f64, probability: w })
                .collect(),
            MutationSpec::ExplicitRateDistribution(atoms) => atoms.clone(),
        })
    }
}

/// Flips `k` distinct uniformly chosen positions of `child`, which must
/// equal `parent` on entry.
fn flip_random_positions<R: Rng + ?Sized>(parent: &BitString, child: &mut BitString, k: usize, rng: &mut R) {
    let n = child.len();
    if 2 * k <= n {
        // A position is already taken exactly when the child differs there.
        let mut flipped = 0;
        while flipped < k {
            let i = rng.random_range(0..n);
            if child.get(i) == parent.get(i) {
                child.flip(i);
                flipped += 1;
            }
        }
    } else {
        for i in index::sample(rng, n, k) {
            child.flip(i);
        }
    }
}

fn binomial_sampler(n: usize, p: f64) -> Binomial {
    // p is validated to (0, 1/2], so construction cannot fail.
    Binomial::new(n as u64, p).expect("valid binomial parameters")
}

/// Standard-bit mutation: every bit of `x` flips independently with
/// probability `p ∈ (0, 1/2]`. The parent is left untouched.
pub fn standard_bit_mutation<R: Rng + ?Sized>(x: &BitString, p: f64, rng: &mut R) -> Result<BitString> {
    check_rate(p)?;
    let mut y = x.clone();
    let k = binomial_sampler(x.len(), p).sample(rng) as usize;
    flip_random_positions(x, &mut y, k, rng);
    Ok(y)
}

/// `fmut_β`: draws `α` from `dist`, then applies standard-bit mutation
/// with rate `α/n`. Returns the offspring and the `α` used.
pub fn fmut<R: Rng + ?Sized>(x: &BitString, dist: &PowerLaw, rng: &mut R) -> Result<(BitString, usize)> {
    let n = x.len();
    if dist.support_max() != n / 2 {
        return Err(Error::DimensionMismatch { expected: n / 2, actual: dist.support_max() });
    }
    let alpha = dist.sample(rng);
    let y = standard_bit_mutation(x, alpha as f64 / n as f64, rng)?;
    Ok((y, alpha))
}

/// What one call of [`Mutator::mutate_into`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flips {
    /// Number of flipped bits, the Hamming distance to the parent.
    pub count: usize,
    /// The power-law `α` when the rate was heavy-tailed.
    pub alpha: Option<usize>,
}

#[derive(Debug, Clone)]
enum RateSource {
    Static(Binomial),
    /// `flips[α - 1]` samples the flip count for rate `α/n`.
    Heavy {
        dist: PowerLaw,
        flips: Vec<Binomial>,
    },
    Explicit {
        flips: Vec<Binomial>,
        cumulative: Vec<f64>,
    },
}

/// A [`MutationSpec`] resolved for a fixed string length; the operator
/// the EA calls in its inner loop.
#[derive(Debug, Clone)]
pub struct Mutator {
    n: usize,
    source: RateSource,
}

impl Mutator {
    pub fn new(spec: &MutationSpec, n: usize) -> Result<Self> {
        spec.validate()?;
        let source = match spec {
            MutationSpec::StaticRate(p) => RateSource::Static(binomial_sampler(n, *p)),
            MutationSpec::HeavyTailed(beta) => {
                let dist = PowerLaw::for_length(*beta, n)?;
                let flips = (1..=dist.support_max()).map(|a| binomial_sampler(n, a as f64 / n as f64)).collect();
                RateSource::Heavy { dist, flips }
            }
            MutationSpec::ExplicitRateDistribution(atoms) => {
                let mut acc = 0.0;
                let cumulative = atoms
                    .iter()
                    .map(|a| {
                        acc += a.probability;
                        acc
                    })
                    .collect();
                RateSource::Explicit { flips: atoms.iter().map(|a| binomial_sampler(n, a.rate)).collect(), cumulative }
            }
        };
        Ok(Self { n, source })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Writes a mutated copy of `parent` into `child`.
    pub fn mutate_into<R: Rng + ?Sized>(&self, parent: &BitString, child: &mut BitString, rng: &mut R) -> Flips {
        debug_assert_eq!(parent.len(), self.n);
        child.copy_from(parent);
        let (flips, alpha) = match &self.source {
            RateSource::Static(flips) => (flips, None),
            RateSource::Heavy { dist, flips } => {
                let a = dist.sample(rng);
                (&flips[a - 1], Some(a))
            }
            RateSource::Explicit { flips, cumulative } => {
                let u: f64 = rng.random::<f64>() * cumulative[cumulative.len() - 1];
                let i = cumulative.partition_point(|&c| c <= u).min(flips.len() - 1);
                (&flips[i], None)
            }
        };
        let count = flips.sample(rng) as usize;
        flip_random_positions(parent, child, count, rng);
        Flips { count, alpha }
    }

    pub fn mutate<R: Rng + ?Sized>(&self, parent: &BitString, rng: &mut R) -> (BitString, Option<usize>) {
        let mut child = parent.clone();
        let alpha = self.mutate_into(parent, &mut child, rng).alpha;
        (child, alpha)
    }
}

/// Exact `Pr[H(x, y) = k]` for `y` the mutation offspring of any `x` of length `n`.
pub fn hamming_pmf_exact(n: usize, spec: &MutationSpec, k: usize) -> Result<f64> {
    if k > n {
        return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
    }
    let terms = spec.rate_atoms(n)?.iter().map(|a| a.probability * binomial_pmf(n as u64, k as u64, a.rate)).collect();
    Ok(sum_ascending(terms))
}

/// Exact probability that mutation produces one specific string at Hamming
/// distance `d` from the parent.
pub fn point_mutation_prob(n: usize, spec: &MutationSpec, d: usize) -> Result<f64> {
    Ok(hamming_pmf_exact(n, spec, d)? / binomial(n as u64, d as u64))
}

/// Exact `E[H(x, fmut_β(x))] = C^{-1} Σ_{α=1}^{⌊n/2⌋} α^{1-β}`.
pub fn expected_hamming_exact(n: usize, beta: f64) -> Result<f64> {
    Ok(PowerLaw::for_length(beta, n)?.mean())
}
