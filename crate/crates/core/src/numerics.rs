//! Binomial coefficients, binomial probabilities and compensated summation.
//!
//! Binomial coefficients are exact integers (`u128`, then big integers up to
//! the largest row whose entries fit a double); beyond that they are
//! evaluated in log space with `lgamma`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Sums `terms` smallest magnitude first with compensation.
pub fn sum_ascending(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    terms.into_iter().collect::<CompensatedSum>().value()
}

/// `C(n, k)` as an exact integer, if it fits in a `u128`.
pub fn binomial_exact(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // acc * (n-k+i) is divisible by i because acc = C(n-k+i-1, i-1).
        acc = acc.checked_mul(n as u128 - k as u128 + i)? / i;
    }
    Some(acc)
}

/// Largest `n` for which every `C(n, k)` is below `f64::MAX`.
const MAX_FINITE_ROW: u64 = 1029;

fn binomial_big(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 1..=k {
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

/// `C(n, k)` rounded once to a double, or `None` when it overflows.
fn binomial_rounded(n: u64, k: u64) -> Option<f64> {
    if k > n {
        return Some(0.0);
    }
    if let Some(c) = binomial_exact(n, k) {
        return Some(c as f64);
    }
    if n <= MAX_FINITE_ROW {
        return binomial_big(n, k).to_f64().filter(|c| c.is_finite());
    }
    None
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if let Some(c) = binomial_rounded(n, k) {
        return c.ln();
    }
    libm::lgamma(n as f64 + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma((n - k) as f64 + 1.0)
}

/// `C(n, k)` as a double; `inf` beyond the representable range.
pub fn binomial(n: u64, k: u64) -> f64 {
    binomial_rounded(n, k).unwrap_or(f64::INFINITY)
}

/// `Pr[Bin(n, p) = k]`.
///
/// Uses direct products when they stay in the normal range, which keeps the
/// error at a few ulps; otherwise falls back to log space.
pub fn binomial_pmf(n: u64, k: u64, p: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    if p == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    let q = 1.0 - p;
    let log_power = k as f64 * p.ln() + (n - k) as f64 * q.ln();
    match binomial_rounded(n, k) {
        Some(c) if p == 0.5 => libm::ldexp(c, -(n as i32)),
        Some(c) if log_power > -700.0 => c * p.powi(k as i32) * q.powi((n - k) as i32),
        _ => (ln_binomial(n, k) + log_power).exp(),
    }
}

/// `ln Pr[Bin(n, p) = k]`.
pub fn ln_binomial_pmf(n: u64, k: u64, p: f64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let term = |count: u64, x: f64| if count == 0 { 0.0 } else { count as f64 * x.ln() };
    ln_binomial(n, k) + term(k, p) + term(n - k, 1.0 - p)
}
