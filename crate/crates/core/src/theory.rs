//! Closed-form runtime bounds for the (1+1) EA on jump functions.
//!
//! Everything is evaluated in log space and exponentiated once at the end.

use crate::error::{Error, Result};
use crate::numerics::{ln_binomial, CompensatedSum};
use crate::power_law::PowerLaw;

/// Which bound a [`BoundReport`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    /// Static-rate lower and upper bound on `T_p(m, n)`.
    StaticRate,
    /// Band `[X/2, 3X]` for the best static-rate time.
    OptimalRateBand,
    /// Explicit scale `C · 2^n · n^β` of the heavy-tailed worst case.
    WorstCaseScale,
    /// Explicit scale `C · m^{β-1/2} · X` of the heavy-tailed jump time.
    HeavyTailedJumpScale,
    /// Slow-down factor for rates off the optimum by a `(1 ± ε)` factor.
    DeviationPenalty,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub lower: f64,
    pub upper: f64,
    pub formula: Formula,
}

fn check_jump_domain(n: usize, m: usize) -> Result<()> {
    if m < 2 || m > n / 2 {
        return Err(Error::Domain(format!("need m in [2..n/2], got n = {n}, m = {m}")));
    }
    Ok(())
}

fn check_rate(p: f64) -> Result<()> {
    if p > 0.0 && p <= 0.5 {
        Ok(())
    } else {
        Err(Error::Domain(format!("rate must lie in (0, 1/2], got {p}")))
    }
}

/// `ln(1 / (p^m (1-p)^(n-m)))`.
fn ln_plateau_wait(n: usize, m: usize, p: f64) -> f64 {
    -(m as f64 * p.ln() + (n - m) as f64 * (-p).ln_1p())
}

/// `Pr[Bin(n, 1/2) <= m - 1] = C(n, <= m-1) 2^{-n}`, summed smallest term first.
pub fn lower_tail_half(n: usize, m: usize) -> f64 {
    let ln2n = n as f64 * std::f64::consts::LN_2;
    let mut s = CompensatedSum::new();
    for i in 0..m {
        s.add((ln_binomial(n as u64, i as u64) - ln2n).exp());
    }
    s.value()
}

/// Static rate `p` on `Jump_{m,n}`:
/// lower `(1 - C(n, <= m-1) 2^{-n}) / (p^m (1-p)^(n-m))`,
/// upper `1 / (p^m (1-p)^(n-m)) + 2 ln(n/m) / (p (1-p)^(n-1))`.
pub fn static_rate_bounds(n: usize, m: usize, p: f64) -> Result<BoundReport> {
    check_jump_domain(n, m)?;
    check_rate(p)?;
    let ln_wait = ln_plateau_wait(n, m, p);
    let prefactor = 1.0 - lower_tail_half(n, m);
    let lower = prefactor * ln_wait.exp();
    let ln_levels = (2.0 * (n as f64 / m as f64).ln()).ln() - p.ln() - (n - 1) as f64 * (-p).ln_1p();
    let upper = ln_wait.exp() + ln_levels.exp();
    Ok(BoundReport { lower, upper, formula: Formula::StaticRate })
}

/// `ln X` with `X = (n/m)^m (n/(n-m))^(n-m)`.
pub fn ln_optimal_scale(n: usize, m: usize) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    mf * (nf / mf).ln() + (nf - mf) * (nf / (nf - mf)).ln()
}

/// `X = (n/m)^m (n/(n-m))^(n-m)`, i.e. `1 / (p^m (1-p)^(n-m))` at `p = m/n`.
pub fn optimal_scale(n: usize, m: usize) -> Result<f64> {
    check_jump_domain(n, m)?;
    Ok(ln_optimal_scale(n, m).exp())
}

/// Band `[X/2, 3X]` containing the best static-rate expected time.
pub fn optimal_rate_band(n: usize, m: usize) -> Result<BoundReport> {
    let x = optimal_scale(n, m)?;
    Ok(BoundReport { lower: 0.5 * x, upper: 3.0 * x, formula: Formula::OptimalRateBand })
}

/// `(1/6) exp(m ε² / 5)`.
pub fn rate_deviation_penalty(m: usize, eps: f64) -> Result<f64> {
    if m < 2 || !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("need m >= 2 and 0 < eps < 1, got m = {m}, eps = {eps}")));
    }
    Ok((m as f64 * eps * eps / 5.0).exp() / 6.0)
}

/// Largest `n` accepted by [`worst_case_scale`].
pub const WORST_CASE_MAX_N: usize = 900;

/// `C^β_{⌊n/2⌋} · 2^n · n^β`.
pub fn worst_case_scale(n: usize, beta: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    if n > WORST_CASE_MAX_N {
        return Err(Error::Domain(format!("n = {n} exceeds {WORST_CASE_MAX_N}; the scale overflows")));
    }
    let c = PowerLaw::for_length(beta, n)?.normalizer();
    Ok((c.ln() + n as f64 * std::f64::consts::LN_2 + beta * (n as f64).ln()).exp())
}

/// `C^β_{⌊n/2⌋} · m^{β - 1/2} · X`, defined for `m > β - 1`.
pub fn heavy_tailed_jump_scale(n: usize, m: usize, beta: f64) -> Result<f64> {
    check_jump_domain(n, m)?;
    if beta.is_nan() || m as f64 <= beta - 1.0 {
        return Err(Error::Domain(format!("need m > beta - 1, got m = {m}, beta = {beta}")));
    }
    let c = PowerLaw::for_length(beta, n)?.normalizer();
    Ok((c.ln() + (beta - 0.5) * (m as f64).ln() + ln_optimal_scale(n, m)).exp())
}
