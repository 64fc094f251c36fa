//! Parsers for sweep ranges and per-instance rates.

use std::fmt;
use std::str::FromStr;

/// Inclusive list of sizes: `20`, `10..30` or `10..30:5`, or a comma list
/// of those.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sizes(pub Vec<usize>);

impl FromStr for Sizes {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            match part.split_once("..") {
                None => out.push(parse_size(part)?),
                Some((start, rest)) => {
                    let (end, step) = match rest.split_once(':') {
                        Some((end, step)) => (end, parse_size(step)?),
                        None => (rest, 1),
                    };
                    let (start, end) = (parse_size(start)?, parse_size(end)?);
                    if step == 0 {
                        return Err(format!("step must be positive in `{part}`"));
                    }
                    if start > end {
                        return Err(format!("empty range `{part}`"));
                    }
                    out.extend((start..=end).step_by(step));
                }
            }
        }
        Ok(Sizes(out))
    }
}

fn parse_size(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not a non-negative integer"))
}

/// A mutation rate, either literal or relative to the instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rate {
    Literal(f64),
    /// `c/n`.
    PerLength(f64),
    /// `m/n`.
    GapOverLength,
}

impl Rate {
    /// Resolves the rate for string length `n` and gap (or side size) `m`.
    pub fn resolve(self, n: usize, m: Option<usize>) -> Result<f64, String> {
        match self {
            Rate::Literal(p) => Ok(p),
            Rate::PerLength(c) => Ok(c / n as f64),
            Rate::GapOverLength => match m {
                Some(m) => Ok(m as f64 / n as f64),
                None => Err("rate `m/n` needs a problem with a parameter m".into()),
            },
        }
    }
}

impl FromStr for Rate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "m/n" {
            return Ok(Rate::GapOverLength);
        }
        if let Some(c) = s.strip_suffix("/n") {
            let c: f64 = c.parse().map_err(|_| format!("bad rate `{s}`"))?;
            return if c > 0.0 && c.is_finite() { Ok(Rate::PerLength(c)) } else { Err(format!("bad rate `{s}`")) };
        }
        let p: f64 = s.parse().map_err(|_| format!("bad rate `{s}`; use a number, `c/n` or `m/n`"))?;
        if p > 0.0 && p <= 1.0 {
            Ok(Rate::Literal(p))
        } else {
            Err(format!("rate {p} outside (0, 1]"))
        }
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rate::Literal(p) => write!(f, "{p}"),
            Rate::PerLength(c) => write!(f, "{c}/n"),
            Rate::GapOverLength => f.write_str("m/n"),
        }
    }
}

pub fn parse_beta(s: &str) -> Result<f64, String> {
    let beta: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if beta > 1.0 && beta.is_finite() {
        Ok(beta)
    } else {
        Err(format!("beta must exceed 1, got {beta}"))
    }
}
