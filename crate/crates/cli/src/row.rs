use std::cmp::Ordering;
use std::io::Write;

use anyhow::Result;

pub const HEADER: [&str; 15] = [
    "problem",
    "n",
    "m",
    "operator",
    "rate_or_beta",
    "runs",
    "mean_evals",
    "median_evals",
    "stddev_evals",
    "success_rate",
    "oracle_exact",
    "thm1_lower",
    "thm1_upper",
    "source",
    "seed",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Static,
    Fmut,
}

impl Operator {
    pub fn as_str(self) -> &'static str {
        match self {
            Operator::Static => "static",
            Operator::Fmut => "fmut",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Sim,
    Oracle,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Sim => "sim",
            Source::Oracle => "oracle",
        }
    }
}

/// One CSV line: a problem instance under one mutation operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub problem: &'static str,
    pub n: usize,
    pub m: usize,
    pub operator: Operator,
    pub rate_or_beta: f64,
    pub runs: u64,
    pub mean_evals: Option<f64>,
    pub median_evals: Option<f64>,
    pub stddev_evals: Option<f64>,
    pub success_rate: f64,
    pub oracle_exact: Option<f64>,
    pub bound_lower: Option<f64>,
    pub bound_upper: Option<f64>,
    pub source: Source,
    pub seed: u64,
}

impl Row {
    fn sort_key_cmp(&self, other: &Self) -> Ordering {
        self.problem
            .cmp(other.problem)
            .then(self.n.cmp(&other.n))
            .then(self.operator.as_str().cmp(other.operator.as_str()))
            .then(self.rate_or_beta.total_cmp(&other.rate_or_beta))
    }

    fn fields(&self) -> [String; 15] {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.problem.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.operator.as_str().to_string(),
            self.rate_or_beta.to_string(),
            self.runs.to_string(),
            opt(self.mean_evals),
            opt(self.median_evals),
            opt(self.stddev_evals),
            self.success_rate.to_string(),
            opt(self.oracle_exact),
            opt(self.bound_lower),
            opt(self.bound_upper),
            self.source.as_str().to_string(),
            self.seed.to_string(),
        ]
    }

    /// Relative deviation of the simulated mean from the exact value, for
    /// simulated rows that have both.
    pub fn oracle_deviation(&self) -> Option<f64> {
        match (self.source, self.oracle_exact) {
            (Source::Sim, Some(exact)) => Some(self.mean_evals.map_or(f64::INFINITY, |m| (m - exact).abs() / exact)),
            _ => None,
        }
    }
}

pub fn sort_rows(rows: &mut [Row]) {
    rows.sort_by(Row::sort_key_cmp);
}

pub fn write_csv<W: Write>(out: W, rows: &[Row]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(problem: &'static str, n: usize, operator: Operator, x: f64) -> Row {
        Row {
            problem,
            n,
            m: 2,
            operator,
            rate_or_beta: x,
            runs: 3,
            mean_evals: Some(12.5),
            median_evals: None,
            stddev_evals: Some(1.0),
            success_rate: 1.0,
            oracle_exact: None,
            bound_lower: None,
            bound_upper: None,
            source: Source::Sim,
            seed: 9,
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[row("jump", 10, Operator::Fmut, 1.5)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "problem,n,m,operator,rate_or_beta,runs,mean_evals,median_evals,stddev_evals,success_rate,\
             oracle_exact,thm1_lower,thm1_upper,source,seed\njump,10,2,fmut,1.5,3,12.5,,1,1,,,,sim,9\n"
        );
    }

    #[test]
    fn large_values_have_no_exponent() {
        let mut r = row("jump", 10, Operator::Static, 0.1);
        r.mean_evals = Some(2.5e16);
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r]).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains(",25000000000000000,"));
    }

    #[test]
    fn sorting() {
        let mut rows = vec![
            row("jump", 20, Operator::Static, 0.05),
            row("jump", 10, Operator::Static, 0.1),
            row("jump", 10, Operator::Fmut, 3.0),
            row("jump", 10, Operator::Fmut, 1.5),
            row("jump", 10, Operator::Static, 0.01),
        ];
        sort_rows(&mut rows);
        let keys: Vec<_> = rows.iter().map(|r| (r.n, r.operator.as_str(), r.rate_or_beta)).collect();
        assert_eq!(
            keys,
            vec![(10, "fmut", 1.5), (10, "fmut", 3.0), (10, "static", 0.01), (10, "static", 0.1), (20, "static", 0.05)]
        );
    }
}
