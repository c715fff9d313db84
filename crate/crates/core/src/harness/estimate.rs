//! Monte Carlo estimates with confidence intervals and CI-based verdicts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numeric::pairwise_sum;
use crate::stochastic::RngStream;
use crate::{GeomError, Result};

pub const Z95: f64 = 1.96;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithCI {
    pub mean: f64,
    pub stderr: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Number of trials that produced a value.
    pub n: usize,
    pub seed: u64,
}

impl EstimateWithCI {
    pub fn from_values(values: &[f64], seed: u64) -> Self {
        let n = values.len();
        if n == 0 {
            return EstimateWithCI { mean: f64::NAN, stderr: f64::NAN, ci_low: f64::NAN, ci_high: f64::NAN, n, seed };
        }
        let mean = pairwise_sum(values) / n as f64;
        let stderr = if n > 1 {
            let dev: Vec<f64> = values.iter().map(|x| (x - mean) * (x - mean)).collect();
            (pairwise_sum(&dev) / (n - 1) as f64 / n as f64).sqrt()
        } else {
            0.0
        };
        EstimateWithCI { mean, stderr, ci_low: mean - Z95 * stderr, ci_high: mean + Z95 * stderr, n, seed }
    }

    /// Same estimate divided by a positive constant.
    pub fn scaled(&self, s: f64) -> Self {
        EstimateWithCI {
            mean: self.mean * s,
            stderr: self.stderr * s.abs(),
            ci_low: (self.ci_low * s).min(self.ci_high * s),
            ci_high: (self.ci_low * s).max(self.ci_high * s),
            n: self.n,
            seed: self.seed,
        }
    }
}

/// Per-trial failure counts; such trials are skipped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub degenerate_hulls: usize,
    pub unbounded_polars: usize,
}

impl Diagnostics {
    pub fn merge(&mut self, other: &Diagnostics) {
        self.degenerate_hulls += other.degenerate_hulls;
        self.unbounded_polars += other.unbounded_polars;
    }
}

/// Runs `trials` independent trials, trial `i` on stream `(seed, i)`, in
/// parallel. Values are returned in trial order, so downstream reductions
/// do not depend on the thread count.
pub fn run_trials<F>(trials: usize, seed: u64, f: F) -> Result<(Vec<f64>, Diagnostics)>
where
    F: Fn(RngStream) -> Result<f64> + Sync,
{
    let outcomes: Vec<Result<f64>> = (0..trials as u64).into_par_iter().map(|i| f(RngStream::new(seed, i))).collect();
    let mut values = Vec::with_capacity(trials);
    let mut diag = Diagnostics::default();
    for o in outcomes {
        match o {
            Ok(v) => values.push(v),
            Err(GeomError::UnboundedPolar) => diag.unbounded_polars += 1,
            Err(GeomError::Degenerate(_)) | Err(GeomError::OriginNotInterior) => diag.degenerate_hulls += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((values, diag))
}

/// Estimate of `E f` over `trials` trials.
pub fn estimate<F>(trials: usize, seed: u64, f: F) -> Result<(EstimateWithCI, Diagnostics)>
where
    F: Fn(RngStream) -> Result<f64> + Sync,
{
    let (values, diag) = run_trials(trials, seed, f)?;
    Ok((EstimateWithCI::from_values(&values, seed), diag))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Violated,
    Inconclusive,
}

/// Direction of the inequality under test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "lhs<=rhs")]
    LhsLeRhs,
    #[serde(rename = "lhs>=rhs")]
    LhsGeRhs,
}

/// Consistent when the intervals are disjoint in the expected order,
/// violated when disjoint in the other order, inconclusive when overlapping.
pub fn verdict(lhs: &EstimateWithCI, rhs: &EstimateWithCI, dir: Direction) -> Verdict {
    let (lo, hi) = match dir {
        Direction::LhsLeRhs => (lhs, rhs),
        Direction::LhsGeRhs => (rhs, lhs),
    };
    if lo.ci_high < hi.ci_low {
        Verdict::Consistent
    } else if hi.ci_high < lo.ci_low {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn constant_has_zero_stderr() {
        let e = EstimateWithCI::from_values(&[2.0; 10], 1);
        assert_eq!((e.mean, e.stderr, e.ci_low, e.ci_high), (2.0, 0.0, 2.0, 2.0));
    }

    #[test]
    fn stderr_formula() {
        let e = EstimateWithCI::from_values(&[1.0, 2.0, 3.0, 4.0], 0);
        let sd = (5.0f64 / 3.0).sqrt();
        assert!((e.stderr - sd / 2.0).abs() < 1e-15);
        assert!((e.ci_high - e.mean - 1.96 * e.stderr).abs() < 1e-15);
    }

    #[test]
    fn doubling_halves_variance() {
        let f = |s: RngStream| Ok(s.rng().random::<f64>());
        let (a, _) = estimate(4000, 9, f).unwrap();
        let (b, _) = estimate(16000, 9, f).unwrap();
        let r = a.stderr / b.stderr;
        assert!((r / 2.0 - 1.0).abs() < 0.2, "{r}");
    }

    #[test]
    fn verdicts() {
        let mk = |m: f64| EstimateWithCI { mean: m, stderr: 0.1, ci_low: m - 0.196, ci_high: m + 0.196, n: 10, seed: 0 };
        assert_eq!(verdict(&mk(0.0), &mk(1.0), Direction::LhsLeRhs), Verdict::Consistent);
        assert_eq!(verdict(&mk(1.0), &mk(0.0), Direction::LhsLeRhs), Verdict::Violated);
        assert_eq!(verdict(&mk(1.0), &mk(0.0), Direction::LhsGeRhs), Verdict::Consistent);
        assert_eq!(verdict(&mk(0.0), &mk(0.2), Direction::LhsLeRhs), Verdict::Inconclusive);
    }

    #[test]
    fn skips_and_counts_failures() {
        let (vals, d) = run_trials(6, 0, |s| match s.index % 3 {
            0 => Err(GeomError::UnboundedPolar),
            1 => Err(GeomError::Degenerate("x")),
            _ => Ok(1.0),
        })
        .unwrap();
        assert_eq!(vals.len(), 2);
        assert_eq!(d, Diagnostics { degenerate_hulls: 2, unbounded_polars: 2 });
    }
}
