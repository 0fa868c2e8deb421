//! Seeded Monte Carlo verification of the probabilistic bound.
//!
//! An experiment draws M independent uniform point sets, computes each set's
//! star-discrepancy (exactly, or via a cover with certified slack delta),
//! and counts how often the value stays under the bound for the requested
//! confidence q. The pass frequency comes back with a Clopper-Pearson
//! interval so a run can be judged against q without pretending M is
//! infinite.
//!
//! Reproducibility contract: trial i draws from stream i of a counter-based
//! generator seeded with the master seed, so results are bit-identical
//! regardless of thread count or scheduling. Execution parameters
//! (parallelism, work budget) are therefore left out of the echoed config.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{Beta, ContinuousCDF};

use crate::bounds::theorem_bound;
use crate::discrepancy::{star_discrepancy_cover, star_discrepancy_exact};
use crate::error::{invalid, Error, Result};
use crate::geom::PointSet;

/// Generator identity echoed in reports; changing the generator or its
/// seeding scheme changes results, so it is named explicitly.
pub const RNG_ID: &str = "chacha12 (rand_chacha 0.9)";

/// Draws n points uniformly from [0,1]^s. `stream` selects an independent
/// substream of the master seed; trial i uses stream i.
pub fn generate_uniform(s: usize, n: usize, master_seed: u64, stream: u64) -> Result<PointSet> {
    if s == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    if n == 0 {
        return Err(invalid("sample size must be at least 1"));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    let points = (0..n)
        .map(|_| {
            let coords: Vec<f64> = (0..s).map(|_| rng.random::<f64>()).collect();
            crate::geom::Point::new(coords)
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(s, points)
}

/// How each trial's discrepancy is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum MethodSpec {
    /// Exact grid maximization; cost grows as (N+1)^s.
    Exact,
    /// Cover lower bound plus delta: a certified upper bound on the true
    /// value, so pass counts are conservative.
    Cover { delta: f64 },
}

/// Worker threads for the trial loop. Results never depend on this.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Auto,
    Fixed(usize),
}

impl std::str::FromStr for Parallelism {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if text.eq_ignore_ascii_case("auto") {
            return Ok(Parallelism::Auto);
        }
        match text.parse::<usize>() {
            Ok(t) if t >= 1 => Ok(Parallelism::Fixed(t)),
            _ => Err(invalid(format!(
                "parallelism is {text:?}, must be \"auto\" or an integer >= 1"
            ))),
        }
    }
}

/// Full experiment definition.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub s: usize,
    pub n: usize,
    pub q: f64,
    pub trials: u64,
    pub seed: u64,
    pub method: MethodSpec,
    pub parallelism: Parallelism,
    /// Confidence level of the Clopper-Pearson interval on the pass rate.
    pub ci_level: f64,
    pub budget: u64,
}

/// The part of the config that determines the results. Execution
/// parameters are deliberately absent: reports from runs that differ only
/// in parallelism or budget must be byte-identical.
#[derive(Debug, Clone, Serialize)]
pub struct EchoedConfig {
    pub s: usize,
    pub n: usize,
    pub q: f64,
    pub trials: u64,
    pub seed: u64,
    pub method: MethodSpec,
    pub ci_level: f64,
}

/// One trial's outcome. `value` is the quantity compared to the threshold:
/// the exact discrepancy, or cover value + delta for the cover method.
#[derive(Debug, Clone, Copy)]
pub struct TrialRecord {
    pub index: u64,
    pub value: f64,
    pub pass: bool,
}

/// Distribution summary of sqrt(N/s) * value over the trials. The scaling
/// matches the bound's decay, so summaries are comparable across N and s.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScaledSummary {
    pub min: f64,
    pub median: f64,
    pub max: f64,
    pub mean: f64,
}

/// Experiment results plus enough context to reproduce them.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub config: EchoedConfig,
    pub rng: &'static str,
    /// The bound the trials are tested against.
    pub threshold: f64,
    /// True for the cover method: recorded values over-estimate the true
    /// discrepancy by at most delta, so the pass rate is a lower bound.
    pub conservative: bool,
    pub pass_count: u64,
    pub empirical_probability: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub discrepancy_summary: ScaledSummary,
    #[serde(skip)]
    pub per_trial: Vec<TrialRecord>,
}

fn run_trial(cfg: &ExperimentConfig, threshold: f64, index: u64) -> Result<TrialRecord> {
    let inner = || -> Result<TrialRecord> {
        let points = generate_uniform(cfg.s, cfg.n, cfg.seed, index)?;
        let value = match cfg.method {
            MethodSpec::Exact => star_discrepancy_exact(&points, cfg.budget)?.value,
            MethodSpec::Cover { delta } => {
                star_discrepancy_cover(&points, delta, cfg.budget)?.value + delta
            }
        };
        Ok(TrialRecord {
            index,
            value,
            pass: value <= threshold,
        })
    };
    inner().map_err(|e| Error::Trial {
        index,
        source: Box::new(e),
    })
}

/// Runs the experiment. Trials are independent and order-indexed, so the
/// report is identical for any parallelism setting.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.trials == 0 {
        return Err(invalid("trial count must be at least 1"));
    }
    if !(cfg.ci_level > 0.0 && cfg.ci_level < 1.0) {
        return Err(invalid(format!(
            "ci level is {}, must be in (0,1)",
            cfg.ci_level
        )));
    }
    if let MethodSpec::Cover { delta } = cfg.method {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(invalid(format!("delta is {delta}, must be in (0,1]")));
        }
    }
    let threshold = theorem_bound(cfg.q, cfg.s, cfg.n as u64)?;

    let threads = match cfg.parallelism {
        Parallelism::Auto => 0,
        Parallelism::Fixed(t) => {
            if t == 0 {
                return Err(invalid("parallelism must be at least 1"));
            }
            t
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let per_trial: Vec<TrialRecord> = pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|i| run_trial(cfg, threshold, i))
            .collect::<Result<Vec<_>>>()
    })?;

    // Aggregation is sequential in trial order; nothing here may depend on
    // completion order.
    let pass_count = per_trial.iter().filter(|r| r.pass).count() as u64;
    let empirical_probability = pass_count as f64 / cfg.trials as f64;
    let scale = (cfg.n as f64 / cfg.s as f64).sqrt();
    let scaled: Vec<f64> = per_trial.iter().map(|r| scale * r.value).collect();
    let min = scaled.iter().copied().fold(f64::INFINITY, f64::min);
    let max = scaled.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = scaled.iter().sum::<f64>() / cfg.trials as f64;
    let mut sorted = scaled;
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    };

    let (ci_low, ci_high) = binomial_ci(pass_count, cfg.trials, cfg.ci_level)?;
    Ok(ExperimentReport {
        config: EchoedConfig {
            s: cfg.s,
            n: cfg.n,
            q: cfg.q,
            trials: cfg.trials,
            seed: cfg.seed,
            method: cfg.method,
            ci_level: cfg.ci_level,
        },
        rng: RNG_ID,
        threshold,
        conservative: matches!(cfg.method, MethodSpec::Cover { .. }),
        pass_count,
        empirical_probability,
        ci_low,
        ci_high,
        discrepancy_summary: ScaledSummary {
            min,
            median,
            max,
            mean,
        },
        per_trial,
    })
}

/// Clopper-Pearson interval for a binomial proportion, via Beta quantiles.
/// Endpoints clamp to 0 and 1 at the boundary counts.
pub fn binomial_ci(successes: u64, trials: u64, level: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(invalid("trial count must be at least 1"));
    }
    if successes > trials {
        return Err(invalid(format!(
            "successes {successes} exceed trials {trials}"
        )));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(invalid(format!("level is {level}, must be in (0,1)")));
    }
    let alpha = 1.0 - level;
    let k = successes as f64;
    let n = trials as f64;
    let beta_quantile = |a: f64, b: f64, p: f64| -> Result<f64> {
        Beta::new(a, b)
            .map_err(|e| Error::Internal(format!("beta({a},{b}): {e}")))
            .map(|d| d.inverse_cdf(p))
    };
    let low = if successes == 0 {
        0.0
    } else {
        beta_quantile(k, n - k + 1.0, alpha / 2.0)?
    };
    let high = if successes == trials {
        1.0
    } else {
        beta_quantile(k + 1.0, n - k, 1.0 - alpha / 2.0)?
    };
    Ok((low, high))
}
