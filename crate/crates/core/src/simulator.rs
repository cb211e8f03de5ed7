//! Seeded Monte Carlo estimates of `E^0[T_N]`.
//!
//! Walk `j` draws from ChaCha8 stream `j` of the generator seeded with
//! `seed`, so a report depends only on `(env, walks, seed, max_steps)` and
//! never on how the walks are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::env::Environment;
use crate::error::{Error, Result};

/// Cap used when some `omega(i) <= 1/2` leaves no ballistic scale.
pub const FALLBACK_MAX_STEPS: u64 = 1_000_000_000;

/// Walks with `|z|` above this fail [`parity_check`].
pub const PARITY_Z_LIMIT: f64 = 4.0;

/// Sample statistics of `T_N` over independent walks from site 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub n: usize,
    pub walks: u64,
    pub seed: u64,
    pub max_steps: u64,
    pub mean: f64,
    pub stderr: f64,
    /// Walks stopped at `max_steps` before reaching `N`; they enter the
    /// mean as `max_steps`.
    pub truncated: u64,
}

impl SimulationReport {
    /// Truncated walks pull the mean down.
    pub fn biased_low(&self) -> bool {
        self.truncated > 0
    }
}

/// `100 N / (2 q_min - 1)` where `q_min` is the smallest right-step
/// probability, or [`FALLBACK_MAX_STEPS`] when `q_min <= 1/2`.
pub fn default_max_steps(env: &Environment) -> u64 {
    let n = env.n() as f64;
    let q_min = env.omega().iter().cloned().fold(1.0, f64::min);
    if q_min <= 0.5 {
        return FALLBACK_MAX_STEPS;
    }
    let steps = (100.0 * n / (2.0 * q_min - 1.0)).ceil();
    if steps >= FALLBACK_MAX_STEPS as f64 {
        FALLBACK_MAX_STEPS
    } else {
        steps as u64
    }
}

/// Runs walk number `index`; `None` if it has not reached `N` after `max_steps` steps.
pub fn walk_length(env: &Environment, seed: u64, index: u64, max_steps: u64) -> Option<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let n = env.n();
    let omega = env.omega();
    let mut site = 0usize;
    let mut steps = 0u64;
    while site != n {
        if steps == max_steps {
            return None;
        }
        steps += 1;
        if site == 0 {
            site = 1;
        } else if rng.random::<f64>() < omega[site - 1] {
            site += 1;
        } else {
            site -= 1;
        }
    }
    Some(steps)
}

/// Simulates `walks` independent walks from site 0.
pub fn simulate(env: &Environment, walks: u64, seed: u64, max_steps: u64) -> Result<SimulationReport> {
    if walks == 0 {
        return Err(Error::domain("walks", walks, "walks >= 1"));
    }
    if max_steps < env.n() as u64 {
        return Err(Error::domain("max_steps", max_steps, "max_steps >= N"));
    }
    let outcomes: Vec<Option<u64>> = (0..walks)
        .into_par_iter()
        .map(|j| walk_length(env, seed, j, max_steps))
        .collect();
    let truncated = outcomes.iter().filter(|o| o.is_none()).count() as u64;
    let lengths: Vec<u64> = outcomes.iter().map(|o| o.unwrap_or(max_steps)).collect();

    // Accumulate in walk-index order so the floating-point result is fixed.
    let sum: f64 = lengths.iter().map(|&l| l as f64).sum();
    let mean = sum / walks as f64;
    let stderr = if walks > 1 {
        let ss: f64 = lengths.iter().map(|&l| (l as f64 - mean).powi(2)).sum();
        (ss / (walks - 1) as f64 / walks as f64).sqrt()
    } else {
        0.0
    };
    Ok(SimulationReport {
        n: env.n(),
        walks,
        seed,
        max_steps,
        mean,
        stderr,
        truncated,
    })
}

/// `z = (mean - exact) / stderr` against an exact expected time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParityOutcome {
    pub z: f64,
    pub pass: bool,
}

/// Passes when `|z| <= 4`. A zero standard error passes only on an exact match.
pub fn parity_check(report: &SimulationReport, exact: f64) -> Result<ParityOutcome> {
    if report.truncated > 0 {
        return Err(Error::TruncatedSample {
            truncated: report.truncated,
        });
    }
    let diff = report.mean - exact;
    if report.stderr == 0.0 {
        if crate::tolerance::approx_eq(report.mean, exact) {
            return Ok(ParityOutcome { z: 0.0, pass: true });
        }
        return Ok(ParityOutcome {
            z: diff.signum() * f64::INFINITY,
            pass: false,
        });
    }
    let z = diff / report.stderr;
    Ok(ParityOutcome {
        z,
        pass: z.abs() <= PARITY_Z_LIMIT,
    })
}
