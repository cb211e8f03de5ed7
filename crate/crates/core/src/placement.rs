//! Equally spaced drift placements, exhaustive optima on small intervals and
//! sampled checks of the asymptotic optimality bound on large ones.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::env::{DriftParams, DriftPlacement};
use crate::error::{Error, Result};
use crate::hitting::expected_time;
use crate::interval_sums::bound_constant;

/// Default cap on the number of placements [`brute_force_best`] will enumerate.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// Two expected times closer than this (relative) count as a tie, so that
/// mirror-image placements resolve to the lexicographically smaller one.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// The placement `omega_{N,k}`: drift `i` at `floor(i (N-1) / k)`, `i = 1..=k`.
///
/// `k = 0` gives the drift-free placement.
pub fn equally_spaced(n: usize, k: usize, params: DriftParams) -> Result<DriftPlacement> {
    if n == 0 || k > n - 1 {
        return Err(Error::domain("k", k, "0 <= k <= N-1"));
    }
    let positions = (1..=k).map(|i| i * (n - 1) / k).collect();
    DriftPlacement::new(n, positions, params)
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Outcome of an exhaustive search over all `k`-subsets of `[1, N-1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub n: usize,
    pub k: usize,
    pub q: f64,
    pub p: f64,
    pub best_positions: Vec<usize>,
    pub best_time: f64,
    pub candidates_examined: u128,
    pub equally_spaced_positions: Vec<usize>,
    pub equally_spaced_time: f64,
    /// `equally_spaced_time - best_time`.
    pub gap: f64,
}

/// Minimizes `E^0[T_N]` over every placement of `k` strong drifts.
///
/// Ties within [`TIE_TOLERANCE`] go to the lexicographically smallest
/// position list. Refuses up front when `C(N-1, k)` exceeds `budget`.
pub fn brute_force_best(
    n: usize,
    k: usize,
    params: DriftParams,
    budget: u128,
) -> Result<OptimizationResult> {
    let reference = equally_spaced(n, k, params)?;
    let required = binomial(n - 1, k);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let mut omega = vec![params.q(); n - 1];
    let mut best: Option<(Vec<usize>, f64)> = None;
    let mut examined: u128 = 0;
    for combo in (1..n).combinations(k) {
        omega.iter_mut().for_each(|w| *w = params.q());
        for &pos in &combo {
            omega[pos - 1] = params.p();
        }
        let env = crate::env::Environment::new(n, omega.clone())?;
        let time = expected_time(&env);
        examined += 1;
        let better = match &best {
            None => true,
            Some((_, t)) => time < t - TIE_TOLERANCE * t.abs(),
        };
        if better {
            best = Some((combo, time));
        }
    }
    let (best_positions, best_time) = best.expect("at least one placement");
    let equally_spaced_time = expected_time(&reference.to_environment());
    Ok(OptimizationResult {
        n,
        k,
        q: params.q(),
        p: params.p(),
        best_positions,
        best_time,
        candidates_examined: examined,
        equally_spaced_positions: reference.positions().to_vec(),
        equally_spaced_time,
        gap: equally_spaced_time - best_time,
    })
}

/// Normalized gaps `(E_omega - E_eq) / N` over seeded random placements.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub n: usize,
    pub k: usize,
    pub q: f64,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub equally_spaced_time: f64,
    pub gaps: Vec<f64>,
    pub min_gap: f64,
    pub max_gap: f64,
    /// `-2 C(alpha) / N`; every gap must lie strictly above it.
    pub lower_bound: f64,
    pub bound_holds: bool,
}

/// Uniform `k`-subset of `[1, n-1]` for trial `trial`, drawn from its own
/// ChaCha stream so that a trial does not depend on how many others run.
pub fn sample_placement(n: usize, k: usize, seed: u64, trial: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut sites: Vec<usize> = (1..n).collect();
    let (chosen, _) = sites.partial_shuffle(&mut rng, k);
    let mut chosen = chosen.to_vec();
    chosen.sort_unstable();
    chosen
}

/// Compares `trials` random placements against `omega_{N,k}`.
pub fn theorem_gap_check(
    n: usize,
    k: usize,
    params: DriftParams,
    trials: usize,
    seed: u64,
) -> Result<GapReport> {
    if n < 2 {
        return Err(Error::domain("n", n, "n >= 2"));
    }
    if trials == 0 {
        return Err(Error::domain("trials", trials, "trials >= 1"));
    }
    let reference = equally_spaced(n, k, params)?;
    let eq_time = expected_time(&reference.to_environment());
    let gaps = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let positions = sample_placement(n, k, seed, trial);
            let env = DriftPlacement::new(n, positions, params)?.to_environment();
            Ok((expected_time(&env) - eq_time) / n as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    let min_gap = gaps.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_gap = gaps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lower_bound = -2.0 * bound_constant(params.alpha())? / n as f64;
    Ok(GapReport {
        n,
        k,
        q: params.q(),
        p: params.p(),
        trials,
        seed,
        equally_spaced_time: eq_time,
        min_gap,
        max_gap,
        lower_bound,
        bound_holds: min_gap > lower_bound,
        gaps,
    })
}

/// Smallest `n_0` past which the optimality bound beats `epsilon`:
/// `ceil(2 C(alpha) / epsilon)`, and at least 1.
pub fn epsilon_horizon(alpha: f64, epsilon: f64) -> Result<u64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain("alpha", alpha, "0 < alpha < 1"));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::domain("epsilon", epsilon, "epsilon > 0"));
    }
    let n0 = (2.0 * bound_constant(alpha)? / epsilon).ceil();
    Ok((n0 as u64).max(1))
}
