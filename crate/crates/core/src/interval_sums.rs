//! Interval sums `S_N`, circle sums `S~_N` and the per-length slices `sigma_d`.
//!
//! `S_N` sums `prod rho_k` over every subinterval of `[1, N-1]`, so that
//! `E^0[T_N] = N + 2 S_N`. Gluing site `N-1` back onto site `0` turns the
//! interior into the circle `Z_{N-1}`; `S~_N` is the same sum over every
//! circular window. Sites of a circle of size `m` are labelled `1..=m` and the
//! window of length `d` starting at `i` is
//! `{ ((i - 1 + t) mod m) + 1 : 0 <= t < d }`.
//!
//! For a two-drift environment the product over a window depends only on how
//! many strong drifts it holds, which gives
//! `sigma_d = sum_i (beta/alpha)^{n_i^(d)} alpha^d`.

use serde::Serialize;

use crate::env::{DriftParams, DriftPlacement, Environment};
use crate::error::{Error, Result};
use crate::hitting::prefix_products;

/// Contributions below this are dropped when truncation is requested.
pub const TRUNCATION_THRESHOLD: f64 = 1e-15;

/// Strong drifts on the circle `Z_m`, sites labelled `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CirclePlacement {
    m: usize,
    positions: Vec<usize>,
}

impl CirclePlacement {
    /// Positions are read modulo `m`, so both `0` and `m` name the glued site.
    pub fn new(m: usize, positions: &[usize]) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("circle size", m, "m >= 1"));
        }
        let mut sites = Vec::with_capacity(positions.len());
        for &pos in positions {
            if pos > m {
                return Err(Error::PositionOutOfRange {
                    position: pos,
                    low: 0,
                    high: m,
                });
            }
            sites.push(if pos == 0 { m } else { pos });
        }
        sites.sort_unstable();
        if let Some(w) = sites.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePosition { position: w[0] });
        }
        Ok(CirclePlacement {
            m,
            positions: sites,
        })
    }

    /// The interior `[1, N-1]` of an interval placement, glued into `Z_{N-1}`.
    pub fn from_placement(placement: &DriftPlacement) -> Result<Self> {
        CirclePlacement::new(placement.n().saturating_sub(1), placement.positions())
    }

    /// Drift `i` at `floor(i m / k)` for `i = 1..=k`.
    pub fn equally_spaced(m: usize, k: usize) -> Result<Self> {
        if k > m {
            return Err(Error::domain("k", k, "0 <= k <= m"));
        }
        let positions: Vec<usize> = (1..=k).map(|i| i * m / k).collect();
        CirclePlacement::new(m, &positions)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }
}

/// Strong-drift counts `n_i^(d)` of every circular window of length `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalCountProfile {
    pub m: usize,
    pub d: usize,
    pub k: usize,
    /// `counts[i - 1]` is the count for the window starting at site `i`.
    pub counts: Vec<usize>,
}

impl IntervalCountProfile {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `max - min <= 1`.
    pub fn is_almost_constant(&self) -> bool {
        is_almost_constant(&self.counts)
    }
}

/// True when every pair of entries differs by at most one.
pub fn is_almost_constant(counts: &[usize]) -> bool {
    match (counts.iter().min(), counts.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo <= 1,
        _ => true,
    }
}

// Prefix sums of the drift indicator over two laps of the circle.
fn lap_prefix(circle: &CirclePlacement) -> Vec<usize> {
    let m = circle.m;
    let mut ind = vec![0usize; m];
    for &pos in &circle.positions {
        ind[pos - 1] = 1;
    }
    let mut prefix = Vec::with_capacity(2 * m + 1);
    prefix.push(0);
    for t in 0..2 * m {
        prefix.push(prefix[t] + ind[t % m]);
    }
    prefix
}

fn check_window(m: usize, d: usize) -> Result<()> {
    if d == 0 || d > m {
        return Err(Error::domain("window length", d, "1 <= d <= m"));
    }
    Ok(())
}

fn counts_from_prefix(prefix: &[usize], m: usize, d: usize) -> Vec<usize> {
    (0..m).map(|start| prefix[start + d] - prefix[start]).collect()
}

/// Window counts for length `d`.
pub fn drift_counts(circle: &CirclePlacement, d: usize) -> Result<IntervalCountProfile> {
    check_window(circle.m, d)?;
    let prefix = lap_prefix(circle);
    Ok(IntervalCountProfile {
        m: circle.m,
        d,
        k: circle.k(),
        counts: counts_from_prefix(&prefix, circle.m, d),
    })
}

fn sigma_from_counts(counts: &[usize], ratio_powers: &[f64], alpha_d: f64) -> f64 {
    counts.iter().map(|&c| ratio_powers[c]).sum::<f64>() * alpha_d
}

// (beta/alpha)^c for c = 0..=k; powi gives 0^0 = 1.
fn ratio_powers(params: &DriftParams, k: usize) -> Vec<f64> {
    let r = params.beta() / params.alpha();
    (0..=k).map(|c| r.powi(c as i32)).collect()
}

/// `sigma_d = sum_i (beta/alpha)^{n_i^(d)} alpha^d`.
pub fn sigma_d(circle: &CirclePlacement, params: &DriftParams, d: usize) -> Result<f64> {
    let profile = drift_counts(circle, d)?;
    let powers = ratio_powers(params, circle.k());
    Ok(sigma_from_counts(
        &profile.counts,
        &powers,
        params.alpha().powi(d as i32),
    ))
}

/// Summation options for the circle sum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SumOptions {
    /// Stop at the first `d` with `m alpha^d < 1e-15` instead of running to `d = m`.
    pub truncate: bool,
}

fn truncation_reached(m: usize, bound_d: f64, opts: SumOptions) -> bool {
    opts.truncate && (m as f64) * bound_d < TRUNCATION_THRESHOLD
}

/// `sigma_1, sigma_2, ...` from window counts. Runs to `d = m` unless truncated.
pub fn sigma_profile(circle: &CirclePlacement, params: &DriftParams, opts: SumOptions) -> Vec<f64> {
    let m = circle.m;
    let prefix = lap_prefix(circle);
    let powers = ratio_powers(params, circle.k());
    let alpha = params.alpha();
    let mut sigma = Vec::with_capacity(m);
    let mut alpha_d = 1.0;
    for d in 1..=m {
        alpha_d *= alpha;
        if truncation_reached(m, alpha_d, opts) {
            break;
        }
        let counts = counts_from_prefix(&prefix, m, d);
        sigma.push(sigma_from_counts(&counts, &powers, alpha_d));
    }
    sigma
}

/// `S~_N = sum_d sigma_d` for a two-drift placement.
pub fn circle_sum(placement: &DriftPlacement, opts: SumOptions) -> Result<f64> {
    let circle = CirclePlacement::from_placement(placement)?;
    Ok(sigma_profile(&circle, &placement.params(), opts).iter().sum())
}

/// `sigma_d` for an arbitrary environment from running products of `rho~`
/// around the circle `Z_{N-1}`. Does not use window counts.
pub fn sigma_profile_direct(env: &Environment, opts: SumOptions) -> Result<Vec<f64>> {
    let rho = env.rho_vector();
    let m = rho.len();
    if m == 0 {
        return Err(Error::domain("n", env.n(), "n >= 2 for a circle"));
    }
    let rho_max = rho.iter().cloned().fold(0.0, f64::max);
    let mut d_max = m;
    if opts.truncate {
        let mut bound = 1.0;
        for d in 1..=m {
            bound *= rho_max;
            if truncation_reached(m, bound, opts) {
                d_max = d - 1;
                break;
            }
        }
    }
    let mut sigma = vec![0.0; d_max];
    for start in 0..m {
        let mut prod = 1.0;
        for (t, slot) in sigma.iter_mut().enumerate() {
            prod *= rho[(start + t) % m];
            *slot += prod;
        }
    }
    Ok(sigma)
}

/// `S_N`, the sum over subintervals of `[1, N-1]`. Zero for `N = 1`.
pub fn interval_sum(env: &Environment) -> f64 {
    prefix_products(env).iter().sum()
}

/// `C(alpha) = sum_{d >= 1} d alpha^d = alpha / (1 - alpha)^2`.
pub fn bound_constant(alpha: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::domain("alpha", alpha, "0 <= alpha < 1"));
    }
    Ok(alpha / ((1.0 - alpha) * (1.0 - alpha)))
}

/// `S_N`, `S~_N`, the bound `C(alpha)` and the slices `sigma_d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleSumReport {
    pub s: f64,
    pub s_tilde: f64,
    /// The largest single-site odds ratio used for the bound; `alpha` for
    /// two-drift placements.
    pub alpha: f64,
    pub bound: f64,
    pub sigma: Vec<f64>,
}

impl CircleSumReport {
    /// Report for a two-drift placement, `sigma_d` from window counts.
    pub fn for_placement(placement: &DriftPlacement, opts: SumOptions) -> Result<Self> {
        let circle = CirclePlacement::from_placement(placement)?;
        let params = placement.params();
        let sigma = sigma_profile(&circle, &params, opts);
        Ok(CircleSumReport {
            s: interval_sum(&placement.to_environment()),
            s_tilde: sigma.iter().sum(),
            alpha: params.alpha(),
            bound: bound_constant(params.alpha())?,
            sigma,
        })
    }

    /// Report for any environment with every `omega(i) > 1/2`; the bound
    /// uses the largest `rho_i` in place of `alpha`.
    pub fn for_environment(env: &Environment, opts: SumOptions) -> Result<Self> {
        let sigma = sigma_profile_direct(env, opts)?;
        let alpha = env.rho_vector().into_iter().fold(0.0, f64::max);
        Ok(CircleSumReport {
            s: interval_sum(env),
            s_tilde: sigma.iter().sum(),
            alpha,
            bound: bound_constant(alpha)?,
            sigma,
        })
    }

    /// `S~_N - S_N`.
    pub fn excess(&self) -> f64 {
        self.s_tilde - self.s
    }

    /// `0 <= S~ - S <= C(alpha)` up to `slack` on either side.
    pub fn sandwich_holds(&self, slack: f64) -> bool {
        let excess = self.excess();
        excess >= -slack && excess <= self.bound + slack
    }
}
