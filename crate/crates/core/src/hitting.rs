//! Expected hitting times of site `N`, computed three independent ways.
//!
//! With `v_x = E^x[T_N]`, conditioning on the first step gives
//!
//! ```text
//! v_N = 0,    v_0 = v_1 + 1,    v_x = omega(x) v_{x+1} + (1 - omega(x)) v_{x-1} + 1.
//! ```
//!
//! * [`hitting_time_formula`] evaluates the closed form
//!   `N - x + 2 sum_{i=x}^{N-1} sum_{j=1}^{i} prod_{k=j}^{i} rho_k`.
//! * [`hitting_time_recurrence`] runs the increment recurrence
//!   `a_1 = -1`, `a_{x+1} = rho_x a_x - rho_x - 1` and sums increments back from `v_N = 0`.
//! * [`hitting_time_linear_solve`] hands the first-step equations to a
//!   tridiagonal solver.

use serde::Serialize;

use crate::env::Environment;
use crate::error::{Error, Result};
use crate::tridiag::solve_tridiagonal;

/// Largest `N` accepted by [`hitting_time_literal`].
pub const LITERAL_MAX_N: usize = 64;

/// Expected hitting times `v_0..=v_N` together with the increments
/// `a_x = v_x - v_{x-1}` for `x = 1..=N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HittingTimeProfile {
    v: Vec<f64>,
    a: Vec<f64>,
}

impl HittingTimeProfile {
    fn from_times(v: Vec<f64>) -> Self {
        let a = v.windows(2).map(|w| w[1] - w[0]).collect();
        HittingTimeProfile { v, a }
    }

    /// `v[x] = E^x[T_N]` for `x = 0..=N`.
    pub fn times(&self) -> &[f64] {
        &self.v
    }

    /// `a[x - 1] = v_x - v_{x-1}` for `x = 1..=N`.
    pub fn increments(&self) -> &[f64] {
        &self.a
    }

    /// `E^0[T_N]`.
    pub fn expected_time(&self) -> f64 {
        self.v[0]
    }

    pub fn n(&self) -> usize {
        self.v.len() - 1
    }
}

/// Prefix accumulation `P_i = rho_i (P_{i-1} + 1)`, i.e.
/// `P_i = sum_{j=1}^{i} prod_{k=j}^{i} rho_k`, returned for `i = 1..=N-1`.
pub(crate) fn prefix_products(env: &Environment) -> Vec<f64> {
    let mut acc = 0.0;
    env.omega()
        .iter()
        .map(|&w| {
            acc = (1.0 - w) / w * (acc + 1.0);
            acc
        })
        .collect()
}

fn check_start(env: &Environment, x: usize) -> Result<()> {
    if x > env.n() {
        return Err(Error::domain("start site", x, "0 <= x <= N"));
    }
    Ok(())
}

/// `E^x[T_N]` from the closed-form double sum.
pub fn hitting_time_formula(env: &Environment, x: usize) -> Result<f64> {
    check_start(env, x)?;
    let n = env.n();
    let tail: f64 = prefix_products(env).iter().skip(x.saturating_sub(1)).sum();
    // i = 0 contributes an empty inner sum.
    Ok((n - x) as f64 + 2.0 * tail)
}

/// The closed form at every start site, `v_x` for `x = 0..=N`.
pub fn hitting_time_formula_profile(env: &Environment) -> HittingTimeProfile {
    let n = env.n();
    let prefix = prefix_products(env);
    let mut v = vec![0.0; n + 1];
    let mut tail = 0.0;
    for x in (0..n).rev() {
        if x >= 1 {
            tail += prefix[x - 1];
        }
        v[x] = (n - x) as f64 + 2.0 * tail;
    }
    HittingTimeProfile::from_times(v)
}

/// The closed form evaluated as a literal triple loop, `O(N^3)`.
///
/// Only meant as a test oracle; refuses `N > 64`.
pub fn hitting_time_literal(env: &Environment, x: usize) -> Result<f64> {
    check_start(env, x)?;
    let n = env.n();
    if n > LITERAL_MAX_N {
        return Err(Error::SizeExceeded {
            n,
            max: LITERAL_MAX_N,
        });
    }
    let rho = env.rho_vector();
    let mut total = 0.0;
    for i in x.max(1)..n {
        for j in 1..=i {
            let mut prod = 1.0;
            for k in j..=i {
                prod *= rho[k - 1];
            }
            total += prod;
        }
    }
    Ok((n - x) as f64 + 2.0 * total)
}

/// Increment recurrence, `O(N)`.
pub fn hitting_time_recurrence(env: &Environment) -> HittingTimeProfile {
    let n = env.n();
    let mut a = Vec::with_capacity(n);
    a.push(-1.0);
    for &w in env.omega() {
        let rho = (1.0 - w) / w;
        let last = *a.last().unwrap();
        a.push(rho * last - rho - 1.0);
    }
    let mut v = vec![0.0; n + 1];
    for x in (0..n).rev() {
        v[x] = v[x + 1] - a[x];
    }
    HittingTimeProfile { v, a }
}

/// Direct solve of the first-step equations.
///
/// Unknowns are `v_0..v_{N-1}`; `v_N = 0` is substituted into the last row.
pub fn hitting_time_linear_solve(env: &Environment) -> HittingTimeProfile {
    let n = env.n();
    let mut lower = Vec::with_capacity(n - 1);
    let diag = vec![1.0; n];
    let mut upper = Vec::with_capacity(n - 1);
    let rhs = vec![1.0; n];
    if n > 1 {
        // v_0 - v_1 = 1
        upper.push(-1.0);
    }
    for x in 1..n {
        let w = env.at(x);
        // -(1 - w) v_{x-1} + v_x - w v_{x+1} = 1
        lower.push(-(1.0 - w));
        if x + 1 < n {
            upper.push(-w);
        }
    }
    let mut v = solve_tridiagonal(&lower, &diag, &upper, &rhs);
    v.push(0.0);
    HittingTimeProfile::from_times(v)
}

/// `E^0[T_N]` by the increment recurrence, without building a profile.
pub fn expected_time(env: &Environment) -> f64 {
    let mut a = -1.0;
    let mut v0 = 1.0;
    for &w in env.omega() {
        let rho = (1.0 - w) / w;
        a = rho * a - rho - 1.0;
        v0 -= a;
    }
    v0
}
