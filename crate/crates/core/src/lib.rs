//! Expected hitting times of nearest-neighbour random walks on `{0, ..., N}`
//! in fixed environments, and the placement of strong drifts that makes the
//! walk fastest.
//!
//! The walk reflects at 0, is absorbed at `N`, and at interior site `i` steps
//! right with probability `omega(i)`. In a two-drift environment every site
//! is either a weak drift `q` or a strong drift `p`, with `1/2 < q < p <= 1`.
//!
//! * [`env`]: environments, drift parameters and placements.
//! * [`hitting`]: `E^x[T_N]` by closed form, increment recurrence and a
//!   tridiagonal solve.
//! * [`interval_sums`]: the interval sum `S_N`, the circle sum `S~_N`, the
//!   slices `sigma_d` and window drift counts.
//! * [`placement`]: the equally spaced placement, exhaustive optima and the
//!   sampled optimality-gap check.
//! * [`limit`]: the asymptotic time per site for equally spaced drifts.
//! * [`simulator`]: seeded Monte Carlo estimates.
//!
//! ```
//! use driftwalk::{expected_time, DriftParams, placement::equally_spaced};
//!
//! let params = DriftParams::new(0.6, 0.9).unwrap();
//! let env = equally_spaced(4, 1, params).unwrap().to_environment();
//! assert!((expected_time(&env) - (4.0 + 326.0 / 81.0)).abs() < 1e-12);
//! ```

pub mod env;
pub mod error;
pub mod hitting;
pub mod interval_sums;
pub mod limit;
pub mod placement;
pub mod simulator;
pub mod tridiag;

pub use env::{make_environment, DriftParams, DriftPlacement, Environment};
pub use error::{Error, Result};
pub use hitting::{
    expected_time, hitting_time_formula, hitting_time_linear_solve, hitting_time_recurrence,
    HittingTimeProfile,
};

/// Equality convention shared by the tests and the invariant checks.
pub mod tolerance {
    /// Relative tolerance for comparing two routes to the same quantity.
    pub const REL_TOL: f64 = 1e-10;
    /// Absolute floor below which differences are ignored.
    pub const ABS_FLOOR: f64 = 1e-12;

    /// `|a - b| <= max(REL_TOL * max(|a|, |b|), ABS_FLOOR)`.
    pub fn approx_eq(a: f64, b: f64) -> bool {
        let scale = a.abs().max(b.abs());
        (a - b).abs() <= (REL_TOL * scale).max(ABS_FLOOR)
    }
}

// Compile and run the guide's code listings as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hitting-times.md")]
    mod hitting_times {}
    #[doc = include_str!("../../../book/src/circle-sums.md")]
    mod circle_sums {}
    #[doc = include_str!("../../../book/src/placement.md")]
    mod placement {}
    #[doc = include_str!("../../../book/src/speed-limit.md")]
    mod speed_limit {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
