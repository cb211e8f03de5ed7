//! Asymptotic time per site for equally spaced strong drifts.
//!
//! With one strong drift every `a` sites, the circle of size `ak` splits into
//! `k` gaps. Each gap contributes the drift-free windows
//! `s_0 = sum_{i=1}^{a-1} (a - i) alpha^i` and, for every `n >= 1`, the windows
//! holding exactly `n` strong drifts,
//! `s_n = beta^n alpha^{(a-1)(n-1)} (sum_{r=0}^{a-1} alpha^r)^2`.
//! The limit of `E^0[T_{ak}] / (ak)` is `1 + (2/a)(s_0 + sum_{n>=1} s_n)`.
//!
//! [`speed_limit_printed`] evaluates a separately published rational closed
//! form. It is kept for comparison only: its inner ratio carries the opposite
//! sign to the series (for example `-8/7` against `8/7` at `a = 2`,
//! `alpha = 1/2`, `beta = 1/4`), so it is never used as the limit.

use serde::Serialize;

use crate::env::DriftParams;
use crate::error::{Error, Result};
use crate::hitting::expected_time;
use crate::placement::equally_spaced;

/// Largest interval accepted by [`finite_k_speed`].
pub const MAX_SITES: usize = 100_000;

/// Denominators of the printed expression smaller than this are singular.
pub const SINGULARITY_TOLERANCE: f64 = 1e-14;

/// Gap `a` between strong drifts plus the drift probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitParams {
    a: u32,
    drift: DriftParams,
}

impl LimitParams {
    pub fn new(a: u32, q: f64, p: f64) -> Result<Self> {
        if a == 0 {
            return Err(Error::domain("a", a, "a >= 1"));
        }
        Ok(LimitParams {
            a,
            drift: DriftParams::new(q, p)?,
        })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn drift(&self) -> DriftParams {
        self.drift
    }

    pub fn alpha(&self) -> f64 {
        self.drift.alpha()
    }

    pub fn beta(&self) -> f64 {
        self.drift.beta()
    }

    /// Ratio `beta alpha^{a-1}` between consecutive `s_n`.
    pub fn tail_ratio(&self) -> f64 {
        self.beta() * self.alpha().powi(self.a as i32 - 1)
    }

    // (sum_{r=0}^{a-1} alpha^r)^2
    fn window_square(&self) -> f64 {
        let geo: f64 = (0..self.a as i32).map(|r| self.alpha().powi(r)).sum();
        geo * geo
    }
}

/// `s_0 = sum_{i=1}^{a-1} (a - i) alpha^i`.
pub fn s_zero(params: &LimitParams) -> f64 {
    let a = params.a as i32;
    (1..a)
        .map(|i| (a - i) as f64 * params.alpha().powi(i))
        .sum()
}

/// `s_n` for `n >= 1`.
pub fn s_n(params: &LimitParams, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("n", n, "n >= 1"));
    }
    let a = params.a as i32;
    let n = n as i32;
    Ok(params.beta().powi(n) * params.alpha().powi((a - 1) * (n - 1)) * params.window_square())
}

/// `sum_{n > m} s_n` in closed form; `m = 0` gives the whole tail.
pub fn s_tail(params: &LimitParams, m: u32) -> f64 {
    let r = params.tail_ratio();
    let first = params.beta() * r.powi(m as i32) * params.window_square();
    first / (1.0 - r)
}

/// `lim E^0[T_{ak}] / (ak) = 1 + (2/a)(s_0 + sum_n s_n)`.
pub fn speed_limit_series(params: &LimitParams) -> f64 {
    1.0 + 2.0 / params.a as f64 * (s_zero(params) + s_tail(params, 0))
}

/// The printed rational closed form and its inner ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrintedLimit {
    /// `1 + (2/a) * inner_ratio`.
    pub value: f64,
    pub inner_ratio: f64,
    pub numerator: f64,
    pub denominator: f64,
}

/// Literal evaluation of
/// `1 + (2/a) (alpha^{a+2} - a alpha^3 + (a-1) alpha^2 + ((a alpha^2 - (a+1) alpha) alpha^a + alpha) beta)
///  / ((alpha^2 - 2 alpha + 1) alpha^a beta - alpha^3 + 2 alpha^2 - alpha)`.
pub fn speed_limit_printed(params: &LimitParams) -> Result<PrintedLimit> {
    let a = params.a as f64;
    let ai = params.a as i32;
    let al = params.alpha();
    let be = params.beta();
    let al_a = al.powi(ai);
    let numerator = al.powi(ai + 2) - a * al.powi(3)
        + (a - 1.0) * al.powi(2)
        + ((a * al.powi(2) - (a + 1.0) * al) * al_a + al) * be;
    let denominator = (al.powi(2) - 2.0 * al + 1.0) * al_a * be - al.powi(3) + 2.0 * al.powi(2) - al;
    if denominator.abs() < SINGULARITY_TOLERANCE {
        return Err(Error::Singularity { denominator });
    }
    let inner_ratio = numerator / denominator;
    Ok(PrintedLimit {
        value: 1.0 + 2.0 / a * inner_ratio,
        inner_ratio,
        numerator,
        denominator,
    })
}

/// `E^0[T_{ak}] / (ak)` for the equally spaced placement with `k` drifts.
///
/// For `a = 1` the placement `floor(i (N-1) / N)` puts its first drift on
/// the reflecting site 0, which has no effect; the other `N - 1` fill the
/// interior, so the environment is homogeneous `p`.
pub fn finite_k_speed(a: u32, k: usize, params: DriftParams) -> Result<f64> {
    let n = (a as usize)
        .checked_mul(k)
        .ok_or(Error::SizeExceeded { n: usize::MAX, max: MAX_SITES })?;
    if n < 2 {
        return Err(Error::domain("a*k", n, "a*k >= 2"));
    }
    if n > MAX_SITES {
        return Err(Error::SizeExceeded { n, max: MAX_SITES });
    }
    let interior = if a == 1 { n - 1 } else { k };
    let env = equally_spaced(n, interior, params)?.to_environment();
    Ok(expected_time(&env) / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hitting::hitting_time_linear_solve;
    use crate::tolerance::approx_eq;

    fn lp(a: u32) -> LimitParams {
        // alpha = 1/2, beta = 1/4
        LimitParams::new(a, 2.0 / 3.0, 0.8).unwrap()
    }

    // Windows of the a-periodic line (strong drift at offset a-1), one start
    // per period, summed directly until the products vanish.
    fn brute_window_sum(params: &LimitParams) -> f64 {
        let a = params.a() as usize;
        let rho = |site: usize| {
            if site % a == a - 1 {
                params.beta()
            } else {
                params.alpha()
            }
        };
        let mut total = 0.0;
        for start in 0..a {
            let mut prod = 1.0;
            for len in 0.. {
                prod *= rho(start + len);
                total += prod;
                if prod < 1e-20 {
                    break;
                }
            }
        }
        total
    }

    #[test]
    fn s_zero_examples() {
        assert_eq!(s_zero(&lp(1)), 0.0);
        assert!(approx_eq(s_zero(&lp(2)), 0.5));
        assert!(approx_eq(s_zero(&lp(3)), 1.25));
    }

    #[test]
    fn s_n_examples() {
        let p1 = LimitParams::new(1, 0.6, 0.75).unwrap();
        for n in 1..6 {
            assert!(approx_eq(s_n(&p1, n).unwrap(), p1.beta().powi(n as i32)));
        }
        assert!(approx_eq(s_n(&lp(2), 1).unwrap(), 9.0 / 16.0));
        assert!(approx_eq(s_n(&lp(2), 2).unwrap(), 9.0 / 128.0));
        assert!(s_n(&lp(2), 0).is_err());
    }

    #[test]
    fn s_n_decreases_by_tail_ratio() {
        let p = lp(4);
        for n in 1..10 {
            let ratio = s_n(&p, n + 1).unwrap() / s_n(&p, n).unwrap();
            assert!(approx_eq(ratio, p.tail_ratio()));
        }
    }

    #[test]
    fn tail_identity() {
        for a in [1, 2, 5] {
            let p = lp(a);
            for m in [1u32, 5, 20] {
                let head: f64 = (1..=m).map(|n| s_n(&p, n).unwrap()).sum();
                assert!((head + s_tail(&p, m) - s_tail(&p, 0)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn series_matches_window_enumeration() {
        for a in 1..6 {
            let p = lp(a);
            let brute = brute_window_sum(&p);
            assert!(approx_eq(brute, s_zero(&p) + s_tail(&p, 0)), "a = {a}");
        }
    }

    #[test]
    fn series_examples() {
        let p = LimitParams::new(1, 0.6, 0.75).unwrap();
        assert!((speed_limit_series(&p) - 2.0).abs() < 1e-12);
        assert!(approx_eq(speed_limit_series(&lp(2)), 15.0 / 7.0));
        let deterministic = LimitParams::new(3, 0.7, 1.0).unwrap();
        assert!(approx_eq(
            speed_limit_series(&deterministic),
            1.0 + 2.0 / 3.0 * s_zero(&deterministic)
        ));
        assert_eq!(speed_limit_series(&LimitParams::new(1, 0.7, 1.0).unwrap()), 1.0);
    }

    #[test]
    fn printed_expression_examples() {
        let pr = speed_limit_printed(&lp(2)).unwrap();
        assert!(approx_eq(pr.numerator, 0.125));
        assert!(approx_eq(pr.denominator, -0.109375));
        assert!(approx_eq(pr.inner_ratio, -8.0 / 7.0));
        assert!(approx_eq(pr.value, -1.0 / 7.0));
        let pr1 = speed_limit_printed(&lp(1)).unwrap();
        assert!(approx_eq(pr1.inner_ratio, -1.0 / 3.0));
        assert!(approx_eq(s_tail(&lp(1), 0), 1.0 / 3.0));
    }

    #[test]
    fn printed_magnitude_tracks_series_on_a_grid() {
        // Observational: only the magnitude of the inner ratio matches.
        for a in 1..8 {
            for (q, p) in [(0.55, 0.7), (0.6, 0.9), (2.0 / 3.0, 0.8), (0.8, 0.99)] {
                let lp = LimitParams::new(a, q, p).unwrap();
                let pr = speed_limit_printed(&lp).unwrap();
                let series_inner = s_zero(&lp) + s_tail(&lp, 0);
                assert!(approx_eq(pr.inner_ratio.abs(), series_inner), "a={a} q={q} p={p}");
            }
        }
    }

    #[test]
    fn finite_k_examples() {
        let d = DriftParams::new(0.6, 0.75).unwrap();
        let v = finite_k_speed(1, 10, d).unwrap();
        assert!((v - 2.0).abs() < 2.0 / 10.0);

        let d = DriftParams::new(2.0 / 3.0, 0.8).unwrap();
        let small = finite_k_speed(2, 1, d).unwrap();
        let env = equally_spaced(2, 1, d).unwrap().to_environment();
        assert!(approx_eq(small, hitting_time_linear_solve(&env).expected_time() / 2.0));

        assert!(matches!(finite_k_speed(1, 1, d), Err(Error::Domain { .. })));
        assert!(matches!(
            finite_k_speed(10, 10_001, d),
            Err(Error::SizeExceeded { n: 100_010, .. })
        ));
    }

    #[test]
    fn limit_params_validation() {
        assert!(LimitParams::new(0, 0.6, 0.9).is_err());
        assert!(LimitParams::new(2, 0.9, 0.6).is_err());
        assert!(lp(3).tail_ratio() < 1.0);
    }
}
