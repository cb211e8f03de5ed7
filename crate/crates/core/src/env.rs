//! Environments on the interval `{0, ..., N}` and two-drift placements.
//!
//! Site 0 always reflects and site `N` absorbs, so an [`Environment`] only
//! stores the right-step probabilities of the interior sites `1..=N-1`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Right-step probabilities `omega(1..=N-1)` of a nearest-neighbour walk on
/// `{0, ..., N}`.
///
/// Probabilities at or below 1/2 are accepted here; only
/// [`DriftParams`] restricts itself to the strictly ballistic regime.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Environment {
    n: usize,
    omega: Vec<f64>,
}

impl Environment {
    /// Builds an environment from `omega(1), ..., omega(n-1)`.
    pub fn new(n: usize, omega: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInterval);
        }
        if omega.len() != n - 1 {
            return Err(Error::OmegaLength {
                n,
                expected: n - 1,
                got: omega.len(),
            });
        }
        for (i, &w) in omega.iter().enumerate() {
            // NaN fails this test as well.
            if !(w > 0.0 && w <= 1.0) {
                return Err(Error::InvalidProbability {
                    site: i + 1,
                    value: w,
                });
            }
        }
        Ok(Environment { n, omega })
    }

    /// Every interior site steps right with probability `w`.
    pub fn homogeneous(n: usize, w: f64) -> Result<Self> {
        Environment::new(n, vec![w; n.saturating_sub(1)])
    }

    /// The absorbing site `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `omega(i)` for `i = 1..=N-1`, stored at index `i - 1`.
    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    /// Right-step probability at interior site `site` (1-based).
    pub fn at(&self, site: usize) -> f64 {
        self.omega[site - 1]
    }

    /// Odds ratios `rho_i = (1 - omega(i)) / omega(i)`, indexed like [`omega`](Self::omega).
    pub fn rho_vector(&self) -> Vec<f64> {
        self.omega.iter().map(|&w| (1.0 - w) / w).collect()
    }

    /// The mirrored environment `omega'(i) = omega(N - i)`.
    pub fn reflect(&self) -> Environment {
        let mut omega = self.omega.clone();
        omega.reverse();
        Environment { n: self.n, omega }
    }
}

/// The weak and strong drift probabilities `q` and `p`, with `1/2 < q < p <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DriftParams {
    q: f64,
    p: f64,
}

impl DriftParams {
    pub fn new(q: f64, p: f64) -> Result<Self> {
        if !(q > 0.5 && q < p && p <= 1.0) {
            return Err(Error::DriftOrdering { q, p });
        }
        Ok(DriftParams { q, p })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Odds ratio at a weak site, `(1 - q) / q`. Lies in `(0, 1)`.
    pub fn alpha(&self) -> f64 {
        (1.0 - self.q) / self.q
    }

    /// Odds ratio at a strong site, `(1 - p) / p`. Lies in `[0, alpha)`.
    pub fn beta(&self) -> f64 {
        (1.0 - self.p) / self.p
    }
}

/// `k` strong drifts at distinct sites of `[1, N-1]`, weak drifts elsewhere.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriftPlacement {
    n: usize,
    positions: Vec<usize>,
    params: DriftParams,
}

impl DriftPlacement {
    /// Validates and sorts `positions`.
    pub fn new(n: usize, mut positions: Vec<usize>, params: DriftParams) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInterval);
        }
        positions.sort_unstable();
        for (idx, &pos) in positions.iter().enumerate() {
            if pos < 1 || pos > n - 1 {
                return Err(Error::PositionOutOfRange {
                    position: pos,
                    low: 1,
                    high: n - 1,
                });
            }
            if idx > 0 && positions[idx - 1] == pos {
                return Err(Error::DuplicatePosition { position: pos });
            }
        }
        Ok(DriftPlacement {
            n,
            positions,
            params,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.positions.len()
    }

    /// Strong-drift sites in increasing order.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn params(&self) -> DriftParams {
        self.params
    }

    /// Expands to `omega(i) = p` on drift sites and `q` everywhere else.
    pub fn to_environment(&self) -> Environment {
        let mut omega = vec![self.params.q; self.n - 1];
        for &pos in &self.positions {
            omega[pos - 1] = self.params.p;
        }
        Environment { n: self.n, omega }
    }
}

/// Free-function form of [`DriftPlacement::to_environment`].
pub fn make_environment(placement: &DriftPlacement) -> Environment {
    placement.to_environment()
}
