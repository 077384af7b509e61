//! Static time allocation for the reciprocal-channel decode-and-forward schemes.
//!
//! Both schemes spend a fraction `a` of the block on a `2K`-user multiple-access
//! phase into the relay and `1 - a` on the downlink. The phase-one diversity
//! `d_MAC(2K,1,M)(r / a)` is nondecreasing in `a`; the phase-two diversity is
//! nonincreasing, so the max-min allocation sits where they cross:
//!
//! * DF-MAC-BC: phase two is a symmetric `K`-user broadcast, `d_BC(K,1,M)(r / (1 - a))`.
//! * DF-MAC-TDMA: phase two is `K` TDMA slots, `d_PPC(M,1)(K r / (1 - a))`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::curve::{bc_sym_dmt, mac_sym_dmt, ppc_dmt, PiecewiseLinearCurve};
use crate::error::{invalid, Error, Result};
use crate::optimize::bisect_increasing;

/// Bracket for the phase-one fraction `a`.
pub const A_MIN: f64 = 1e-9;
pub const A_MAX: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StaticScheme {
    #[serde(rename = "mac-bc")]
    MacBc,
    #[serde(rename = "mac-tdma")]
    MacTdma,
}

impl fmt::Display for StaticScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StaticScheme::MacBc => "mac-bc",
            StaticScheme::MacTdma => "mac-tdma",
        })
    }
}

impl FromStr for StaticScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mac-bc" | "macbc" => Ok(StaticScheme::MacBc),
            "mac-tdma" | "mactdma" => Ok(StaticScheme::MacTdma),
            other => invalid(format!("unknown static scheme {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AllocationSolution {
    pub a_star: f64,
    pub diversity: f64,
    /// `|LHS - RHS|` of the phase-balance equation at `a_star`.
    pub residual: f64,
}

/// The two per-phase tradeoff curves of a static scheme.
#[derive(Debug, Clone)]
pub struct PhaseCurves {
    scheme: StaticScheme,
    pairs: usize,
    uplink: PiecewiseLinearCurve,
    downlink: PiecewiseLinearCurve,
}

impl PhaseCurves {
    pub fn new(scheme: StaticScheme, cfg: &NetworkConfig) -> Self {
        let (k, m) = (cfg.pairs, cfg.antennas);
        // NetworkConfig guarantees k, m >= 1, so construction cannot fail.
        let uplink = mac_sym_dmt(2 * k, 1, m).expect("valid config");
        let downlink = match scheme {
            StaticScheme::MacBc => bc_sym_dmt(k, 1, m),
            StaticScheme::MacTdma => ppc_dmt(m, 1),
        }
        .expect("valid config");
        Self { scheme, pairs: k, uplink, downlink }
    }

    /// Phase-one diversity at per-user multiplexing gain `r` and split `a`.
    pub fn uplink(&self, r: f64, a: f64) -> f64 {
        self.uplink.eval_clamped(r / a)
    }

    /// Phase-two diversity at per-user multiplexing gain `r` and split `a`.
    pub fn downlink(&self, r: f64, a: f64) -> f64 {
        let load = match self.scheme {
            StaticScheme::MacBc => r,
            StaticScheme::MacTdma => self.pairs as f64 * r,
        };
        self.downlink.eval_clamped(load / (1.0 - a))
    }

    /// Diversity achieved with a fixed split: the weaker of the two phases.
    pub fn diversity_at(&self, r: f64, a: f64) -> f64 {
        self.uplink(r, a).min(self.downlink(r, a))
    }

    pub fn solve(&self, r: f64) -> Result<AllocationSolution> {
        if !r.is_finite() || r < 0.0 {
            return invalid(format!("multiplexing gain must be finite and >= 0, got {r}"));
        }
        let a_star = if r == 0.0 {
            0.5
        } else {
            bisect_increasing(|a| self.uplink(r, a) - self.downlink(r, a), A_MIN, A_MAX)
        };
        let (lhs, rhs) = (self.uplink(r, a_star), self.downlink(r, a_star));
        Ok(AllocationSolution {
            a_star,
            diversity: lhs.min(rhs),
            residual: (lhs - rhs).abs(),
        })
    }

    /// Smallest `r` at which the optimized scheme has zero diversity.
    pub fn max_multiplexing_gain(&self) -> f64 {
        // every phase-one curve vanishes by r / a = 1, so r = 1 is past the end
        let positive = |r: f64| self.solve(r).map_or(0.0, |s| s.diversity) > 0.0;
        bisect_increasing(|r| if positive(r) { -1.0 } else { 1.0 }, 0.0, 1.0)
    }

    /// Samples the optimized tradeoff on a grid of spacing `step` and closes it
    /// at the exact zero crossing.
    pub fn sampled_curve(&self, step: f64) -> Result<PiecewiseLinearCurve> {
        if step.is_nan() || step <= 0.0 {
            return invalid("grid step must be > 0");
        }
        let zc = self.max_multiplexing_gain();
        let mut vertices = Vec::new();
        let mut prev = f64::INFINITY;
        let mut i = 0usize;
        loop {
            let r = i as f64 * step;
            if r >= zc {
                break;
            }
            let d = self.solve(r)?.diversity.min(prev);
            vertices.push((r, d));
            prev = d;
            i += 1;
        }
        vertices.push((zc, 0.0));
        PiecewiseLinearCurve::new(vertices)
    }
}

/// Static DF-MAC-BC allocation.
pub fn solve_macbc(r: f64, cfg: &NetworkConfig) -> Result<AllocationSolution> {
    PhaseCurves::new(StaticScheme::MacBc, cfg).solve(r)
}

/// Static DF-MAC-TDMA allocation.
pub fn solve_mactdma(r: f64, cfg: &NetworkConfig) -> Result<AllocationSolution> {
    PhaseCurves::new(StaticScheme::MacTdma, cfg).solve(r)
}

/// Genie-aided converse for reciprocal channels, `M (1 - 2r)^+`.
pub fn upper_bound_reciprocal(r: f64, antennas: usize) -> f64 {
    antennas as f64 * (1.0 - 2.0 * r).max(0.0)
}

/// One row of the reciprocal bound table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundSample {
    pub r: f64,
    pub d_lower: f64,
    pub d_upper: f64,
    pub a_star: f64,
}

/// Achievable diversity of `scheme` against the reciprocal converse over `r_grid`.
pub fn reciprocal_bounds(
    scheme: StaticScheme,
    cfg: &NetworkConfig,
    r_grid: &[f64],
) -> Result<Vec<BoundSample>> {
    let phases = PhaseCurves::new(scheme, cfg);
    r_grid
        .par_iter()
        .map(|&r| {
            let sol = phases.solve(r)?;
            Ok(BoundSample {
                r,
                d_lower: sol.diversity,
                d_upper: upper_bound_reciprocal(r, cfg.antennas),
                a_star: sol.a_star,
            })
        })
        .collect()
}

/// Static DF-MAC-BC lower bound sampled on `r_grid`.
pub fn lower_bound_reciprocal_macbc(cfg: &NetworkConfig, r_grid: &[f64]) -> Result<Vec<BoundSample>> {
    reciprocal_bounds(StaticScheme::MacBc, cfg, r_grid)
}
