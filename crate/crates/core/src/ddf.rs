//! Dynamic decode-and-forward tradeoff for non-reciprocal channels.
//!
//! The outage exponent for a subset `Λ` of transmitting users is an infimum
//! over eigenvalue level exponents `α`. For fixed effective sums `s1 = S1^Λ`
//! and `s2 = S2`, the cheapest `α` assignment costs `d_PPC(|Λ|, M)(s1)` on the
//! uplink and `M (1 - s2)` on the downlink, which reduces the search to the
//! plane `(s1, s2)` with the constraint
//!
//! ```text
//! s1 s2 / (K s1 + |Λ| s2) <= r
//! ```
//!
//! Both costs decrease in their argument and the constraint function increases
//! in both, so the optimum lies on the constraint boundary. Parameterized by
//! `s2`, the boundary is `s1 = |Λ| r s2 / (s2 - K r)`, which is convex; along
//! each linear piece of the uplink cost the objective is then concave, and its
//! minimum sits at a piece endpoint. [`inner_ddf_opt`] enumerates those
//! endpoints. [`inner_ddf_opt_search`] and [`converse_outage_opt`] instead run
//! a grid-plus-golden-section search along the boundary.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::curve::{ppc_dmt, PiecewiseLinearCurve};
use crate::error::{invalid, Result};
use crate::optimize::{bisect_increasing, grid_then_golden};

/// Grid spacing of the boundary search.
pub const SEARCH_STEP: f64 = 1e-3;
/// Golden-section tolerance of the boundary search.
pub const SEARCH_TOL: f64 = 1e-9;
/// Ties between subset sizes closer than this go to the smaller size.
const TIE_EPS: f64 = 1e-12;

/// Level exponents of the uplink matrix of a subset of size `subset` and of
/// the probe user's downlink.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaProfile {
    pub alpha1: Vec<f64>,
    pub alpha2: f64,
    pub subset: usize,
    pub antennas: usize,
}

impl AlphaProfile {
    pub fn new(alpha1: Vec<f64>, alpha2: f64, subset: usize, antennas: usize) -> Result<Self> {
        if subset == 0 || antennas == 0 {
            return invalid("subset size and antennas must be >= 1");
        }
        if alpha1.len() != subset.min(antennas) {
            return invalid(format!(
                "expected {} uplink exponents, got {}",
                subset.min(antennas),
                alpha1.len()
            ));
        }
        if alpha1.iter().chain([&alpha2]).any(|a| !a.is_finite() || *a < 0.0) {
            return invalid("level exponents must be finite and >= 0");
        }
        if alpha1.windows(2).any(|w| w[1] > w[0]) {
            return invalid("uplink exponents must be nonincreasing");
        }
        Ok(Self { alpha1, alpha2, subset, antennas })
    }

    pub fn s1(&self) -> f64 {
        self.alpha1.iter().map(|a| (1.0 - a).max(0.0)).sum()
    }

    pub fn s2(&self) -> f64 {
        (1.0 - self.alpha2).max(0.0)
    }

    /// Weighted exponent sum `Σ (2j - 1 + |M_i - M_{i+1}|) α_{i,j}`.
    pub fn cost(&self) -> f64 {
        let gap = self.subset.abs_diff(self.antennas);
        let up: f64 = self
            .alpha1
            .iter()
            .enumerate()
            .map(|(j, a)| (2 * j + 1 + gap) as f64 * a)
            .sum();
        // downlink is M x 1: one exponent with weight 1 + (M - 1)
        up + self.antennas as f64 * self.alpha2
    }

    pub fn outage_point(&self) -> OutagePoint {
        OutagePoint { s1: self.s1(), s2: self.s2(), cost: self.cost() }
    }
}

/// Minimizer in the reduced `(s1, s2)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutagePoint {
    pub s1: f64,
    pub s2: f64,
    pub cost: f64,
}

/// `s1 s2 / (K s1 + L s2)`, zero when either argument is zero.
pub fn outage_rate(s1: f64, s2: f64, pairs: usize, subset: usize) -> f64 {
    if s1 <= 0.0 || s2 <= 0.0 {
        return 0.0;
    }
    s1 * s2 / (pairs as f64 * s1 + subset as f64 * s2)
}

struct InnerProblem {
    pairs: f64,
    subset: f64,
    antennas: f64,
    r: f64,
    /// `min(|Λ|, M)`, the largest attainable `s1`.
    s1_cap: f64,
    uplink: PiecewiseLinearCurve,
}

impl InnerProblem {
    fn new(subset: usize, pairs: usize, antennas: usize, r: f64) -> Result<Self> {
        if pairs == 0 || antennas == 0 {
            return invalid("pairs and antennas must be >= 1");
        }
        if subset == 0 || subset > 2 * pairs {
            return invalid(format!("subset size must be in 1..={}, got {subset}", 2 * pairs));
        }
        if !r.is_finite() || r < 0.0 {
            return invalid(format!("multiplexing gain must be finite and >= 0, got {r}"));
        }
        Ok(Self {
            pairs: pairs as f64,
            subset: subset as f64,
            antennas: antennas as f64,
            r,
            s1_cap: subset.min(antennas) as f64,
            uplink: ppc_dmt(subset, antennas)?,
        })
    }

    /// Largest feasible `s1` for a given `s2`.
    fn s1_max(&self, s2: f64) -> f64 {
        let kr = self.pairs * self.r;
        if s2 <= kr {
            self.s1_cap
        } else {
            (self.subset * self.r * s2 / (s2 - kr)).min(self.s1_cap)
        }
    }

    fn point(&self, s2: f64) -> OutagePoint {
        let s1 = self.s1_max(s2);
        let cost = self.uplink.eval_clamped(s1) + self.antennas * (1.0 - s2);
        OutagePoint { s1, s2, cost }
    }

    fn unconstrained(&self) -> Option<OutagePoint> {
        let f = outage_rate(self.s1_cap, 1.0, self.pairs as usize, self.subset as usize);
        (f <= self.r).then_some(OutagePoint { s1: self.s1_cap, s2: 1.0, cost: 0.0 })
    }

    fn solve_exact(&self) -> OutagePoint {
        if let Some(p) = self.unconstrained() {
            return p;
        }
        let kr = self.pairs * self.r;
        let lr = self.subset * self.r;
        let mut candidates = vec![0.0, 1.0, kr.min(1.0)];
        // s2 at which the boundary passes through s1 = k
        for k in 1..=self.s1_cap as usize {
            let k = k as f64;
            if k > lr {
                let s2 = k * kr / (k - lr);
                if s2 <= 1.0 {
                    candidates.push(s2);
                }
            }
        }
        candidates
            .into_iter()
            .map(|s2| self.point(s2))
            .fold(None::<OutagePoint>, |best, p| match best {
                Some(b) if b.cost <= p.cost => Some(b),
                _ => Some(p),
            })
            .expect("candidate list is nonempty")
    }

    fn solve_search(&self) -> OutagePoint {
        if let Some(p) = self.unconstrained() {
            return p;
        }
        let (s2, _) = grid_then_golden(|s2| self.point(s2).cost, 0.0, 1.0, SEARCH_STEP, SEARCH_TOL);
        self.point(s2)
    }
}

/// Outage exponent `d^Λ(r)` for a transmitting subset of size `subset`.
pub fn inner_ddf_opt(subset: usize, pairs: usize, antennas: usize, r: f64) -> Result<f64> {
    Ok(inner_ddf_point(subset, pairs, antennas, r)?.cost)
}

/// Like [`inner_ddf_opt`], also returning the minimizing `(s1, s2)`.
pub fn inner_ddf_point(subset: usize, pairs: usize, antennas: usize, r: f64) -> Result<OutagePoint> {
    Ok(InnerProblem::new(subset, pairs, antennas, r)?.solve_exact())
}

/// Same quantity as [`inner_ddf_opt`] computed by grid-plus-golden search
/// along the constraint boundary instead of endpoint enumeration.
pub fn inner_ddf_opt_search(subset: usize, pairs: usize, antennas: usize, r: f64) -> Result<f64> {
    Ok(InnerProblem::new(subset, pairs, antennas, r)?.solve_search().cost)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DdfValue {
    pub diversity: f64,
    /// Subset size attaining the minimum (smallest on ties).
    pub argmin_subset: usize,
}

/// Dynamic decode-and-forward diversity: minimum of `d^Λ(r)` over subset sizes.
pub fn ddf_dmt(r: f64, cfg: &NetworkConfig) -> Result<DdfValue> {
    let mut best: Option<DdfValue> = None;
    for subset in 1..=cfg.users() {
        let d = inner_ddf_opt(subset, cfg.pairs, cfg.antennas, r)?;
        match best {
            Some(b) if d >= b.diversity - TIE_EPS => {}
            _ => best = Some(DdfValue { diversity: d, argmin_subset: subset }),
        }
    }
    Ok(best.expect("a network has at least two users"))
}

/// Non-reciprocal converse `M ((1 - (K + 1) r) / (1 - r))^+`.
pub fn upper_bound_nonreciprocal(r: f64, cfg: &NetworkConfig) -> Result<f64> {
    check_unit_rate(r)?;
    let k = cfg.pairs as f64;
    Ok(cfg.antennas as f64 * ((1.0 - (k + 1.0) * r) / (1.0 - r)).max(0.0))
}

fn check_unit_rate(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return invalid(format!("multiplexing gain must lie in [0, 1), got {r}"));
    }
    Ok(())
}

/// Numerically minimizes `M (α_up + α_down)` over `[0, 1]^2` subject to
/// `s_up s_down / (K s_up + s_down) <= r`, with `s = 1 - α`.
///
/// Searches over the downlink exponent; for each value, the smallest feasible
/// uplink exponent is found by bisection on the constraint.
pub fn converse_outage_opt(r: f64, cfg: &NetworkConfig) -> Result<f64> {
    check_unit_rate(r)?;
    let m = cfg.antennas as f64;
    let k = cfg.pairs;
    let feasible = |a_up: f64, a_down: f64| outage_rate(1.0 - a_up, 1.0 - a_down, k, 1) <= r;
    let min_uplink = |a_down: f64| {
        if feasible(0.0, a_down) {
            0.0
        } else {
            bisect_increasing(|a| if feasible(a, a_down) { 1.0 } else { -1.0 }, 0.0, 1.0)
        }
    };
    let cost = |a_down: f64| m * (min_uplink(a_down) + a_down);
    let (_, best) = grid_then_golden(cost, 0.0, 1.0, SEARCH_STEP, SEARCH_TOL);
    Ok(best)
}

/// Listening time of the relay as a fraction of the block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ListeningFraction {
    pub fraction: f64,
    /// The relay cannot decode within the block (`fraction > 1`).
    pub outage: bool,
}

/// `max |Λ| R / C^Λ` over the given `(|Λ|, C^Λ)` pairs.
pub fn dynamic_listening_fraction(capacities: &[(usize, f64)], rate: f64) -> Result<ListeningFraction> {
    if !rate.is_finite() || rate < 0.0 {
        return invalid(format!("rate must be finite and >= 0, got {rate}"));
    }
    let mut fraction = 0.0f64;
    for &(size, cap) in capacities {
        if cap.is_nan() || cap < 0.0 {
            return invalid(format!("capacity must be >= 0, got {cap}"));
        }
        if rate == 0.0 {
            continue;
        }
        let need = size as f64 * rate;
        fraction = fraction.max(if cap == 0.0 { f64::INFINITY } else { need / cap });
    }
    Ok(ListeningFraction { fraction, outage: fraction > 1.0 })
}

/// One row of the dynamic-DF table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DdfSample {
    pub r: f64,
    pub d_ddf: f64,
    pub d_upper: f64,
    pub argmin_subset: usize,
}

pub fn ddf_table(cfg: &NetworkConfig, r_grid: &[f64]) -> Result<Vec<DdfSample>> {
    r_grid
        .par_iter()
        .map(|&r| {
            let v = ddf_dmt(r, cfg)?;
            Ok(DdfSample {
                r,
                d_ddf: v.diversity,
                d_upper: upper_bound_nonreciprocal(r, cfg)?,
                argmin_subset: v.argmin_subset,
            })
        })
        .collect()
}
