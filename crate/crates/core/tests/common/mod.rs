//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

/// Exhaustive grid over level exponents for one transmitting subset.
///
/// Enumerates every nonincreasing uplink vector `α_1 ∈ {0, 1/N, ..., 1}^p`
/// (`p = min(L, M)`) and every downlink exponent on the same lattice, and
/// evaluates the weighted exponent sum directly.
pub struct AlphaGridOracle {
    pub step: f64,
    subset: usize,
    /// `(S1, uplink cost)` for every ordered uplink vector.
    uplink: Vec<(f64, f64)>,
    /// `(S2, downlink cost)` in increasing cost order.
    downlink: Vec<(f64, f64)>,
    pub weight_sum: f64,
}

impl AlphaGridOracle {
    pub fn new(subset: usize, antennas: usize, n: usize) -> Self {
        let p = subset.min(antennas);
        let gap = subset.abs_diff(antennas);
        let step = 1.0 / n as f64;
        let weights: Vec<f64> = (1..=p).map(|j| (2 * j - 1 + gap) as f64).collect();

        let mut uplink = Vec::new();
        let mut idx = Vec::with_capacity(p);
        ordered_tuples(p, n, &mut idx, &mut |t| {
            let alphas = t.iter().map(|&i| i as f64 * step);
            let s1: f64 = alphas.clone().map(|a| (1.0 - a).max(0.0)).sum();
            let cost: f64 = alphas.zip(&weights).map(|(a, w)| a * w).sum();
            uplink.push((s1, cost));
        });
        let m = antennas as f64;
        let downlink = (0..=n)
            .map(|i| {
                let a = i as f64 * step;
                (1.0 - a, m * a)
            })
            .collect();
        Self {
            step,
            subset,
            uplink,
            downlink,
            weight_sum: weights.iter().sum::<f64>() + m,
        }
    }

    pub fn uplink_points(&self) -> usize {
        self.uplink.len()
    }

    /// Smallest grid cost with `S1 S2 / (K S1 + L S2) <= r`.
    pub fn min_cost(&self, pairs: usize, r: f64) -> f64 {
        let (k, l) = (pairs as f64, self.subset as f64);
        let feasible = |s1: f64, s2: f64| {
            if s1 <= 0.0 || s2 <= 0.0 {
                true
            } else {
                s1 * s2 / (k * s1 + l * s2) <= r + 1e-12
            }
        };
        let mut best = f64::INFINITY;
        for &(s1, c1) in &self.uplink {
            if c1 >= best {
                continue;
            }
            // downlink costs ascend while S2 descends; feasibility is monotone
            for &(s2, c2) in &self.downlink {
                if c1 + c2 >= best {
                    break;
                }
                if feasible(s1, s2) {
                    best = c1 + c2;
                    break;
                }
            }
        }
        best
    }

    /// Grid optimum exceeds the true infimum by at most this much.
    pub fn resolution_bound(&self) -> f64 {
        self.step * self.weight_sum
    }
}

/// Calls `visit` on every nonincreasing tuple of length `len` over `0..=max`.
fn ordered_tuples(len: usize, max: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if cur.len() == len {
        visit(cur);
        return;
    }
    let top = cur.last().copied().unwrap_or(max);
    for i in 0..=top {
        cur.push(i);
        ordered_tuples(len, max, cur, visit);
        cur.pop();
    }
}

/// `P(log2(1 + rho |h|^2) < 2R)` for `h ~ CN(0, 1)`.
pub fn rayleigh_cutset_outage(r: f64, rho: f64) -> f64 {
    let rate = r * rho.log2();
    let threshold = ((2.0 * rate).exp2() - 1.0) / rho;
    -(-threshold).exp_m1()
}

pub fn db(snr_db: f64) -> f64 {
    10f64.powf(snr_db / 10.0)
}

/// `start, start + step, ..., stop` rounded to 12 decimals.
pub fn grid(start: f64, step: f64, stop: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n)
        .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
        .collect()
}
