use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::capacity::{logdet_identity_plus, vector_capacity};
use super::channel::{sample_channel, ChannelDraw};
use crate::allocation::StaticScheme;
use crate::config::{ChannelMode, NetworkConfig};
use crate::error::{invalid, Error, Result};

/// Largest number of pairs for which all `2^{2K} - 1` subsets are enumerated.
pub const MAX_SUBSET_PAIRS: usize = 3;

/// Outage event simulated per channel draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum OutageEvent {
    /// Genie-aided cut-set event `C_1 / 2 < R` of one user's uplink.
    CutsetReciprocal,
    /// Dynamic decode-and-forward: relay listening time `a > 1`, or the probe
    /// user's downlink `(1 - a) C_2 / K < R`.
    Ddf,
    /// Static split `a`: any uplink subset with `a C^Λ < |Λ| R`, and for
    /// MAC-TDMA any user with `(1 - a) C_2 / K < R`.
    StaticPhases { scheme: StaticScheme, a: f64 },
}

impl fmt::Display for OutageEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutageEvent::CutsetReciprocal => f.write_str("cutset-reciprocal"),
            OutageEvent::Ddf => f.write_str("ddf"),
            OutageEvent::StaticPhases { scheme, a } => write!(f, "static-phases({scheme}, a={a})"),
        }
    }
}

/// Outage count at one SNR.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub snr_db: f64,
    pub trials: u64,
    pub outages: u64,
    pub p_hat: f64,
    pub std_err: f64,
}

impl SweepPoint {
    pub fn new(snr_db: f64, trials: u64, outages: u64) -> Self {
        let p_hat = outages as f64 / trials as f64;
        let std_err = (p_hat * (1.0 - p_hat) / trials as f64).sqrt();
        Self { snr_db, trials, outages, p_hat, std_err }
    }
}

pub fn db_to_linear(snr_db: f64) -> f64 {
    10f64.powf(snr_db / 10.0)
}

impl OutageEvent {
    /// Whether the analytic estimate covers both phases; MAC-BC only
    /// simulates the uplink phase.
    pub fn is_partial(&self) -> bool {
        matches!(self, OutageEvent::StaticPhases { scheme: StaticScheme::MacBc, .. })
    }

    pub fn validate(&self, cfg: &NetworkConfig) -> Result<()> {
        match *self {
            OutageEvent::CutsetReciprocal => Ok(()),
            OutageEvent::Ddf => {
                if cfg.mode != ChannelMode::NonReciprocal {
                    return invalid("the dynamic DF event is defined for non-reciprocal channels");
                }
                check_subset_cap(cfg)
            }
            OutageEvent::StaticPhases { a, .. } => {
                if !(a > 0.0 && a < 1.0) {
                    return invalid(format!("time split must lie in (0, 1), got {a}"));
                }
                check_subset_cap(cfg)
            }
        }
    }

    /// Evaluates the event for one draw at every SNR in `rhos` (linear).
    fn outages(&self, draw: &ChannelDraw, cfg: &NetworkConfig, r: f64, rhos: &[f64]) -> Vec<bool> {
        match *self {
            OutageEvent::CutsetReciprocal => {
                let g = draw.uplink[0].norm_squared();
                rhos.iter()
                    .map(|&rho| vector_capacity(g, rho) / 2.0 < r * rho.log2())
                    .collect()
            }
            OutageEvent::Ddf => {
                let subsets = SubsetCapacities::new(draw);
                let down = draw.downlink[0].norm_squared();
                let k = cfg.pairs as f64;
                let m = cfg.antennas as f64;
                rhos.iter()
                    .map(|&rho| {
                        let rate = r * rho.log2();
                        if rate <= 0.0 {
                            return false;
                        }
                        let a = subsets.listening_fraction(rho, rate);
                        a > 1.0 || (1.0 - a) * vector_capacity(down, rho / m) / k < rate
                    })
                    .collect()
            }
            OutageEvent::StaticPhases { scheme, a } => {
                let subsets = SubsetCapacities::new(draw);
                let k = cfg.pairs as f64;
                let m = cfg.antennas as f64;
                let down: Vec<f64> = draw.downlink.iter().map(|h| h.norm_squared()).collect();
                rhos.iter()
                    .map(|&rho| {
                        let rate = r * rho.log2();
                        if rate <= 0.0 {
                            return false;
                        }
                        let uplink_out = subsets.any_short(rho, rate, a);
                        let downlink_out = scheme == StaticScheme::MacTdma
                            && down
                                .iter()
                                .any(|&g| (1.0 - a) / k * vector_capacity(g, rho / m) < rate);
                        uplink_out || downlink_out
                    })
                    .collect()
            }
        }
    }
}

fn check_subset_cap(cfg: &NetworkConfig) -> Result<()> {
    if cfg.pairs > MAX_SUBSET_PAIRS {
        return Err(Error::Refused(format!(
            "subset enumeration is limited to K <= {MAX_SUBSET_PAIRS} pairs, got K = {}",
            cfg.pairs
        )));
    }
    Ok(())
}

/// Uplink Gram matrix of a draw, from which every subset capacity follows.
struct SubsetCapacities {
    gram: nalgebra::DMatrix<num_complex::Complex64>,
    users: usize,
}

impl SubsetCapacities {
    fn new(draw: &ChannelDraw) -> Self {
        Self { gram: draw.uplink_gram(), users: draw.uplink.len() }
    }

    /// `(|Λ|, C^Λ)` for every nonempty subset at SNR `rho`.
    fn capacities(&self, rho: f64) -> impl Iterator<Item = (usize, f64)> + '_ {
        (1u32..(1 << self.users)).map(move |mask| {
            let idx: Vec<usize> = (0..self.users).filter(|u| mask & (1 << u) != 0).collect();
            let sub = self.gram.select_rows(idx.iter()).select_columns(idx.iter());
            (idx.len(), logdet_identity_plus(&sub, rho))
        })
    }

    fn listening_fraction(&self, rho: f64, rate: f64) -> f64 {
        self.capacities(rho)
            .map(|(size, cap)| {
                let need = size as f64 * rate;
                if cap > 0.0 {
                    need / cap
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max)
    }

    fn any_short(&self, rho: f64, rate: f64, a: f64) -> bool {
        self.capacities(rho).any(|(size, cap)| a * cap < size as f64 * rate)
    }
}

/// Counts outages of `event` over `trials` draws at every SNR of `snr_db`.
///
/// Trial `t` always uses the draw `sample_channel(cfg, t, seed)`, shared by
/// all SNR points, and counts are summed as integers, so the result is
/// independent of `workers`.
pub fn estimate_outage(
    event: &OutageEvent,
    r: f64,
    cfg: &NetworkConfig,
    snr_db: &[f64],
    trials: u64,
    seed: u64,
    workers: Option<usize>,
) -> Result<Vec<SweepPoint>> {
    event.validate(cfg)?;
    if trials == 0 {
        return invalid("trials must be >= 1");
    }
    if !r.is_finite() || r < 0.0 {
        return invalid(format!("multiplexing gain must be finite and >= 0, got {r}"));
    }
    if snr_db.iter().any(|s| !s.is_finite()) {
        return invalid("SNR values must be finite");
    }
    let rhos: Vec<f64> = snr_db.iter().map(|&s| db_to_linear(s)).collect();
    let n = rhos.len();

    let count = || {
        (0..trials)
            .into_par_iter()
            .fold(
                || vec![0u64; n],
                |mut acc, t| {
                    let draw = sample_channel(cfg, t, seed);
                    for (c, out) in acc.iter_mut().zip(event.outages(&draw, cfg, r, &rhos)) {
                        *c += out as u64;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; n],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    let counts = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(count),
        None => count(),
    };

    Ok(snr_db
        .iter()
        .zip(counts)
        .map(|(&s, c)| SweepPoint::new(s, trials, c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rate_never_outage() {
        let cfg = NetworkConfig::nonreciprocal(1, 2).unwrap();
        for ev in [
            OutageEvent::CutsetReciprocal,
            OutageEvent::Ddf,
            OutageEvent::StaticPhases { scheme: StaticScheme::MacTdma, a: 0.5 },
        ] {
            let pts = estimate_outage(&ev, 0.0, &cfg, &[10.0, 20.0], 2000, 3, None).unwrap();
            assert!(pts.iter().all(|p| p.outages == 0), "{ev}");
        }
    }

    #[test]
    fn subset_cap_and_mode_checks() {
        let big = NetworkConfig::nonreciprocal(4, 2).unwrap();
        assert!(matches!(OutageEvent::Ddf.validate(&big), Err(Error::Refused(_))));
        let recip = NetworkConfig::reciprocal(1, 2).unwrap();
        assert!(matches!(OutageEvent::Ddf.validate(&recip), Err(Error::InvalidArgument(_))));
        let bad_a = OutageEvent::StaticPhases { scheme: StaticScheme::MacBc, a: 1.0 };
        assert!(bad_a.validate(&recip).is_err());
        let cfg = NetworkConfig::reciprocal(1, 1).unwrap();
        assert!(estimate_outage(&OutageEvent::CutsetReciprocal, 0.1, &cfg, &[10.0], 0, 1, None).is_err());
    }

    #[test]
    fn no_downlink_time_means_outage() {
        let cfg = NetworkConfig::reciprocal(1, 1).unwrap();
        let ev = OutageEvent::StaticPhases { scheme: StaticScheme::MacTdma, a: 1.0 - 1e-9 };
        let pts = estimate_outage(&ev, 0.1, &cfg, &[20.0], 5000, 11, None).unwrap();
        assert!(pts[0].p_hat > 0.999);
    }

    #[test]
    fn std_err_formula() {
        let p = SweepPoint::new(10.0, 400, 100);
        assert_eq!(p.p_hat, 0.25);
        assert!((p.std_err - (0.25f64 * 0.75 / 400.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ddf_listening_fraction_against_explicit_subsets() {
        use crate::ddf::dynamic_listening_fraction;
        use crate::montecarlo::capacity::logdet_capacity;
        let cfg = NetworkConfig::nonreciprocal(2, 3).unwrap();
        let draw = sample_channel(&cfg, 4, 8);
        let caps: Vec<(usize, f64)> = (1u32..16)
            .map(|mask| (mask.count_ones() as usize, logdet_capacity(&draw.uplink_matrix(mask), 50.0).unwrap()))
            .collect();
        let want = dynamic_listening_fraction(&caps, 3.0).unwrap().fraction;
        let got = SubsetCapacities::new(&draw).listening_fraction(50.0, 3.0);
        assert!((want - got).abs() < 1e-12);
    }
}
