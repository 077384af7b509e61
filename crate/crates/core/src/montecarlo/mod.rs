//! Outage simulation over quasi-static Rayleigh fading.
//!
//! Rates follow `R = r log2 rho`. The uplink SNR per user is `rho`; the relay
//! splits its power over `M` antennas, so downlink capacities use `rho / M`.

mod capacity;
mod channel;
mod events;
mod fit;

use serde::{Deserialize, Serialize};

pub use capacity::logdet_capacity;
pub use channel::{complex_gaussian, sample_channel, trial_rng, ChannelDraw};
pub use events::{db_to_linear, estimate_outage, OutageEvent, SweepPoint, MAX_SUBSET_PAIRS};
pub use fit::{fit_exponent, fit_sweep, ExponentFit, FitStatus, MIN_OUTAGES};

use crate::allocation::{upper_bound_reciprocal, PhaseCurves, StaticScheme};
use crate::config::NetworkConfig;
use crate::ddf::{ddf_dmt, upper_bound_nonreciprocal};
use crate::error::{invalid, Result};

/// Everything a sweep produces: the per-SNR estimates, the exponent fit and
/// the analytic exponent it should approach.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnrSweepResult {
    pub event: OutageEvent,
    pub config: NetworkConfig,
    pub r: f64,
    pub seed: u64,
    pub points: Vec<SweepPoint>,
    pub fit: ExponentFit,
    pub analytic_d: f64,
    /// Converse exponent, when it differs from the achievable one.
    pub analytic_upper: Option<f64>,
    /// Only part of the scheme's outage event is simulated.
    pub partial: bool,
}

/// Flat JSON summary written next to a sweep table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub event: String,
    pub pairs: usize,
    pub antennas: usize,
    pub mode: String,
    pub r: f64,
    pub seed: u64,
    pub trials: u64,
    pub fitted_exponent: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub analytic_d: f64,
    pub analytic_upper: Option<f64>,
    pub fit_status: FitStatus,
    pub fit_window_db: Option<(f64, f64)>,
    pub points_used: usize,
    pub fit_note: Option<String>,
    pub partial: bool,
}

pub const SWEEP_CSV_HEADER: &str = "snr_db,trials,outages,p_hat,std_err";

impl SnrSweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = format!("{SWEEP_CSV_HEADER}\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                p.snr_db, p.trials, p.outages, p.p_hat, p.std_err
            ));
        }
        out
    }

    pub fn summary(&self) -> SweepSummary {
        let event = match self.event {
            OutageEvent::CutsetReciprocal => "cutset-reciprocal".to_string(),
            OutageEvent::Ddf => "ddf".to_string(),
            OutageEvent::StaticPhases { scheme, .. } => format!("static-phases:{scheme}"),
        };
        SweepSummary {
            event,
            pairs: self.config.pairs,
            antennas: self.config.antennas,
            mode: self.config.mode.to_string(),
            r: self.r,
            seed: self.seed,
            trials: self.points.first().map_or(0, |p| p.trials),
            fitted_exponent: self.fit.exponent,
            ci_low: self.fit.ci_low,
            ci_high: self.fit.ci_high,
            analytic_d: self.analytic_d,
            analytic_upper: self.analytic_upper,
            fit_status: self.fit.status,
            fit_window_db: self.fit.window,
            points_used: self.fit.points_used,
            fit_note: self.fit.reason.clone(),
            partial: self.partial,
        }
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary()).expect("summary serializes")
    }
}

/// Asymptotic exponent of `event`: `(achievable, converse)`.
pub fn analytic_exponent(event: &OutageEvent, r: f64, cfg: &NetworkConfig) -> Result<(f64, Option<f64>)> {
    match *event {
        OutageEvent::CutsetReciprocal => Ok((upper_bound_reciprocal(r, cfg.antennas), None)),
        OutageEvent::Ddf => {
            let lower = ddf_dmt(r, cfg)?.diversity;
            let upper = if r < 1.0 { upper_bound_nonreciprocal(r, cfg)? } else { 0.0 };
            Ok((lower, Some(upper)))
        }
        OutageEvent::StaticPhases { scheme, a } => {
            let phases = PhaseCurves::new(scheme, cfg);
            let d = match scheme {
                StaticScheme::MacBc => phases.uplink(r, a),
                StaticScheme::MacTdma => phases.diversity_at(r, a),
            };
            Ok((d, None))
        }
    }
}

/// Runs the outage estimator over an SNR grid and fits the diversity exponent.
pub fn sweep_and_fit(
    event: &OutageEvent,
    r: f64,
    cfg: &NetworkConfig,
    snr_grid_db: &[f64],
    trials: u64,
    seed: u64,
    workers: Option<usize>,
) -> Result<SnrSweepResult> {
    if snr_grid_db.len() < 3 {
        return invalid(format!("need at least 3 SNR points, got {}", snr_grid_db.len()));
    }
    let points = estimate_outage(event, r, cfg, snr_grid_db, trials, seed, workers)?;
    let fit = fit_sweep(&points);
    let (analytic_d, analytic_upper) = analytic_exponent(event, r, cfg)?;
    Ok(SnrSweepResult {
        event: *event,
        config: *cfg,
        r,
        seed,
        points,
        fit,
        analytic_d,
        analytic_upper,
        partial: event.is_partial(),
    })
}

/// Outage of the cut-set event at a single SNR.
pub fn outage_cutset_reciprocal(
    r: f64,
    cfg: &NetworkConfig,
    snr_db: f64,
    trials: u64,
    seed: u64,
) -> Result<SweepPoint> {
    single(&OutageEvent::CutsetReciprocal, r, cfg, snr_db, trials, seed)
}

/// Outage of dynamic decode-and-forward at a single SNR.
pub fn outage_ddf(r: f64, cfg: &NetworkConfig, snr_db: f64, trials: u64, seed: u64) -> Result<SweepPoint> {
    single(&OutageEvent::Ddf, r, cfg, snr_db, trials, seed)
}

/// Outage of a static two-phase scheme with split `a` at a single SNR.
pub fn outage_static_phases(
    r: f64,
    cfg: &NetworkConfig,
    a: f64,
    scheme: StaticScheme,
    snr_db: f64,
    trials: u64,
    seed: u64,
) -> Result<SweepPoint> {
    single(&OutageEvent::StaticPhases { scheme, a }, r, cfg, snr_db, trials, seed)
}

fn single(
    event: &OutageEvent,
    r: f64,
    cfg: &NetworkConfig,
    snr_db: f64,
    trials: u64,
    seed: u64,
) -> Result<SweepPoint> {
    Ok(estimate_outage(event, r, cfg, &[snr_db], trials, seed, None)?[0])
}
