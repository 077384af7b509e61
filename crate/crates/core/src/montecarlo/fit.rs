use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::events::SweepPoint;
use crate::error::{invalid, Result};

/// Points with fewer outage events than this are left out of exponent fits.
pub const MIN_OUTAGES: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitStatus {
    Ok,
    Refused,
}

/// Least-squares slope of `-log10 p` against `log10 rho`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub status: FitStatus,
    pub exponent: Option<f64>,
    /// 95% Student-t interval; needs at least three points.
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    /// SNR range in dB of the points used.
    pub window: Option<(f64, f64)>,
    pub points_used: usize,
    pub reason: Option<String>,
}

impl ExponentFit {
    fn refused(reason: String, points_used: usize) -> Self {
        Self {
            status: FitStatus::Refused,
            exponent: None,
            ci_low: None,
            ci_high: None,
            window: None,
            points_used,
            reason: Some(reason),
        }
    }
}

/// Fits the exponent to `(snr_db, p)` pairs. All `p` must lie in `(0, 1]`.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<ExponentFit> {
    if let Some(&(s, p)) = points.iter().find(|(s, p)| !s.is_finite() || !(*p > 0.0 && *p <= 1.0)) {
        return invalid(format!("cannot fit probability {p} at {s} dB"));
    }
    let n = points.len();
    if n < 2 {
        return Ok(ExponentFit::refused(format!("need at least 2 points, have {n}"), n));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0 / 10.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| -p.1.log10()).collect();
    let nf = n as f64;
    let x_mean = xs.iter().sum::<f64>() / nf;
    let y_mean = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    if sxx == 0.0 {
        return Ok(ExponentFit::refused("all points at the same SNR".into(), n));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;

    let (ci_low, ci_high) = if n >= 3 {
        let ssr: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (y - intercept - slope * x).powi(2))
            .sum();
        let se = (ssr / (nf - 2.0) / sxx).sqrt();
        let t = StudentsT::new(0.0, 1.0, nf - 2.0)
            .expect("dof >= 1")
            .inverse_cdf(0.975);
        (Some(slope - t * se), Some(slope + t * se))
    } else {
        (None, None)
    };
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    Ok(ExponentFit {
        status: FitStatus::Ok,
        exponent: Some(slope),
        ci_low,
        ci_high,
        window: Some((lo, hi)),
        points_used: n,
        reason: None,
    })
}

/// Fits the sweep points that carry at least [`MIN_OUTAGES`] events.
pub fn fit_sweep(points: &[SweepPoint]) -> ExponentFit {
    let eligible: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.outages >= MIN_OUTAGES)
        .map(|p| (p.snr_db, p.p_hat))
        .collect();
    if eligible.len() < 2 {
        return ExponentFit::refused(
            format!(
                "{} of {} SNR points have >= {MIN_OUTAGES} outages; need 2",
                eligible.len(),
                points.len()
            ),
            eligible.len(),
        );
    }
    fit_exponent(&eligible).expect("eligible points have p in (0, 1]")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<f64> {
        (0..5).map(|i| 20.0 + 5.0 * i as f64).collect()
    }

    #[test]
    fn exact_power_law() {
        let pts: Vec<_> = grid().into_iter().map(|s| (s, 10f64.powf(-2.0 * s / 10.0))).collect();
        let fit = fit_exponent(&pts).unwrap();
        assert!((fit.exponent.unwrap() - 2.0).abs() < 1e-9);
        assert!((fit.ci_high.unwrap() - fit.ci_low.unwrap()).abs() < 1e-6);
        assert_eq!(fit.window, Some((20.0, 40.0)));
    }

    #[test]
    fn intercept_does_not_matter() {
        for c in [1e-3, 0.5, 1.0] {
            let pts: Vec<_> = grid()
                .into_iter()
                .map(|s| (s, c * 10f64.powf(-s / 10.0)))
                .collect();
            assert!((fit_exponent(&pts).unwrap().exponent.unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rayleigh_closed_form_at_zero_rate_offset() {
        // P(|h|^2 < 1/rho) = 1 - exp(-1/rho): exponent 1
        let pts: Vec<_> = grid().into_iter().map(|s| (s, -(-10f64.powf(-s / 10.0)).exp_m1())).collect();
        let fit = fit_exponent(&pts).unwrap();
        assert!((fit.exponent.unwrap() - 1.0).abs() < 0.05);
    }

    #[test]
    fn refusals() {
        let pts = vec![SweepPoint::new(10.0, 1000, 99), SweepPoint::new(20.0, 1000, 5)];
        assert_eq!(fit_sweep(&pts).status, FitStatus::Refused);
        assert!(fit_exponent(&[(10.0, 0.0)]).is_err());
        assert_eq!(fit_exponent(&[(10.0, 0.5)]).unwrap().status, FitStatus::Refused);
        let two = fit_exponent(&[(10.0, 0.1), (20.0, 0.01)]).unwrap();
        assert_eq!(two.exponent, Some(1.0));
        assert!(two.ci_low.is_none());
    }
}
