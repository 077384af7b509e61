//! Piecewise-linear diversity-multiplexing tradeoff curves.
//!
//! A curve `d(r)` is stored as its exact vertex list. Between vertices it is
//! the linear interpolant; past the last vertex (where `d = 0`) it is zero.
//! The point-to-point curve has vertices `(k, (m - k)(n - k))` for
//! `k = 0..=min(m, n)`, and the symmetric multiple-access curve switches from
//! the single-user curve to the scaled joint curve at `r = min(m, n / (K + 1))`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Vertices closer than this in `r` are merged when a curve is assembled.
const MERGE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCurve")]
pub struct PiecewiseLinearCurve {
    vertices: Vec<(f64, f64)>,
}

#[derive(Deserialize)]
struct RawCurve {
    vertices: Vec<(f64, f64)>,
}

impl TryFrom<RawCurve> for PiecewiseLinearCurve {
    type Error = Error;

    fn try_from(raw: RawCurve) -> Result<Self> {
        PiecewiseLinearCurve::new(raw.vertices)
    }
}

impl PiecewiseLinearCurve {
    /// Builds a curve from `(r, d)` vertices, checking the tradeoff-curve shape:
    /// starts at `r = 0`, strictly increasing `r`, nonincreasing nonnegative
    /// `d`, and ends at `d = 0`.
    pub fn new(vertices: Vec<(f64, f64)>) -> Result<Self> {
        let Some(&(r0, _)) = vertices.first() else {
            return invalid("curve needs at least one vertex");
        };
        if r0 != 0.0 {
            return invalid(format!("first vertex must be at r = 0, got {r0}"));
        }
        for &(r, d) in &vertices {
            if !r.is_finite() || !d.is_finite() || d < 0.0 {
                return invalid(format!("bad vertex ({r}, {d})"));
            }
        }
        for w in vertices.windows(2) {
            let ((ra, da), (rb, db)) = (w[0], w[1]);
            if rb <= ra {
                return invalid(format!("vertex r not strictly increasing at {rb}"));
            }
            if db > da {
                return invalid(format!("diversity increases between r = {ra} and r = {rb}"));
            }
        }
        if vertices.last().map(|v| v.1) != Some(0.0) {
            return invalid("last vertex must have d = 0");
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    /// Largest multiplexing gain on the stored domain.
    pub fn r_max(&self) -> f64 {
        self.vertices.last().map_or(0.0, |v| v.0)
    }

    /// Evaluates `d(r)`; zero beyond `r_max`.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if r.is_nan() || r < 0.0 {
            return invalid(format!("multiplexing gain must be >= 0, got {r}"));
        }
        Ok(self.eval_clamped(r))
    }

    /// Like [`eval`](Self::eval) but treats negative or NaN input as `r = 0`.
    ///
    /// Used internally where `r` is built from ratios that are nonnegative by
    /// construction.
    pub(crate) fn eval_clamped(&self, r: f64) -> f64 {
        let r = if r.is_nan() { 0.0 } else { r.max(0.0) };
        // index of the first vertex strictly to the right of r
        let i = self.vertices.partition_point(|v| v.0 <= r);
        if i == self.vertices.len() {
            return 0.0;
        }
        let (r0, d0) = self.vertices[i - 1];
        if r == r0 {
            return d0;
        }
        let (r1, d1) = self.vertices[i];
        d0 + (d1 - d0) * (r - r0) / (r1 - r0)
    }

    /// Smallest `r` with `d(r) = 0`: the scheme's maximum multiplexing gain.
    pub fn zero_crossing(&self) -> f64 {
        self.vertices
            .iter()
            .find(|v| v.1 == 0.0)
            .map_or(0.0, |v| v.0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,d\n");
        for (r, d) in &self.vertices {
            out.push_str(&format!("{r},{d}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("curve vertices are finite")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    /// Assembles a curve from raw points, merging coincident `r` and dropping
    /// anything after the first zero.
    fn from_points(points: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut vertices: Vec<(f64, f64)> = Vec::new();
        for (r, d) in points {
            if let Some(last) = vertices.last() {
                if last.1 == 0.0 {
                    break;
                }
                if (r - last.0).abs() <= MERGE_EPS {
                    continue;
                }
            }
            vertices.push((r, d));
        }
        Self::new(vertices)
    }
}

/// Antenna configuration of a point-to-point link or a symmetric MAC/BC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntennaSpec {
    pub m: usize,
    pub n: usize,
    pub num_users: usize,
}

impl AntennaSpec {
    pub fn new(m: usize, n: usize, num_users: usize) -> Result<Self> {
        if m == 0 || n == 0 || num_users == 0 {
            return invalid(format!(
                "antenna counts and users must be >= 1 (m={m}, n={n}, users={num_users})"
            ));
        }
        Ok(Self { m, n, num_users })
    }

    pub fn curve(&self) -> PiecewiseLinearCurve {
        if self.num_users == 1 {
            ppc_vertices(self.m, self.n)
        } else {
            mac_vertices(self.num_users, self.m, self.n)
        }
    }
}

/// Optimal tradeoff of an `m x n` point-to-point Rayleigh channel.
pub fn ppc_dmt(m: usize, n: usize) -> Result<PiecewiseLinearCurve> {
    AntennaSpec::new(m, n, 1)?;
    Ok(ppc_vertices(m, n))
}

/// Symmetric-rate tradeoff of a `users`-user MAC, `m` antennas per user and
/// `n` at the receiver.
pub fn mac_sym_dmt(users: usize, m: usize, n: usize) -> Result<PiecewiseLinearCurve> {
    AntennaSpec::new(m, n, users)?;
    Ok(mac_vertices(users, m, n))
}

/// Symmetric broadcast tradeoff; coincides with the MAC curve by duality.
pub fn bc_sym_dmt(users: usize, m: usize, n: usize) -> Result<PiecewiseLinearCurve> {
    mac_sym_dmt(users, m, n)
}

pub fn eval_curve(c: &PiecewiseLinearCurve, r: f64) -> Result<f64> {
    c.eval(r)
}

pub fn zero_crossing(c: &PiecewiseLinearCurve) -> f64 {
    c.zero_crossing()
}

fn ppc_point(m: usize, n: usize, k: usize) -> f64 {
    ((m - k) * (n - k)) as f64
}

fn ppc_vertices(m: usize, n: usize) -> PiecewiseLinearCurve {
    let p = m.min(n);
    let vertices = (0..=p).map(|k| (k as f64, ppc_point(m, n, k))).collect();
    PiecewiseLinearCurve { vertices }
}

fn mac_vertices(users: usize, m: usize, n: usize) -> PiecewiseLinearCurve {
    let single = ppc_vertices(m, n);
    if users == 1 {
        return single;
    }
    let joint = ppc_vertices(users * m, n);
    let k = users as f64;
    let threshold = (m as f64).min(n as f64 / (k + 1.0));

    let below = single
        .vertices
        .iter()
        .copied()
        .filter(|&(r, _)| r < threshold - MERGE_EPS);
    let at = std::iter::once((threshold, single.eval_clamped(threshold)));
    let above = joint
        .vertices
        .iter()
        .map(|&(r, d)| (r / k, d))
        .filter(|&(r, _)| r > threshold + MERGE_EPS);

    PiecewiseLinearCurve::from_points(below.chain(at).chain(above))
        .expect("MAC tradeoff vertices form a valid curve")
}
