//! Diversity-multiplexing tradeoff analysis of the K-pair MIMO relay switch.
//!
//! `K` pairs of single-antenna users exchange messages through a half-duplex
//! relay with `M` antennas and no direct links. The crate provides
//!
//! * [`curve`]: exact piecewise-linear point-to-point and symmetric MAC/BC
//!   tradeoff curves,
//! * [`allocation`]: static time splits of the reciprocal-channel schemes and
//!   the reciprocal converse,
//! * [`ddf`]: the dynamic decode-and-forward exponent and the non-reciprocal
//!   converse,
//! * [`montecarlo`]: a seeded outage simulator and exponent fitting used to
//!   check the analytic curves at finite SNR.

pub mod allocation;
pub mod config;
pub mod curve;
pub mod ddf;
pub mod error;
pub mod grid;
pub mod montecarlo;
pub mod optimize;

pub use config::{ChannelMode, NetworkConfig};
pub use curve::{bc_sym_dmt, eval_curve, mac_sym_dmt, ppc_dmt, zero_crossing, AntennaSpec, PiecewiseLinearCurve};
pub use error::{Error, Result};
