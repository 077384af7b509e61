use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Relationship between the user-to-relay and relay-to-user channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelMode {
    /// Downlink matrices equal the uplink ones; the relay has transmit CSI.
    Reciprocal,
    /// Downlink matrices are drawn independently of the uplink.
    NonReciprocal,
}

impl fmt::Display for ChannelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelMode::Reciprocal => "reciprocal",
            ChannelMode::NonReciprocal => "nonreciprocal",
        })
    }
}

impl FromStr for ChannelMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reciprocal" => Ok(ChannelMode::Reciprocal),
            "nonreciprocal" | "non-reciprocal" => Ok(ChannelMode::NonReciprocal),
            other => invalid(format!("unknown channel mode {other:?}")),
        }
    }
}

/// `pairs` single-antenna user pairs served by a relay with `antennas` antennas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NetworkConfig {
    pub pairs: usize,
    pub antennas: usize,
    pub mode: ChannelMode,
}

impl NetworkConfig {
    pub fn new(pairs: usize, antennas: usize, mode: ChannelMode) -> Result<Self> {
        if pairs == 0 {
            return invalid("number of pairs must be >= 1");
        }
        if antennas == 0 {
            return invalid("number of relay antennas must be >= 1");
        }
        Ok(Self { pairs, antennas, mode })
    }

    pub fn reciprocal(pairs: usize, antennas: usize) -> Result<Self> {
        Self::new(pairs, antennas, ChannelMode::Reciprocal)
    }

    pub fn nonreciprocal(pairs: usize, antennas: usize) -> Result<Self> {
        Self::new(pairs, antennas, ChannelMode::NonReciprocal)
    }

    /// Number of end users, two per pair.
    pub fn users(&self) -> usize {
        2 * self.pairs
    }
}
