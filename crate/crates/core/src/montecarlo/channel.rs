use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::config::{ChannelMode, NetworkConfig};

/// One quasi-static fading realization of the whole network.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDraw {
    /// User-to-relay channel of each of the `2K` users, `M x 1` each.
    pub uplink: Vec<DVector<Complex64>>,
    /// Relay-to-user channel of each user, stored as an `M`-vector.
    pub downlink: Vec<DVector<Complex64>>,
}

impl ChannelDraw {
    /// `M x |Λ|` matrix of the uplink columns selected by bit mask `subset`.
    pub fn uplink_matrix(&self, subset: u32) -> DMatrix<Complex64> {
        let cols: Vec<_> = (0..self.uplink.len())
            .filter(|u| subset & (1 << u) != 0)
            .map(|u| self.uplink[u].clone())
            .collect();
        DMatrix::from_columns(&cols)
    }

    /// Gram matrix `H^† H` of all uplink columns.
    pub fn uplink_gram(&self) -> DMatrix<Complex64> {
        let n = self.uplink.len();
        DMatrix::from_fn(n, n, |i, j| self.uplink[i].dotc(&self.uplink[j]))
    }
}

/// Generator for trial `trial_index` of a run seeded with `master_seed`.
///
/// Each trial owns its own ChaCha stream, so a trial's draw does not depend on
/// which worker evaluates it or in what order.
pub fn trial_rng(master_seed: u64, trial_index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
    rng.set_stream(trial_index);
    rng
}

/// Standard circularly symmetric complex Gaussian, `E|z|^2 = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> DVector<Complex64> {
    DVector::from_fn(len, |_, _| complex_gaussian(rng))
}

pub fn sample_channel(cfg: &NetworkConfig, trial_index: u64, master_seed: u64) -> ChannelDraw {
    let mut rng = trial_rng(master_seed, trial_index);
    let m = cfg.antennas;
    let uplink: Vec<_> = (0..cfg.users()).map(|_| gaussian_vector(&mut rng, m)).collect();
    let downlink = match cfg.mode {
        ChannelMode::Reciprocal => uplink.clone(),
        ChannelMode::NonReciprocal => (0..cfg.users()).map(|_| gaussian_vector(&mut rng, m)).collect(),
    };
    ChannelDraw { uplink, downlink }
}
