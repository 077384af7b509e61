mod common;

use common::{db, grid, rayleigh_cutset_outage};
use switch_dmt::allocation::StaticScheme;
use switch_dmt::montecarlo::{
    estimate_outage, logdet_capacity, outage_cutset_reciprocal, outage_ddf, outage_static_phases,
    sample_channel, sweep_and_fit, OutageEvent,
};
use switch_dmt::{Error, NetworkConfig};

#[test]
fn outage_nonincreasing_in_snr() {
    // R = r log2(rho) vanishes at 0 dB, so monotonicity is a high-SNR property
    let snr = grid(10.0, 5.0, 35.0);
    let cases = [
        (OutageEvent::CutsetReciprocal, NetworkConfig::reciprocal(1, 2).unwrap(), 0.2),
        (OutageEvent::Ddf, NetworkConfig::nonreciprocal(1, 1).unwrap(), 0.1),
        (
            OutageEvent::StaticPhases { scheme: StaticScheme::MacTdma, a: 0.5 },
            NetworkConfig::reciprocal(1, 1).unwrap(),
            0.1,
        ),
    ];
    for (ev, cfg, r) in cases {
        let pts = estimate_outage(&ev, r, &cfg, &snr, 50_000, 5, None).unwrap();
        for w in pts.windows(2) {
            let sigma = (w[0].std_err.powi(2) + w[1].std_err.powi(2)).sqrt();
            assert!(w[1].p_hat <= w[0].p_hat + 3.0 * sigma, "{ev}: {:?}", w);
        }
    }
}

#[test]
fn single_antenna_cutset_matches_closed_form_other_rate() {
    let cfg = NetworkConfig::reciprocal(2, 1).unwrap();
    for snr_db in [5.0, 15.0, 25.0] {
        let p = outage_cutset_reciprocal(0.3, &cfg, snr_db, 40_000, 77).unwrap();
        let exact = rayleigh_cutset_outage(0.3, db(snr_db));
        assert!((p.p_hat - exact).abs() <= 3.0 * p.std_err, "{snr_db} dB: {} vs {exact}", p.p_hat);
    }
}

#[test]
fn reciprocal_uplink_and_downlink_capacities_agree() {
    let cfg = NetworkConfig::reciprocal(2, 3).unwrap();
    for t in 0..20 {
        let d = sample_channel(&cfg, t, 3);
        for (up, down) in d.uplink.iter().zip(&d.downlink) {
            let up = nalgebra::DMatrix::from_column_slice(3, 1, up.as_slice());
            let down = nalgebra::DMatrix::from_row_slice(1, 3, down.as_slice());
            let a = logdet_capacity(&up, 12.0).unwrap();
            let b = logdet_capacity(&down, 12.0).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn single_point_wrappers_and_refusals() {
    let nr = NetworkConfig::nonreciprocal(1, 2).unwrap();
    assert_eq!(outage_ddf(0.0, &nr, 20.0, 1000, 1).unwrap().outages, 0);
    let a = outage_ddf(0.2, &nr, 10.0, 5000, 1).unwrap();
    let b = outage_ddf(0.2, &nr, 10.0, 5000, 1).unwrap();
    assert_eq!(a, b);
    let four = NetworkConfig::nonreciprocal(4, 2).unwrap();
    assert!(matches!(outage_ddf(0.1, &four, 10.0, 10, 1), Err(Error::Refused(_))));
    let four = NetworkConfig::reciprocal(4, 2).unwrap();
    assert!(matches!(
        outage_static_phases(0.1, &four, 0.5, StaticScheme::MacTdma, 10.0, 10, 1),
        Err(Error::Refused(_))
    ));
}

#[test]
fn static_tdma_exponent_tracks_fixed_split_analytic() {
    // K = 1, M = 1, a = 0.5, r = 0.1: both phases have exponent 0.8
    let cfg = NetworkConfig::reciprocal(1, 1).unwrap();
    let ev = OutageEvent::StaticPhases { scheme: StaticScheme::MacTdma, a: 0.5 };
    let res = sweep_and_fit(&ev, 0.1, &cfg, &grid(20.0, 5.0, 40.0), 400_000, 13, None).unwrap();
    assert!((res.analytic_d - 0.8).abs() < 1e-12);
    let e = res.fit.exponent.unwrap();
    assert!((e - 0.8).abs() <= 0.2, "fitted {e}");
}

#[test]
fn macbc_runs_are_labelled_partial() {
    let cfg = NetworkConfig::reciprocal(1, 2).unwrap();
    let ev = OutageEvent::StaticPhases { scheme: StaticScheme::MacBc, a: 0.5 };
    let res = sweep_and_fit(&ev, 0.2, &cfg, &grid(0.0, 5.0, 10.0), 2000, 1, None).unwrap();
    assert!(res.partial);
    assert!(res.summary_json().contains("\"partial\": true"));
}
