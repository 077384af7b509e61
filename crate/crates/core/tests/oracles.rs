mod common;

use common::{grid, AlphaGridOracle};
use switch_dmt::allocation::{PhaseCurves, StaticScheme};
use switch_dmt::ddf::{converse_outage_opt, inner_ddf_opt, upper_bound_nonreciprocal};
use switch_dmt::NetworkConfig;

#[test]
fn single_user_subset_against_fine_alpha_grid() {
    let oracle = AlphaGridOracle::new(1, 6, 1000);
    let want = oracle.min_cost(3, 0.2);
    let got = inner_ddf_opt(1, 3, 6, 0.2).unwrap();
    // hand-derived: s2 = 3/4 on the boundary with s1 = 1 costs 6 / 4
    assert!((want - 1.5).abs() <= oracle.resolution_bound());
    assert!(got <= want + 1e-9, "{got} > grid {want}");
    assert!(want - got <= oracle.resolution_bound() + 1e-9, "{got} vs grid {want}");
}

#[test]
fn reduced_solver_against_alpha_grid_coarse_sweep() {
    for m in 1..=3 {
        for l in 1..=3 {
            let n = if l.min(m) == 3 { 40 } else { 100 };
            let oracle = AlphaGridOracle::new(l, m, n);
            for k in 1..=3 {
                if l > 2 * k {
                    continue;
                }
                for r in grid(0.0, 0.01, 0.5) {
                    let want = oracle.min_cost(k, r);
                    let got = inner_ddf_opt(l, k, m, r).unwrap();
                    assert!(
                        got <= want + 1e-9 && want - got <= oracle.resolution_bound() + 1e-9,
                        "L={l} K={k} M={m} r={r}: reduced {got}, grid {want}"
                    );
                }
            }
        }
    }
}

#[test]
fn oracle_lattice_sizes() {
    // nonincreasing triples over 0..=n: C(n + 3, 3)
    assert_eq!(AlphaGridOracle::new(3, 3, 10).uplink_points(), 286);
    assert_eq!(AlphaGridOracle::new(1, 4, 10).uplink_points(), 11);
}

#[test]
fn converse_search_agrees_with_closed_form_small() {
    for k in 1..=3 {
        for m in [1, 4] {
            let cfg = NetworkConfig::nonreciprocal(k, m).unwrap();
            for r in grid(0.0, 0.05, 0.95) {
                let num = converse_outage_opt(r, &cfg).unwrap();
                let closed = upper_bound_nonreciprocal(r, &cfg).unwrap();
                assert!((num - closed).abs() < 1e-3, "K={k} M={m} r={r}: {num} vs {closed}");
            }
        }
    }
}

#[test]
fn allocation_bisection_against_dense_split_grid() {
    for (scheme, k, m) in [
        (StaticScheme::MacBc, 3, 4),
        (StaticScheme::MacBc, 2, 3),
        (StaticScheme::MacTdma, 3, 6),
        (StaticScheme::MacTdma, 2, 2),
        (StaticScheme::MacTdma, 1, 3),
    ] {
        let phases = PhaseCurves::new(scheme, &NetworkConfig::reciprocal(k, m).unwrap());
        for r in grid(0.02, 0.04, 0.46) {
            let sol = phases.solve(r).unwrap();
            assert!(sol.residual <= 1e-9);
            let best = (1..20_000)
                .map(|i| phases.diversity_at(r, i as f64 * 5e-5))
                .fold(0.0f64, f64::max);
            assert!(sol.diversity >= best - 1e-9, "{scheme} K={k} M={m} r={r}");
            assert!(sol.diversity - best < 5e-3, "{scheme} K={k} M={m} r={r}: {} vs {best}", sol.diversity);
        }
    }
}
