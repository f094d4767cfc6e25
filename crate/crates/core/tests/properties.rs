use proptest::prelude::*;
use singpert::engine::{compute_spectrum, RoutePreference};
use singpert::herglotz::{build_model, Delta};
use singpert::spectral_data::RankOneData;
use singpert::C64;

fn instance() -> impl Strategy<Value = RankOneData> {
    (1usize..7)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0.2f64..3.0, n),
                prop::collection::vec(0.1f64..5.0, n),
                prop::collection::vec((0.2f64..2.0, -1.0f64..1.0), n),
                prop::collection::vec((0.2f64..2.0, -1.0f64..1.0), n),
                (0.5f64..3.0, -1.0f64..1.0),
                -8.0f64..8.0,
            )
        })
        .prop_filter_map("atom at the origin", |(gaps, mu, a, b, kappa, start)| {
            let mut x = start;
            let t: Vec<f64> = gaps
                .iter()
                .map(|g| {
                    x += g;
                    x
                })
                .collect();
            if t.iter().any(|s| s.abs() < 0.1) {
                return None;
            }
            let a: Vec<C64> = a.iter().map(|&(r, i)| C64::new(r, i)).collect();
            let b: Vec<C64> = b.iter().map(|&(r, i)| C64::new(r, i)).collect();
            RankOneData::from_parts(&t, &mu, &a, &b, C64::new(kappa.0, kappa.1)).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_interpolates_coefficient_ratio(d in instance()) {
        let m = build_model(&d, Delta::Auto).unwrap();
        for (n, &t) in d.base.t().iter().enumerate() {
            let want = C64::i() * d.a[n] / d.b[n];
            let got = m.phi(C64::new(t, 0.0));
            prop_assert!((got - want).norm() <= 1e-8 * want.norm(), "{got} vs {want}");
        }
    }

    #[test]
    fn matrix_spectrum_matches_phi_zeros(d in instance()) {
        let s = compute_spectrum(&d, RoutePreference::Auto, Delta::Auto).unwrap();
        prop_assert!(s.matches(1e-7), "residual {}", s.match_residual);
    }
}
