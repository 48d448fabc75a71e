use num_bigint::BigUint;
use proptest::prelude::*;
use saw_core::analysis::{g_eval, g_inverse, iterate_mu, phi_inv, sandwich_upper, Direction, Real, SandwichKind};
use saw_core::saw::{substitute_series, CountSeries, EndFilter, StartMode, SubstitutionRule};

const DIGITS: usize = 40;

fn midedge_series(counts: &[u64]) -> CountSeries {
    CountSeries {
        counts: counts.iter().map(|&c| BigUint::from(c)).collect(),
        start_mode: StartMode::Midedge,
        start_set: vec![],
        end_filter: EndFilter::Any,
        graph_id: "p".into(),
        valid_through: counts.len() - 1,
        vertex_transitive: false,
    }
}

/// Dense polynomial product over u128.
fn mul(a: &[u128], b: &[u128], top: usize) -> Vec<u128> {
    let mut out = vec![0u128; top + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= top {
                out[i + j] += x * y;
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn g_inverse_undoes_g(x in 0.0f64..=1.0) {
        let x = Real::from_f64(x, DIGITS);
        let back = g_inverse(&g_eval(&x)).unwrap();
        prop_assert!((back - &x).abs() < x.lift(1e-35));
    }

    #[test]
    fn iterates_contract_towards_golden_mean(x0 in 0.5f64..=1.0) {
        let t = iterate_mu(&Real::from_f64(x0, DIGITS), 80, 1e-20).unwrap();
        prop_assert!(t.converged);
        prop_assert!(t.ratios.iter().all(|&r| r <= 4.0 / 7.0 + 1e-12), "{:?}", t.ratios);
        let below = Real::from_f64(x0, DIGITS) < phi_inv(&t.start);
        let expected = if t.errors[0].is_zero() {
            Direction::Constant
        } else if below {
            Direction::Increasing
        } else {
            Direction::Decreasing
        };
        prop_assert_eq!(t.direction, expected);
    }

    #[test]
    fn substitution_matches_direct_expansion(counts in prop::collection::vec(0u64..1000, 2..9)) {
        let s = substitute_series(&midedge_series(&counts), SubstitutionRule::XToX2OnePlusX).unwrap();
        let top = 3 * (counts.len() - 1);
        let mut direct = vec![0u128; top + 1];
        let mut power = vec![1u128];
        for &c in &counts {
            for (i, p) in power.iter().enumerate() {
                direct[i] += c as u128 * p;
            }
            power = mul(&power, &[0, 0, 1, 1], top);
        }
        let got: Vec<u128> = s.counts.iter().map(|c| c.to_string().parse().unwrap()).collect();
        prop_assert_eq!(got, direct);
        prop_assert_eq!(s.valid_through, 2 * (counts.len() - 1) + 1);
    }

    #[test]
    fn sandwich_upper_dominates_lower(lower in prop::collection::vec(0u64..10_000, 1..12), w in 1usize..5) {
        let lower: Vec<BigUint> = lower.into_iter().map(BigUint::from).collect();
        let n = lower.len() - 1;
        for kind in [SandwichKind::FullFisher, SandwichKind::Bipartite] {
            let upper = sandwich_upper(kind, &lower, w, n);
            prop_assert!(upper.iter().zip(&lower).all(|(u, l)| u >= l));
        }
    }
}
