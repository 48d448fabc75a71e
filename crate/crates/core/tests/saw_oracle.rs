mod common;

use common::oracle;
use num_bigint::BigUint;
use saw_core::fisher::{fisher_black, fisher_full};
use saw_core::pipeline::Pipeline;
use saw_core::lattice::{build_ball, builtin, Builtin, LatticeSpec, MidEdge};
use saw_core::saw::{
    count_from_midedges, count_from_vertices, displacement_series, weighted_black_white, weighted_pqr,
    CountSeries, EndFilter, EnumConfig,
};

const N: usize = 8;

fn ints(s: &CountSeries) -> Vec<u64> {
    s.counts.iter().map(|c| c.to_string().parse().unwrap()).collect()
}

fn all_builtins() -> Vec<LatticeSpec> {
    Builtin::ALL.iter().map(|b| b.spec()).collect()
}

#[test]
fn vertex_counts_match_oracle() {
    for spec in all_builtins() {
        let ball = build_ball(&spec, N + 1).unwrap();
        for v in spec.seed_vertices() {
            let dfs = count_from_vertices(&ball, &[v.clone()], N, EnumConfig::sequential()).unwrap();
            assert_eq!(ints(&dfs), oracle::vertex_counts(&spec, &v, N), "{} from {v}", spec.name);
        }
    }
}

#[test]
fn hexagonal_vertex_series_frozen() {
    // Frozen after agreement with the brute-force oracle above.
    let h = builtin("hexagonal").unwrap();
    let v = &h.seed_vertices()[0];
    assert_eq!(oracle::vertex_counts(&h, v, N), vec![1, 3, 6, 12, 24, 48, 90, 174, 336]);
}

#[test]
fn midedge_counts_match_oracle() {
    for spec in all_builtins() {
        let ball = build_ball(&spec, N + 2).unwrap();
        let x = spec.domain_midedges();
        let dfs = count_from_midedges(&ball, &x, N, EndFilter::Any, EnumConfig::sequential()).unwrap();
        assert_eq!(ints(&dfs), oracle::midedge_counts(&spec, &x, N, false), "{}", spec.name);
    }
}

#[test]
fn hexagonal_midedge_one_step_by_hand() {
    // X has 5 mid-edges (3 around each domain vertex, one shared);
    // each gives 2 directions with 2 exits.
    let h = builtin("hexagonal").unwrap();
    let x = h.domain_midedges();
    assert_eq!(x.len(), 5);
    assert_eq!(oracle::midedge_counts(&h, &x, 1, false), vec![5, 20]);
}

fn fisher_images() -> Vec<(LatticeSpec, Vec<MidEdge>)> {
    let mut out = Vec::new();
    for name in ["hexagonal", "ladder", "square_octagon"] {
        let g = builtin(name).unwrap();
        let f = fisher_full(&g).unwrap();
        let x = g.domain_midedges().iter().map(|m| f.map_midedge(m)).collect();
        out.push((f.transformed, x));
    }
    let h = builtin("hexagonal").unwrap();
    let f = fisher_black(&h).unwrap();
    let x = h.domain_midedges().iter().map(|m| f.map_midedge(m)).collect();
    out.push((f.transformed, x));
    out
}

#[test]
fn filtered_midedge_counts_on_fisher_images_match_oracle() {
    for (spec, x) in fisher_images() {
        let ball = build_ball(&spec, N + 2).unwrap();
        for filter in [EndFilter::Any, EndFilter::MidedgeOfOriginalE] {
            let original = filter == EndFilter::MidedgeOfOriginalE;
            let dfs = count_from_midedges(&ball, &x, N, filter, EnumConfig::sequential()).unwrap();
            assert_eq!(ints(&dfs), oracle::midedge_counts(&spec, &x, N, original), "{}", spec.name);
        }
    }
}

#[test]
fn black_white_matches_oracle() {
    let h = builtin("hexagonal").unwrap();
    let ball = build_ball(&h, N + 2).unwrap();
    let x = h.domain_midedges();
    let dfs = weighted_black_white(&ball, &x, N, EnumConfig::sequential()).unwrap();
    let want = oracle::black_white(&h, &x, N);
    for e in &dfs.counts {
        let got: u64 = e.count.to_string().parse().unwrap();
        assert_eq!(Some(&got), want.get(&(e.index[0], e.index[1])), "{:?}", e.index);
    }
    assert_eq!(dfs.counts.len(), want.len());
}

#[test]
fn pqr_matches_oracle() {
    let h = builtin("hexagonal").unwrap();
    let f = fisher_black(&h).unwrap();
    let x: Vec<MidEdge> = h.domain_midedges().iter().map(|m| f.map_midedge(m)).collect();
    let ball = build_ball(&f.transformed, N + 2).unwrap();
    let dfs = weighted_pqr(&ball, &x, N, EnumConfig::sequential()).unwrap();
    let want = oracle::pqr(&f.transformed, &x, N);
    for e in &dfs.counts {
        let got: u64 = e.count.to_string().parse().unwrap();
        assert_eq!(Some(&got), want.get(&(e.index[0], e.index[1], e.index[2])), "{:?}", e.index);
    }
    assert_eq!(dfs.counts.len(), want.len());
}

#[test]
fn displacement_matches_oracle() {
    for name in ["hexagonal", "square_octagon", "ladder"] {
        let spec = builtin(name).unwrap();
        let n = 6;
        let ball = build_ball(&spec, n + 2).unwrap();
        let x = spec.domain_midedges();
        let d = displacement_series(&ball, &x, n, EnumConfig::sequential()).unwrap();
        for k in 0..=n {
            let walks = oracle::midedge_saws(&spec, &x, k);
            let sum: u64 = walks
                .iter()
                .map(|w| oracle::midedge_distance(&spec, &w.mids[0], w.mids.last().unwrap()).pow(2))
                .sum();
            assert_eq!(d.counts[k], BigUint::from(walks.len()), "{name} n={k}");
            assert_eq!(d.sum_sq[k], BigUint::from(sum), "{name} n={k}");
        }
    }
}

#[test]
fn ball_independence() {
    for spec in all_builtins() {
        let r = 9;
        let a = build_ball(&spec, r).unwrap();
        let b = build_ball(&spec, r + 2).unwrap();
        let v = &spec.seed_vertices()[0];
        let sa = count_from_vertices(&a, &[v.clone()], r - 1, EnumConfig::sequential()).unwrap();
        let sb = count_from_vertices(&b, &[v.clone()], r - 1, EnumConfig::sequential()).unwrap();
        assert_eq!(sa.counts, sb.counts, "{}", spec.name);
    }
}

#[test]
fn submultiplicative_single_vertex_series() {
    for name in ["hexagonal", "ladder", "tree3", "line"] {
        let spec = builtin(name).unwrap();
        let n = 14;
        let ball = build_ball(&spec, n + 1).unwrap();
        let v = &spec.seed_vertices()[0];
        let s = count_from_vertices(&ball, &[v.clone()], n, EnumConfig::default()).unwrap();
        for m in 0..=n {
            for k in 0..=n - m {
                assert!(s.counts[m + k] <= &s.counts[m] * &s.counts[k], "{name} {m}+{k}");
            }
        }
    }
}

#[test]
fn cubic_bound_and_tree_equality() {
    for name in ["hexagonal", "ladder", "loop3", "square_octagon", "tree3"] {
        let spec = builtin(name).unwrap();
        let n = 14;
        let ball = build_ball(&spec, n + 1).unwrap();
        for v in spec.seed_vertices() {
            let s = count_from_vertices(&ball, &[v.clone()], n, EnumConfig::default()).unwrap();
            for k in 1..=n {
                let cap = BigUint::from(3u64 << (k - 1));
                assert!(s.counts[k] <= cap, "{name} n={k}");
                if name == "tree3" {
                    assert_eq!(s.counts[k], cap);
                }
            }
        }
    }
}

#[test]
fn hexagonal_series_matches_independent_enumeration() {
    let s = Pipeline::new(EnumConfig::sequential())
        .single_vertex(&builtin("hexagonal").unwrap(), 25)
        .unwrap();
    assert_eq!(ints(&s), common::HEX_SIGMA);
}
