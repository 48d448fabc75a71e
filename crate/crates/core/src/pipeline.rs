//! End-to-end runs that build the right balls and start sets for each
//! identity, so callers only choose a lattice and a degree.

use serde::Serialize;

use crate::analysis::{
    verify_bipartite_substitution, verify_circumnavigation, verify_fisher_identity, verify_sandwich,
    IdentityReport, SandwichKind,
};
use crate::error::Result;
use crate::fisher::{fisher_black, fisher_full, FisherResult};
use crate::lattice::{build_ball_capped, BallGraph, LatticeSpec, MidEdge, DEFAULT_MAX_VERTICES};
use crate::saw::{
    count_from_midedges, count_from_vertices, weighted_black_white, weighted_pqr, CountSeries, EndFilter,
    EnumConfig,
};

/// Built-in lattices whose automorphism group acts transitively on vertices.
pub const VERTEX_TRANSITIVE: &[&str] = &["hexagonal", "ladder", "loop3", "square_octagon", "tree3", "line"];

#[derive(Clone, Copy, Debug)]
pub struct Pipeline {
    pub cfg: EnumConfig,
    pub max_vertices: usize,
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline {
            cfg: EnumConfig::default(),
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

/// An identity report together with the series it compared.
#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub report: IdentityReport,
    pub left: CountSeries,
    pub right: CountSeries,
}

fn images(f: &FisherResult, xs: &[MidEdge]) -> Vec<MidEdge> {
    xs.iter().map(|m| f.map_midedge(m)).collect()
}

impl Pipeline {
    pub fn new(cfg: EnumConfig) -> Self {
        Pipeline {
            cfg,
            ..Default::default()
        }
    }

    /// A ball just large enough for walks of length `n_max` from the seeds.
    pub fn ball(&self, spec: &LatticeSpec, n_max: usize) -> Result<BallGraph> {
        build_ball_capped(spec, n_max + 1, self.max_vertices)
    }

    /// σ_n from the first domain vertex, flagged vertex-transitive for the
    /// built-ins known to be.
    pub fn single_vertex(&self, spec: &LatticeSpec, n_max: usize) -> Result<CountSeries> {
        let ball = self.ball(spec, n_max)?;
        let v = spec.seed_vertices()[0].clone();
        let mut s = count_from_vertices(&ball, &[v], n_max, self.cfg)?;
        s.vertex_transitive = VERTEX_TRANSITIVE.contains(&spec.name.as_str());
        Ok(s)
    }

    /// Mid-edge series from X, the edges incident to the fundamental domain.
    pub fn domain_series(&self, spec: &LatticeSpec, n_max: usize) -> Result<CountSeries> {
        let ball = self.ball(spec, n_max)?;
        count_from_midedges(&ball, &spec.domain_midedges(), n_max, EndFilter::Any, self.cfg)
    }

    /// Z₁* on F(G): from the images of X₀, ending at original mid-edges.
    fn z1_star(&self, f: &FisherResult, x0: &[MidEdge], n: usize) -> Result<CountSeries> {
        let ball = self.ball(&f.transformed, n)?;
        count_from_midedges(&ball, &images(f, x0), n, EndFilter::MidedgeOfOriginalE, self.cfg)
    }

    /// Z₀(x²(1+x)) = Z₁*(x) through degree `degree`.
    pub fn fisher_identity(&self, spec: &LatticeSpec, degree: usize) -> Result<Verification> {
        let f = fisher_full(spec)?;
        let x0 = spec.domain_midedges();
        // Degree m of the substituted series needs lengths up to ⌊m/2⌋.
        let n0 = (degree / 2).max(1);
        let left = self.domain_series(spec, n0)?;
        let right = self.z1_star(&f, &x0, degree)?;
        let report = verify_fisher_identity(&left, &right, degree)?;
        Ok(Verification { report, left, right })
    }

    /// Z₁* ≤ Z₁ ≤ (1+2x+2x²+2x³)² Z₁* + 6|W₀|(1+x+x²) on F(G).
    pub fn full_fisher_sandwich(&self, spec: &LatticeSpec, degree: usize) -> Result<Verification> {
        let f = fisher_full(spec)?;
        let lower = self.z1_star(&f, &spec.domain_midedges(), degree)?;
        let upper = self.domain_series(&f.transformed, degree)?;
        let report = verify_sandwich(SandwichKind::FullFisher, &upper, &lower, spec.domain.len(), degree)?;
        Ok(Verification {
            report,
            left: lower,
            right: upper,
        })
    }

    /// c_n ≤ s_n ≤ c_n + 4c_{n−1} + 8c_{n−2} + 12c_{n−3} + 18|W| on G̃.
    pub fn bipartite_sandwich(&self, spec: &LatticeSpec, degree: usize) -> Result<Verification> {
        let f = fisher_black(spec)?;
        let lower = self.z1_star(&f, &spec.domain_midedges(), degree)?;
        let upper = self.domain_series(&f.transformed, degree)?;
        let report = verify_sandwich(SandwichKind::Bipartite, &upper, &lower, spec.domain.len(), degree)?;
        Ok(Verification {
            report,
            left: lower,
            right: upper,
        })
    }

    /// Z̃(p,q,r) = Z(q²(1+p), r) through total degree `degree`.
    pub fn bipartite_substitution(&self, spec: &LatticeSpec, degree: usize) -> Result<IdentityReport> {
        let f = fisher_black(spec)?;
        let x = spec.domain_midedges();
        let zbw = weighted_black_white(&self.ball(spec, degree)?, &x, degree, self.cfg)?;
        let zpqr = weighted_pqr(&self.ball(&f.transformed, degree)?, &images(&f, &x), degree, self.cfg)?;
        verify_bipartite_substitution(&zbw, &zpqr, degree)
    }

    /// Each n-step SAW from X₀ lifts to 2ⁿ SAWs on F(G), for n ≤ `n`.
    pub fn circumnavigation(&self, spec: &LatticeSpec, n: usize) -> Result<IdentityReport> {
        let f = fisher_full(spec)?;
        let x0 = spec.domain_midedges();
        let series0 = self.domain_series(spec, n)?;
        let zpqr = weighted_pqr(&self.ball(&f.transformed, 3 * n)?, &images(&f, &x0), 3 * n, self.cfg)?;
        verify_circumnavigation(&series0, &zpqr, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::builtin;

    fn seq() -> Pipeline {
        Pipeline::new(EnumConfig::sequential())
    }

    #[test]
    fn fisher_identity_small_degree() {
        for name in ["hexagonal", "ladder", "square_octagon"] {
            let v = seq().fisher_identity(&builtin(name).unwrap(), 10).unwrap();
            assert!(v.report.pass, "{name}: {}", v.report.summary());
        }
    }

    #[test]
    fn sandwiches_small_degree() {
        let h = builtin("hexagonal").unwrap();
        // The printed upper envelope undercounts extensions of empty walks,
        // which can leave through either end of their mid-edge.
        let v = seq().full_fisher_sandwich(&h, 8).unwrap();
        assert_eq!(v.report.failing_degrees, vec![1, 2, 3], "{}", v.report.summary());
        assert_eq!(v.report.first_mismatch.unwrap().relation, "<= (upper)");
        let v = seq().bipartite_sandwich(&h, 8).unwrap();
        assert!(v.report.pass, "{}", v.report.summary());
    }

    #[test]
    fn substitution_and_circumnavigation_small() {
        let h = builtin("hexagonal").unwrap();
        let r = seq().bipartite_substitution(&h, 8).unwrap();
        assert!(r.pass, "{}", r.summary());
        let r = seq().circumnavigation(&h, 3).unwrap();
        assert!(r.pass, "{}", r.summary());
    }

    #[test]
    fn tree_is_flagged_transitive() {
        let s = seq().single_vertex(&builtin("tree3").unwrap(), 5).unwrap();
        assert!(s.vertex_transitive);
    }
}
