//! Coefficient-wise checks of generating-function identities and inequalities
//! between enumerated series.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::saw::{substitute_series, CountSeries, SubstitutionRule, WeightMode, WeightedCounts};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub degree: usize,
    /// Monomial exponents for multivariate identities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<Vec<usize>>,
    pub relation: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub max_degree: usize,
    pub pass: bool,
    pub checked: usize,
    pub first_mismatch: Option<Mismatch>,
    /// Every degree with at least one failed comparison.
    pub failing_degrees: Vec<usize>,
}

impl IdentityReport {
    fn new(identity: &str, max_degree: usize) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            max_degree,
            pass: true,
            checked: 0,
            first_mismatch: None,
            failing_degrees: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, mismatch: impl FnOnce() -> Mismatch) {
        self.checked += 1;
        if ok {
            return;
        }
        let m = mismatch();
        if !self.failing_degrees.contains(&m.degree) {
            self.failing_degrees.push(m.degree);
        }
        if self.pass {
            self.pass = false;
            self.first_mismatch = Some(m);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        match &self.first_mismatch {
            None => format!("{}: pass through degree {} ({} comparisons)", self.identity, self.max_degree, self.checked),
            Some(m) => format!(
                "{}: FAIL at degree {}{}: {} {} {}; failing degrees {:?}",
                self.identity,
                m.degree,
                m.index.as_ref().map(|i| format!(" {i:?}")).unwrap_or_default(),
                m.left,
                m.relation,
                m.right,
                self.failing_degrees
            ),
        }
    }
}

fn available(series: &CountSeries) -> usize {
    series.valid_through.min(series.n_max())
}

fn need(degree: usize, have: usize) -> Result<()> {
    if have < degree {
        return Err(Error::DegreeUnavailable {
            needed: degree,
            available: have,
        });
    }
    Ok(())
}

/// Checks Z₀(x²(1+x)) = Z₁*(x) through degree `n`.
pub fn verify_fisher_identity(series0: &CountSeries, series1star: &CountSeries, n: usize) -> Result<IdentityReport> {
    let left = substitute_series(series0, SubstitutionRule::XToX2OnePlusX)?;
    need(n, available(&left).min(available(series1star)))?;
    let mut report = IdentityReport::new("Z0(x^2(1+x)) = Z1*(x)", n);
    for m in 0..=n {
        let (a, b) = (&left.counts[m], &series1star.counts[m]);
        report.check(a == b, || Mismatch {
            degree: m,
            index: None,
            relation: "!=".into(),
            left: a.to_string(),
            right: b.to_string(),
        });
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SandwichKind {
    /// Z₁* ≤ Z₁ ≤ (1+2x+2x²+2x³)² Z₁* + 6|W₀|(1+x+x²).
    FullFisher,
    /// c_n ≤ s_n ≤ c_n + 4c_{n−1} + 8c_{n−2} + 12c_{n−3} + 18|W|.
    Bipartite,
}

fn poly_mul(a: &[BigUint], b: &[BigUint], top: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); top + 1];
    for (i, x) in a.iter().enumerate().take(top + 1) {
        for (j, y) in b.iter().enumerate().take(top + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Upper envelope coefficients for the sandwich of the given kind.
pub fn sandwich_upper(kind: SandwichKind, lower: &[BigUint], domain_size: usize, n: usize) -> Vec<BigUint> {
    let big = |x: usize| BigUint::from(x);
    match kind {
        SandwichKind::FullFisher => {
            let factor: Vec<BigUint> = [1usize, 2, 2, 2].iter().map(|&c| big(c)).collect();
            let square = poly_mul(&factor, &factor, n);
            let mut out = poly_mul(&square, lower, n);
            for c in out.iter_mut().take(3) {
                *c += big(6 * domain_size);
            }
            out
        }
        SandwichKind::Bipartite => (0..=n)
            .map(|k| {
                let mut s = big(18 * domain_size);
                for (shift, w) in [(0usize, 1usize), (1, 4), (2, 8), (3, 12)] {
                    if k >= shift {
                        s += &lower[k - shift] * big(w);
                    }
                }
                s
            })
            .collect(),
    }
}

/// Checks `lower ≤ upper ≤ envelope(lower)` coefficient-wise through degree `n`.
pub fn verify_sandwich(
    kind: SandwichKind,
    upper: &CountSeries,
    lower: &CountSeries,
    domain_size: usize,
    n: usize,
) -> Result<IdentityReport> {
    need(n, available(upper).min(available(lower)))?;
    let name = match kind {
        SandwichKind::FullFisher => "Z1* <= Z1 <= (1+2x+2x^2+2x^3)^2 Z1* + 6|W0|(1+x+x^2)",
        SandwichKind::Bipartite => "c_n <= s_n <= c_n + 4c_(n-1) + 8c_(n-2) + 12c_(n-3) + 18|W|",
    };
    let env = sandwich_upper(kind, &lower.counts[..=n], domain_size, n);
    let mut report = IdentityReport::new(name, n);
    for m in 0..=n {
        let (lo, up) = (&lower.counts[m], &upper.counts[m]);
        report.check(lo <= up, || Mismatch {
            degree: m,
            index: None,
            relation: "<= (lower)".into(),
            left: lo.to_string(),
            right: up.to_string(),
        });
        report.check(up <= &env[m], || Mismatch {
            degree: m,
            index: None,
            relation: "<= (upper)".into(),
            left: up.to_string(),
            right: env[m].to_string(),
        });
    }
    Ok(report)
}

/// Expands Σ c(b,w) (q²(1+p))^b r^w into (p, q, r) coefficients of total
/// degree at most `n`.
pub fn expand_black_white(zbw: &WeightedCounts, n: usize) -> BTreeMap<Vec<usize>, BigUint> {
    let mut out = BTreeMap::new();
    for e in &zbw.counts {
        let (b, w) = (e.index[0], e.index[1]);
        let mut binom = BigUint::one();
        for i in 0..=b {
            if i + 2 * b + w <= n {
                *out.entry(vec![i, 2 * b, w]).or_insert_with(BigUint::zero) += &e.count * &binom;
            }
            binom = binom * BigUint::from(b - i) / BigUint::from(i + 1);
        }
    }
    out
}

/// Checks Z̃(p,q,r) = Z(q²(1+p), r) for every monomial of total degree ≤ `n`.
pub fn verify_bipartite_substitution(zbw: &WeightedCounts, zpqr: &WeightedCounts, n: usize) -> Result<IdentityReport> {
    if zbw.mode != WeightMode::BlackWhite || zpqr.mode != WeightMode::Pqr {
        return Err(Error::WrongSeriesKind(
            "expected black/white counts and p/q/r counts".into(),
        ));
    }
    need(n, zbw.n_max.min(zpqr.n_max))?;
    let left = expand_black_white(zbw, n);
    let right: BTreeMap<Vec<usize>, BigUint> = zpqr
        .counts
        .iter()
        .filter(|e| e.index.iter().sum::<usize>() <= n)
        .map(|e| (e.index.clone(), e.count.clone()))
        .collect();
    let mut keys: Vec<&Vec<usize>> = left.keys().chain(right.keys()).collect();
    keys.sort_by_key(|k| (k.iter().sum::<usize>(), (*k).clone()));
    keys.dedup();
    let mut report = IdentityReport::new("Z~(p,q,r) = Z(q^2(1+p), r)", n);
    let zero = BigUint::zero();
    for k in keys {
        let a = left.get(k).unwrap_or(&zero);
        let b = right.get(k).unwrap_or(&zero);
        report.check(a == b, || Mismatch {
            degree: k.iter().sum(),
            index: Some(k.clone()),
            relation: "!=".into(),
            left: a.to_string(),
            right: b.to_string(),
        });
    }
    Ok(report)
}

/// Checks that each n-step SAW from X₀ on G corresponds to exactly 2ⁿ
/// SAWs on F(G) (one short or long passage per triangle), and that the
/// totals agree: Σ over walks with at most `n` triangles equals Σ σ_{k}·2ᵏ.
///
/// `zpqr_full` holds p/q/r counts on F(G) from the images of X₀, ending at
/// original mid-edges, enumerated to length at least 3n.
pub fn verify_circumnavigation(series0: &CountSeries, zpqr_full: &WeightedCounts, n: usize) -> Result<IdentityReport> {
    if zpqr_full.mode != WeightMode::Pqr {
        return Err(Error::WrongSeriesKind("expected p/q/r counts".into()));
    }
    need(n, available(series0))?;
    need(3 * n, zpqr_full.n_max)?;
    let mut by_triangles = vec![BigUint::zero(); n + 1];
    let mut stray = BigUint::zero();
    for e in &zpqr_full.counts {
        let (q, r) = (e.index[1], e.index[2]);
        if r != 0 || q % 2 == 1 {
            stray += &e.count;
        } else if q / 2 <= n {
            by_triangles[q / 2] += &e.count;
        }
    }
    let mut report = IdentityReport::new("#{SAWs on F(G) crossing n triangles} = 2^n sigma_n", n);
    report.check(stray.is_zero(), || Mismatch {
        degree: 0,
        index: None,
        relation: "== 0 (walks with r-steps or odd q)".into(),
        left: stray.to_string(),
        right: "0".into(),
    });
    let mut lhs_total = BigUint::zero();
    let mut rhs_total = BigUint::zero();
    for k in 0..=n {
        let want = &series0.counts[k] << k;
        report.check(by_triangles[k] == want, || Mismatch {
            degree: k,
            index: None,
            relation: "!=".into(),
            left: by_triangles[k].to_string(),
            right: want.to_string(),
        });
        lhs_total += &by_triangles[k];
        rhs_total += want;
    }
    report.check(lhs_total == rhs_total, || Mismatch {
        degree: n,
        index: None,
        relation: "!= (totals)".into(),
        left: lhs_total.to_string(),
        right: rhs_total.to_string(),
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::saw::{EndFilter, StartMode, WeightedEntry};

    fn series(counts: &[u64]) -> CountSeries {
        CountSeries {
            counts: counts.iter().map(|&c| BigUint::from(c)).collect(),
            start_mode: StartMode::Midedge,
            start_set: vec![],
            end_filter: EndFilter::Any,
            graph_id: "t".into(),
            valid_through: counts.len() - 1,
            vertex_transitive: false,
        }
    }

    fn weighted(mode: WeightMode, n_max: usize, entries: &[(&[usize], u64)]) -> WeightedCounts {
        let mut counts: Vec<WeightedEntry> = entries
            .iter()
            .map(|(i, c)| WeightedEntry {
                index: i.to_vec(),
                count: BigUint::from(*c),
            })
            .collect();
        counts.sort_by(|a, b| a.index.cmp(&b.index));
        WeightedCounts {
            mode,
            n_max,
            graph_id: "t".into(),
            counts,
        }
    }

    #[test]
    fn fisher_identity_low_degrees() {
        let s0 = series(&[5, 20]);
        let s1 = series(&[5, 0, 20, 20]);
        let r = verify_fisher_identity(&s0, &s1, 3).unwrap();
        assert!(r.pass, "{}", r.summary());
        let bad = series(&[5, 0, 20, 19]);
        let r = verify_fisher_identity(&s0, &bad, 3).unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_mismatch.unwrap().degree, 3);
        assert_eq!(
            verify_fisher_identity(&s0, &s1, 4),
            Err(Error::DegreeUnavailable { needed: 4, available: 3 })
        );
    }

    #[test]
    fn full_fisher_envelope() {
        // (1+2x+2x²+2x³)² = 1 + 4x + 8x² + 12x³ + 12x⁴ + 8x⁵ + 4x⁶
        let lower = [1u64, 0, 0, 0, 0, 0, 0].map(BigUint::from);
        let env = sandwich_upper(SandwichKind::FullFisher, &lower, 1, 6);
        let want: Vec<BigUint> = [7u64, 10, 14, 12, 12, 8, 4].map(BigUint::from).to_vec();
        assert_eq!(env, want);
    }

    #[test]
    fn sandwich_lower_violation_reported() {
        let r = verify_sandwich(SandwichKind::Bipartite, &series(&[1, 1]), &series(&[1, 2]), 1, 1).unwrap();
        assert!(!r.pass);
        let m = r.first_mismatch.unwrap();
        assert_eq!((m.degree, m.relation.as_str()), (1, "<= (lower)"));
        let r = verify_sandwich(SandwichKind::Bipartite, &series(&[1, 200]), &series(&[1, 2]), 1, 1).unwrap();
        assert_eq!(r.first_mismatch.unwrap().relation, "<= (upper)");
    }

    #[test]
    fn black_step_expands_to_short_and_long_crossings() {
        let zbw = weighted(WeightMode::BlackWhite, 3, &[(&[0, 0], 1), (&[1, 0], 2), (&[0, 1], 3)]);
        let e = expand_black_white(&zbw, 3);
        assert_eq!(e[&vec![0, 2, 0]], BigUint::from(2u32));
        assert_eq!(e[&vec![1, 2, 0]], BigUint::from(2u32));
        assert_eq!(e[&vec![0, 0, 1]], BigUint::from(3u32));
        let zpqr = weighted(
            WeightMode::Pqr,
            3,
            &[(&[0, 0, 0], 1), (&[0, 0, 1], 3), (&[0, 2, 0], 2), (&[1, 2, 0], 2)],
        );
        assert!(verify_bipartite_substitution(&zbw, &zpqr, 3).unwrap().pass);
        let r = verify_bipartite_substitution(&zbw, &zpqr, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.checked, 3);
        assert!(matches!(
            verify_bipartite_substitution(&zpqr, &zbw, 2),
            Err(Error::WrongSeriesKind(_))
        ));
    }
}
