//! Exhaustive small-range tuple search: canonical sum-zero tuples with
//! bounded entries, filtered by universe membership, ranked by exact
//! quality. Serves as an independent oracle for the verifiers and as a
//! generator of small empirical tables.

use crate::arith::FactorBudget;
use crate::quality::{
    membership, quality_exact, QualityError, QualityEstimate, QualityResult, Tuple, Universe,
};
use num_bigint::BigInt;
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Search parameters; the node budget guards against runaway enumerations.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub n: usize,
    pub entry_bound: u64,
    pub universe: Universe,
    pub top_k: usize,
    pub node_budget: u64,
}

impl SearchSpec {
    pub fn new(n: usize, entry_bound: u64, universe: Universe, top_k: usize) -> Self {
        SearchSpec { n, entry_bound, universe, top_k, node_budget: 200_000_000 }
    }

    /// Nodes the canonical enumeration will touch, roughly: the leading
    /// entry choices times the free inner entries.
    pub fn estimated_nodes(&self) -> u64 {
        let b = self.entry_bound as f64;
        let inner = (2.0 * b + 1.0).powi(self.n as i32 - 2);
        let total = b * inner;
        if total > u64::MAX as f64 {
            u64::MAX
        } else {
            total as u64
        }
    }

    fn validate(&self) -> QualityResult<()> {
        if self.n < 3 {
            return Err(QualityError::Domain(format!("n must be at least 3, got {}", self.n)));
        }
        if self.entry_bound < 1 {
            return Err(QualityError::Domain("entry bound must be at least 1".into()));
        }
        if self.estimated_nodes() > self.node_budget {
            return Err(QualityError::Capacity {
                n: self.n,
                limit: self.node_budget as usize,
                kind: "search node",
            });
        }
        Ok(())
    }
}

/// Canonical form: sorted by (|a| descending, a descending), then globally
/// negated if the leading entry is negative. Two tuples are permutations or
/// global negations of each other iff they share a canonical form.
pub fn canonicalize(entries: &mut Vec<BigInt>) {
    entries.sort_by(|a, b| {
        b.magnitude().cmp(a.magnitude()).then_with(|| b.cmp(a))
    });
    if entries.first().map(|e| e.sign() == num_bigint::Sign::Minus).unwrap_or(false) {
        for e in entries.iter_mut() {
            *e = -&*e;
        }
        entries.sort_by(|a, b| {
            b.magnitude().cmp(a.magnitude()).then_with(|| b.cmp(a))
        });
    }
}

/// Enumerate canonical members of the universe with all |entries| <= bound,
/// paired with their exact qualities. Deterministic: ascending leading
/// entry, inner entries in odometer order, results deduplicated and sorted
/// canonically per leading entry. Tuples whose product has radical 1 (all
/// entries are units) carry no quality and are skipped.
pub fn enumerate_members(spec: &SearchSpec) -> QualityResult<Vec<(Tuple, QualityEstimate)>> {
    spec.validate()?;
    let budget = FactorBudget::default();
    let leads: Vec<u64> = (1..=spec.entry_bound).collect();
    // Work is partitioned by the (positive) leading entry; each partition is
    // independent and the final concatenation preserves canonical order.
    let chunks: Vec<QualityResult<Vec<(Tuple, QualityEstimate)>>> = leads
        .par_iter()
        .map(|&lead| enumerate_with_lead(spec, lead, &budget))
        .collect();
    let mut out = Vec::new();
    for chunk in chunks {
        out.extend(chunk?);
    }
    Ok(out)
}

fn enumerate_with_lead(
    spec: &SearchSpec,
    lead: u64,
    budget: &FactorBudget,
) -> QualityResult<Vec<(Tuple, QualityEstimate)>> {
    let n = spec.n;
    let lead = BigInt::from(lead);
    let bound = BigInt::from(spec.entry_bound);
    // Inner entries a_2 .. a_{n-1} range over [-lead, lead] \ {0}; the last
    // entry is forced by the zero sum. The canonical-form filter keeps each
    // equivalence class exactly once, under its canonical leading entry.
    let mut inner = vec![-lead.clone(); n - 2];
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut results: Vec<(Tuple, QualityEstimate)> = Vec::new();

    'odometer: loop {
        if inner.iter().all(|e| !num_traits::Zero::is_zero(e)) {
            let partial: BigInt = &lead + inner.iter().sum::<BigInt>();
            let last = -partial;
            if !num_traits::Zero::is_zero(&last) && last.magnitude() <= bound.magnitude() {
                let mut entries = Vec::with_capacity(n);
                entries.push(lead.clone());
                entries.extend(inner.iter().cloned());
                entries.push(last);
                let mut canon = entries.clone();
                canonicalize(&mut canon);
                // keep only tuples canonically led by this leading entry
                if canon[0] == lead && seen.insert(canon.clone()) {
                    let tuple = Tuple::new(canon)?;
                    let report = membership(&tuple, &spec.universe)?;
                    if report.verdict {
                        match quality_exact(&tuple, budget) {
                            Ok(q) => results.push((tuple, q)),
                            Err(QualityError::DegenerateRadical) => {}
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }
        // advance the odometer
        for i in 0..inner.len() {
            inner[i] += 1u32;
            if inner[i] > lead {
                inner[i] = -lead.clone();
                if i == inner.len() - 1 {
                    break 'odometer;
                }
            } else {
                break;
            }
        }
        if inner.is_empty() {
            break;
        }
    }
    Ok(results)
}

/// The `top_k` members by exact quality, ties broken by canonical tuple
/// order (lexicographically smaller first).
pub fn best_quality(spec: &SearchSpec) -> QualityResult<Vec<(Tuple, QualityEstimate)>> {
    let mut all = enumerate_members(spec)?;
    all.sort_by(|(ta, qa), (tb, qb)| {
        let fa = qa.exact.unwrap_or(qa.lower_bound);
        let fb = qb.exact.unwrap_or(qb.lower_bound);
        fb.partial_cmp(&fa).unwrap().then_with(|| ta.cmp(tb))
    });
    all.truncate(spec.top_k);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_examples() {
        let mut v: Vec<BigInt> = [-1i64, 9, -8].iter().map(|&x| BigInt::from(x)).collect();
        canonicalize(&mut v);
        let want: Vec<BigInt> = [9i64, -8, -1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(v, want);

        // global negation folds onto the same representative
        let mut v: Vec<BigInt> = [1i64, -9, 8].iter().map(|&x| BigInt::from(x)).collect();
        canonicalize(&mut v);
        assert_eq!(v, want);

        // positive before negative on equal magnitude
        let mut v: Vec<BigInt> = [-1i64, 1, 2, -2].iter().map(|&x| BigInt::from(x)).collect();
        canonicalize(&mut v);
        let want: Vec<BigInt> = [2i64, -2, 1, -1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(v, want);
    }

    #[test]
    fn tiny_search_r3() {
        let spec = SearchSpec::new(3, 2, Universe::R, 10);
        let found = enumerate_members(&spec).unwrap();
        // only (2, -1, -1) qualifies at bound 2
        assert_eq!(found.len(), 1);
        let want: Vec<BigInt> = [2i64, -1, -1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(found[0].0.entries(), &want[..]);
        assert!((found[0].1.exact.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn best_r3_at_bound_81() {
        let spec = SearchSpec::new(3, 81, Universe::R, 1);
        let best = best_quality(&spec).unwrap();
        let want: Vec<BigInt> = [81i64, -80, -1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(best[0].0.entries(), &want[..]);
        assert!((best[0].1.exact.unwrap() - 81f64.ln() / 30f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn budget_guard() {
        let spec = SearchSpec::new(6, 10_000, Universe::R, 1);
        assert!(matches!(
            enumerate_members(&spec),
            Err(QualityError::Capacity { .. })
        ));
        let spec = SearchSpec::new(3, 81, Universe::R, 0);
        assert!(best_quality(&spec).unwrap().is_empty());
    }

    #[test]
    fn no_duplicate_representatives() {
        let spec = SearchSpec::new(4, 8, Universe::B, 1000);
        let found = enumerate_members(&spec).unwrap();
        let mut seen = BTreeSet::new();
        for (t, _) in &found {
            assert!(seen.insert(t.entries().to_vec()), "duplicate {t}");
            let mut neg: Vec<BigInt> = t.entries().iter().map(|e| -e).collect();
            canonicalize(&mut neg);
            assert_eq!(&neg[..], t.entries(), "negation escapes canonical form");
        }
    }
}
