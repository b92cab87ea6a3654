//! The tuple model, the quality functional with exact and certified
//! estimates, and exact membership verification for the tuple universes
//! A(n), B(n), R(n) and U(F,n).

mod membership;
mod subsum;

pub use membership::{
    check_forbidden, check_pairwise_coprime, check_setwise_coprime, check_sum_zero, membership,
    membership_with_limits, CoprimeWitness, ForbiddenCheck, MembershipLimits, MembershipReport,
    PairwiseCoprimeCheck, SetwiseCoprimeCheck, SumZeroCheck,
};
pub use subsum::{check_subsum_01, check_subsum_pm1, SubsumCheck, SubsumWitness};

use crate::arith::{big_ln, radical_upper_bound, ArithError, BigLog, FactorBudget, FactoredInteger};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QualityError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("tuple length {n} exceeds the {kind} subsum capacity {limit}")]
    Capacity { n: usize, limit: usize, kind: &'static str },
    #[error("radical is inexact within budget; supply structural parts for a certified bound")]
    InexactRadical,
    #[error("degenerate tuple: the radical of the product is 1")]
    DegenerateRadical,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub type QualityResult<T> = Result<T, QualityError>;

/// An ordered sequence of at least three nonzero integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple {
    entries: Vec<BigInt>,
}

impl Tuple {
    pub fn new(entries: Vec<BigInt>) -> QualityResult<Self> {
        if entries.len() < 3 {
            return Err(QualityError::Domain(format!(
                "tuples need at least 3 entries, got {}",
                entries.len()
            )));
        }
        if entries.iter().any(Zero::is_zero) {
            return Err(QualityError::Domain("tuple entries must be nonzero".into()));
        }
        Ok(Tuple { entries })
    }

    pub fn from_i64(entries: &[i64]) -> QualityResult<Self> {
        Tuple::new(entries.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction n >= 3
    }

    /// Largest absolute value among the entries.
    pub fn max_abs(&self) -> BigUint {
        self.entries
            .iter()
            .map(|e| e.magnitude().clone())
            .max()
            .expect("tuples are nonempty")
    }

    /// All entries negated (preserves every membership verdict).
    pub fn negated(&self) -> Tuple {
        Tuple { entries: self.entries.iter().map(|e| -e).collect() }
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A finite set of forbidden factors; every element is at least 3.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ForbiddenSet {
    elements: BTreeSet<BigInt>,
}

impl ForbiddenSet {
    pub fn empty() -> Self {
        ForbiddenSet::default()
    }

    pub fn new(elements: impl IntoIterator<Item = BigInt>) -> QualityResult<Self> {
        let elements: BTreeSet<BigInt> = elements.into_iter().collect();
        if let Some(min) = elements.iter().next() {
            if min < &BigInt::from(3) {
                return Err(QualityError::Domain(format!(
                    "forbidden factors must be at least 3, got {min}"
                )));
            }
        }
        Ok(ForbiddenSet { elements })
    }

    pub fn from_u64(elements: &[u64]) -> QualityResult<Self> {
        ForbiddenSet::new(elements.iter().map(|&v| BigInt::from(v)))
    }

    pub fn elements(&self) -> impl Iterator<Item = &BigInt> {
        self.elements.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max(&self) -> Option<&BigInt> {
        self.elements.iter().next_back()
    }

    pub fn contains_any_of(&self, values: &[i64]) -> bool {
        values.iter().any(|v| self.elements.contains(&BigInt::from(*v)))
    }
}

/// One of the tuple universes; `U` carries its forbidden set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Universe {
    /// Sum zero, no {0,1}-subsum, setwise coprime.
    A,
    /// Sum zero, pairwise coprime.
    B,
    /// Sum zero, no {0,1}-subsum, pairwise coprime.
    R,
    /// Sum zero, no {-1,0,1}-subsum, pairwise coprime, no forbidden factor.
    U(ForbiddenSet),
}

impl Universe {
    pub fn tag(&self) -> &'static str {
        match self {
            Universe::A => "A",
            Universe::B => "B",
            Universe::R => "R",
            Universe::U(_) => "U",
        }
    }
}

/// Whether a quality value is exact or only a certified lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    Bounded,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exactness::Exact => write!(f, "exact"),
            Exactness::Bounded => write!(f, "bounded"),
        }
    }
}

/// Exact quality and/or certified lower bound, with the logarithms that
/// produced them.
#[derive(Debug, Clone)]
pub struct QualityEstimate {
    pub exact: Option<f64>,
    pub lower_bound: f64,
    pub ln_max: BigLog,
    pub ln_rad_or_bound: BigLog,
    pub exactness: Exactness,
}

/// Exact quality `ln(max |a_i|) / ln(rad(prod a_i))`, with the radical taken
/// over the union of prime sets of the entries. Every entry must factor
/// completely within the budget.
pub fn quality_exact(tuple: &Tuple, budget: &FactorBudget) -> QualityResult<QualityEstimate> {
    let mut primes: BTreeSet<BigUint> = BTreeSet::new();
    for entry in tuple.entries() {
        let f = FactoredInteger::factorize(entry, budget)?;
        if !f.is_complete() {
            return Err(QualityError::InexactRadical);
        }
        primes.extend(f.distinct_primes()?);
    }
    let mut rad = BigUint::one();
    for p in &primes {
        rad *= p;
    }
    finish_estimate(tuple, rad, Exactness::Exact)
}

/// Certified lower bound on the quality from a structural divisor
/// decomposition: every prime dividing the product of the entries must
/// divide the product of the parts (the generators emit such parts).
pub fn quality_lower_bound(
    tuple: &Tuple,
    structural_parts: &[FactoredInteger],
) -> QualityResult<QualityEstimate> {
    if structural_parts.is_empty() {
        return Err(QualityError::Domain("structural parts must be nonempty".into()));
    }
    let bound = radical_upper_bound(structural_parts)?;
    finish_estimate(tuple, bound, Exactness::Bounded)
}

fn finish_estimate(
    tuple: &Tuple,
    rad_or_bound: BigUint,
    exactness: Exactness,
) -> QualityResult<QualityEstimate> {
    if rad_or_bound.is_one() {
        return Err(QualityError::DegenerateRadical);
    }
    let ln_max = big_ln(&BigInt::from(tuple.max_abs()))?;
    let ln_rad = big_ln(&BigInt::from(rad_or_bound))?;
    let q = ln_max.value / ln_rad.value;
    Ok(QualityEstimate {
        exact: (exactness == Exactness::Exact).then_some(q),
        lower_bound: q,
        ln_max,
        ln_rad_or_bound: ln_rad,
        exactness,
    })
}

/// Per-tuple estimates plus the running maximum, the finite stand-in for the
/// limit superior of an infinite family. Tuples with structural parts get
/// certified bounds; the rest are computed exactly under the given budget.
pub fn quality_series(
    items: &[(Tuple, Vec<FactoredInteger>)],
    budget: &FactorBudget,
) -> QualityResult<Vec<(QualityEstimate, f64)>> {
    let mut out = Vec::with_capacity(items.len());
    let mut running = f64::NEG_INFINITY;
    for (tuple, parts) in items {
        let est = if parts.is_empty() {
            quality_exact(tuple, budget)?
        } else {
            quality_lower_bound(tuple, parts)?
        };
        running = running.max(est.exact.unwrap_or(est.lower_bound));
        out.push((est, running));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(entries: &[i64]) -> Tuple {
        Tuple::from_i64(entries).unwrap()
    }

    #[test]
    fn tuple_invariants() {
        assert!(Tuple::from_i64(&[1, 2]).is_err());
        assert!(Tuple::from_i64(&[1, 0, -1]).is_err());
        assert!(Tuple::from_i64(&[1, -1, 2]).is_ok());
        assert_eq!(t(&[3, -9, 6]).max_abs(), 9u32.into());
    }

    #[test]
    fn forbidden_set_invariants() {
        assert!(ForbiddenSet::from_u64(&[2]).is_err());
        assert!(ForbiddenSet::from_u64(&[]).unwrap().is_empty());
        let f = ForbiddenSet::from_u64(&[4, 9]).unwrap();
        assert_eq!(f.max(), Some(&BigInt::from(9)));
    }

    #[test]
    fn quality_of_the_abc_example() {
        // (8192, -8181, -11): rad = 6666, quality about 1.0234
        let q = quality_exact(&t(&[8192, -8181, -11]), &FactorBudget::default()).unwrap();
        assert!((q.exact.unwrap() - 1.0234).abs() < 5e-4, "{:?}", q.exact);
        assert_eq!(q.exactness, Exactness::Exact);
        assert!((q.ln_rad_or_bound.value - 8.804775258867686).abs() < 1e-9);
    }

    #[test]
    fn quality_examples() {
        let q = quality_exact(&t(&[1, 8, -9]), &FactorBudget::default()).unwrap();
        assert!((q.exact.unwrap() - 9f64.ln() / 6f64.ln()).abs() < 1e-12);

        let q = quality_exact(&t(&[1, 1, -2]), &FactorBudget::default()).unwrap();
        assert!((q.exact.unwrap() - 1.0).abs() < 1e-12);

        // all-unit tuples have radical 1
        assert!(matches!(
            quality_exact(&t(&[1, 1, -1, -1]), &FactorBudget::default()),
            Err(QualityError::DegenerateRadical)
        ));
    }

    #[test]
    fn lower_bound_equals_exact_for_fully_factored_parts() {
        // Remark quadruple at h = 2: (125, -64, -60, -1), rad = 30.
        let tuple = t(&[125, -64, -60, -1]);
        let budget = FactorBudget::default();
        let exact = quality_exact(&tuple, &budget).unwrap();
        let parts: Vec<FactoredInteger> = [125i64, 64, 60]
            .iter()
            .map(|&v| FactoredInteger::factorize(&BigInt::from(v), &budget).unwrap())
            .collect();
        let bounded = quality_lower_bound(&tuple, &parts).unwrap();
        assert!((exact.exact.unwrap() - bounded.lower_bound).abs() < 1e-9);
        assert!((bounded.lower_bound - 125f64.ln() / 30f64.ln()).abs() < 1e-9);
        assert_eq!(bounded.exactness, Exactness::Bounded);

        assert!(quality_lower_bound(&tuple, &[]).is_err());
    }

    #[test]
    fn series_running_max() {
        let budget = FactorBudget::default();
        let items = vec![
            (t(&[1, 8, -9]), vec![]),
            (t(&[1, 1, -2]), vec![]),
            (t(&[8192, -8181, -11]), vec![]),
        ];
        let series = quality_series(&items, &budget).unwrap();
        assert_eq!(series.len(), 3);
        let maxes: Vec<f64> = series.iter().map(|(_, m)| *m).collect();
        assert!((maxes[0] - 1.2262943855).abs() < 1e-6);
        assert!((maxes[1] - 1.2262943855).abs() < 1e-6); // running max keeps the best
        assert!((maxes[2] - 1.2262943855).abs() < 1e-6);
        assert!(quality_series(&[], &budget).unwrap().is_empty());
    }
}
