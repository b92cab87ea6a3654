//! Exact per-condition verification of tuples against the universes.

use super::subsum::{
    check_subsum_01, check_subsum_pm1, SubsumCheck, SUBSUM_01_DEFAULT_LIMIT,
    SUBSUM_PM1_DEFAULT_LIMIT,
};
use super::{ForbiddenSet, QualityResult, Tuple, Universe};
use crate::arith::gcd;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Sum-of-entries condition with its residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumZeroCheck {
    pub ok: bool,
    pub residual: BigInt,
}

/// A violating index pair (1-based) together with the shared divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoprimeWitness {
    pub i: usize,
    pub j: usize,
    pub gcd: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseCoprimeCheck {
    pub ok: bool,
    pub witness: Option<CoprimeWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetwiseCoprimeCheck {
    pub ok: bool,
    pub gcd: BigInt,
}

/// A forbidden-factor violation: 1-based entry index and the divisor hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenCheck {
    pub ok: bool,
    pub witness: Option<(usize, BigInt)>,
}

/// Capacity limits for the exhaustive subsum scans.
#[derive(Debug, Clone, Copy)]
pub struct MembershipLimits {
    pub subsum_01: usize,
    pub subsum_pm1: usize,
}

impl Default for MembershipLimits {
    fn default() -> Self {
        MembershipLimits {
            subsum_01: SUBSUM_01_DEFAULT_LIMIT,
            subsum_pm1: SUBSUM_PM1_DEFAULT_LIMIT,
        }
    }
}

/// Per-condition verdicts for one tuple against one universe. Conditions not
/// applicable to the universe stay `None`.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub universe: Universe,
    pub verdict: bool,
    pub sum_zero: SumZeroCheck,
    pub pairwise: Option<PairwiseCoprimeCheck>,
    pub setwise: Option<SetwiseCoprimeCheck>,
    pub subsum: Option<SubsumCheck>,
    pub forbidden: Option<ForbiddenCheck>,
}

/// `sum(entries) = 0`, with the residual.
pub fn check_sum_zero(tuple: &Tuple) -> SumZeroCheck {
    let residual: BigInt = tuple.entries().iter().sum();
    SumZeroCheck { ok: residual.is_zero(), residual }
}

/// All index pairs coprime; on failure reports the first violating pair.
pub fn check_pairwise_coprime(tuple: &Tuple) -> PairwiseCoprimeCheck {
    let entries = tuple.entries();
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            let g = gcd(&entries[i], &entries[j]);
            if !g.is_one() {
                return PairwiseCoprimeCheck {
                    ok: false,
                    witness: Some(CoprimeWitness { i: i + 1, j: j + 1, gcd: g }),
                };
            }
        }
    }
    PairwiseCoprimeCheck { ok: true, witness: None }
}

/// `gcd` of all entries is 1.
pub fn check_setwise_coprime(tuple: &Tuple) -> SetwiseCoprimeCheck {
    let mut g = BigInt::zero();
    for e in tuple.entries() {
        g = gcd(&g, e);
        if g.is_one() {
            break;
        }
    }
    SetwiseCoprimeCheck { ok: g.is_one(), gcd: g }
}

/// No entry is divisible by any element of `forbidden`.
pub fn check_forbidden(tuple: &Tuple, forbidden: &ForbiddenSet) -> ForbiddenCheck {
    for (idx, entry) in tuple.entries().iter().enumerate() {
        for f in forbidden.elements() {
            if entry.mod_floor(f).is_zero() {
                return ForbiddenCheck { ok: false, witness: Some((idx + 1, f.clone())) };
            }
        }
    }
    ForbiddenCheck { ok: true, witness: None }
}

/// Membership with the default subsum capacities.
pub fn membership(tuple: &Tuple, universe: &Universe) -> QualityResult<MembershipReport> {
    membership_with_limits(tuple, universe, MembershipLimits::default())
}

/// The conditions per universe:
/// A(n): sum zero, no {0,1}-subsum, setwise coprime.
/// B(n): sum zero, pairwise coprime.
/// R(n): sum zero, no {0,1}-subsum, pairwise coprime.
/// U(F,n): sum zero, no {-1,0,1}-subsum, pairwise coprime, no forbidden factor.
pub fn membership_with_limits(
    tuple: &Tuple,
    universe: &Universe,
    limits: MembershipLimits,
) -> QualityResult<MembershipReport> {
    let sum_zero = check_sum_zero(tuple);
    let mut pairwise = None;
    let mut setwise = None;
    let mut subsum = None;
    let mut forbidden = None;

    match universe {
        Universe::A => {
            subsum = Some(check_subsum_01(tuple, limits.subsum_01)?);
            setwise = Some(check_setwise_coprime(tuple));
        }
        Universe::B => {
            pairwise = Some(check_pairwise_coprime(tuple));
        }
        Universe::R => {
            subsum = Some(check_subsum_01(tuple, limits.subsum_01)?);
            pairwise = Some(check_pairwise_coprime(tuple));
        }
        Universe::U(f) => {
            subsum = Some(check_subsum_pm1(tuple, limits.subsum_pm1)?);
            pairwise = Some(check_pairwise_coprime(tuple));
            forbidden = Some(check_forbidden(tuple, f));
        }
    }

    let verdict = sum_zero.ok
        && pairwise.as_ref().map_or(true, |c| c.ok)
        && setwise.as_ref().map_or(true, |c| c.ok)
        && subsum.as_ref().map_or(true, |c| c.ok)
        && forbidden.as_ref().map_or(true, |c| c.ok);

    Ok(MembershipReport {
        universe: universe.clone(),
        verdict,
        sum_zero,
        pairwise,
        setwise,
        subsum,
        forbidden,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(entries: &[i64]) -> Tuple {
        Tuple::from_i64(entries).unwrap()
    }

    #[test]
    fn sum_zero_examples() {
        assert!(check_sum_zero(&t(&[27, -8, -18, -1])).ok);
        let c = check_sum_zero(&t(&[1, 2, 3]));
        assert!(!c.ok);
        assert_eq!(c.residual, BigInt::from(6));
        assert!(check_sum_zero(&t(&[8192, -8181, -11])).ok);
    }

    #[test]
    fn coprimality_examples() {
        assert!(check_pairwise_coprime(&t(&[2, 3, -5])).ok);
        let c = check_pairwise_coprime(&t(&[2, 4, -6]));
        assert!(!c.ok);
        let w = c.witness.unwrap();
        assert_eq!((w.i, w.j, w.gcd), (1, 2, BigInt::from(2)));
        assert!(check_pairwise_coprime(&t(&[50653, -42875, -7776, -31, 29])).ok);

        assert!(check_setwise_coprime(&t(&[6, 10, -15, -1])).ok);
        assert!(!check_setwise_coprime(&t(&[2, 4, -6])).ok);
    }

    #[test]
    fn forbidden_examples() {
        let empty = ForbiddenSet::empty();
        assert!(check_forbidden(&t(&[9, -4, -5]), &empty).ok);

        let f3 = ForbiddenSet::from_u64(&[3]).unwrap();
        let c = check_forbidden(&t(&[9, -4, -5]), &f3);
        assert!(!c.ok);
        assert_eq!(c.witness.unwrap(), (1, BigInt::from(3)));

        // -7776 = -6^5 is a multiple of both 4 and 9.
        let f49 = ForbiddenSet::from_u64(&[4, 9]).unwrap();
        let c = check_forbidden(&t(&[50653, -42875, -7776, -31, 29]), &f49);
        assert!(!c.ok);
        assert_eq!(c.witness.unwrap(), (3, BigInt::from(4)));
        // negative entries count too
        let c = check_forbidden(&t(&[5, -9, 4]), &f49);
        assert!(!c.ok);
        assert_eq!(c.witness.unwrap(), (2, BigInt::from(9)));
    }

    #[test]
    fn membership_examples() {
        // (8192, -8181, -11) is in R(3).
        let r = membership(&t(&[8192, -8181, -11]), &Universe::R).unwrap();
        assert!(r.verdict);

        // a cancelling pair is caught by the U subsum condition
        let u = Universe::U(ForbiddenSet::empty());
        let r = membership(&t(&[1, -1, 2, -2, 7]), &u).unwrap();
        assert!(!r.verdict);
        assert!(!r.subsum.as_ref().unwrap().ok);

        // (6, 10, -15, -1): fails B(4) pairwise but is a member of A(4).
        let tuple = t(&[6, 10, -15, -1]);
        let rb = membership(&tuple, &Universe::B).unwrap();
        assert!(!rb.verdict);
        let ra = membership(&tuple, &Universe::A).unwrap();
        assert!(ra.verdict, "{ra:?}");
    }

    #[test]
    fn konyagin_quintuple_in_u_empty() {
        let tuple = t(&[50653, -42875, -7776, -31, 29]);
        let r = membership(&tuple, &Universe::U(ForbiddenSet::empty())).unwrap();
        assert!(r.verdict, "{r:?}");
        // with 4 in F the -6s^2 entry disqualifies the tuple
        let f = ForbiddenSet::from_u64(&[4, 9]).unwrap();
        let r = membership(&tuple, &Universe::U(f)).unwrap();
        assert!(!r.verdict);
        assert!(!r.forbidden.as_ref().unwrap().ok);
    }
}
