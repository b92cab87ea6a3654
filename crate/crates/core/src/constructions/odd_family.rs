//! The odd-n family with qualities approaching 5/3: first three entries
//! `(x-1)^5, 10(x^2+1)^2, -(x+1)^5` (which sum to 8 identically), a chain of
//! middle primes, and a factor-avoiding split closing the sum to zero; `x`
//! comes from the negative Pell equation so that `x^2 + 1 = (y^2+1) t^2`
//! contributes only `t` to the radical.

use super::split::split_avoiding_factors;
use super::{
    pell_solutions, ConstructionError, ConstructionResult, FamilyInstance, FamilyParams,
    GeneratorMode,
};
use crate::arith::{gcd, next_prime_above, FactorBudget, FactoredInteger, PrimePolicy};
use crate::quality::{membership, ForbiddenSet, Tuple, Universe};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// How the Pell parameter `y` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YPolicy {
    /// `y` is the factorial of `3(|a_{n-1}| + |a_n|)`, literally; only
    /// usable at toy sizes and rejected otherwise.
    FactorialFaithful,
    /// Least multiple of `10 * lcm(F and the tail entries)` strictly
    /// exceeding three times the sum of the tail magnitudes plus 8.
    MinimalMultiple,
}

impl YPolicy {
    fn as_str(self) -> &'static str {
        match self {
            YPolicy::FactorialFaithful => "factorial-faithful",
            YPolicy::MinimalMultiple => "minimal-multiple",
        }
    }
}

#[derive(Debug, Clone)]
pub struct OddFamilyParams {
    pub n: usize,
    pub forbidden: ForbiddenSet,
    pub pell_index: u32,
    pub y_policy: YPolicy,
}

/// Largest factorial argument the faithful y-policy will materialize.
const FACTORIAL_CAP: u64 = 10_000;
/// Cap on the split bound m (primorial(m) must stay desk-sized).
const SPLIT_BOUND_CAP: u64 = 1_000_000;

/// Generate and verify one member of the odd family in U(F, n).
pub fn odd_family(params: &OddFamilyParams) -> ConstructionResult<FamilyInstance> {
    let OddFamilyParams { n, forbidden, pell_index, y_policy } = params;
    let (n, pell_index) = (*n, *pell_index);
    if n < 5 || n % 2 == 0 {
        return Err(ConstructionError::Domain(format!("n must be odd and at least 5, got {n}")));
    }
    if n > 19 {
        return Err(ConstructionError::Cap(format!(
            "n = {n} exceeds the exhaustive subsum capacity"
        )));
    }
    if pell_index < 1 {
        return Err(ConstructionError::Domain("pell_index must be at least 1".into()));
    }
    if forbidden.contains_any_of(&[5, 10]) {
        return Err(ConstructionError::Domain(
            "the odd family requires 2, 5, 10 not in F".into(),
        ));
    }

    // a-hat_4 = 24 if F is empty, else 3 * (8 + max F).
    let mut a_hat = match forbidden.max() {
        None => BigInt::from(24),
        Some(maxf) => BigInt::from(3) * (BigInt::from(8) + maxf),
    };
    // Middle primes a_4 .. a_{n-2}, each above its a-hat; a-hat_{i+1} = 3 a_i.
    let mut middles: Vec<BigInt> = Vec::new();
    for _i in 4..=(n - 2) {
        let p = next_prime_above(&a_hat, PrimePolicy::Any);
        a_hat = BigInt::from(3) * &p;
        middles.push(p);
    }
    // After the loop a_hat is a-hat_{n-1} (or still a-hat_4 for n = 5); that
    // is the split bound: it dominates |u|, every middle prime and 3 max(F).
    let middle_sum: BigInt = middles.iter().sum();
    let u = -(BigInt::from(8) + &middle_sum);
    let m = a_hat
        .to_u64()
        .filter(|&m| m <= SPLIT_BOUND_CAP)
        .ok_or_else(|| ConstructionError::Cap(format!("split bound {a_hat} too large")))?;
    let split = split_avoiding_factors(&u, m)?;

    let mut tail = middles.clone();
    tail.push(split.v.clone());
    tail.push(split.w.clone());

    let y = match y_policy {
        YPolicy::MinimalMultiple => {
            let mut l = BigInt::one();
            for f in forbidden.elements() {
                l = lcm(&l, f);
            }
            for a in &tail {
                l = lcm(&l, a);
            }
            let base = BigInt::from(10) * l;
            let tail_abs: BigInt = tail.iter().map(|a| a.abs()).sum();
            let target = BigInt::from(3) * (BigInt::from(8) + tail_abs);
            // least multiple of base strictly exceeding target
            (target.div_floor(&base) + 1u32) * &base
        }
        YPolicy::FactorialFaithful => {
            let a_hat_n = BigInt::from(3) * (split.v.abs() + split.w.abs());
            let cap = a_hat_n.to_u64().filter(|&v| v <= FACTORIAL_CAP).ok_or_else(|| {
                ConstructionError::Cap(format!(
                    "factorial-faithful y needs {a_hat_n}! which is not materializable"
                ))
            })?;
            let mut f = BigInt::one();
            for k in 2..=cap {
                f *= BigInt::from(k);
            }
            f
        }
    };

    let sol = pell_solutions(&y)?
        .nth(pell_index as usize - 1)
        .expect("the Pell iterator is unbounded");
    let x = &y * &sol.s;

    let x2p1 = &x * &x + 1u32;
    let mut entries = vec![
        (&x - 1u32).pow(5),
        BigInt::from(10) * &x2p1 * &x2p1,
        -((&x + 1u32).pow(5)),
    ];
    entries.extend(tail.iter().cloned());
    let tuple = Tuple::new(entries)?;

    let cheap = FactorBudget::cheap();
    let mut parts = vec![
        FactoredInteger::unfactored(&x - 1u32)?,
        FactoredInteger::unfactored(&x + 1u32)?,
        FactoredInteger::factorize(&BigInt::from(10), &cheap)?,
        FactoredInteger::unfactored((&y * &y + 1u32).pow(2))?,
        FactoredInteger::unfactored(sol.t.pow(4))?,
    ];
    for p in &middles {
        parts.push(FactoredInteger::from_probable_prime(p.clone())?);
    }
    parts.push(FactoredInteger::unfactored(split.v.clone())?);
    parts.push(FactoredInteger::unfactored(split.w.clone())?);

    let universe = Universe::U(forbidden.clone());
    let report = membership(&tuple, &universe)?;
    if !report.verdict {
        return Err(ConstructionError::Verification(format!(
            "odd family n = {n}, pell index {pell_index} failed membership: {report:?}"
        )));
    }
    Ok(FamilyInstance {
        tuple,
        structural_parts: parts,
        params: FamilyParams::Odd {
            n,
            forbidden: forbidden
                .elements()
                .map(|f| f.to_u64().unwrap_or(u64::MAX))
                .collect(),
            pell_index,
            y_policy: y_policy.as_str(),
        },
        mode: GeneratorMode::Certified,
        membership: Some(report),
        universe: Some(universe),
    })
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a * b).abs() / gcd(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, pell_index: u32) -> OddFamilyParams {
        OddFamilyParams {
            n,
            forbidden: ForbiddenSet::empty(),
            pell_index,
            y_policy: YPolicy::MinimalMultiple,
        }
    }

    #[test]
    fn n5_index1_is_verified() {
        let inst = odd_family(&params(5, 1)).unwrap();
        assert!(inst.membership.as_ref().unwrap().verdict);
        assert_eq!(inst.tuple.len(), 5);
        // first three entries sum to 8 for any x
        let first3: BigInt = inst.tuple.entries()[..3].iter().sum();
        assert_eq!(first3, BigInt::from(8));
        // whole tuple sums to zero
        let total: BigInt = inst.tuple.entries().iter().sum();
        assert!(total.is_zero());
    }

    #[test]
    fn admissibility() {
        let mut p = params(5, 1);
        p.forbidden = ForbiddenSet::from_u64(&[5]).unwrap();
        assert!(matches!(odd_family(&p), Err(ConstructionError::Domain(_))));
        assert!(odd_family(&params(4, 1)).is_err());
        assert!(odd_family(&params(5, 0)).is_err());
    }

    #[test]
    fn faithful_policy_is_rejected_at_real_sizes() {
        let p = OddFamilyParams {
            n: 5,
            forbidden: ForbiddenSet::empty(),
            pell_index: 1,
            y_policy: YPolicy::FactorialFaithful,
        };
        assert!(matches!(odd_family(&p), Err(ConstructionError::Cap(_))));
    }

    #[test]
    fn nonempty_forbidden_set() {
        let p = OddFamilyParams {
            n: 5,
            forbidden: ForbiddenSet::from_u64(&[3, 4]).unwrap(),
            pell_index: 1,
            y_policy: YPolicy::MinimalMultiple,
        };
        let inst = odd_family(&p).unwrap();
        assert!(inst.membership.as_ref().unwrap().verdict);
    }

    #[test]
    fn structural_entry_division() {
        // each entry divides a product of powers of its structural parts
        let inst = odd_family(&params(5, 2)).unwrap();
        let e = inst.tuple.entries();
        let parts = &inst.structural_parts;
        // a1 = (x-1)^5
        assert_eq!(e[0], parts[0].value().pow(5));
        // a2 = 10 (y^2+1)^2 t^4 exactly
        let a2 = BigInt::from(10) * parts[3].value() * parts[4].value();
        assert_eq!(e[1], a2);
    }
}
