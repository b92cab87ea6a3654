//! The quintuple family `(189(x+1)^9, -189(x-1)^9, -42(3x^2+7)^4,
//! 16(63x^2+79)^2, 608)` with `x = ell^h - 1`: entries share bounded common
//! divisors (they are not pairwise coprime), the setwise gcd is 1, and the
//! qualities approach 9/5 because `x+1` is a prime power.

use super::{ConstructionError, ConstructionResult, FamilyInstance, FamilyParams, GeneratorMode};
use crate::arith::{gcd, is_probable_prime, FactorBudget, FactoredInteger};
use crate::quality::{check_setwise_coprime, membership, Tuple, Universe};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// The four divisor bounds of the closing construction; every shared prime
/// of a pair of entries divides one of these.
pub const NINE_FIFTHS_DIVISOR_BOUNDS: [u64; 4] = [608, 1890, 5712, 214704];

/// Per-pair gcds (1-based indices) and whether each divides an element of
/// [`NINE_FIFTHS_DIVISOR_BOUNDS`]; kept as a report because the literal
/// divisibility can fail on prime multiplicities even though the prime
/// support is always covered.
#[derive(Debug, Clone)]
pub struct PairwiseGcdReport {
    pub pairs: Vec<PairGcd>,
    pub setwise_gcd: BigInt,
    pub all_divide_bounds: bool,
}

#[derive(Debug, Clone)]
pub struct PairGcd {
    pub i: usize,
    pub j: usize,
    pub gcd: BigInt,
    pub divides_a_bound: bool,
    /// The squarefree kernel of the gcd always divides a bound in the swept
    /// parameter range; reported separately from the literal check.
    pub radical_divides_a_bound: bool,
}

const H_CAP: u32 = 10_000;

/// Build the quintuple for an odd prime `ell` and `h >= 1`, verify the sum
/// and the A(5)-style conditions, and report all pairwise gcds.
pub fn nine_fifths_family(ell: u64, h: u32) -> ConstructionResult<(FamilyInstance, PairwiseGcdReport)> {
    if ell < 3 || ell % 2 == 0 || !is_probable_prime(&BigInt::from(ell)) {
        return Err(ConstructionError::Domain(format!("ell = {ell} must be an odd prime")));
    }
    if h < 1 {
        return Err(ConstructionError::Domain("h must be at least 1".into()));
    }
    if h > H_CAP {
        return Err(ConstructionError::Cap(format!("h = {h} exceeds the cap {H_CAP}")));
    }

    let x = BigInt::from(ell).pow(h) - 1u32;
    let x2 = &x * &x;
    let q1 = BigInt::from(3) * &x2 + 7u32;
    let q2 = BigInt::from(63) * &x2 + 79u32;
    let entries = vec![
        BigInt::from(189) * (&x + 1u32).pow(9),
        BigInt::from(-189) * (&x - 1u32).pow(9),
        BigInt::from(-42) * q1.pow(4),
        BigInt::from(16) * q2.pow(2),
        BigInt::from(608),
    ];
    let tuple = Tuple::new(entries)?;

    let total: BigInt = tuple.entries().iter().sum();
    if !total.is_zero() {
        return Err(ConstructionError::Verification(format!("sum is {total}, not zero")));
    }
    // Not pairwise coprime by design; the conditions are the A(n)-style set:
    // sum zero, no zero subsum, setwise gcd 1. Verify via A(5).
    let report = membership(&tuple, &Universe::A)?;
    if !report.verdict {
        return Err(ConstructionError::Verification(format!(
            "nine-fifths ell = {ell}, h = {h} failed the A(5) conditions: {report:?}"
        )));
    }

    let gcds = pairwise_gcds(&tuple);
    if !check_setwise_coprime(&tuple).ok {
        return Err(ConstructionError::Verification("setwise gcd is not 1".into()));
    }

    let cheap = FactorBudget::cheap();
    let structural_parts = vec![
        FactoredInteger::factorize(&BigInt::from(189), &cheap)?,
        FactoredInteger::factorize(&BigInt::from(42), &cheap)?,
        FactoredInteger::factorize(&BigInt::from(16), &cheap)?,
        FactoredInteger::factorize(&BigInt::from(608), &cheap)?,
        FactoredInteger::factorize(&BigInt::from(ell), &cheap)?,
        FactoredInteger::unfactored(&x - 1u32)?,
        FactoredInteger::unfactored(q1)?,
        FactoredInteger::unfactored(q2)?,
    ];

    let instance = FamilyInstance {
        tuple,
        structural_parts,
        params: FamilyParams::NineFifths { ell, h },
        mode: GeneratorMode::Certified,
        membership: Some(report),
        universe: Some(Universe::A),
    };
    Ok((instance, gcds))
}

fn pairwise_gcds(tuple: &Tuple) -> PairwiseGcdReport {
    let entries = tuple.entries();
    let budget = FactorBudget::default();
    let mut pairs = Vec::new();
    let mut all = true;
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            let g = gcd(&entries[i], &entries[j]);
            let divides = NINE_FIFTHS_DIVISOR_BOUNDS
                .iter()
                .any(|&b| BigInt::from(b).mod_floor(&g).is_zero());
            let radical_divides = FactoredInteger::factorize(&g, &budget)
                .ok()
                .and_then(|f| f.radical().ok())
                .map(|r| {
                    NINE_FIFTHS_DIVISOR_BOUNDS
                        .iter()
                        .any(|&b| BigInt::from(b).mod_floor(&BigInt::from(r.clone())).is_zero())
                })
                .unwrap_or(false);
            all &= divides;
            pairs.push(PairGcd { i: i + 1, j: j + 1, gcd: g, divides_a_bound: divides, radical_divides_a_bound: radical_divides });
        }
    }
    let mut setwise = BigInt::zero();
    for e in entries {
        setwise = gcd(&setwise, e);
    }
    PairwiseGcdReport { pairs, setwise_gcd: setwise, all_divide_bounds: all }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn ell3_h2_matches_the_expansion() {
        let (inst, gcds) = nine_fifths_family(3, 2).unwrap();
        let want: Vec<BigInt> = [
            "73222472421",
            "-7626831723",
            "-65866046442",
            "270405136",
            "608",
        ]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
        assert_eq!(inst.tuple.entries(), &want[..]);
        assert!(gcds.setwise_gcd.is_one());

        // gcd(a1, a2) = 189 at this instance
        assert_eq!(gcds.pairs[0].gcd, BigInt::from(189));

        // gcd(a1 * a2, a3) divides 1890 here
        let e = inst.tuple.entries();
        let g = gcd(&(&e[0] * &e[1]), &e[2]);
        assert!(BigInt::from(1890).mod_floor(&g).is_zero());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(nine_fifths_family(4, 1).is_err()); // even
        assert!(nine_fifths_family(9, 1).is_err()); // composite
        assert!(nine_fifths_family(3, 0).is_err());
    }

    #[test]
    fn sum_zero_across_parameters() {
        for (ell, h) in [(3u64, 1u32), (5, 2), (7, 3), (3, 12)] {
            let (inst, _) = nine_fifths_family(ell, h).unwrap();
            let s: BigInt = inst.tuple.entries().iter().sum();
            assert!(s.is_zero(), "ell={ell} h={h}");
        }
    }

    #[test]
    fn radical_level_divisor_containment() {
        // The prime support of every pairwise gcd divides a bound, even
        // where the literal gcd does not (multiplicities).
        let (_, gcds) = nine_fifths_family(3, 3).unwrap();
        assert!(!gcds.all_divide_bounds); // gcd(a2, a3) = 13125 = 3 * 5^4 * 7
        assert!(gcds.pairs.iter().all(|p| p.radical_divides_a_bound));
        let offending = gcds.pairs.iter().find(|p| !p.divides_a_bound).unwrap();
        assert_eq!(offending.gcd, BigInt::from(13125));
    }
}
