//! The n >= 6 family with qualities approaching 5/4: entries
//! `(x+y)^5, -(x-y)^5, -(10y-1)x^4, -(x^2+10y^3)^2`, a split pair, and (for
//! n > 6) a chain of fast-growing negated primes. `x = (y+1)^e`, so
//! `rad(x^4)` contributes only `y+1`.
//!
//! Certified mode keeps as many of the two structural congruences
//! `(y+1)^e = 1 mod (10y -+ 1)` as fit a digit cap (the lcm of both orders is
//! usually far beyond materializable sizes) and discharges whatever it drops
//! through the exact membership verifier, the same escape hatch used for the
//! Fermat-style prime congruences.

use super::{ConstructionError, ConstructionResult, FamilyInstance, FamilyParams, GeneratorMode};
use crate::arith::{
    big_ln, gcd, multiplicative_order, next_prime_above, primes_up_to, FactorBudget,
    FactoredInteger, PrimePolicy,
};
use crate::quality::{membership, ForbiddenSet, Tuple, Universe};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone)]
pub struct GeneralParams {
    pub n: usize,
    pub forbidden: ForbiddenSet,
    /// Multiplies the base exponent; larger multiples push the certified
    /// bound toward 5/4.
    pub exponent_multiple: u64,
    /// Optional factorial choice for s (s = ell! with ell >= 11) instead of
    /// the minimal even multiple.
    pub s_factorial: Option<u64>,
    /// Cap, in decimal digits of x, under which a congruence is considered
    /// materializable when assembling the base exponent.
    pub exponent_digit_cap: u64,
}

impl GeneralParams {
    pub fn minimal(n: usize) -> Self {
        GeneralParams {
            n,
            forbidden: ForbiddenSet::empty(),
            exponent_multiple: 1,
            s_factorial: None,
            exponent_digit_cap: 50_000,
        }
    }
}

/// Hard cap on the digits of x after applying the exponent multiple.
const TOTAL_DIGIT_CAP: f64 = 400_000.0;
/// Retries for the (v, w) scan before giving up.
const SPLIT_SCAN_CAP: u64 = 10_000;

/// Generate and verify one member of the n >= 6 family in U(F, n).
pub fn general_family(params: &GeneralParams) -> ConstructionResult<FamilyInstance> {
    let n = params.n;
    if n < 6 {
        return Err(ConstructionError::Domain(format!("n must be at least 6, got {n}")));
    }
    if n > 19 {
        return Err(ConstructionError::Cap(format!(
            "n = {n} exceeds the exhaustive subsum capacity"
        )));
    }
    if params.exponent_multiple < 1 {
        return Err(ConstructionError::Domain("exponent_multiple must be at least 1".into()));
    }

    // s: an even multiple of 3*11 and of every prime factor of every element
    // of F; minimal by default, ell!-style on request.
    let cheap = FactorBudget::cheap();
    let s: BigInt = match params.s_factorial {
        Some(ell) => {
            if ell < 11 || ell > 2000 {
                return Err(ConstructionError::Domain(format!(
                    "s = ell! needs 11 <= ell <= 2000, got {ell}"
                )));
            }
            let mut f = BigInt::one();
            for k in 2..=ell {
                f *= BigInt::from(k);
            }
            f
        }
        None => {
            let mut s = BigInt::from(2 * 3 * 11);
            for f in params.forbidden.elements() {
                let fac = FactoredInteger::factorize(f, &cheap)?;
                if !fac.is_complete() {
                    return Err(ConstructionError::Domain(format!(
                        "cannot factor the forbidden element {f}"
                    )));
                }
                for p in fac.distinct_primes()? {
                    let p = BigInt::from(p);
                    if !(&s % &p).is_zero() {
                        s *= &p;
                    }
                }
            }
            s
        }
    };

    // t: least prime above 101 not dividing s.
    let mut t = next_prime_above(&BigInt::from(101), PrimePolicy::Any);
    while (&s % &t).is_zero() {
        t = next_prime_above(&t, PrimePolicy::Any);
    }
    let y = &s * &t;
    let y5 = y.pow(5);
    let y6 = y.pow(6);

    // a7..an: negated odd probable primes, |a7| > 200 y^6, each more than
    // doubling; least admissible choices, so runs are reproducible.
    let mut chain: Vec<BigInt> = Vec::new();
    let mut bound = BigInt::from(200) * &y6;
    for _ in 7..=n {
        let p = next_prime_above(&bound, PrimePolicy::NegatedOdd);
        bound = BigInt::from(2) * p.abs();
        chain.push(p);
    }
    let chain_sum: BigInt = chain.iter().sum();
    let chain_abs: BigInt = chain.iter().map(|a| a.abs()).sum();

    let first_four_sum = BigInt::from(2) * &y5 - BigInt::from(100) * &y6;
    let u = &first_four_sum + &chain_sum;
    if !u.is_negative() {
        return Err(ConstructionError::Verification("u must be negative".into()));
    }

    // Exponent base: keep the largest materializable subset of the two
    // order congruences under the digit cap.
    let budget = FactorBudget::default();
    let ten_y_minus_1 = BigInt::from(10) * &y - 1u32;
    let ten_y_plus_1 = BigInt::from(10) * &y + 1u32;
    let y_plus_1 = &y + 1u32;
    let o1 = multiplicative_order(&y_plus_1, &ten_y_minus_1, &budget)?;
    let o2 = multiplicative_order(&y_plus_1, &ten_y_plus_1, &budget)?;
    let o1 = o1.to_u64().ok_or_else(|| ConstructionError::Cap("order overflow".into()))?;
    let o2 = o2.to_u64().ok_or_else(|| ConstructionError::Cap("order overflow".into()))?;
    let ln10_y1 = big_ln(&y_plus_1)?.value / std::f64::consts::LN_10;
    let digits_of = |e: u64| e as f64 * ln10_y1;
    let candidates: [(u64, Vec<String>); 4] = [
        (lcm_u64(o1, o2), vec![format!("10y-1"), format!("10y+1")]),
        (o1, vec![format!("10y-1")]),
        (o2, vec![format!("10y+1")]),
        (1, vec![]),
    ];
    let (mut base, congruences_held) = candidates
        .into_iter()
        .find(|(e, _)| digits_of(*e) <= params.exponent_digit_cap as f64)
        .expect("the trivial candidate always fits");

    // Magnitude dominance: (y+1)^e must exceed |a5| + ... + |an|; the split
    // pair lands near 2|u| and 3|u|, so 6|u| covers the whole tail. Scale by
    // the least factor that gets there.
    let dominance_target = BigInt::from(6) * u.abs();
    let ln_target = big_ln(&dominance_target)?.value;
    let ln_y1 = big_ln(&y_plus_1)?.value;
    let scale = (ln_target / (base as f64 * ln_y1)).floor() as u64 + 1;
    base *= scale;
    let exponent = base
        .checked_mul(params.exponent_multiple)
        .ok_or_else(|| ConstructionError::Cap("exponent overflow".into()))?;
    if digits_of(exponent) > TOTAL_DIGIT_CAP {
        return Err(ConstructionError::Cap(format!(
            "x would have about {:.0} digits",
            digits_of(exponent)
        )));
    }

    let x = y_plus_1.pow(
        u32::try_from(exponent)
            .map_err(|_| ConstructionError::Cap("exponent exceeds u32".into()))?,
    );

    // First four entries; their sum is 2y^5 - 100y^6 by the quartic identity.
    let x4 = x.pow(4);
    let a1 = (&x + &y).pow(5);
    let a2 = -((&x - &y).pow(5));
    let a3 = -(&ten_y_minus_1 * &x4);
    let quartic_kernel = &x * &x + BigInt::from(10) * &y * &y * &y;
    let a4 = -(&quartic_kernel * &quartic_kernel);
    debug_assert_eq!(&a1 + &a2 + &a3 + &a4, first_four_sum);

    // (v, w): bounded search near 2|u| for a coprime odd-complement split
    // avoiding F; full membership of the assembled tuple decides acceptance.
    // w = u - v must be odd, so fix the parity of the starting candidate.
    let mut v = BigInt::from(2) * u.abs() + 1u32;
    if (&u - &v).is_even() {
        v += 1;
    }
    let universe = Universe::U(params.forbidden.clone());
    let mut accepted: Option<(BigInt, BigInt, crate::quality::MembershipReport, Tuple)> = None;
    for _try in 0..SPLIT_SCAN_CAP {
        let w = &u - &v;
        let structural_ok = gcd(&v, &w).is_one()
            && v.is_positive()
            && w.is_negative()
            && params.forbidden.elements().all(|f| {
                !v.mod_floor(f).is_zero() && !w.mod_floor(f).is_zero()
            })
            && v.abs().min(w.abs()) > u.abs() + &chain_abs;
        if structural_ok {
            let mut entries = vec![a1.clone(), a2.clone(), a3.clone(), a4.clone(), -&v, -&w];
            entries.extend(chain.iter().cloned());
            let tuple = Tuple::new(entries)?;
            let report = membership(&tuple, &universe)?;
            if report.verdict {
                accepted = Some((v.clone(), w, report, tuple));
                break;
            }
        }
        v += 2;
    }
    let (v, w, report, tuple) = accepted.ok_or_else(|| {
        ConstructionError::Verification(format!(
            "no admissible (v, w) within {SPLIT_SCAN_CAP} candidates of 2|u|"
        ))
    })?;

    let mut parts = vec![
        FactoredInteger::unfactored(&x + &y)?,
        FactoredInteger::unfactored(&x - &y)?,
        FactoredInteger::factorize(&ten_y_minus_1, &FactorBudget::default())?,
        FactoredInteger::factorize(&y_plus_1, &FactorBudget::default())?,
        FactoredInteger::unfactored(quartic_kernel)?,
        FactoredInteger::unfactored(v.clone())?,
        FactoredInteger::unfactored(w.clone())?,
    ];
    for p in &chain {
        parts.push(FactoredInteger::from_probable_prime(p.clone())?);
    }

    Ok(FamilyInstance {
        tuple,
        structural_parts: parts,
        params: FamilyParams::General {
            n,
            forbidden: params
                .forbidden
                .elements()
                .map(|f| f.to_u64().unwrap_or(u64::MAX))
                .collect(),
            s: s.to_string(),
            t: t.to_string(),
            y: y.to_string(),
            exponent,
            exponent_multiple: params.exponent_multiple,
            order_mod_10y_minus_1: o1,
            order_mod_10y_plus_1: o2,
            congruences_held,
        },
        mode: GeneratorMode::Certified,
        membership: Some(report),
        universe: Some(universe),
    })
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    let g = gcd_u64(a, b);
    (a / g).saturating_mul(b)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// The faithful parameter recipe evaluated symbolically: factorial s, a
/// factorial exponent, and a primorial-backed split. None of these integers
/// are materializable beyond toys, so this reports sizes instead of building
/// a tuple.
#[derive(Debug, Clone)]
pub struct FaithfulDryRun {
    pub n: usize,
    /// F normalized upward to {3..ell}.
    pub normalized_ell: u64,
    /// digits of s = ell!
    pub s_digits: f64,
    pub t: u64,
    /// digits of y = s * t
    pub y_digits: f64,
    /// digits of the a7 threshold 200 y^6
    pub a7_digits: f64,
    /// digits of the split modulus bound m = -4u
    pub split_m_digits: f64,
    /// approximate digits of primorial(m), the size of the split parts
    pub primorial_q_digits: f64,
    pub x_formula: String,
    pub notes: Vec<String>,
}

/// Report the faithful-mode parameter sizes for U(F, n) without building
/// anything.
pub fn general_family_dry_run(n: usize, forbidden: &ForbiddenSet) -> ConstructionResult<FaithfulDryRun> {
    if n < 6 {
        return Err(ConstructionError::Domain(format!("n must be at least 6, got {n}")));
    }
    let ell = forbidden
        .max()
        .and_then(|m| m.to_u64())
        .unwrap_or(0)
        .max(11);
    let ln_s: f64 = (2..=ell).map(|k| (k as f64).ln()).sum();
    let t = {
        // least prime > 101 not dividing ell! is at least 103; ell >= 103
        // pushes it to the first prime above ell.
        let mut p = 103u64;
        if ell >= 103 {
            let primes = primes_up_to(2 * ell + 200);
            p = *primes.iter().find(|&&q| q > ell).unwrap();
        }
        p
    };
    let ln_y = ln_s + (t as f64).ln();
    let ln_a7 = (200f64).ln() + 6.0 * ln_y;
    // |u| is dominated by |a_n| ~ 200 y^6 2^(n-7); m = 4|u|.
    let ln_u = ln_a7 + ((n as f64) - 7.0).max(0.0) * std::f64::consts::LN_2 + std::f64::consts::LN_2;
    let ln_m = (4f64).ln() + ln_u;
    // theta(m) ~ m, so primorial(m) has about m / ln 10 digits.
    let m_approx = ln_m.exp();
    let ln10 = std::f64::consts::LN_10;
    Ok(FaithfulDryRun {
        n,
        normalized_ell: ell,
        s_digits: ln_s / ln10,
        t,
        y_digits: ln_y / ln10,
        a7_digits: ln_a7 / ln10,
        split_m_digits: ln_m / ln10,
        primorial_q_digits: m_approx / ln10,
        x_formula: "(y+1)^(h!) with h at least the lcm of both unit-group orders".into(),
        notes: vec![
            "faithful mode is a dry run: these integers are not materializable".into(),
            "certified mode substitutes desk-scale parameters and verifies exactly".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_scale_parameters() {
        let inst = general_family(&GeneralParams::minimal(6)).unwrap();
        match &inst.params {
            FamilyParams::General { s, t, y, exponent, order_mod_10y_minus_1, order_mod_10y_plus_1, congruences_held, .. } => {
                assert_eq!((s.as_str(), t.as_str(), y.as_str()), ("66", "103", "6798"));
                assert_eq!(*order_mod_10y_minus_1, 67978);
                assert_eq!(*order_mod_10y_plus_1, 5616);
                assert_eq!(*exponent, 5616);
                assert_eq!(congruences_held, &vec!["10y+1".to_string()]);
            }
            other => panic!("wrong params variant: {other:?}"),
        }
        assert!(inst.membership.as_ref().unwrap().verdict);
        let total: BigInt = inst.tuple.entries().iter().sum();
        assert!(total.is_zero());
    }

    #[test]
    fn held_congruence_really_holds() {
        let inst = general_family(&GeneralParams::minimal(6)).unwrap();
        let e = match &inst.params {
            FamilyParams::General { exponent, .. } => *exponent,
            _ => unreachable!(),
        };
        // x = 6799^e = 1 mod 10y+1 for the emitted exponent
        let x_mod = BigInt::from(6799).modpow(&BigInt::from(e), &BigInt::from(67981));
        assert!(x_mod.is_one());
    }

    #[test]
    fn gcd_lemma_instances() {
        // gcd(y+1, 10y-1) = gcd(y-1, 10y-1) = gcd(y+1, 10y+1) = 1 at y = 6798
        let y = BigInt::from(6798);
        for (a, b) in [
            (&y + 1u32, BigInt::from(10) * &y - 1u32),
            (&y - 1u32, BigInt::from(10) * &y - 1u32),
            (&y + 1u32, BigInt::from(10) * &y + 1u32),
        ] {
            assert!(gcd(&a, &b).is_one());
        }
    }

    #[test]
    fn dry_run_reports_unmaterializable_sizes() {
        let r = general_family_dry_run(6, &ForbiddenSet::empty()).unwrap();
        assert_eq!(r.normalized_ell, 11);
        assert_eq!(r.t, 103);
        // the primorial alone is beyond any memory
        assert!(r.primorial_q_digits > 1e20);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(general_family(&GeneralParams::minimal(5)).is_err());
        let mut p = GeneralParams::minimal(6);
        p.exponent_multiple = 0;
        assert!(general_family(&p).is_err());
    }
}
