//! Arbitrary-precision number-theoretic primitives: gcd, modular powers,
//! primality, budgeted factorization, radicals, multiplicative orders,
//! primorials and cheap high-precision logarithms of big integers.

mod factor;
mod log;
mod order;
mod primality;

pub use factor::{radical_upper_bound, CofactorState, FactorBudget, FactoredInteger};
pub use log::{big_ln, BigLog};
pub use order::{carmichael, multiplicative_order};
pub use primality::{deterministic_limit, is_probable_prime, next_prime_above, PrimePolicy};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

/// Errors raised by the arithmetic layer.
#[derive(Debug, Error)]
pub enum ArithError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("factorization incomplete ({0:?}); use radical_upper_bound for a certified bound")]
    Inexact(CofactorState),
    #[error("budget exhausted: {0}")]
    Budget(String),
}

pub type ArithResult<T> = Result<T, ArithError>;

/// Greatest common divisor; `gcd(0, 0) = 0`, always nonnegative.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// `base^exponent mod modulus`, reduced into `[0, modulus)`.
///
/// The modulus must be at least 2.
pub fn mod_pow(base: &BigInt, exponent: &BigUint, modulus: &BigInt) -> ArithResult<BigInt> {
    if modulus < &BigInt::from(2) {
        return Err(ArithError::Domain(format!("modulus {modulus} < 2")));
    }
    let base = base.mod_floor(modulus);
    Ok(base.modpow(&BigInt::from(exponent.clone()), modulus))
}

/// All primes `<= m` by a plain sieve of Eratosthenes.
pub fn primes_up_to(m: u64) -> Vec<u64> {
    if m < 2 {
        return Vec::new();
    }
    let m = m as usize;
    let mut composite = vec![false; m + 1];
    let mut primes = Vec::new();
    for p in 2..=m {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= m {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Product of all primes `<= m`; requires `m >= 2`.
pub fn primorial(m: u64) -> ArithResult<BigUint> {
    if m < 2 {
        return Err(ArithError::Domain(format!("primorial requires m >= 2, got {m}")));
    }
    let mut acc = BigUint::one();
    for p in primes_up_to(m) {
        acc *= BigUint::from(p);
    }
    Ok(acc)
}

/// The eventually-periodic behaviour of `base^(2^k) mod modulus` for `k >= 1`.
#[derive(Debug, Clone)]
pub struct ResidueCycle {
    /// Every residue attained for some `k >= 1`, reduced into `[0, modulus)`.
    pub residues: BTreeSet<BigInt>,
    /// Number of steps (starting at k = 1) before the cycle is entered.
    pub tail_len: usize,
    /// Length of the cycle.
    pub cycle_len: usize,
}

impl ResidueCycle {
    /// True when any of the given values (taken mod the modulus used to
    /// build the cycle) occurs among the attained residues.
    pub fn meets(&self, values: &[BigInt], modulus: &BigInt) -> bool {
        values
            .iter()
            .any(|v| self.residues.contains(&v.mod_floor(modulus)))
    }
}

/// Track `base^(2^k) mod modulus` for `k >= 1` until the squaring orbit
/// repeats; termination is guaranteed because there are finitely many
/// residues.
pub fn residue_cycle(base: &BigInt, modulus: &BigInt) -> ArithResult<ResidueCycle> {
    if modulus < &BigInt::from(2) {
        return Err(ArithError::Domain(format!("modulus {modulus} < 2")));
    }
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut residues = BTreeSet::new();
    // k = 1 is the first reported element.
    let mut r = base.mod_floor(modulus);
    r = (&r * &r).mod_floor(modulus);
    let mut k = 1usize;
    loop {
        if let Some(&first) = seen.get(&r) {
            return Ok(ResidueCycle {
                residues,
                tail_len: first - 1,
                cycle_len: k - first,
            });
        }
        seen.insert(r.clone(), k);
        residues.insert(r.clone());
        r = (&r * &r).mod_floor(modulus);
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&bi(12), &bi(18)), bi(6));
        assert_eq!(gcd(&bi(0), &bi(5)), bi(5));
        assert_eq!(gcd(&bi(0), &bi(0)), bi(0));
        // 6^4 + 1 and 6^4 - 1
        assert_eq!(gcd(&bi(1297), &bi(1295)), bi(1));
        assert_eq!(gcd(&bi(-12), &bi(18)), bi(6));
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(&bi(6), &16u32.into(), &bi(29)).unwrap(), bi(7));
        assert_eq!(mod_pow(&bi(6), &1u32.into(), &bi(31)).unwrap(), bi(6));
        assert_eq!(mod_pow(&bi(6), &4u32.into(), &bi(31)).unwrap(), bi(25));
        assert!(mod_pow(&bi(6), &4u32.into(), &bi(1)).is_err());
        // negative base lands in [0, m)
        assert_eq!(mod_pow(&bi(-6), &1u32.into(), &bi(31)).unwrap(), bi(25));
    }

    #[test]
    fn primorial_examples() {
        assert_eq!(primorial(2).unwrap(), 2u32.into());
        assert_eq!(primorial(10).unwrap(), 210u32.into());
        assert_eq!(primorial(24).unwrap().to_u64().unwrap(), 223_092_870);
        assert!(primorial(1).is_err());
    }

    #[test]
    fn residue_cycle_mod_29_and_31() {
        // 6^(2^k) mod 29 attains exactly {7, 20, 23} = {7, -9, -6}.
        let c = residue_cycle(&bi(6), &bi(29)).unwrap();
        let want: BTreeSet<BigInt> = [7, 20, 23].into_iter().map(BigInt::from).collect();
        assert_eq!(c.residues, want);
        assert!(!c.meets(&[bi(-1), bi(0), bi(1)], &bi(29)));

        // mod 31 the squares alternate between 5 and 25 = -6.
        let c = residue_cycle(&bi(6), &bi(31)).unwrap();
        let want: BTreeSet<BigInt> = [5, 25].into_iter().map(BigInt::from).collect();
        assert_eq!(c.residues, want);
        assert!(!c.meets(&[bi(-1), bi(0), bi(1)], &bi(31)));

        // 2^(2^k) mod 3 is constantly 1 from k = 1 on.
        let c = residue_cycle(&bi(2), &bi(3)).unwrap();
        let want: BTreeSet<BigInt> = [1].into_iter().map(BigInt::from).collect();
        assert_eq!(c.residues, want);
    }
}
