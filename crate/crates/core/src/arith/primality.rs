//! Miller-Rabin primality testing: deterministic below a proven threshold,
//! fixed-seed probabilistic above it.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::sync::OnceLock;

/// Below this bound (Sorenson & Webster: 3,317,044,064,679,887,385,961,981)
/// Miller-Rabin with the first 13 primes as witnesses is a proven
/// deterministic primality test.
pub fn deterministic_limit() -> &'static BigUint {
    static LIMIT: OnceLock<BigUint> = OnceLock::new();
    LIMIT.get_or_init(|| "3317044064679887385961981".parse().unwrap())
}

const DETERMINISTIC_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Rounds for inputs above the deterministic threshold; each round has
/// error probability at most 1/4, so 64 rounds give error below 2^-128.
const PROBABILISTIC_ROUNDS: usize = 64;

/// Fixed RNG seed for the probabilistic bases, so results are reproducible.
const WITNESS_SEED: [u8; 32] = *b"nstrong-miller-rabin-witnesses-1";

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Primality of `|n|`. Never answers `false` for a prime; composite answers
/// are deterministic below [`deterministic_limit`] and no worse than 2^-128
/// wrong above it.
pub fn is_probable_prime(n: &BigInt) -> bool {
    is_probable_prime_uint(n.magnitude())
}

pub(crate) fn is_probable_prime_uint(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for p in SMALL_PRIMES {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    // n is odd and > 97 here.
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let strong_probable_prime = |base: &BigUint| -> bool {
        let base = base % n;
        if base.is_zero() {
            return true; // base is a multiple of n; no information
        }
        let mut x = base.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                return true;
            }
            if x.is_one() {
                return false;
            }
        }
        false
    };

    if n < deterministic_limit() {
        DETERMINISTIC_BASES
            .iter()
            .all(|&b| strong_probable_prime(&BigUint::from(b)))
    } else {
        let mut rng = ChaCha20Rng::from_seed(WITNESS_SEED);
        let lo = BigUint::from(2u32);
        let hi = n - &one; // exclusive
        (0..PROBABILISTIC_ROUNDS).all(|_| {
            let base = rng.gen_biguint_range(&lo, &hi);
            strong_probable_prime(&base)
        })
    }
}

/// Parity/sign policy for [`next_prime_above`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimePolicy {
    /// Least (probable) prime strictly above the input.
    Any,
    /// Least odd (probable) prime strictly above the input.
    Odd,
    /// Least odd (probable) prime strictly above the input, returned negated.
    NegatedOdd,
}

/// Least (probable) prime `> n` under the given policy; requires `n >= 1`.
pub fn next_prime_above(n: &BigInt, policy: PrimePolicy) -> BigInt {
    assert!(n >= &BigInt::one(), "next_prime_above requires n >= 1");
    let mut candidate = n.magnitude() + BigUint::one();
    if policy != PrimePolicy::Any && candidate == BigUint::from(2u32) {
        candidate = BigUint::from(3u32);
    }
    if candidate > BigUint::from(2u32) && candidate.is_even() {
        candidate += BigUint::one();
    }
    loop {
        if is_probable_prime_uint(&candidate) {
            let p = BigInt::from(candidate);
            return match policy {
                PrimePolicy::NegatedOdd => -p,
                _ => p,
            };
        }
        if candidate == BigUint::from(2u32) {
            candidate += BigUint::one();
        } else {
            candidate += BigUint::from(2u32);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(is_probable_prime(&BigInt::from(29)));
        assert!(is_probable_prime(&BigInt::from(2)));
        assert!(is_probable_prime(&BigInt::from(-11)));
        assert!(!is_probable_prime(&BigInt::from(6666)));
        assert!(!is_probable_prime(&BigInt::from(1)));
        assert!(!is_probable_prime(&BigInt::from(0)));
    }

    #[test]
    fn oracle_trial_division() {
        // Classify 223092871 (primorial(24) + 1) by trial division to sqrt(n).
        let n: u64 = 223_092_871;
        let mut is_prime = n > 1;
        let mut d = 2u64;
        while d * d <= n {
            if n % d == 0 {
                is_prime = false;
                break;
            }
            d += 1;
        }
        assert_eq!(is_probable_prime(&BigInt::from(n)), is_prime);
        assert!(!is_prime); // 223092871 = 317 * 703763
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // Carmichael numbers and 2-pseudoprimes must come out composite.
        for n in [561u64, 1105, 1729, 2047, 3215031751] {
            assert!(!is_probable_prime(&BigInt::from(n)), "{n}");
        }
    }

    #[test]
    fn above_deterministic_threshold() {
        // 2^89 - 1 is a Mersenne prime well above the threshold.
        let p = (BigInt::one() << 89) - 1;
        assert!(is_probable_prime(&p));
        let q = &p * BigInt::from(1000003);
        assert!(!is_probable_prime(&q));
    }

    #[test]
    fn next_prime_policies() {
        assert_eq!(next_prime_above(&BigInt::from(24), PrimePolicy::Any), BigInt::from(29));
        assert_eq!(next_prime_above(&BigInt::from(1), PrimePolicy::Any), BigInt::from(2));
        assert_eq!(next_prime_above(&BigInt::from(1), PrimePolicy::Odd), BigInt::from(3));
        assert_eq!(
            next_prime_above(&BigInt::from(1_000_000), PrimePolicy::Any),
            BigInt::from(1_000_003)
        );
        assert_eq!(
            next_prime_above(&BigInt::from(24), PrimePolicy::NegatedOdd),
            BigInt::from(-29)
        );
    }
}
