//! Multiplicative orders via the Carmichael function.

use super::factor::{FactorBudget, FactoredInteger};
use super::{ArithError, ArithResult};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Carmichael function `lambda(n)`, requiring `n` to be factorable within
/// the budget.
pub fn carmichael(n: &BigUint, budget: &FactorBudget) -> ArithResult<BigUint> {
    if n.is_one() {
        return Ok(BigUint::one());
    }
    let f = FactoredInteger::factorize(&BigInt::from(n.clone()), budget)?;
    if !f.is_complete() {
        return Err(ArithError::Budget(format!("cannot factor {n} for its Carmichael function")));
    }
    let mut lambda = BigUint::one();
    let mut apply = |p: &BigUint, e: u32| {
        let term = if p == &BigUint::from(2u32) {
            match e {
                1 => BigUint::one(),
                2 => BigUint::from(2u32),
                _ => BigUint::from(2u32).pow(e - 2),
            }
        } else {
            (p - 1u32) * p.pow(e - 1)
        };
        lambda = lambda.lcm(&term);
    };
    for (p, e) in f.known_factors() {
        apply(p, *e);
    }
    if !f.cofactor().is_one() {
        apply(f.cofactor(), 1);
    }
    Ok(lambda)
}

/// Least `e >= 1` with `a^e = 1 mod m`, found by descending from the
/// Carmichael bound through its prime divisors. Requires `gcd(a, m) = 1`
/// and a factorable group order.
pub fn multiplicative_order(a: &BigInt, m: &BigInt, budget: &FactorBudget) -> ArithResult<BigUint> {
    if m < &BigInt::from(2) {
        return Err(ArithError::Domain(format!("modulus {m} < 2")));
    }
    if !a.gcd(m).is_one() {
        return Err(ArithError::Domain(format!("gcd({a}, {m}) != 1")));
    }
    let m_uint = m.magnitude();
    let a = a.mod_floor(m).magnitude().clone();
    let lambda = carmichael(m_uint, budget)?;
    let lambda_factors = FactoredInteger::factorize(&BigInt::from(lambda.clone()), budget)?;
    if !lambda_factors.is_complete() {
        return Err(ArithError::Budget(format!("cannot factor the group order bound {lambda}")));
    }
    let mut order = lambda;
    for p in lambda_factors.distinct_primes()? {
        while (&order % &p).is_zero() {
            let candidate = &order / &p;
            if a.modpow(&candidate, m_uint).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn order_examples() {
        let b = FactorBudget::default();
        assert_eq!(multiplicative_order(&bi(10), &bi(11), &b).unwrap(), 2u32.into());
        assert_eq!(multiplicative_order(&bi(6), &bi(29), &b).unwrap(), 14u32.into());
        assert_eq!(multiplicative_order(&bi(2), &bi(7), &b).unwrap(), 3u32.into());
        assert!(multiplicative_order(&bi(6), &bi(27), &b).is_err()); // gcd 3
        assert!(multiplicative_order(&bi(2), &bi(1), &b).is_err());
    }

    #[test]
    fn order_divides_carmichael_and_is_minimal() {
        let b = FactorBudget::default();
        for (a, m) in [(3i64, 1000), (7, 360), (5, 1009), (2, 4095)] {
            let a = bi(a);
            let m = bi(m);
            if !a.gcd(&m).is_one() {
                continue;
            }
            let ord = multiplicative_order(&a, &m, &b).unwrap();
            let lambda = carmichael(m.magnitude(), &b).unwrap();
            assert!((&lambda % &ord).is_zero(), "order must divide lambda");
            let am = a.mod_floor(&m).magnitude().clone();
            assert!(am.modpow(&ord, m.magnitude()).is_one());
            // minimality against brute force
            let mut e = BigUint::one();
            let mut x = am.clone();
            while !x.is_one() {
                x = (&x * &am) % m.magnitude();
                e += 1u32;
            }
            assert_eq!(e, ord);
        }
    }

    #[test]
    fn orders_at_the_five_quarters_scale() {
        let b = FactorBudget::default();
        // y = 66 * 103; orders of y+1 modulo 10y -+ 1.
        let o1 = multiplicative_order(&bi(6799), &bi(67979), &b).unwrap();
        let o2 = multiplicative_order(&bi(6799), &bi(67981), &b).unwrap();
        assert_eq!(o1, 67978u32.into());
        assert_eq!(o2, 5616u32.into());
    }
}
