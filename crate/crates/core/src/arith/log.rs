//! Natural logarithms of arbitrarily large integers, computed from the bit
//! length and the leading bits. Qualities of million-digit integers must not
//! require converting the whole number.

use super::{ArithError, ArithResult};
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

/// A high-precision approximation of `ln|x|` for a big integer `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BigLog {
    /// Approximate natural logarithm.
    pub value: f64,
    /// Relative error bound of `value`; at most 1e-12.
    pub relative_error_bound: f64,
}

/// A few ulps from the float mantissa truncation and the shift * ln2 term;
/// comfortably below the 1e-12 contract.
pub const BIG_LN_REL_ERROR: f64 = 1e-13;

/// `ln|n|` for a nonzero integer, with relative error below 1e-12.
pub fn big_ln(n: &BigInt) -> ArithResult<BigLog> {
    if n.is_zero() {
        return Err(ArithError::Domain("big_ln of zero".into()));
    }
    Ok(BigLog {
        value: ln_biguint_approx(n.magnitude()),
        relative_error_bound: BIG_LN_REL_ERROR,
    })
}

/// `ln(n)` for positive `n` (approximation used internally; `ln(1) = 0`).
pub(crate) fn ln_biguint_approx(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 53 {
        return (n.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 53;
    let mantissa = (n >> shift).to_u64().unwrap() as f64;
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn examples() {
        assert_eq!(big_ln(&BigInt::from(1)).unwrap().value, 0.0);
        let l = big_ln(&BigInt::from(8192)).unwrap().value;
        assert!((l - 13.0 * std::f64::consts::LN_2).abs() < 1e-12, "{l}");
        let l = big_ln(&BigInt::from(6666)).unwrap().value;
        assert!((l - 8.804775258867686).abs() < 1e-9, "{l}");
        assert!(big_ln(&BigInt::from(0)).is_err());
        // sign is ignored
        assert_eq!(
            big_ln(&BigInt::from(-6666)).unwrap().value,
            big_ln(&BigInt::from(6666)).unwrap().value
        );
    }

    #[test]
    fn huge_power_matches_closed_form() {
        // ln(6^(2^12)) = 2^12 * ln 6
        let n = BigInt::from(6).pow(4096);
        let l = big_ln(&n).unwrap();
        let want = 4096.0 * 6.0f64.ln();
        assert!((l.value - want).abs() / want < 1e-12, "{} vs {want}", l.value);
        assert!(l.relative_error_bound <= 1e-12);
    }
}
