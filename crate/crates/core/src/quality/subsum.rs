//! Exhaustive subsum checks over coefficient vectors from {0,1}^n and
//! {-1,0,1}^n, enumerated in reflected Gray order so each step updates the
//! running sum by a single entry.

use super::{QualityError, QualityResult, Tuple};
use num_bigint::BigInt;
use num_traits::Zero;

/// Default capacity for the {0,1} check (2^n vectors).
pub const SUBSUM_01_DEFAULT_LIMIT: usize = 24;
/// Default capacity for the {-1,0,1} check (3^n vectors).
pub const SUBSUM_PM1_DEFAULT_LIMIT: usize = 20;

/// A coefficient vector annihilating the tuple: contains at least one 0 and
/// at least one +1, and its dot product with the entries is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsumWitness {
    pub coefficients: Vec<i8>,
}

impl SubsumWitness {
    /// Exact re-check of the witness against a tuple.
    pub fn annihilates(&self, tuple: &Tuple) -> bool {
        if self.coefficients.len() != tuple.len() {
            return false;
        }
        let has_zero = self.coefficients.iter().any(|&c| c == 0);
        let has_plus = self.coefficients.iter().any(|&c| c == 1);
        let sum: BigInt = self
            .coefficients
            .iter()
            .zip(tuple.entries())
            .map(|(&c, a)| a * BigInt::from(c))
            .sum();
        has_zero && has_plus && sum.is_zero()
    }
}

/// Outcome of a subsum condition: `ok` means *no* annihilating vector exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsumCheck {
    pub ok: bool,
    pub witness: Option<SubsumWitness>,
}

/// The {0,1} subsum condition: no proper nonempty subset of the entries sums
/// to zero. Exhaustive over 2^n subsets; `n` is capped by `limit`.
pub fn check_subsum_01(tuple: &Tuple, limit: usize) -> QualityResult<SubsumCheck> {
    if tuple.len() > limit {
        return Err(QualityError::Capacity { n: tuple.len(), limit, kind: "{0,1}" });
    }
    Ok(gray_scan(tuple, 2))
}

/// The {-1,0,1} subsum condition: no coefficient vector with at least one 0
/// and at least one +1 annihilates the tuple. All-zero and zero-free vectors
/// are not violations. Exhaustive over 3^n vectors; `n` is capped by `limit`.
pub fn check_subsum_pm1(tuple: &Tuple, limit: usize) -> QualityResult<SubsumCheck> {
    if tuple.len() > limit {
        return Err(QualityError::Capacity { n: tuple.len(), limit, kind: "{-1,0,1}" });
    }
    Ok(gray_scan(tuple, 3))
}

/// Reflected m-ary Gray scan (m = 2 gives coefficients {0,1}; m = 3 gives
/// {-1,0,1} via digit - 1). Exactly one digit moves by one per step, so the
/// dot product is maintained incrementally. Returns the first violation in
/// this fixed order as the witness.
fn gray_scan(tuple: &Tuple, radix: u8) -> SubsumCheck {
    let n = tuple.len();
    let entries = tuple.entries();
    let offset: i8 = if radix == 3 { 1 } else { 0 };
    // digit d corresponds to coefficient d - offset
    let mut digits = vec![0u8; n];
    let mut dirs = vec![1i8; n];
    let mut focus: Vec<usize> = (0..=n).collect();

    let mut sum: BigInt = if offset == 1 {
        // all coefficients start at -1
        -entries.iter().sum::<BigInt>()
    } else {
        BigInt::zero()
    };
    let mut zeros = if offset == 1 { 0usize } else { n };
    let mut plus = 0usize;

    let coeff_of = |d: u8| -> i8 { d as i8 - offset };
    let check = |sum: &BigInt, zeros: usize, plus: usize| -> bool {
        zeros >= 1 && plus >= 1 && sum.is_zero()
    };

    loop {
        if check(&sum, zeros, plus) {
            let coefficients: Vec<i8> = digits.iter().map(|&d| coeff_of(d)).collect();
            return SubsumCheck { ok: false, witness: Some(SubsumWitness { coefficients }) };
        }
        // Advance to the next Gray word (loopless focus-pointer algorithm).
        let j = focus[0];
        focus[0] = 0;
        if j == n {
            return SubsumCheck { ok: true, witness: None };
        }
        let old = coeff_of(digits[j]);
        digits[j] = (digits[j] as i8 + dirs[j]) as u8;
        let new = coeff_of(digits[j]);
        if digits[j] == 0 || digits[j] == radix - 1 {
            dirs[j] = -dirs[j];
            focus[j] = focus[j + 1];
            focus[j + 1] = j + 1;
        }
        // Incremental bookkeeping for the single changed digit.
        sum += &entries[j] * BigInt::from(new - old);
        match (old == 0, new == 0) {
            (true, false) => zeros -= 1,
            (false, true) => zeros += 1,
            _ => {}
        }
        match (old == 1, new == 1) {
            (true, false) => plus -= 1,
            (false, true) => plus += 1,
            _ => {}
        }
    }
}
