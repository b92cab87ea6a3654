//! The quintuple family `((6^(2^k)+1)^3, -(6^(2^k)-1)^3, -6(6^(2^k))^2, -31, 29)`
//! whose qualities approach 3/2 on U(empty, 5).

use super::{
    ConstructionError, ConstructionResult, FamilyInstance, FamilyParams, GeneratorMode,
};
use crate::arith::{FactorBudget, FactoredInteger};
use crate::quality::{membership, ForbiddenSet, Tuple, Universe};
use num_bigint::BigInt;

/// Exponent cap: 6^(2^k) at k = 24 already has about 13 million digits.
pub const KONYAGIN_MAX_K: u32 = 24;

/// Build and verify the k-th quintuple; structural radical parts are
/// `[6^(2^k)+1, 6^(2^k)-1, 6, 31, 29]`.
pub fn konyagin_quintuple(k: u32) -> ConstructionResult<FamilyInstance> {
    if k < 1 {
        return Err(ConstructionError::Domain("k must be at least 1".into()));
    }
    if k > KONYAGIN_MAX_K {
        return Err(ConstructionError::Cap(format!("k = {k} exceeds the cap {KONYAGIN_MAX_K}")));
    }
    let s = BigInt::from(6).pow(1u32 << k);
    let s_plus = &s + 1u32;
    let s_minus = &s - 1u32;
    let tuple = Tuple::new(vec![
        s_plus.pow(3),
        -s_minus.pow(3),
        BigInt::from(-6) * &s * &s,
        BigInt::from(-31),
        BigInt::from(29),
    ])?;

    let cheap = FactorBudget::cheap();
    let structural_parts = vec![
        FactoredInteger::unfactored(s_plus)?,
        FactoredInteger::unfactored(s_minus)?,
        FactoredInteger::factorize(&BigInt::from(6), &cheap)?,
        FactoredInteger::factorize(&BigInt::from(31), &cheap)?,
        FactoredInteger::factorize(&BigInt::from(29), &cheap)?,
    ];

    let universe = Universe::U(ForbiddenSet::empty());
    let report = membership(&tuple, &universe)?;
    if !report.verdict {
        return Err(ConstructionError::Verification(format!(
            "quintuple k = {k} failed membership: {report:?}"
        )));
    }
    Ok(FamilyInstance {
        tuple,
        structural_parts,
        params: FamilyParams::Konyagin { k },
        mode: GeneratorMode::Certified,
        membership: Some(report),
        universe: Some(universe),
    })
}
