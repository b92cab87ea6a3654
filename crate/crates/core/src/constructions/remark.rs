//! A(n) families with unbounded pairwise common divisors: the quadruples
//! `((2^h+1)^3, -2^(3h), -3*2^h*(2^h+1), -1)` whose qualities approach 3,
//! and the geometric-sum family obtained from multiplying the geometric
//! series identity through by `x = y - 1`.

use super::{ConstructionError, ConstructionResult, FamilyInstance, FamilyParams, GeneratorMode};
use crate::arith::{FactorBudget, FactoredInteger};
use crate::quality::{membership, Tuple, Universe};
use num_bigint::BigInt;
use num_traits::Zero;

const AN_H_CAP: u32 = 4096;

/// The quadruple `((2^h+1)^3, -2^(3h), -3*2^h*(2^h+1), -1)`, verified
/// against A(4); structural radical parts are `[2, 3, 2^h+1]`.
pub fn an_quadruple(h: u32) -> ConstructionResult<FamilyInstance> {
    if h < 1 {
        return Err(ConstructionError::Domain("h must be at least 1".into()));
    }
    if h > AN_H_CAP {
        return Err(ConstructionError::Cap(format!("h = {h} exceeds the cap {AN_H_CAP}")));
    }
    let p = BigInt::from(2).pow(h);
    let p1 = &p + 1u32;
    let tuple = Tuple::new(vec![
        p1.pow(3),
        -(&p * &p * &p),
        BigInt::from(-3) * &p * &p1,
        BigInt::from(-1),
    ])?;
    let report = membership(&tuple, &Universe::A)?;
    if !report.verdict {
        return Err(ConstructionError::Verification(format!(
            "quadruple h = {h} failed the A(4) conditions: {report:?}"
        )));
    }
    let cheap = FactorBudget::cheap();
    let structural_parts = vec![
        FactoredInteger::factorize(&BigInt::from(2), &cheap)?,
        FactoredInteger::factorize(&BigInt::from(3), &cheap)?,
        FactoredInteger::unfactored(p1)?,
    ];
    Ok(FamilyInstance {
        tuple,
        structural_parts,
        params: FamilyParams::AnQuadruple { h },
        mode: GeneratorMode::Certified,
        membership: Some(report),
        universe: Some(Universe::A),
    })
}

/// The geometric family `(y^(n-2), -x y^(n-3), ..., -x y, -x, -1)` with
/// `x = y - 1`; the entries telescope to zero. Verified against A(n).
pub fn geometric_family(n: usize, y: u64) -> ConstructionResult<FamilyInstance> {
    if n < 3 {
        return Err(ConstructionError::Domain(format!("n must be at least 3, got {n}")));
    }
    if n > 24 {
        return Err(ConstructionError::Cap(format!("n = {n} exceeds the subsum capacity")));
    }
    if y < 2 {
        return Err(ConstructionError::Domain(format!("y must be at least 2, got {y}")));
    }
    let y_param = y;
    let y = BigInt::from(y);
    let x = &y - 1u32;
    let mut entries = vec![y.pow((n - 2) as u32)];
    for k in (0..=(n as u32 - 3)).rev() {
        entries.push(-(&x * y.pow(k)));
    }
    entries.push(BigInt::from(-1));
    let tuple = Tuple::new(entries)?;
    let total: BigInt = tuple.entries().iter().sum();
    if !total.is_zero() {
        return Err(ConstructionError::Verification("telescoping sum is not zero".into()));
    }
    let report = membership(&tuple, &Universe::A)?;
    if !report.verdict {
        return Err(ConstructionError::Verification(format!(
            "geometric family n = {n} failed the A(n) conditions: {report:?}"
        )));
    }
    let structural_parts = vec![
        FactoredInteger::unfactored(x)?,
        FactoredInteger::unfactored(y)?,
    ];
    Ok(FamilyInstance {
        tuple,
        structural_parts,
        params: FamilyParams::Geometric { n, y: y_param },
        mode: GeneratorMode::Certified,
        membership: Some(report),
        universe: Some(Universe::A),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quality::quality_exact;

    #[test]
    fn quadruple_h1_and_h2() {
        let inst = an_quadruple(1).unwrap();
        let want: Vec<BigInt> = [27i64, -8, -18, -1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(inst.tuple.entries(), &want[..]);

        let inst = an_quadruple(2).unwrap();
        let want: Vec<BigInt> = [125i64, -64, -60, -1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(inst.tuple.entries(), &want[..]);
        // quality = ln 125 / ln 30
        let q = quality_exact(&inst.tuple, &FactorBudget::default()).unwrap();
        assert!((q.exact.unwrap() - 125f64.ln() / 30f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn geometric_small_cases() {
        let inst = geometric_family(5, 3).unwrap();
        let want: Vec<BigInt> = [27i64, -18, -6, -2, -1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(inst.tuple.entries(), &want[..]);

        let inst = geometric_family(3, 2).unwrap();
        let want: Vec<BigInt> = [2i64, -1, -1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(inst.tuple.entries(), &want[..]);
    }

    #[test]
    fn parameter_validation() {
        assert!(an_quadruple(0).is_err());
        assert!(geometric_family(2, 3).is_err());
        assert!(geometric_family(4, 1).is_err());
        assert!(geometric_family(4, 0).is_err());
    }
}
