//! Exact univariate polynomial algebra over arbitrary-precision rationals,
//! used to check the algebraic identities behind the tuple families
//! symbolically rather than numerically.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal consistency error: {0}")]
    Inconsistent(String),
}

pub type PolyResult<T> = Result<T, PolyError>;

/// Degree of a polynomial; the zero polynomial gets a dedicated sentinel so
/// that degree-drop assertions cannot be off by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    /// Degree of the zero polynomial.
    NegInfinity,
    Finite(u64),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A univariate polynomial with exact rational coefficients, stored sparsely
/// in canonical form (no zero coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: BTreeMap<u64, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: BTreeMap::new() }
    }

    pub fn constant(c: impl Into<BigRational>) -> Self {
        let mut p = Poly::zero();
        p.set(0, c.into());
        p
    }

    pub fn constant_int(c: impl Into<BigInt>) -> Self {
        Poly::constant(BigRational::from_integer(c.into()))
    }

    /// The monomial `c * X^d`.
    pub fn monomial(d: u64, c: impl Into<BigRational>) -> Self {
        let mut p = Poly::zero();
        p.set(d, c.into());
        p
    }

    /// The variable `X`.
    pub fn x() -> Self {
        Poly::monomial(1, BigRational::one())
    }

    fn set(&mut self, d: u64, c: BigRational) {
        if c.is_zero() {
            self.coeffs.remove(&d);
        } else {
            self.coeffs.insert(d, c);
        }
    }

    pub fn coeff(&self, d: u64) -> BigRational {
        self.coeffs.get(&d).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.keys().next_back() {
            None => Degree::NegInfinity,
            Some(&d) => Degree::Finite(d),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&d| d == 0)
    }

    /// Every odd-degree coefficient vanishes.
    pub fn is_even_polynomial(&self) -> bool {
        self.coeffs.keys().all(|&d| d % 2 == 0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (&d, c) in &other.coeffs {
            let v = out.coeff(d) + c;
            out.set(d, v);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (&d, c) in &other.coeffs {
            let v = out.coeff(d) - c;
            out.set(d, v);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero();
        for (&d, c) in &self.coeffs {
            out.set(d, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&da, ca) in &self.coeffs {
            for (&db, cb) in &other.coeffs {
                let v = out.coeff(da + db) + ca * cb;
                out.set(da + db, v);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut out = Poly::zero();
        for (&d, v) in &self.coeffs {
            out.set(d, v * c);
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(BigRational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Exact evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigRational {
        // Horner over the sparse map, highest degree first.
        let mut acc = BigRational::zero();
        let mut last_deg: Option<u64> = None;
        for (&d, c) in self.coeffs.iter().rev() {
            if let Some(prev) = last_deg {
                let gap = prev - d;
                for _ in 0..gap {
                    acc *= BigRational::from_integer(x.clone());
                }
            }
            acc += c;
            last_deg = Some(d);
        }
        if let Some(d) = last_deg {
            for _ in 0..d {
                acc *= BigRational::from_integer(x.clone());
            }
        }
        acc
    }

    /// Remainder modulo the monic quadratic `X^2 + c`, i.e. the result of
    /// substituting `X^2 -> -c` repeatedly. For an even polynomial this is a
    /// constant.
    pub fn rem_monic_quadratic(&self, c: &BigRational) -> Poly {
        let minus_c = -c.clone();
        let mut out = Poly::zero();
        for (&d, coeff) in &self.coeffs {
            let q = d / 2;
            let r = d % 2;
            // X^d = (X^2)^q * X^r = (-c)^q * X^r  (mod X^2 + c)
            let mut factor = BigRational::one();
            for _ in 0..q {
                factor *= &minus_c;
            }
            let v = out.coeff(r) + coeff * &factor;
            out.set(r, v);
        }
        out
    }

    /// `(X + a)^e` for integer `a`.
    pub fn binomial_power(a: impl Into<BigInt>, e: u32) -> Poly {
        Poly::x().add(&Poly::constant_int(a)).pow(e)
    }

    /// The integer value of a constant polynomial.
    pub fn constant_value(&self) -> PolyResult<BigInt> {
        if !self.is_constant() {
            return Err(PolyError::Inconsistent(format!(
                "polynomial of degree {} is not constant",
                self.degree()
            )));
        }
        let c = self.coeff(0);
        if !c.is_integer() {
            return Err(PolyError::Inconsistent(format!("constant {c} is not an integer")));
        }
        Ok(c.to_integer())
    }
}

/// Symbolic check of `(x-1)^5 + 10(x^2+1)^2 - (x+1)^5 = 8`.
pub fn verify_deg5_identity() -> bool {
    let lhs = deg5_combination(10);
    lhs.is_constant() && lhs.coeff(0) == BigRational::from_integer(8.into())
}

/// The left-hand side with a configurable middle coefficient, so mutations
/// are testable.
pub fn deg5_combination(middle: i64) -> Poly {
    let x2p1 = Poly::monomial(2, BigRational::one()).add(&Poly::constant_int(1));
    Poly::binomial_power(-1, 5)
        .add(&x2p1.pow(2).scale(&BigRational::from_integer(middle.into())))
        .sub(&Poly::binomial_power(1, 5))
}

/// Symbolic check of `(s+1)^3 - (s-1)^3 - 6s^2 = 2`.
pub fn verify_cubic_identity() -> bool {
    let lhs = cubic_combination(-6);
    lhs.is_constant() && lhs.coeff(0) == BigRational::from_integer(2.into())
}

pub fn cubic_combination(square_coefficient: i64) -> Poly {
    Poly::binomial_power(1, 3)
        .sub(&Poly::binomial_power(-1, 3))
        .add(&Poly::monomial(2, BigRational::from_integer(square_coefficient.into())))
}

/// How the `a4` entry of the n >= 6 family reads its cubic term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuarticReading {
    /// `(X^2 + 10 y^3)^2` — the reading consistent with the constant sum.
    TenYCubed,
    /// `(X^2 + (10 y)^3)^2` — retained only as a falsified alternative.
    TenYAllCubed,
}

/// Forms `(X+y)^5 - (X-y)^5 - (10y-1) X^4 - (X^2 + 10y^3)^2` (or the
/// alternative reading) and reports whether it is the constant
/// `2y^5 - 100y^6`, together with the constant term actually found.
pub fn verify_54_constant(y: u64, reading: QuarticReading) -> (bool, Poly) {
    let y = BigInt::from(y);
    let cubic_term: BigInt = match reading {
        QuarticReading::TenYCubed => BigInt::from(10) * &y * &y * &y,
        QuarticReading::TenYAllCubed => (BigInt::from(10) * &y).pow(3),
    };
    let lhs = Poly::binomial_power(y.clone(), 5)
        .sub(&Poly::binomial_power(-y.clone(), 5))
        .sub(&Poly::monomial(4, BigRational::from_integer(BigInt::from(10) * &y - 1)))
        .sub(
            &Poly::monomial(2, BigRational::one())
                .add(&Poly::constant_int(cubic_term))
                .pow(2),
        );
    let expected = BigInt::from(2) * y.pow(5) - BigInt::from(100) * y.pow(6);
    let ok = lhs.is_constant() && lhs.coeff(0) == BigRational::from_integer(expected);
    (ok, lhs)
}

/// Admissibility for the degree-s identities: s odd and s = 2 mod 3, so that
/// `(s-2)/3` is an integer.
pub fn admissible_s(s: u64) -> bool {
    s >= 5 && s % 2 == 1 && s % 3 == 2
}

/// `(X+1)^s - (X-1)^s - 2s (X^2 + (s-2)/3)^((s-1)/2)`, exactly.
pub fn a123_poly(s: u64) -> PolyResult<Poly> {
    if !admissible_s(s) {
        return Err(PolyError::Domain(format!(
            "s = {s} must be odd, at least 5 and congruent to 2 mod 3"
        )));
    }
    let c = BigInt::from((s - 2) / 3);
    let kernel = Poly::monomial(2, BigRational::one()).add(&Poly::constant_int(c));
    let p = Poly::binomial_power(1, s as u32)
        .sub(&Poly::binomial_power(-1, s as u32))
        .sub(&kernel.pow(((s - 1) / 2) as u32).scale(&BigRational::from_integer((2 * s).into())));
    Ok(p)
}

/// The constant remainders of [`a123_poly`] modulo `X^2`, `X^2 - 1` and
/// `X^2 + (s-2)/3`. The polynomial is even, so each remainder must be a
/// constant integer; anything else is an internal error.
pub fn z_constants(s: u64) -> PolyResult<(BigInt, BigInt, BigInt)> {
    let p = a123_poly(s)?;
    if !p.is_even_polynomial() {
        return Err(PolyError::Inconsistent(format!("a123({s}) should be even")));
    }
    let z = |c: BigInt| -> PolyResult<BigInt> {
        let rem = p.rem_monic_quadratic(&BigRational::from_integer(c));
        rem.constant_value()
    };
    let z0 = z(BigInt::zero())?;
    let z1 = z(BigInt::from(-1))?;
    let z2 = z(BigInt::from((s - 2) / 3))?;
    Ok((z0, z1, z2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn poly_arith_examples() {
        // (X+1)^2 = X^2 + 2X + 1
        let p = Poly::binomial_power(1, 2);
        assert_eq!(p.coeff(2), rat(1));
        assert_eq!(p.coeff(1), rat(2));
        assert_eq!(p.coeff(0), rat(1));
        assert_eq!(p.degree(), Degree::Finite(2));

        // eval((X-1)^5, 2) = 1
        let p = Poly::binomial_power(-1, 5);
        assert_eq!(p.eval(&BigInt::from(2)), rat(1));

        // (X+1)^5 - (X-1)^5 = 10X^4 + 20X^2 + 2
        let p = Poly::binomial_power(1, 5).sub(&Poly::binomial_power(-1, 5));
        let mut want = Poly::monomial(4, rat(10));
        want = want.add(&Poly::monomial(2, rat(20)));
        want = want.add(&Poly::constant(rat(2)));
        assert_eq!(p, want);
        assert!(p.is_even_polynomial());
    }

    #[test]
    fn zero_polynomial_degree_is_a_sentinel() {
        assert_eq!(Poly::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        let p = Poly::constant(rat(3)).sub(&Poly::constant(rat(3)));
        assert_eq!(p.degree(), Degree::NegInfinity);
    }

    #[test]
    fn deg5_identity() {
        assert!(verify_deg5_identity());
        // perturbing the middle coefficient breaks it
        let mutated = deg5_combination(11);
        assert!(!mutated.is_constant() || mutated.coeff(0) != rat(8));
        // numeric cross-check at x = 10
        assert_eq!(deg5_combination(10).eval(&BigInt::from(10)), rat(8));
    }

    #[test]
    fn cubic_identity() {
        assert!(verify_cubic_identity());
        let mutated = cubic_combination(-5);
        assert!(!mutated.is_constant() || mutated.coeff(0) != rat(2));
        // numeric spot check at s = 6^16
        let s = BigInt::from(6).pow(16);
        assert_eq!(cubic_combination(-6).eval(&s), rat(2));
    }

    #[test]
    fn constant_54_examples() {
        let (ok, p) = verify_54_constant(1, QuarticReading::TenYCubed);
        assert!(ok);
        assert_eq!(p.coeff(0), rat(-98));

        let (ok, p) = verify_54_constant(2, QuarticReading::TenYCubed);
        assert!(ok);
        assert_eq!(p.coeff(0), rat(-6336));

        // The all-cubed reading leaves a residual -1980 y^3 X^2 term.
        let (ok, p) = verify_54_constant(2, QuarticReading::TenYAllCubed);
        assert!(!ok);
        assert_eq!(p.coeff(2), rat(-1980 * 8));
    }

    #[test]
    fn a123_degrees_and_z_constants() {
        // s = 5 collapses to the constant -8.
        let p = a123_poly(5).unwrap();
        assert!(p.is_constant());
        assert_eq!(p.coeff(0), rat(-8));
        assert_eq!(z_constants(5).unwrap(), ((-8).into(), (-8).into(), (-8).into()));

        // s = 11: even polynomial of degree 6 = s - 5.
        let p = a123_poly(11).unwrap();
        assert_eq!(p.degree(), Degree::Finite(6));
        assert!(p.is_even_polynomial());
        let (z0, z1, z2) = z_constants(11).unwrap();
        assert_eq!(z0, BigInt::from(2 - 22 * 243)); // 2 - 2s ((s-2)/3)^((s-1)/2)
        assert_eq!(z0, BigInt::from(-5344));
        assert_eq!(z1, BigInt::from(-20480));
        assert_eq!(z2, BigInt::from(2048));

        // s = 35: degree 30, even, and 6 | z0.
        let p = a123_poly(35).unwrap();
        assert_eq!(p.degree(), Degree::Finite(30));
        assert!(p.is_even_polynomial());
        let (z0, _, _) = z_constants(35).unwrap();
        assert_eq!(&z0 % 6, BigInt::zero());

        assert!(a123_poly(7).is_err()); // 7 = 1 mod 3
        assert!(a123_poly(9).is_err()); // 9 = 0 mod 3
        assert!(a123_poly(8).is_err()); // even
    }

    #[test]
    fn z_constants_match_direct_evaluation() {
        // a123(s) evaluated at x0 is congruent to z1 mod (x0^2 - 1), etc.
        for s in [11u64, 17, 23] {
            let p = a123_poly(s).unwrap();
            let (z0, z1, z2) = z_constants(s).unwrap();
            let c2 = BigInt::from((s - 2) / 3);
            for x0 in [2i64, 3, 5, 10, 37] {
                let x0 = BigInt::from(x0);
                let v = p.eval(&x0).to_integer();
                let m0 = &x0 * &x0;
                let m1 = &x0 * &x0 - 1;
                let m2 = &x0 * &x0 + &c2;
                assert_eq!((&v - &z0) % m0, BigInt::zero());
                assert_eq!((&v - &z1) % m1, BigInt::zero());
                assert_eq!((&v - &z2) % m2, BigInt::zero());
            }
        }
    }
}
