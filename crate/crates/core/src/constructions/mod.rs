//! Generators for the counterexample tuple families, the two constructive
//! lemma algorithms, and the Pell-solution iterator. Each generator emits a
//! [`FamilyInstance`]: the tuple plus the structural divisor parts needed for
//! a certified quality lower bound. Certified-mode generators run the exact
//! membership verifier on everything they emit and refuse to emit otherwise.

mod general_family;
mod konyagin;
mod nine_fifths;
mod odd_family;
mod pell;
mod remark;
mod split;

pub use general_family::{general_family, general_family_dry_run, FaithfulDryRun, GeneralParams};
pub use konyagin::konyagin_quintuple;
pub use nine_fifths::{nine_fifths_family, PairwiseGcdReport};
pub use odd_family::{odd_family, OddFamilyParams, YPolicy};
pub use pell::{pell_solutions, PellSolution, PellSolutions};
pub use remark::{an_quadruple, geometric_family};
pub use split::{select_y, split_avoiding_factors, SplitResult};

use crate::quality::{MembershipReport, QualityError, Tuple, Universe};
use crate::arith::{ArithError, FactoredInteger};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size cap exceeded: {0}")]
    Cap(String),
    #[error("self-verification failed for a generated instance: {0}")]
    Verification(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Quality(#[from] QualityError),
}

pub type ConstructionResult<T> = Result<T, ConstructionError>;

/// Generator policy: certified mode substitutes materializable parameters
/// and validates every emitted tuple exactly; faithful mode follows the
/// source recipes literally and is only available where those integers are
/// materializable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorMode {
    Faithful,
    Certified,
}

impl GeneratorMode {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorMode::Faithful => "faithful",
            GeneratorMode::Certified => "certified",
        }
    }
}

/// Family-specific parameter records, carried along with each instance.
#[derive(Debug, Clone)]
pub enum FamilyParams {
    Konyagin { k: u32 },
    Odd { n: usize, forbidden: Vec<u64>, pell_index: u32, y_policy: &'static str },
    General {
        n: usize,
        forbidden: Vec<u64>,
        s: String,
        t: String,
        y: String,
        exponent: u64,
        exponent_multiple: u64,
        order_mod_10y_minus_1: u64,
        order_mod_10y_plus_1: u64,
        congruences_held: Vec<String>,
    },
    NineFifths { ell: u64, h: u32 },
    AnQuadruple { h: u32 },
    Geometric { n: usize, y: u64 },
}

impl FamilyParams {
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilyParams::Konyagin { .. } => "konyagin",
            FamilyParams::Odd { .. } => "odd",
            FamilyParams::General { .. } => "general",
            FamilyParams::NineFifths { .. } => "ninefifths",
            FamilyParams::AnQuadruple { .. } => "an-quadruple",
            FamilyParams::Geometric { .. } => "geometric",
        }
    }
}

/// A generated tuple plus the structural parts whose product is divisible by
/// every prime dividing the product of the entries.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub tuple: Tuple,
    pub structural_parts: Vec<FactoredInteger>,
    pub params: FamilyParams,
    pub mode: GeneratorMode,
    /// The verification report produced by the generator (certified mode).
    pub membership: Option<MembershipReport>,
    /// The universe the instance was verified against, if any.
    pub universe: Option<Universe>,
}

impl FamilyInstance {
    /// Certified quality lower bound from the structural parts.
    pub fn quality_lower_bound(&self) -> ConstructionResult<crate::quality::QualityEstimate> {
        Ok(crate::quality::quality_lower_bound(&self.tuple, &self.structural_parts)?)
    }
}
