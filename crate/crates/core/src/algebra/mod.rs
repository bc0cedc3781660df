//! Exact scalars, polynomials, sparse matrices and Smith normal form.

pub mod field;
pub mod mpoly;
pub mod poly;
pub mod snf;
pub mod sparse;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use field::{is_prime, Field, Fp, Rational, Ring};
pub use mpoly::{MPoly, Monomial};
pub use poly::Poly;
pub use snf::{homology_of_complex_over_pid, smith_normal_form, InvariantFactors, PidHomology};
pub use sparse::{rank, RowEchelon, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    NotPrime(u64),
    DuplicateVariable(String),
    MixedRings,
    NotMonicRelation,
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    NotAComplex,
    UnsupportedRing(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NotPrime(p) => write!(f, "{} is not prime", p),
            AlgebraError::DuplicateVariable(v) => write!(f, "variable {} declared twice", v),
            AlgebraError::MixedRings => write!(f, "operands live in different rings"),
            AlgebraError::NotMonicRelation => write!(f, "relation is not monic in the reduced variable"),
            AlgebraError::IndexOutOfRange { row, col, rows, cols } => {
                write!(f, "entry ({}, {}) outside a {}x{} matrix", row, col, rows, cols)
            }
            AlgebraError::DimensionMismatch { left, right } => write!(
                f,
                "cannot compose {}x{} with {}x{}",
                left.0, left.1, right.0, right.1
            ),
            AlgebraError::NotAComplex => write!(f, "consecutive differentials do not compose to zero"),
            AlgebraError::UnsupportedRing(r) => write!(f, "unsupported ring {}", r),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AlgebraError {}

/// Base field of a univariate polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u32),
}

impl BaseField {
    pub fn characteristic(&self) -> u32 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "F{}", p),
        }
    }
}

/// Descriptor of the scalars a computation runs over. Constructors validate
/// primality and distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ScalarRing {
    Rationals,
    PrimeField(u32),
    UnivariatePolynomials { base: BaseField, var: String },
    MultivariateIntegerPolynomials(Vec<String>),
}

impl ScalarRing {
    pub fn prime_field(p: u32) -> Result<Self, AlgebraError> {
        if is_prime(p as u64) {
            Ok(ScalarRing::PrimeField(p))
        } else {
            Err(AlgebraError::NotPrime(p as u64))
        }
    }

    pub fn univariate(base: BaseField, var: &str) -> Result<Self, AlgebraError> {
        if let BaseField::Prime(p) = base {
            if !is_prime(p as u64) {
                return Err(AlgebraError::NotPrime(p as u64));
            }
        }
        Ok(ScalarRing::UnivariatePolynomials { base, var: var.to_string() })
    }

    pub fn multivariate(names: &[&str]) -> Result<Self, AlgebraError> {
        MPoly::<num_bigint::BigInt>::ring(names)?;
        Ok(ScalarRing::MultivariateIntegerPolynomials(names.iter().map(|s| s.to_string()).collect()))
    }

    /// Parses `Q`, `F<p>` or `Z/p`.
    pub fn parse_field(s: &str) -> Result<Self, AlgebraError> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(ScalarRing::Rationals);
        }
        let digits = t
            .strip_prefix('F')
            .or_else(|| t.strip_prefix("Z/"))
            .or_else(|| t.strip_prefix("GF"))
            .ok_or_else(|| AlgebraError::UnsupportedRing(t.to_string()))?;
        let p: u32 = digits.parse().map_err(|_| AlgebraError::UnsupportedRing(t.to_string()))?;
        Self::prime_field(p)
    }

    pub fn is_field(&self) -> bool {
        matches!(self, ScalarRing::Rationals | ScalarRing::PrimeField(_))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            ScalarRing::Rationals | ScalarRing::MultivariateIntegerPolynomials(_) => 0,
            ScalarRing::PrimeField(p) => *p,
            ScalarRing::UnivariatePolynomials { base, .. } => base.characteristic(),
        }
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::Rationals => write!(f, "Q"),
            ScalarRing::PrimeField(p) => write!(f, "F{}", p),
            ScalarRing::UnivariatePolynomials { base, var } => write!(f, "{}[{}]", base, var),
            ScalarRing::MultivariateIntegerPolynomials(v) => write!(f, "Z[{}]", v.join(",")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_validate() {
        assert!(ScalarRing::prime_field(7).is_ok());
        assert_eq!(ScalarRing::prime_field(9), Err(AlgebraError::NotPrime(9)));
        assert!(ScalarRing::multivariate(&["h", "t", "h"]).is_err());
        assert!(ScalarRing::univariate(BaseField::Prime(4), "h").is_err());
    }

    #[test]
    fn parse_field_names() {
        assert_eq!(ScalarRing::parse_field("Q").unwrap(), ScalarRing::Rationals);
        assert_eq!(ScalarRing::parse_field("F3").unwrap(), ScalarRing::PrimeField(3));
        assert!(ScalarRing::parse_field("F6").is_err());
        assert!(ScalarRing::parse_field("R").is_err());
        assert_eq!(ScalarRing::parse_field("F2").unwrap().to_string(), "F2");
    }
}
