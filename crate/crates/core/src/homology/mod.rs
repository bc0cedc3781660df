//! Homology tables, torsion orders of the deformed complexes, spectral
//! pages and the lower bounds read off from them.

mod bounds;
mod pages;
mod table;
mod torsion;

pub use bounds::{bound_report, combine, ring_bounds, Bound, BoundReport, BoundRule, RingBounds};
pub use pages::{pages_of_complex, s_invariant, s_invariant_in, spectral_pages, spectral_pages_in, SpectralPages};
pub use table::{f2_splitting, f2_splitting_check, HomologyTable};
pub use torsion::{torsion_profile, torsion_profile_in, TorsionProfile};

use alloc::string::String;
use core::fmt;

use crate::algebra::{Field, ScalarRing};
use crate::complex::{ComplexError, DeformationKind, ScanOptions, Theory, DEFAULT_CUBE_CAP};
use crate::diagram::{DiagramError, PlanarDiagram};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyError {
    Complex(ComplexError),
    UnsupportedRing(ScalarRing),
    NotAKnot { components: usize },
    Invariant(String),
}

impl fmt::Display for HomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyError::Complex(e) => write!(f, "{}", e),
            HomologyError::UnsupportedRing(r) => write!(f, "unsupported coefficient ring {}", r),
            HomologyError::NotAKnot { components } => write!(f, "expected a knot, got {} components", components),
            HomologyError::Invariant(m) => write!(f, "homology invariant failed: {}", m),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for HomologyError {}

impl From<ComplexError> for HomologyError {
    fn from(e: ComplexError) -> Self {
        HomologyError::Complex(e)
    }
}

impl From<DiagramError> for HomologyError {
    fn from(e: DiagramError) -> Self {
        HomologyError::Complex(ComplexError::Diagram(e))
    }
}

impl HomologyError {
    /// Hit a crossing or object cap rather than a wrong answer.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, HomologyError::Complex(ComplexError::CrossingCap { .. } | ComplexError::ResourceCap { .. }))
    }
}

/// Fields with a compiled-in arithmetic.
pub const SUPPORTED_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

/// Runs `$body` with `$F` bound to the field type of `$ring`.
#[macro_export]
macro_rules! with_field {
    ($ring:expr, $F:ident => $body:expr) => {{
        use $crate::algebra::{Fp, Rational, ScalarRing};
        match $ring {
            ScalarRing::Rationals => {
                type $F = Rational;
                Ok($body)
            }
            ScalarRing::PrimeField(2) => {
                type $F = Fp<2>;
                Ok($body)
            }
            ScalarRing::PrimeField(3) => {
                type $F = Fp<3>;
                Ok($body)
            }
            ScalarRing::PrimeField(5) => {
                type $F = Fp<5>;
                Ok($body)
            }
            ScalarRing::PrimeField(7) => {
                type $F = Fp<7>;
                Ok($body)
            }
            ScalarRing::PrimeField(11) => {
                type $F = Fp<11>;
                Ok($body)
            }
            ScalarRing::PrimeField(13) => {
                type $F = Fp<13>;
                Ok($body)
            }
            other => Err($crate::homology::HomologyError::UnsupportedRing(other.clone())),
        }
    }};
}

pub(crate) fn require_knot(d: &PlanarDiagram) -> Result<(), HomologyError> {
    if d.is_knot() {
        Ok(())
    } else {
        Err(HomologyError::NotAKnot { components: d.components() })
    }
}

/// Khovanov homology over `F`, via the scanning construction.
pub fn kh_table_in<F: Field>(d: &PlanarDiagram, opts: &mut ScanOptions<'_>) -> Result<HomologyTable, HomologyError> {
    let th = Theory::<F>::of_kind(DeformationKind::None, F::CHARACTERISTIC as u32)?;
    let out = crate::complex::scan::scan_with(d, &th, opts)?;
    Ok(HomologyTable::of_complex(&out.unreduced))
}

/// Khovanov homology over a field descriptor.
pub fn kh_table(d: &PlanarDiagram, ring: &ScalarRing, opts: &mut ScanOptions<'_>) -> Result<HomologyTable, HomologyError> {
    with_field!(ring, F => kh_table_in::<F>(d, opts)?)
}

/// Khovanov homology from the full cube; an oracle for small diagrams.
pub fn kh_table_cube(d: &PlanarDiagram, ring: &ScalarRing, cap: Option<usize>) -> Result<HomologyTable, HomologyError> {
    with_field!(ring, F => {
        let th = Theory::<F>::of_kind(DeformationKind::None, F::CHARACTERISTIC as u32)?;
        HomologyTable::of_complex(&crate::complex::cube::cube_with(d, &th, cap.unwrap_or(DEFAULT_CUBE_CAP))?)
    })
}
