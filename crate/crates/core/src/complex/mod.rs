//! Khovanov chain complexes and their Lee and Bar-Natan deformations.
//!
//! Gradings: a generator at cube vertex `v` (with `|v|` one-smoothings)
//! has `i = |v| - c_-` and `j = |v| + (#1 - #X) + c_+ - 2 c_-`, so the
//! 0-crossing unknot sits at `(0, -1)` and `(0, 1)`. The undeformed
//! differential preserves `j`.
//!
//! Deformed complexes are stored with scalar entries over a field `F`; an
//! entry `c` from a generator at `j1` to one at `j2` stands for
//! `c * v^((j2 - j1) / step)` over `F[v]`. For Lee, `v = t` and `step = 4`
//! (or `v = X` with `step = 2` for the basepoint-reduced complex); for
//! Bar-Natan, `v = h` and `step = 2`. Setting `v = 1` gives the deformed
//! differential `d + d_def` over `F`; keeping only the `j`-preserving
//! entries gives the undeformed `d`.

pub(crate) mod cube;
mod deloop;
mod engine;
pub(crate) mod scan;
mod tangle;

pub use cube::{build_full_cube, DEFAULT_CUBE_CAP};
pub use deloop::{deloop, Deloop};
pub use scan::{scan_build, scan_build_pair, ScanOptions, ScanOutput, ScanProgress};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use crate::algebra::{Field, Poly, ScalarRing, SparseMatrix};
use crate::diagram::DiagramError;
use crate::frobenius::{FrobeniusSystem, SystemKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeformationKind {
    None,
    Lee,
    BarNatan,
}

impl fmt::Display for DeformationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeformationKind::None => "none",
            DeformationKind::Lee => "lee",
            DeformationKind::BarNatan => "barnatan",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    CrossingCap { crossings: usize, cap: usize },
    DeformationRing { kind: DeformationKind, characteristic: u32 },
    UnsupportedSystem(SystemKind),
    Diagram(DiagramError),
    ResourceCap { step: usize, total: usize, objects: usize },
    NonUnitPivot { degree: i32, row: usize, col: usize },
    Invariant(String),
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::CrossingCap { crossings, cap } => {
                write!(f, "{} crossings exceed the full-cube cap of {}", crossings, cap)
            }
            ComplexError::DeformationRing { kind, characteristic } => {
                write!(f, "deformation {} is not defined in characteristic {}", kind, characteristic)
            }
            ComplexError::UnsupportedSystem(k) => write!(f, "system {} cannot build link complexes", k),
            ComplexError::Diagram(e) => write!(f, "{}", e),
            ComplexError::ResourceCap { step, total, objects } => write!(
                f,
                "resource cap exceeded at crossing {}/{} with {} objects",
                step, total, objects
            ),
            ComplexError::NonUnitPivot { degree, row, col } => {
                write!(f, "entry ({}, {}) of d^{} is not a unit", row, col, degree)
            }
            ComplexError::Invariant(m) => write!(f, "complex invariant failed: {}", m),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ComplexError {}

impl From<DiagramError> for ComplexError {
    fn from(e: DiagramError) -> Self {
        ComplexError::Diagram(e)
    }
}

/// The rank-2 algebra `F[X]/(X^2 - hX - t)` with `h, t` fixed scalars.
#[derive(Clone, Debug)]
pub struct Theory<F: Field> {
    pub kind: DeformationKind,
    pub h: F,
    pub t: F,
}

impl<F: Field> Theory<F> {
    /// Specializes a rank-2 system for the given deformation over `F`.
    pub fn new(sys: &FrobeniusSystem, kind: DeformationKind) -> Result<Self, ComplexError> {
        let p = F::CHARACTERISTIC as u32;
        let ok = match (sys.kind(), kind) {
            (SystemKind::UniversalSl3 | SystemKind::Sln(_), _) => {
                return Err(ComplexError::UnsupportedSystem(sys.kind()))
            }
            (_, DeformationKind::None) => true,
            (SystemKind::UniversalSl2 | SystemKind::LeeSl2, DeformationKind::Lee) => true,
            (SystemKind::UniversalSl2 | SystemKind::BarNatanSl2, DeformationKind::BarNatan) => true,
            _ => false,
        };
        if !ok {
            return Err(ComplexError::UnsupportedSystem(sys.kind()));
        }
        Self::of_kind(kind, p)
    }

    pub(crate) fn of_kind(kind: DeformationKind, p: u32) -> Result<Self, ComplexError> {
        let (h, t) = match kind {
            DeformationKind::None => (F::zero(), F::zero()),
            DeformationKind::Lee if p != 2 => (F::zero(), F::one()),
            DeformationKind::BarNatan if p == 2 => (F::one(), F::zero()),
            _ => return Err(ComplexError::DeformationRing { kind, characteristic: p }),
        };
        Ok(Theory { kind, h, t })
    }

    /// `j`-step of the deformation variable in the unreduced complex.
    pub fn step(&self) -> i32 {
        match self.kind {
            DeformationKind::Lee => 4,
            _ => 2,
        }
    }
}

pub(crate) fn ring_of<F: Field>() -> ScalarRing {
    match F::CHARACTERISTIC as u32 {
        0 => ScalarRing::Rationals,
        p => ScalarRing::PrimeField(p),
    }
}

/// Where a generator came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Cube vertex (bit `c` set means crossing `c` is 1-smoothed) and the
    /// circles labelled `X`.
    Cube { vertex: u64, dotted: u64 },
    /// Surviving object of the scan pipeline.
    Scan { index: u32 },
    /// One of the two generators of a closed-up scan object.
    Closed { index: u32, dotted: bool },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Cube { vertex, dotted } => write!(f, "v{:b}/x{:b}", vertex, dotted),
            Provenance::Scan { index } => write!(f, "s{}", index),
            Provenance::Closed { index, dotted } => write!(f, "s{}{}", index, if *dotted { "x" } else { "1" }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub j: i32,
    pub label: Provenance,
}

/// Bigraded complex with sparse differentials. `differential(i)` maps
/// degree `i` to `i + 1` and acts on column vectors.
#[derive(Clone, Debug)]
pub struct GradedComplex<F: Field> {
    ring: ScalarRing,
    deformation: DeformationKind,
    step: i32,
    gens: BTreeMap<i32, Vec<Generator>>,
    diffs: BTreeMap<i32, SparseMatrix<F>>,
}

impl<F: Field> GradedComplex<F> {
    /// Checks that every differential has the right shape.
    pub fn new(
        deformation: DeformationKind,
        step: i32,
        gens: BTreeMap<i32, Vec<Generator>>,
        diffs: BTreeMap<i32, SparseMatrix<F>>,
    ) -> Result<Self, ComplexError> {
        let gens: BTreeMap<i32, Vec<Generator>> = gens.into_iter().filter(|(_, g)| !g.is_empty()).collect();
        let size = |i: i32| gens.get(&i).map_or(0, |g| g.len());
        for (&i, m) in &diffs {
            if m.rows() != size(i + 1) || m.cols() != size(i) {
                return Err(ComplexError::Invariant(alloc::format!(
                    "d^{} is {}x{}, expected {}x{}",
                    i,
                    m.rows(),
                    m.cols(),
                    size(i + 1),
                    size(i)
                )));
            }
        }
        let diffs = diffs.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(GradedComplex { ring: ring_of::<F>(), deformation, step, gens, diffs })
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn deformation(&self) -> DeformationKind {
        self.deformation
    }

    pub fn step(&self) -> i32 {
        self.step
    }

    /// Homological degrees with at least one generator.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.gens.keys().copied()
    }

    pub fn generators(&self, i: i32) -> &[Generator] {
        self.gens.get(&i).map_or(&[], |g| g.as_slice())
    }

    pub fn generator_count(&self) -> usize {
        self.gens.values().map(|g| g.len()).sum()
    }

    /// `d^i : C^i -> C^(i+1)`.
    pub fn differential(&self, i: i32) -> SparseMatrix<F> {
        match self.diffs.get(&i) {
            Some(m) => m.clone(),
            None => SparseMatrix::zero(self.generators(i + 1).len(), self.generators(i).len()),
        }
    }

    pub(crate) fn differential_ref(&self, i: i32) -> Option<&SparseMatrix<F>> {
        self.diffs.get(&i)
    }

    /// `j`-shift of an entry of `d^i`.
    pub fn entry_shift(&self, i: i32, row: usize, col: usize) -> i32 {
        self.generators(i + 1)[row].j - self.generators(i)[col].j
    }

    /// Every consecutive composition vanishes.
    pub fn verify_d_squared(&self) -> bool {
        self.diffs.iter().all(|(&i, d)| match self.diffs.get(&(i + 1)) {
            Some(e) => e.mul(d).map(|m| m.is_zero()).unwrap_or(false),
            None => true,
        })
    }

    /// Checks that each entry shifts `j` by a nonnegative multiple of the step
    /// (zero for undeformed complexes).
    pub fn verify_gradings(&self) -> bool {
        self.diffs.iter().all(|(&i, d)| {
            d.entries().all(|(r, c, _)| {
                let s = self.entry_shift(i, r, c);
                s >= 0 && s % self.step == 0 && (self.deformation != DeformationKind::None || s == 0)
            })
        })
    }

    /// The `j`-preserving part: the undeformed complex.
    pub fn associated_graded(&self) -> Self {
        let mut out = self.clone();
        out.deformation = DeformationKind::None;
        for (&i, m) in out.diffs.iter_mut() {
            let entries: Vec<(usize, usize, F)> = m
                .entries()
                .filter(|&(r, c, _)| self.entry_shift(i, r, c) == 0)
                .map(|(r, c, v)| (r, c, v.clone()))
                .collect();
            *m = SparseMatrix::from_triplets(m.rows(), m.cols(), entries).expect("same shape");
        }
        out.diffs.retain(|_, m| !m.is_zero());
        out
    }

    /// `d^i` over `F[v]`: each entry `c` becomes `c v^(shift / step)`.
    pub fn poly_differential(&self, i: i32) -> SparseMatrix<Poly<F>> {
        let d = self.differential(i);
        let entries: Vec<(usize, usize, Poly<F>)> = d
            .entries()
            .map(|(r, c, v)| (r, c, Poly::monomial(v.clone(), (self.entry_shift(i, r, c) / self.step) as usize)))
            .collect();
        SparseMatrix::from_triplets(d.rows(), d.cols(), entries).expect("same shape")
    }

    /// Removes the pair joined by the unit entry `(row, col)` of `d^i` and
    /// adds the zig-zag correction.
    pub fn gauss_cancel(&self, i: i32, row: usize, col: usize) -> Result<Self, ComplexError> {
        let bad = ComplexError::NonUnitPivot { degree: i, row, col };
        if row >= self.generators(i + 1).len() || col >= self.generators(i).len() {
            return Err(bad);
        }
        if self.differential(i).get(row, col).is_zero() || self.entry_shift(i, row, col) != 0 {
            return Err(bad);
        }
        let mut e = engine::Reducer::from_complex(self);
        let b = e.index_of(i, col);
        let a = e.index_of(i + 1, row);
        e.cancel(b, a);
        Ok(e.into_complex(self.deformation, self.step))
    }

    /// Cancels unit entries until none is left; over `F[v]` this is a
    /// homotopy equivalence of free complexes.
    pub fn simplify(&self) -> Self {
        let mut e = engine::Reducer::from_complex(self);
        e.reduce();
        e.into_complex(self.deformation, self.step)
    }

    /// Text dump: a header, one `gen` line per generator and one `d` line per
    /// nonzero entry.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ring {}", self.ring);
        let _ = writeln!(s, "deformation {}", self.deformation);
        let _ = writeln!(s, "step {}", self.step);
        for (&i, gs) in &self.gens {
            for (k, g) in gs.iter().enumerate() {
                let _ = writeln!(s, "gen {} {} {} {}", i, k, g.j, g.label);
            }
        }
        for (&i, m) in &self.diffs {
            for (r, c, v) in m.entries() {
                let _ = writeln!(s, "d {} {} {} {}", i, c, r, v);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rank, Fp};
    use alloc::vec;

    type F5 = Fp<5>;

    fn gens(js: &[i32]) -> Vec<Generator> {
        js.iter().enumerate().map(|(k, &j)| Generator { j, label: Provenance::Scan { index: k as u32 } }).collect()
    }

    fn total_rank_of_homology(c: &GradedComplex<F5>) -> usize {
        c.degrees()
            .map(|i| {
                let n = c.generators(i).len();
                n - rank(&c.differential(i)) - rank(&c.differential(i - 1))
            })
            .sum()
    }

    #[test]
    fn two_term_complex_cancels_to_nothing() {
        let g = BTreeMap::from([(0, gens(&[1])), (1, gens(&[1]))]);
        let d = BTreeMap::from([(0, SparseMatrix::from_dense(&[vec![F5::new(1)]]))]);
        let c = GradedComplex::new(DeformationKind::None, 2, g, d).unwrap();
        let r = c.gauss_cancel(0, 0, 0).unwrap();
        assert_eq!(r.generator_count(), 0);
    }

    #[test]
    fn block_leaves_surviving_pair() {
        let g = BTreeMap::from([(0, gens(&[1, 3])), (1, gens(&[1, 3]))]);
        let m = SparseMatrix::from_dense(&[vec![F5::new(1), F5::new(0)], vec![F5::new(0), F5::new(0)]]);
        let c = GradedComplex::new(DeformationKind::None, 2, g, BTreeMap::from([(0, m)])).unwrap();
        let r = c.gauss_cancel(0, 0, 0).unwrap();
        assert_eq!(r.generators(0).len(), 1);
        assert_eq!(r.generators(1).len(), 1);
        assert!(r.differential(0).is_zero());
        assert_eq!(r.generators(0)[0].j, 3);
    }

    #[test]
    fn rejects_non_unit_pivot() {
        let g = BTreeMap::from([(0, gens(&[1, 1])), (1, gens(&[1]))]);
        let m = SparseMatrix::from_dense(&[vec![F5::new(0), F5::new(2)]]);
        let c = GradedComplex::new(DeformationKind::None, 2, g, BTreeMap::from([(0, m)])).unwrap();
        assert!(matches!(c.gauss_cancel(0, 0, 0), Err(ComplexError::NonUnitPivot { .. })));
        assert!(c.gauss_cancel(0, 0, 1).is_ok());
    }

    #[test]
    fn rejects_bad_shapes() {
        let g = BTreeMap::from([(0, gens(&[1]))]);
        let m = SparseMatrix::<F5>::zero(2, 1);
        assert!(GradedComplex::new(DeformationKind::None, 2, g, BTreeMap::from([(0, m)])).is_err());
    }

    #[test]
    fn cancel_keeps_homology_of_random_complex() {
        // C^0 (3) -> C^1 (3) over F5 built as d1 d0 = 0 with a unit entry.
        let d0 = SparseMatrix::from_dense(&[
            vec![F5::new(1), F5::new(2), F5::new(0)],
            vec![F5::new(0), F5::new(0), F5::new(0)],
            vec![F5::new(3), F5::new(1), F5::new(4)],
        ]);
        let g = BTreeMap::from([(0, gens(&[0, 0, 0])), (1, gens(&[0, 0, 0]))]);
        let c = GradedComplex::new(DeformationKind::None, 2, g, BTreeMap::from([(0, d0)])).unwrap();
        let before = total_rank_of_homology(&c);
        let r = c.gauss_cancel(0, 2, 0).unwrap();
        assert!(r.verify_d_squared());
        assert_eq!(total_rank_of_homology(&r), before);
        assert_eq!(total_rank_of_homology(&c.simplify()), before);
    }

    #[test]
    fn dump_lists_generators_and_entries() {
        let g = BTreeMap::from([(0, gens(&[1])), (1, gens(&[1]))]);
        let d = BTreeMap::from([(0, SparseMatrix::from_dense(&[vec![F5::new(3)]]))]);
        let c = GradedComplex::new(DeformationKind::None, 2, g, d).unwrap();
        let text = c.dump();
        assert!(text.contains("ring F5"));
        assert!(text.contains("gen 1 0 1 s0"));
        assert!(text.contains("d 0 0 0 3"));
    }

    #[test]
    fn deformation_ring_checks() {
        assert!(Theory::<Fp<2>>::of_kind(DeformationKind::Lee, 2).is_err());
        assert!(Theory::<Fp<3>>::of_kind(DeformationKind::BarNatan, 3).is_err());
        assert!(Theory::<Fp<2>>::of_kind(DeformationKind::BarNatan, 2).is_ok());
    }
}
