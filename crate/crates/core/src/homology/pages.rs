use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{rank, Field, ScalarRing};
use crate::complex::{DeformationKind, GradedComplex, ScanOptions, Theory, DEFAULT_CUBE_CAP};
use crate::diagram::PlanarDiagram;

use super::{require_knot, HomologyError, HomologyTable};

/// Pages `E_1, E_2, ...` of the spectral sequence of a deformed complex,
/// filtered by `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPages {
    pub deformation: DeformationKind,
    /// `pages[r - 1]` is `E_r`.
    pub pages: Vec<HomologyTable>,
    pub e_infinity: HomologyTable,
    /// Smallest `k >= 1` with `E_k = E_infinity`.
    pub collapse: usize,
}

impl SpectralPages {
    pub fn page(&self, r: usize) -> Option<&HomologyTable> {
        self.pages.get(r.checked_sub(1)?)
    }
}

struct Filtered<'a, F: Field> {
    c: &'a GradedComplex<F>,
    /// Per degree: (generator index, class, level).
    gens: BTreeMap<i32, Vec<(usize, i32, i32)>>,
    memo: BTreeMap<(i32, i32, i32, i32), usize>,
}

impl<F: Field> Filtered<'_, F> {
    /// `dim { x in F^p C^i of class k : dx in F^(p+r) }`.
    fn z(&mut self, i: i32, k: i32, r: i32, p: i32) -> usize {
        if let Some(&v) = self.memo.get(&(i, k, r, p)) {
            return v;
        }
        let pick = |deg: i32, keep: &dyn Fn(i32) -> bool| -> Vec<usize> {
            self.gens.get(&deg).map_or(Vec::new(), |g| g.iter().filter(|e| e.1 == k && keep(e.2)).map(|e| e.0).collect())
        };
        let cols = pick(i, &|l| l >= p);
        let rows = pick(i + 1, &|l| l < p + r);
        let v = if cols.is_empty() || rows.is_empty() {
            cols.len()
        } else {
            cols.len() - rank(&self.c.differential(i).select(&rows, &cols))
        };
        self.memo.insert((i, k, r, p), v);
        v
    }

    fn e(&mut self, i: i32, k: i32, r: i32, p: i32) -> usize {
        let a = self.z(i, k, r, p) + self.z(i - 1, k, r, p - r + 1);
        let b = self.z(i, k, r - 1, p + 1) + self.z(i - 1, k, r - 1, p - r + 1);
        a - b
    }
}

/// Spectral sequence of the filtration by `j` on a complex whose entries
/// raise `j` by multiples of its step. `E_1` is the homology of the
/// `j`-preserving part; `d_r` raises `j` by `r * step`.
pub fn pages_of_complex<F: Field>(c: &GradedComplex<F>, max_r: Option<usize>) -> SpectralPages {
    let step = c.step();
    let mut gens: BTreeMap<i32, Vec<(usize, i32, i32)>> = BTreeMap::new();
    let mut cells: BTreeMap<(i32, i32, i32), ()> = BTreeMap::new();
    let (mut lo, mut hi) = (i32::MAX, i32::MIN);
    for i in c.degrees() {
        let list = gens.entry(i).or_default();
        for (n, g) in c.generators(i).iter().enumerate() {
            let k = g.j.rem_euclid(step);
            let l = (g.j - k) / step;
            list.push((n, k, l));
            cells.insert((i, k, l), ());
            lo = lo.min(l);
            hi = hi.max(l);
        }
    }
    let span = if lo > hi { 0 } else { hi - lo };
    let mut f = Filtered { c, gens, memo: BTreeMap::new() };
    let mut all = Vec::new();
    for r in 1..=span + 1 {
        let mut ranks = BTreeMap::new();
        for &(i, k, l) in cells.keys() {
            ranks.insert((i, k + step * l), f.e(i, k, r, l));
        }
        all.push(HomologyTable::new(c.ring().clone(), ranks));
    }
    let e_infinity = all.last().cloned().unwrap_or_else(|| HomologyTable::new(c.ring().clone(), BTreeMap::new()));
    let collapse = 1 + all.iter().position(|t| t.total_rank() == e_infinity.total_rank()).unwrap_or(0);
    all.truncate(max_r.unwrap_or(collapse).max(1).min(all.len()));
    SpectralPages { deformation: c.deformation(), pages: all, e_infinity, collapse }
}

/// Pages of the Lee or Bar-Natan spectral sequence from the full cube.
pub fn spectral_pages_in<F: Field>(
    d: &PlanarDiagram,
    def: DeformationKind,
    max_r: Option<usize>,
    cap: Option<usize>,
) -> Result<SpectralPages, HomologyError> {
    let th = Theory::<F>::of_kind(def, F::CHARACTERISTIC as u32)?;
    let cube = crate::complex::cube::cube_with(d, &th, cap.unwrap_or(DEFAULT_CUBE_CAP))?;
    Ok(pages_of_complex(&cube.simplify(), max_r))
}

pub fn spectral_pages(
    d: &PlanarDiagram,
    def: DeformationKind,
    ring: &ScalarRing,
    max_r: Option<usize>,
    cap: Option<usize>,
) -> Result<SpectralPages, HomologyError> {
    crate::with_field!(ring, F => spectral_pages_in::<F>(d, def, max_r, cap)?)
}

/// Crossing count up to which `s_invariant` uses the full cube.
pub const S_CUBE_CROSSINGS: usize = 10;

fn s_from(p: &SpectralPages) -> Result<i32, HomologyError> {
    let e = &p.e_infinity;
    let js: Vec<(i32, usize)> = e.entries().map(|((i, j), r)| {
        if i == 0 { (j, r) } else { (i32::MIN, r) }
    }).collect();
    if e.total_rank() != 2 || js.iter().any(|x| x.0 == i32::MIN) {
        return Err(HomologyError::Invariant(format!("Lee homology is not R^2 in degree 0: {:?}", js)));
    }
    let lo = js.first().map(|x| x.0).unwrap_or(0);
    let hi = js.last().map(|x| x.0).unwrap_or(0);
    Ok((lo + hi) / 2)
}

/// Rasmussen's `s` over `F` (characteristic not 2).
pub fn s_invariant_in<F: Field>(d: &PlanarDiagram, opts: &mut ScanOptions<'_>) -> Result<i32, HomologyError> {
    require_knot(d)?;
    let th = Theory::<F>::of_kind(DeformationKind::Lee, F::CHARACTERISTIC as u32)?;
    let c = if d.crossing_count() <= S_CUBE_CROSSINGS {
        crate::complex::cube::cube_with(d, &th, S_CUBE_CROSSINGS)?.simplify()
    } else {
        crate::complex::scan::scan_with(d, &th, opts)?.unreduced
    };
    s_from(&pages_of_complex(&c, None))
}

pub fn s_invariant(d: &PlanarDiagram, ring: &ScalarRing, opts: &mut ScanOptions<'_>) -> Result<i32, HomologyError> {
    crate::with_field!(ring, F => s_invariant_in::<F>(d, opts)?)
}
