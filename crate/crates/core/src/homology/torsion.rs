use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{smith_normal_form, Field, ScalarRing};
use crate::complex::{DeformationKind, GradedComplex, ScanOptions, Theory};
use crate::diagram::PlanarDiagram;

use super::{require_knot, HomologyError};

/// Homology of a deformed complex over `F[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionProfile {
    pub deformation: DeformationKind,
    pub ring: ScalarRing,
    /// Exponents `k` of the torsion summands `F[v]/(v^k)` of `H^i`, over
    /// `v = t` (Lee) or `v = h` (Bar-Natan).
    pub factors: BTreeMap<i32, Vec<u32>>,
    /// Same for the basepoint-reduced Lee complex over `F[X]`.
    pub reduced_factors: BTreeMap<i32, Vec<u32>>,
    /// Invariant factors that are not powers of `v`.
    pub other_factors: usize,
    pub free_rank: BTreeMap<i32, usize>,
    pub u_x: Option<u32>,
    pub u_t: Option<u32>,
    pub u_h: Option<u32>,
    pub pg: u32,
}

impl TorsionProfile {
    pub fn total_free_rank(&self) -> usize {
        self.free_rank.values().sum()
    }
}

struct Pid {
    factors: BTreeMap<i32, Vec<u32>>,
    other: usize,
    free: BTreeMap<i32, usize>,
}

fn pid_homology<F: Field>(c: &GradedComplex<F>) -> Pid {
    let mut ranks = BTreeMap::new();
    let mut factors = BTreeMap::new();
    let mut other = 0;
    for i in c.degrees() {
        let snf = smith_normal_form(&c.poly_differential(i));
        ranks.insert(i, snf.rank());
        let mut ks: Vec<u32> = Vec::new();
        for f in snf.torsion() {
            match (f.x_valuation(), f.degree()) {
                (Some(a), Some(b)) if a == b => ks.push(a as u32),
                _ => other += 1,
            }
        }
        if !ks.is_empty() {
            factors.insert(i + 1, ks);
        }
    }
    let free = c
        .degrees()
        .map(|i| {
            let r = |k: i32| ranks.get(&k).copied().unwrap_or(0);
            (i, c.generators(i).len() - r(i) - r(i - 1))
        })
        .filter(|e| e.1 > 0)
        .collect();
    Pid { factors, other, free }
}

fn max_exponent(f: &BTreeMap<i32, Vec<u32>>) -> u32 {
    f.values().flatten().copied().max().unwrap_or(0)
}

/// Torsion orders of the Lee (`F` of odd or zero characteristic) or
/// Bar-Natan (`F = F_2`) complex of a knot.
pub fn torsion_profile_in<F: Field>(
    d: &PlanarDiagram,
    def: DeformationKind,
    opts: &mut ScanOptions<'_>,
) -> Result<TorsionProfile, HomologyError> {
    require_knot(d)?;
    if def == DeformationKind::None {
        return Err(HomologyError::Invariant("torsion orders need a deformation".into()));
    }
    let th = Theory::<F>::of_kind(def, F::CHARACTERISTIC as u32)?;
    let out = crate::complex::scan::scan_with(d, &th, opts)?;
    let un = pid_homology(&out.unreduced);
    let free_total: usize = un.free.values().sum();
    if free_total != 2 || un.free.get(&0) != Some(&2) {
        return Err(HomologyError::Invariant(format!("deformed homology has free part {:?}", un.free)));
    }
    let u = max_exponent(&un.factors);
    let mut p = TorsionProfile {
        deformation: def,
        ring: crate::complex::ring_of::<F>(),
        factors: un.factors,
        reduced_factors: BTreeMap::new(),
        other_factors: un.other,
        free_rank: un.free,
        u_x: None,
        u_t: None,
        u_h: None,
        pg: u + 1,
    };
    match def {
        DeformationKind::Lee => {
            let red = out.reduced.ok_or_else(|| HomologyError::Invariant("no reduced complex".into()))?;
            let r = pid_homology(&red);
            let u_x = max_exponent(&r.factors);
            if u_x.div_ceil(2) != u {
                return Err(HomologyError::Invariant(format!("u_t = {} but u_X = {}", u, u_x)));
            }
            p.reduced_factors = r.factors;
            p.other_factors += r.other;
            p.u_x = Some(u_x);
            p.u_t = Some(u);
        }
        _ => p.u_h = Some(u),
    }
    Ok(p)
}

pub fn torsion_profile(
    d: &PlanarDiagram,
    def: DeformationKind,
    ring: &ScalarRing,
    opts: &mut ScanOptions<'_>,
) -> Result<TorsionProfile, HomologyError> {
    crate::with_field!(ring, F => torsion_profile_in::<F>(d, def, opts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, Rational};
    use crate::diagram::parse_pd;

    fn trefoil() -> PlanarDiagram {
        parse_pd("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]").unwrap()
    }

    #[test]
    fn trefoil_lee() {
        let p = torsion_profile_in::<Rational>(&trefoil(), DeformationKind::Lee, &mut ScanOptions::default()).unwrap();
        assert_eq!((p.u_x, p.u_t, p.pg), (Some(1), Some(1), 2));
        assert_eq!(p.free_rank, BTreeMap::from([(0, 2)]));
    }

    #[test]
    fn unknot_lee_is_free() {
        let p = torsion_profile_in::<Rational>(&PlanarDiagram::unknot(), DeformationKind::Lee, &mut ScanOptions::default()).unwrap();
        assert_eq!((p.u_x, p.pg), (Some(0), 1));
    }

    #[test]
    fn trefoil_bar_natan() {
        let p = torsion_profile_in::<Fp<2>>(&trefoil(), DeformationKind::BarNatan, &mut ScanOptions::default()).unwrap();
        assert_eq!((p.u_h, p.pg), (Some(1), 2));
    }

    #[test]
    fn links_and_bad_rings_rejected() {
        let hopf = parse_pd("PD[X[4,1,3,2],X[2,3,1,4]]").unwrap();
        assert!(matches!(
            torsion_profile_in::<Rational>(&hopf, DeformationKind::Lee, &mut ScanOptions::default()),
            Err(HomologyError::NotAKnot { components: 2 })
        ));
        assert!(torsion_profile(&trefoil(), DeformationKind::Lee, &ScalarRing::PrimeField(2), &mut ScanOptions::default()).is_err());
    }
}
