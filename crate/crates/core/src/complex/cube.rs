//! The full cube of resolutions.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Field, SparseMatrix};
use crate::diagram::PlanarDiagram;
use crate::frobenius::FrobeniusSystem;

use super::{ComplexError, DeformationKind, GradedComplex, Generator, Provenance, Theory};

pub const DEFAULT_CUBE_CAP: usize = 14;

struct Vertex {
    /// Circle of every arc (index `label - 1`).
    circle: Vec<u8>,
    count: usize,
    /// One arc on each circle.
    rep: Vec<u32>,
}

fn resolve_vertex(d: &PlanarDiagram, v: u64) -> Vertex {
    let arcs = d.arc_count() as usize;
    if arcs == 0 {
        return Vertex { circle: Vec::new(), count: 1, rep: vec![0] };
    }
    let mut parent: Vec<usize> = (0..arcs).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for c in 0..d.crossing_count() {
        for (a, b) in d.smoothing(c, v >> c & 1 == 1) {
            let (ra, rb) = (find(&mut parent, a as usize - 1), find(&mut parent, b as usize - 1));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut id = vec![u8::MAX; arcs];
    let mut circle = vec![0u8; arcs];
    let mut rep = Vec::new();
    for a in 0..arcs {
        let r = find(&mut parent, a);
        if id[r] == u8::MAX {
            id[r] = rep.len() as u8;
            rep.push(a as u32);
        }
        circle[a] = id[r];
    }
    Vertex { circle, count: rep.len(), rep }
}

/// The cube complex of `d` for the rank-2 system `sys` specialized by `def`.
/// Generators are all labellings of the circles of every resolution by `1`
/// and `X`; bit `c` of a vertex set means crossing `c` is 1-smoothed.
pub fn build_full_cube<F: Field>(
    d: &PlanarDiagram,
    sys: &FrobeniusSystem,
    def: DeformationKind,
    cap: usize,
) -> Result<GradedComplex<F>, ComplexError> {
    let th = Theory::<F>::new(sys, def)?;
    cube_with(d, &th, cap)
}

pub(crate) fn cube_with<F: Field>(d: &PlanarDiagram, th: &Theory<F>, cap: usize) -> Result<GradedComplex<F>, ComplexError> {
    let n = d.crossing_count();
    if n > cap || n > 40 {
        return Err(ComplexError::CrossingCap { crossings: n, cap });
    }
    let (np, nm) = (d.c_plus() as i32, d.c_minus() as i32);
    let verts: Vec<Vertex> = (0..1u64 << n).map(|v| resolve_vertex(d, v)).collect();
    let mut offset = vec![0usize; verts.len()];
    let mut gens: BTreeMap<i32, Vec<Generator>> = BTreeMap::new();
    for (v, vx) in verts.iter().enumerate() {
        let height = (v as u64).count_ones() as i32;
        let list = gens.entry(height - nm).or_default();
        offset[v] = list.len();
        for dotted in 0..1u64 << vx.count {
            let ones = vx.count as i32 - 2 * dotted.count_ones() as i32;
            list.push(Generator { j: height + ones + np - 2 * nm, label: Provenance::Cube { vertex: v as u64, dotted } });
        }
    }
    let mut trip: BTreeMap<i32, Vec<(usize, usize, F)>> = BTreeMap::new();
    let (h, t) = (&th.h, &th.t);
    for (v, vx) in verts.iter().enumerate() {
        let height = (v as u64).count_ones() as i32;
        for c in 0..n {
            if v >> c & 1 == 1 {
                continue;
            }
            let w = v | 1 << c;
            let wx = &verts[w];
            let sign = if (v as u64 & ((1u64 << c) - 1)).count_ones() % 2 == 0 { F::one() } else { F::one().neg() };
            let ends = d.crossings()[c].map(|a| a as usize - 1);
            let mut from: Vec<u8> = ends.iter().map(|&a| vx.circle[a]).collect();
            let mut to: Vec<u8> = ends.iter().map(|&a| wx.circle[a]).collect();
            from.sort_unstable();
            from.dedup();
            to.sort_unstable();
            to.dedup();
            // unaffected circles: (circle at v, circle at w)
            let carry: Vec<(u8, u8)> = (0..vx.count as u8)
                .filter(|k| !from.contains(k))
                .map(|k| (k, wx.circle[vx.rep[k as usize] as usize]))
                .collect();
            let list = trip.entry(height - nm).or_default();
            for dotted in 0..1u64 << vx.count {
                let mut base = 0u64;
                for &(a, b) in &carry {
                    if dotted >> a & 1 == 1 {
                        base |= 1 << b;
                    }
                }
                let bit = |k: u8| dotted >> k & 1 == 1;
                let mut terms: Vec<(u64, F)> = Vec::with_capacity(3);
                match (from.len(), to.len()) {
                    (2, 1) => {
                        let m = 1u64 << to[0];
                        match (bit(from[0]), bit(from[1])) {
                            (false, false) => terms.push((0, F::one())),
                            (true, true) => {
                                terms.push((m, h.clone()));
                                terms.push((0, t.clone()));
                            }
                            _ => terms.push((m, F::one())),
                        }
                    }
                    (1, 2) => {
                        let (m1, m2) = (1u64 << to[0], 1u64 << to[1]);
                        if bit(from[0]) {
                            terms.push((m1 | m2, F::one()));
                            terms.push((0, t.clone()));
                        } else {
                            terms.push((m2, F::one()));
                            terms.push((m1, F::one()));
                            terms.push((0, h.neg()));
                        }
                    }
                    _ => return Err(ComplexError::Invariant(alloc::format!("crossing {} neither merges nor splits", c))),
                }
                let col = offset[v] + dotted as usize;
                for (m, val) in terms {
                    if val.is_zero() {
                        continue;
                    }
                    list.push((offset[w] + (base | m) as usize, col, val.mul(&sign)));
                }
            }
        }
    }
    let size = |i: i32| gens.get(&i).map_or(0, |g| g.len());
    let mut diffs = BTreeMap::new();
    for (i, tr) in trip {
        diffs.insert(i, SparseMatrix::from_triplets(size(i + 1), size(i), tr).map_err(|e| ComplexError::Invariant(alloc::format!("{}", e)))?);
    }
    GradedComplex::new(th.kind, th.step(), gens, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rank, Fp, Rational};
    use crate::diagram::{parse_pd, resolve, KauffmanState};
    use crate::frobenius::{make_system, SystemKind};

    fn sl2() -> FrobeniusSystem {
        make_system(SystemKind::UniversalSl2).unwrap()
    }

    fn right_trefoil() -> PlanarDiagram {
        parse_pd("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]").unwrap()
    }

    #[test]
    fn unknot_has_two_generators() {
        let c: GradedComplex<Rational> = build_full_cube(&PlanarDiagram::unknot(), &sl2(), DeformationKind::None, 14).unwrap();
        let js: Vec<i32> = c.generators(0).iter().map(|g| g.j).collect();
        assert_eq!(js, alloc::vec![1, -1]);
        assert!(c.differential(0).is_zero());
    }

    #[test]
    fn trefoil_generator_count_matches_states() {
        let d = right_trefoil();
        let c: GradedComplex<Rational> = build_full_cube(&d, &sl2(), DeformationKind::None, 14).unwrap();
        let expect: usize = (0..8).map(|m| 1usize << resolve(&d, &KauffmanState::from_mask(3, m)).unwrap()).sum();
        assert_eq!(c.generator_count(), expect);
        assert!(c.verify_d_squared());
        assert!(c.verify_gradings());
    }

    #[test]
    fn deformed_cubes_are_complexes() {
        let d = right_trefoil();
        let lee: GradedComplex<Rational> = build_full_cube(&d, &sl2(), DeformationKind::Lee, 14).unwrap();
        assert!(lee.verify_d_squared() && lee.verify_gradings());
        let bn: GradedComplex<Fp<2>> = build_full_cube(&d, &sl2(), DeformationKind::BarNatan, 14).unwrap();
        assert!(bn.verify_d_squared() && bn.verify_gradings());
        let eight = parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap();
        let lee3: GradedComplex<Fp<3>> = build_full_cube(&eight, &sl2(), DeformationKind::Lee, 14).unwrap();
        assert!(lee3.verify_d_squared());
    }

    #[test]
    fn lee_homology_of_trefoil_has_rank_two() {
        let c: GradedComplex<Rational> = build_full_cube(&right_trefoil(), &sl2(), DeformationKind::Lee, 14).unwrap();
        let total: usize = c
            .degrees()
            .map(|i| c.generators(i).len() - rank(&c.differential(i)) - rank(&c.differential(i - 1)))
            .sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn cap_and_ring_errors() {
        let d = right_trefoil();
        assert!(matches!(
            build_full_cube::<Rational>(&d, &sl2(), DeformationKind::None, 2),
            Err(ComplexError::CrossingCap { crossings: 3, cap: 2 })
        ));
        assert!(matches!(
            build_full_cube::<Fp<2>>(&d, &sl2(), DeformationKind::Lee, 14),
            Err(ComplexError::DeformationRing { .. })
        ));
    }
}
