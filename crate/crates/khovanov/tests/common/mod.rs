#![allow(dead_code)]

use std::collections::BTreeMap;

use khovanov_core::algebra::{Field, Fp, Rational, ScalarRing};
use khovanov_core::diagram::PlanarDiagram;
use khovanov_core::homology::HomologyTable;

fn find(p: &mut Vec<usize>, a: usize) -> usize {
    let mut r = a;
    while p[r] != r {
        r = p[r];
    }
    let mut a = a;
    while p[a] != r {
        let n = p[a];
        p[a] = r;
        a = n;
    }
    r
}

/// Circle index of every arc in the state `mask` (bit set: pairs `(i,l),(j,k)`).
pub fn circles(d: &PlanarDiagram, mask: u64) -> (Vec<usize>, usize) {
    let n = d.arc_count() as usize;
    let mut p: Vec<usize> = (0..n).collect();
    for (c, x) in d.crossings().iter().enumerate() {
        let x = x.map(|a| a as usize - 1);
        let pairs = if mask >> c & 1 == 0 { [(x[0], x[1]), (x[2], x[3])] } else { [(x[0], x[3]), (x[1], x[2])] };
        for (a, b) in pairs {
            let (ra, rb) = (find(&mut p, a), find(&mut p, b));
            p[ra] = rb;
        }
    }
    let mut id = BTreeMap::new();
    let mut out = vec![0; n];
    for a in 0..n {
        let r = find(&mut p, a);
        let k = id.len();
        out[a] = *id.entry(r).or_insert(k);
    }
    let count = if n == 0 { 1 } else { id.len() };
    (out, count)
}

type Laurent = BTreeMap<i32, i64>;

fn lmul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut o = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *o.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    o.retain(|_, c| *c != 0);
    o
}

/// Jones polynomial `V(t)` from the Kauffman bracket state sum, as
/// exponent of `t` to coefficient; the diagram must be a knot.
pub fn bracket_jones(d: &PlanarDiagram) -> Laurent {
    let n = d.crossing_count();
    let delta: Laurent = [(2, -1), (-2, -1)].into_iter().collect();
    let mut bracket = Laurent::new();
    for mask in 0..1u64 << n {
        let (_, loops) = circles(d, mask);
        let b = mask.count_ones() as i32;
        let mut term: Laurent = [(n as i32 - 2 * b, 1)].into_iter().collect();
        for _ in 1..loops {
            term = lmul(&term, &delta);
        }
        for (e, c) in term {
            *bracket.entry(e).or_insert(0) += c;
        }
    }
    bracket.retain(|_, c| *c != 0);
    let w = d.writhe() as i32;
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let f = lmul(&bracket, &[(-3 * w, sign)].into_iter().collect());
    // A = t^(-1/4)
    f.into_iter()
        .map(|(e, c)| {
            assert_eq!(e % 4, 0, "knot bracket exponent not divisible by 4");
            (-e / 4, c)
        })
        .collect()
}

/// `(q + q^-1) V(q^2)`: the graded Euler characteristic of `Kh` of a knot.
pub fn jones_to_euler(v: &Laurent) -> Laurent {
    let vq: Laurent = v.iter().map(|(&e, &c)| (2 * e, c)).collect();
    lmul(&vq, &[(1, 1), (-1, 1)].into_iter().collect())
}

fn dense_rank<F: Field>(mut m: Vec<Vec<F>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].mul(&inv);
                for k in c..cols {
                    let v = m[i][k].sub(&f.mul(&m[r][k]));
                    m[i][k] = v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Khovanov homology ranks from a cube built here from scratch, with dense
/// elimination per bidegree.
pub fn cube_oracle<F: Field>(d: &PlanarDiagram) -> BTreeMap<(i32, i32), usize> {
    let n = d.crossing_count();
    let (np, nm) = (d.c_plus() as i32, d.c_minus() as i32);
    let states: Vec<(Vec<usize>, usize)> = (0..1u64 << n).map(|m| circles(d, m)).collect();
    // generator: (mask, labelling bits: bit set = X)
    let grade = |m: u64, lab: u64| {
        let k = states[m as usize].1 as i32;
        let h = m.count_ones() as i32;
        (h - nm, h + k - 2 * lab.count_ones() as i32 + np - 2 * nm)
    };
    let mut gens: BTreeMap<(i32, i32), Vec<(u64, u64)>> = BTreeMap::new();
    for m in 0..1u64 << n {
        for lab in 0..1u64 << states[m as usize].1 {
            gens.entry(grade(m, lab)).or_default().push((m, lab));
        }
    }
    let index: BTreeMap<(u64, u64), usize> =
        gens.values().flat_map(|v| v.iter().enumerate().map(|(k, &g)| (g, k))).collect();
    // d on one generator: list of (target, coefficient)
    let image = |m: u64, lab: u64| -> Vec<((u64, u64), F)> {
        let mut out = Vec::new();
        let (ref cv, kv) = states[m as usize];
        for c in 0..n {
            if m >> c & 1 == 1 {
                continue;
            }
            let w = m | 1 << c;
            let (ref cw, kw) = states[w as usize];
            let sign = if (m & ((1 << c) - 1)).count_ones() % 2 == 0 { F::one() } else { F::one().neg() };
            // map circles of v to circles of w via any arc
            let x = d.crossings()[c].map(|a| a as usize - 1);
            let touched_v: Vec<usize> = {
                let mut t: Vec<usize> = x.iter().map(|&a| cv[a]).collect();
                t.sort();
                t.dedup();
                t
            };
            let touched_w: Vec<usize> = {
                let mut t: Vec<usize> = x.iter().map(|&a| cw[a]).collect();
                t.sort();
                t.dedup();
                t
            };
            let mut base = 0u64;
            for circ in 0..kv {
                if touched_v.contains(&circ) || lab >> circ & 1 == 0 {
                    continue;
                }
                let arc = cv.iter().position(|&z| z == circ).unwrap();
                base |= 1 << cw[arc];
            }
            let _ = kw;
            let bit = |z: usize| lab >> z & 1 == 1;
            match (touched_v.len(), touched_w.len()) {
                (2, 1) => {
                    let t = touched_w[0];
                    match (bit(touched_v[0]), bit(touched_v[1])) {
                        (false, false) => out.push(((w, base), sign.clone())),
                        (true, true) => {}
                        _ => out.push(((w, base | 1 << t), sign.clone())),
                    }
                }
                (1, 2) => {
                    let (a, b) = (touched_w[0], touched_w[1]);
                    if bit(touched_v[0]) {
                        out.push(((w, base | 1 << a | 1 << b), sign.clone()));
                    } else {
                        out.push(((w, base | 1 << a), sign.clone()));
                        out.push(((w, base | 1 << b), sign.clone()));
                    }
                }
                _ => panic!("crossing neither merges nor splits"),
            }
        }
        out
    };
    let matrix = |i: i32, j: i32| -> Vec<Vec<F>> {
        let src = gens.get(&(i, j)).cloned().unwrap_or_default();
        let dst = gens.get(&(i + 1, j)).map_or(0, |v| v.len());
        let mut m = vec![vec![F::zero(); src.len()]; dst];
        for (col, &(mv, lab)) in src.iter().enumerate() {
            for (t, c) in image(mv, lab) {
                let row = index[&t];
                let v = m[row][col].add(&c);
                m[row][col] = v;
            }
        }
        m
    };
    let mut out = BTreeMap::new();
    for (&(i, j), g) in &gens {
        let r_out = dense_rank(matrix(i, j));
        let r_in = dense_rank(matrix(i - 1, j));
        let h = g.len() - r_out - r_in;
        if h > 0 {
            out.insert((i, j), h);
        }
    }
    out
}

pub fn cube_oracle_table(d: &PlanarDiagram, ring: &ScalarRing) -> HomologyTable {
    let ranks = match ring {
        ScalarRing::Rationals => cube_oracle::<Rational>(d),
        ScalarRing::PrimeField(2) => cube_oracle::<Fp<2>>(d),
        ScalarRing::PrimeField(3) => cube_oracle::<Fp<3>>(d),
        ScalarRing::PrimeField(5) => cube_oracle::<Fp<5>>(d),
        other => panic!("oracle has no field {}", other),
    };
    HomologyTable::new(ring.clone(), ranks)
}
