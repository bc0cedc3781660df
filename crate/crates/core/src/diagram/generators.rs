//! Diagram generators: torus knots as braid closures and the two-parameter
//! family K(m,n).

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::{DiagramError, PlanarDiagram};

/// Renumbers arcs 1..2c along the orientation, starting from the arc with
/// the smallest old id.
fn relabel(crossings: &[[usize; 4]], positive: &[bool], arc_ids: usize) -> Vec<[u32; 4]> {
    let mut next = vec![usize::MAX; arc_ids];
    for (x, &pos) in crossings.iter().zip(positive) {
        next[x[0]] = x[2];
        if pos {
            next[x[3]] = x[1];
        } else {
            next[x[1]] = x[3];
        }
    }
    let used: Vec<usize> = (0..arc_ids).filter(|&a| next[a] != usize::MAX).collect();
    let mut label = vec![0u32; arc_ids];
    let mut n = 0;
    for &start in &used {
        if label[start] != 0 {
            continue;
        }
        let mut a = start;
        while label[a] == 0 {
            n += 1;
            label[a] = n;
            a = next[a];
        }
    }
    crossings.iter().map(|x| x.map(|a| label[a])).collect()
}

/// Closure of the braid `(s_1 s_2 ... s_{p-1})^q`. Negative `q` uses the
/// inverse generators and gives the mirror image.
pub fn torus_knot(p: i64, q: i64) -> Result<PlanarDiagram, DiagramError> {
    if p < 2 || q == 0 {
        return Err(DiagramError::InvalidParameter("torus knot needs p >= 2 and q != 0"));
    }
    if p.gcd(&q) != 1 {
        return Err(DiagramError::NotCoprime { p, q });
    }
    let g: i32 = if q > 0 { 1 } else { -1 };
    let word: Vec<i32> = (0..q.unsigned_abs()).flat_map(|_| (1..p as i32).map(move |k| g * k)).collect();
    braid_closure(p as usize, &word)
}

/// Closure of a braid word on `strands` strands: `k` is the positive
/// generator `s_k` (strand `k` crosses over `k + 1`), `-k` its inverse.
/// Strands that never cross are rejected.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<PlanarDiagram, DiagramError> {
    if strands < 1 || word.iter().any(|&k| k == 0 || k.unsigned_abs() as usize >= strands) {
        return Err(DiagramError::InvalidParameter("braid generator out of range"));
    }
    let mut ids = 0usize;
    let mut fresh = || {
        ids += 1;
        ids - 1
    };
    let initial: Vec<usize> = (0..strands).map(|_| fresh()).collect();
    let mut cur = initial.clone();
    let mut raw: Vec<[usize; 4]> = Vec::new();
    let mut signs = Vec::new();
    for &g in word {
        let k = g.unsigned_abs() as usize - 1;
        let (a, b) = (fresh(), fresh());
        let x = if g > 0 {
            // over-strand moves from position k to k+1
            [cur[k + 1], b, a, cur[k]]
        } else {
            [cur[k], cur[k + 1], b, a]
        };
        raw.push(x);
        signs.push(g > 0);
        cur[k] = a;
        cur[k + 1] = b;
    }
    if (0..strands).any(|k| cur[k] == initial[k]) && strands > 1 {
        return Err(DiagramError::InvalidParameter("braid has a strand without crossings"));
    }
    // Closing the braid identifies final and initial positions.
    let mut alias: Vec<usize> = (0..ids).collect();
    for k in 0..strands {
        alias[cur[k]] = initial[k];
    }
    let raw: Vec<[usize; 4]> = raw.into_iter().map(|x| x.map(|a| alias[a])).collect();
    PlanarDiagram::new(relabel(&raw, &signs, ids))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    NE,
    NW,
    SW,
    SE,
}

/// One pass of the traversal through a crossing. Every crossing is drawn
/// with its over-strand on the NW-SE diagonal.
#[derive(Clone, Copy)]
struct Visit {
    crossing: usize,
    over: bool,
    dir: Dir,
}

/// PD code from a closed traversal; arc `t` leaves visit `t`.
fn from_traversal(visits: &[Visit], crossing_count: usize) -> Result<PlanarDiagram, DiagramError> {
    let len = visits.len();
    let mut under: Vec<Option<(usize, usize, Dir)>> = vec![None; crossing_count];
    let mut over: Vec<Option<(usize, usize, Dir)>> = vec![None; crossing_count];
    for (t, v) in visits.iter().enumerate() {
        let arc_in = (t + len - 1) % len;
        let slot = if v.over { &mut over[v.crossing] } else { &mut under[v.crossing] };
        if slot.is_some() {
            return Err(DiagramError::InvalidParameter("crossing visited twice on one level"));
        }
        *slot = Some((arc_in, t, v.dir));
    }
    let mut crossings = Vec::with_capacity(crossing_count);
    for c in 0..crossing_count {
        let (ui, uo, ud) = under[c].ok_or(DiagramError::InvalidParameter("missing under pass"))?;
        let (oi, oo, od) = over[c].ok_or(DiagramError::InvalidParameter("missing over pass"))?;
        let (nw, se) = match od {
            Dir::SE => (oi, oo),
            Dir::NW => (oo, oi),
            _ => return Err(DiagramError::InvalidParameter("over pass off its diagonal")),
        };
        let x = match ud {
            Dir::NE => [ui, se, uo, nw],
            Dir::SW => [ui, nw, uo, se],
            _ => return Err(DiagramError::InvalidParameter("under pass off its diagonal")),
        };
        crossings.push(x.map(|a| a as u32 + 1));
    }
    PlanarDiagram::new(crossings)
}

/// The knot K(m,n): a twist region of 2m+1 crossings, two clasp crossings and
/// 2n three-crossing boxes, 2m+3+6n crossings in all.
pub fn kmn_knot(m: usize, n: usize) -> Result<PlanarDiagram, DiagramError> {
    if m == 0 || n == 0 {
        return Err(DiagramError::InvalidParameter("K(m,n) needs m, n >= 1"));
    }
    let twist = |w: usize| w; // w = 0 is the crossing next to the clasp
    let c_id = 2 * m + 1;
    let d_id = 2 * m + 2;
    let u = |k: usize| 2 * m + 3 + 3 * (k - 1);
    let l = |k: usize| 2 * m + 4 + 3 * (k - 1);
    let v = |k: usize| 2 * m + 5 + 3 * (k - 1);
    let total = 2 * m + 3 + 6 * n;
    let visit = |crossing, over, dir| Visit { crossing, over, dir };

    let mut t = Vec::with_capacity(2 * total);
    t.push(visit(twist(2 * m), false, Dir::SW));
    // middle strand, westward through every box
    for k in (1..=2 * n).rev() {
        t.push(visit(v(k), true, Dir::NW));
        t.push(visit(u(k), false, Dir::SW));
    }
    t.push(visit(c_id, false, Dir::SW));
    t.push(visit(d_id, true, Dir::SE));
    // eastward zigzag
    for k in 1..=2 * n {
        if k % 2 == 1 {
            t.push(visit(l(k), false, Dir::NE));
            t.push(visit(v(k), false, Dir::NE));
        } else {
            t.push(visit(u(k), true, Dir::SE));
            t.push(visit(l(k), true, Dir::SE));
        }
    }
    t.push(visit(d_id, false, Dir::NE));
    t.push(visit(c_id, true, Dir::NW));
    for w in 0..=2 * m {
        if w % 2 == 0 {
            t.push(visit(twist(w), true, Dir::NW));
        } else {
            t.push(visit(twist(w), false, Dir::SW));
        }
    }
    // westward zigzag
    for k in (1..=2 * n).rev() {
        if k % 2 == 0 {
            t.push(visit(v(k), false, Dir::SW));
            t.push(visit(l(k), false, Dir::SW));
        } else {
            t.push(visit(l(k), true, Dir::NW));
            t.push(visit(u(k), true, Dir::NW));
        }
    }
    for w in 0..2 * m {
        if w % 2 == 0 {
            t.push(visit(twist(w), false, Dir::SW));
        } else {
            t.push(visit(twist(w), true, Dir::NW));
        }
    }
    debug_assert_eq!(t.len(), 2 * total);
    from_traversal(&t, total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{diagram_report, parse_pd};

    #[test]
    fn torus_trefoil_is_right_handed() {
        let d = torus_knot(2, 3).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.writhe(), 3);
        assert!(d.is_knot());
        let r = diagram_report(&d).unwrap();
        assert_eq!((r.s_a, r.s_b), (2, 3));
    }

    #[test]
    fn torus_sizes() {
        assert_eq!(torus_knot(5, 6).unwrap().crossing_count(), 24);
        assert_eq!(torus_knot(7, 8).unwrap().crossing_count(), 48);
        assert_eq!(torus_knot(3, 4).unwrap().c_plus(), 8);
        assert!(torus_knot(3, 4).unwrap().is_knot());
    }

    #[test]
    fn negative_twist_is_mirror() {
        let d = torus_knot(2, -3).unwrap();
        assert_eq!(d.writhe(), -3);
        let r = diagram_report(&d).unwrap();
        assert_eq!((r.s_a, r.s_b), (3, 2));
    }

    #[test]
    fn braid_words() {
        let fig8 = braid_closure(3, &[1, -2, 1, -2]).unwrap();
        assert!(fig8.is_knot());
        assert_eq!((fig8.c_plus(), fig8.c_minus()), (2, 2));
        let hopf = braid_closure(2, &[1, 1]).unwrap();
        assert_eq!(hopf.components(), 2);
        assert_eq!(braid_closure(3, &[1, 2, -3]).unwrap_err(), DiagramError::InvalidParameter("braid generator out of range"));
        assert!(braid_closure(3, &[1, 1]).is_err());
    }

    #[test]
    fn torus_rejects_bad_input() {
        assert_eq!(torus_knot(4, 6).unwrap_err(), DiagramError::NotCoprime { p: 4, q: 6 });
        assert!(torus_knot(1, 3).is_err());
    }

    #[test]
    fn torus_output_reparses() {
        let d = torus_knot(3, 5).unwrap();
        assert_eq!(parse_pd(&d.to_pd_string()).unwrap(), d);
    }

    #[test]
    fn kmn_counts() {
        for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
            let d = kmn_knot(m, n).unwrap();
            assert!(d.is_knot() && d.is_connected());
            let r = diagram_report(&d).unwrap();
            assert_eq!(r.c, 2 * m + 3 + 6 * n);
            assert_eq!(r.c_plus, 2 * m + 3 + 2 * n);
            assert_eq!(r.c_minus, 4 * n);
            assert_eq!((r.s_a, r.s_b), (4, 2 * m + 2 * n + 1));
            assert_eq!(r.g_t_diagram, 2 * n);
        }
    }

    #[test]
    fn kmn_rejects_zero() {
        assert!(kmn_knot(0, 1).is_err());
    }
}
