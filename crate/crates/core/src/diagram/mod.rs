//! Planar diagrams: PD parsing and validation, Kauffman states, crossing
//! signs, and the diagrammatic invariants built from them.
//!
//! A crossing `X[i,j,k,l]` lists its four arcs counterclockwise starting
//! from the incoming under-strand, so `i -> k` is the under-strand. The
//! over-strand runs `l -> j` at a positive crossing and `j -> l` at a
//! negative one:
//!
//! ```text
//!    positive            negative
//!    j     k             j     k
//!     ^   ^               \   ^
//!      \ /                 \ /
//!       /                   \
//!      / \                 / \
//!     /   \               /   v
//!    i     l             i     l
//! ```
//!
//! Which over-end is incoming is found by walking the strands from the
//! under-crossings (every arc has one head and one tail). A strand that never
//! passes under anything falls back to the numbering rule: the over-strand
//! enters at the smaller of two consecutive labels.
//!
//! The A-smoothing (Khovanov 0-smoothing) joins `i-j` and `k-l`; the
//! B-smoothing joins `i-l` and `j-k`.

mod generators;
mod parse;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use petgraph::unionfind::UnionFind;

pub use generators::{braid_closure, kmn_knot, torus_knot};
pub use parse::parse_pd;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramError {
    Syntax { pos: usize, msg: &'static str },
    ArcCount { arc: u32, count: usize },
    ArcGap { arc_count: u32, crossings: usize },
    InconsistentOrientation { arc: u32 },
    StateLength { expected: usize, got: usize },
    NotCoprime { p: i64, q: i64 },
    InvalidParameter(&'static str),
    NotAKnot { components: usize },
    Disconnected,
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::Syntax { pos, msg } => write!(f, "syntax error at offset {}: {}", pos, msg),
            DiagramError::ArcCount { arc, count } => {
                write!(f, "arc {} appears {} times (expected 2)", arc, count)
            }
            DiagramError::ArcGap { arc_count, crossings } => write!(
                f,
                "arc labels must be 1..{} for {} crossings, found largest label {}",
                2 * crossings,
                crossings,
                arc_count
            ),
            DiagramError::InconsistentOrientation { arc } => {
                write!(f, "arc {} cannot be oriented consistently", arc)
            }
            DiagramError::StateLength { expected, got } => {
                write!(f, "state has {} entries, diagram has {} crossings", got, expected)
            }
            DiagramError::NotCoprime { p, q } => write!(f, "({}, {}) are not coprime", p, q),
            DiagramError::InvalidParameter(m) => write!(f, "invalid parameter: {}", m),
            DiagramError::NotAKnot { components } => {
                write!(f, "expected a knot, diagram has {} components", components)
            }
            DiagramError::Disconnected => write!(f, "diagram is not connected"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DiagramError {}

/// A validated planar diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<[u32; 4]>,
    arc_count: u32,
    signs: Vec<i8>,
    components: usize,
    connected: bool,
}

impl PlanarDiagram {
    /// Validates arc labels and orients every strand.
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self, DiagramError> {
        let n = crossings.len();
        let arc_count = crossings.iter().flatten().copied().max().unwrap_or(0);
        let mut count = vec![0usize; arc_count as usize + 1];
        for &a in crossings.iter().flatten() {
            count[a as usize] += 1;
        }
        if count[0] > 0 {
            return Err(DiagramError::ArcCount { arc: 0, count: count[0] });
        }
        for (a, &c) in count.iter().enumerate().skip(1) {
            if c != 2 && c != 0 {
                return Err(DiagramError::ArcCount { arc: a as u32, count: c });
            }
        }
        if arc_count as usize != 2 * n || count.iter().skip(1).any(|&c| c == 0) {
            return Err(DiagramError::ArcGap { arc_count, crossings: n });
        }
        let signs = orient(&crossings)?;

        let mut strands = UnionFind::<usize>::new(arc_count as usize + 1);
        let mut graph = UnionFind::<usize>::new(n.max(1));
        let mut first_seen = vec![usize::MAX; arc_count as usize + 1];
        for (c, x) in crossings.iter().enumerate() {
            strands.union(x[0] as usize, x[2] as usize);
            strands.union(x[1] as usize, x[3] as usize);
            for &a in x {
                match first_seen[a as usize] {
                    usize::MAX => first_seen[a as usize] = c,
                    other => {
                        graph.union(other, c);
                    }
                }
            }
        }
        let components = if n == 0 {
            1
        } else {
            let mut roots: Vec<usize> = (1..=arc_count as usize).map(|a| strands.find_mut(a)).collect();
            roots.sort_unstable();
            roots.dedup();
            roots.len()
        };
        let connected = n == 0 || (0..n).all(|c| graph.equiv(0, c));
        Ok(PlanarDiagram { crossings, arc_count, signs, components, connected })
    }

    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        PlanarDiagram { crossings: Vec::new(), arc_count: 0, signs: Vec::new(), components: 1, connected: true }
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> u32 {
        self.arc_count
    }

    /// +1 or -1 per crossing.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn c_plus(&self) -> usize {
        self.signs.iter().filter(|&&s| s > 0).count()
    }

    pub fn c_minus(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    /// Errors unless this is a one-component diagram.
    pub fn require_knot(&self) -> Result<(), DiagramError> {
        if self.components != 1 {
            return Err(DiagramError::NotAKnot { components: self.components });
        }
        Ok(())
    }

    /// Arc pairs joined by smoothing crossing `c` (A if `b` is false).
    pub fn smoothing(&self, c: usize, b: bool) -> [(u32, u32); 2] {
        let [i, j, k, l] = self.crossings[c];
        if b {
            [(i, l), (j, k)]
        } else {
            [(i, j), (k, l)]
        }
    }

    /// Mirror image: every crossing changes its over/under data.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(&[i, j, k, l], &s)| if s > 0 { [l, i, j, k] } else { [j, k, l, i] })
            .collect();
        PlanarDiagram {
            crossings,
            arc_count: self.arc_count,
            signs: self.signs.iter().map(|s| -s).collect(),
            components: self.components,
            connected: self.connected,
        }
    }

    /// Renders in `PD[X[..],..]` form.
    pub fn to_pd_string(&self) -> alloc::string::String {
        use alloc::string::String;
        use core::fmt::Write;
        let mut s = String::from("PD[");
        for (n, x) in self.crossings.iter().enumerate() {
            if n > 0 {
                s.push(',');
            }
            let _ = write!(s, "X[{},{},{},{}]", x[0], x[1], x[2], x[3]);
        }
        s.push(']');
        s
    }
}

/// Orients every crossing end and returns crossing signs.
fn orient(crossings: &[[u32; 4]]) -> Result<Vec<i8>, DiagramError> {
    // role: 0 unknown, 1 incoming, 2 outgoing
    let n = crossings.len();
    let arcs = 2 * n + 1;
    let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); arcs];
    for (c, x) in crossings.iter().enumerate() {
        for (p, &a) in x.iter().enumerate() {
            ends[a as usize].push((c, p));
        }
    }
    let mut role = vec![[0u8; 4]; n];
    let mut stack = Vec::new();
    for (c, r) in role.iter_mut().enumerate() {
        r[0] = 1;
        r[2] = 2;
        stack.push((c, 0));
        stack.push((c, 2));
    }
    let flip = |r: u8| 3 - r;
    let propagate = |role: &mut Vec<[u8; 4]>, stack: &mut Vec<(usize, usize)>| -> Result<(), DiagramError> {
        while let Some((c, p)) = stack.pop() {
            let r = role[c][p];
            let q = (p + 2) % 4;
            match role[c][q] {
                0 => {
                    role[c][q] = flip(r);
                    stack.push((c, q));
                }
                x if x == r => {
                    return Err(DiagramError::InconsistentOrientation { arc: crossings[c][q] });
                }
                _ => {}
            }
            let a = crossings[c][p] as usize;
            for &(c2, p2) in &ends[a] {
                if (c2, p2) == (c, p) {
                    continue;
                }
                match role[c2][p2] {
                    0 => {
                        role[c2][p2] = flip(r);
                        stack.push((c2, p2));
                    }
                    x if x == r => return Err(DiagramError::InconsistentOrientation { arc: a as u32 }),
                    _ => {}
                }
            }
        }
        Ok(())
    };
    propagate(&mut role, &mut stack)?;
    for c in 0..n {
        if role[c][1] == 0 {
            let [_, j, _, l] = crossings[c];
            let l_in = if j == l + 1 {
                true
            } else if l == j + 1 {
                false
            } else {
                l > j
            };
            role[c][3] = if l_in { 1 } else { 2 };
            stack.push((c, 3));
            propagate(&mut role, &mut stack)?;
        }
    }
    Ok(role.iter().map(|r| if r[3] == 1 { 1 } else { -1 }).collect())
}

/// One smoothing choice per crossing; `true` is the B-smoothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KauffmanState(pub Vec<bool>);

impl KauffmanState {
    pub fn all_a(n: usize) -> Self {
        KauffmanState(vec![false; n])
    }

    pub fn all_b(n: usize) -> Self {
        KauffmanState(vec![true; n])
    }

    /// Bit `c` of `mask` selects the smoothing at crossing `c`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        KauffmanState((0..n).map(|c| mask >> c & 1 == 1).collect())
    }
}

/// Number of circles after smoothing every crossing as `s` says.
pub fn resolve(d: &PlanarDiagram, s: &KauffmanState) -> Result<usize, DiagramError> {
    if s.0.len() != d.crossing_count() {
        return Err(DiagramError::StateLength { expected: d.crossing_count(), got: s.0.len() });
    }
    if d.crossing_count() == 0 {
        return Ok(1);
    }
    let mut uf = UnionFind::<usize>::new(d.arc_count as usize + 1);
    for (c, &b) in s.0.iter().enumerate() {
        for (x, y) in d.smoothing(c, b) {
            uf.union(x as usize, y as usize);
        }
    }
    let mut roots: Vec<usize> = (1..=d.arc_count as usize).map(|a| uf.find_mut(a)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

/// Counts read off a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub c: usize,
    pub c_plus: usize,
    pub c_minus: usize,
    pub s_a: usize,
    pub s_b: usize,
    pub writhe: i64,
    pub g_t_diagram: usize,
    /// Signature bounds `s_A - c_+ - 1 <= sigma <= -s_B + c_- + 1`; absent
    /// for links.
    pub sigma_lower: Option<i64>,
    pub sigma_upper: Option<i64>,
}

pub fn diagram_report(d: &PlanarDiagram) -> Result<DiagramReport, DiagramError> {
    if !d.is_connected() {
        return Err(DiagramError::Disconnected);
    }
    let n = d.crossing_count();
    let s_a = resolve(d, &KauffmanState::all_a(n))?;
    let s_b = resolve(d, &KauffmanState::all_b(n))?;
    let twice = 2 + n as i64 - s_a as i64 - s_b as i64;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    let (c_plus, c_minus) = (d.c_plus(), d.c_minus());
    let knot = d.is_knot();
    Ok(DiagramReport {
        c: n,
        c_plus,
        c_minus,
        s_a,
        s_b,
        writhe: d.writhe(),
        g_t_diagram: (twice / 2) as usize,
        sigma_lower: knot.then(|| s_a as i64 - c_plus as i64 - 1),
        sigma_upper: knot.then(|| c_minus as i64 + 1 - s_b as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn right_trefoil() -> PlanarDiagram {
        parse_pd("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]").unwrap()
    }

    #[test]
    fn trefoil_signs_and_states() {
        let d = right_trefoil();
        assert_eq!(d.signs(), &[1, 1, 1]);
        assert_eq!(d.writhe(), 3);
        assert!(d.is_knot() && d.is_connected());
        assert_eq!(resolve(&d, &KauffmanState::all_a(3)).unwrap(), 2);
        assert_eq!(resolve(&d, &KauffmanState::all_b(3)).unwrap(), 3);
    }

    #[test]
    fn left_trefoil_from_standard_code() {
        let d = parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").unwrap();
        assert_eq!(d.arc_count(), 6);
        assert_eq!(d.writhe(), -3);
        assert_eq!(resolve(&d, &KauffmanState::all_a(3)).unwrap(), 3);
        assert_eq!(resolve(&d, &KauffmanState::all_b(3)).unwrap(), 2);
    }

    #[test]
    fn report_of_trefoil() {
        let r = diagram_report(&right_trefoil()).unwrap();
        assert_eq!(r.g_t_diagram, 0);
        assert_eq!((r.sigma_lower, r.sigma_upper), (Some(-2), Some(-2)));
        assert_eq!(r.c, r.c_plus + r.c_minus);
    }

    #[test]
    fn empty_diagram() {
        let d = parse_pd("PD[]").unwrap();
        assert_eq!(d, PlanarDiagram::unknot());
        assert_eq!(resolve(&d, &KauffmanState(Vec::new())).unwrap(), 1);
        let r = diagram_report(&d).unwrap();
        assert_eq!((r.s_a, r.s_b, r.g_t_diagram), (1, 1, 0));
        assert_eq!(d.mirror(), d);
    }

    #[test]
    fn kink_is_valid() {
        let d = parse_pd("PD[X(1,1,2,2)]").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert!(d.is_knot());
        let r = diagram_report(&d).unwrap();
        assert_eq!(r.s_a + r.s_b, 3);
    }

    #[test]
    fn arc_errors() {
        assert_eq!(
            parse_pd("PD[X(1,2,3,1)]").unwrap_err(),
            DiagramError::ArcCount { arc: 2, count: 1 }
        );
        assert!(matches!(parse_pd("PD[X(1,1,4,4)]").unwrap_err(), DiagramError::ArcGap { .. }));
    }

    #[test]
    fn state_length_checked() {
        let d = right_trefoil();
        assert_eq!(
            resolve(&d, &KauffmanState::all_a(2)),
            Err(DiagramError::StateLength { expected: 3, got: 2 })
        );
    }

    #[test]
    fn mirror_swaps_data() {
        let d = right_trefoil();
        let m = d.mirror();
        assert_eq!(m.writhe(), -3);
        let (r, rm) = (diagram_report(&d).unwrap(), diagram_report(&m).unwrap());
        assert_eq!((r.s_a, r.s_b), (rm.s_b, rm.s_a));
        assert_eq!(r.g_t_diagram, rm.g_t_diagram);
        assert_eq!(m.mirror(), d);
    }

    #[test]
    fn hopf_link_is_flagged() {
        let d = parse_pd("PD[X[4,1,3,2],X[2,3,1,4]]").unwrap();
        assert_eq!(d.components(), 2);
        assert!(d.require_knot().is_err());
        let r = diagram_report(&d).unwrap();
        assert_eq!(r.sigma_lower, None);
    }
}
