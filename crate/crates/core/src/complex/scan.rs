//! Crossing-by-crossing construction with delooping and cancellation.
//!
//! One arc is cut at a basepoint, so the scan produces a complex over the
//! 1-1 tangle; its closure is the unreduced complex and, for the
//! undeformed and Lee theories, its endomorphism ring `F[X]` gives the
//! reduced complex.

use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::algebra::Field;
use crate::diagram::PlanarDiagram;
use crate::frobenius::FrobeniusSystem;

use super::engine::Reducer;
use super::tangle::{cycles, evaluate, mor_add, Algebra, Elt, Matchings, Mor, Surface, Topo};
use super::{ComplexError, DeformationKind, GradedComplex, Provenance, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanProgress {
    pub step: usize,
    pub total: usize,
    pub boundary: usize,
    pub objects: usize,
    pub entries: usize,
}

pub struct ScanOptions<'a> {
    /// Largest number of objects allowed right after tensoring a crossing.
    pub max_objects: usize,
    pub progress: Option<&'a mut dyn FnMut(&ScanProgress)>,
}

impl Default for ScanOptions<'_> {
    fn default() -> Self {
        ScanOptions { max_objects: 20_000_000, progress: None }
    }
}

pub struct ScanOutput<F: Field> {
    pub unreduced: GradedComplex<F>,
    /// Over `F[X]` with `step = 2`; absent for Bar-Natan.
    pub reduced: Option<GradedComplex<F>>,
}

const MAX_BOUNDARY: usize = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Glue {
    Old(u8),
    Port(u8),
    New(u8),
}

#[derive(Clone, Copy, Debug)]
enum Seg {
    Old(u8),
    Port(u8),
}

struct GlueInfo {
    mat: u32,
    loops: Vec<Seg>,
}

const PARTNER: [[usize; 4]; 2] = [[1, 0, 3, 2], [3, 2, 1, 0]];
const STRIP: [[usize; 4]; 2] = [[0, 0, 1, 1], [0, 1, 1, 0]];

/// Layout of the pieces of a tensored or saddle cobordism.
struct Pieces {
    piece_comp: Vec<u8>,
    topo: Topo,
    ncyc: usize,
    cups: usize,
    caps: usize,
}

impl Pieces {
    fn polys<F: Field>(&self, h: &F, mask: u32, cup_bits: u32, cap_bits: u32, ncups: usize, ncaps: usize, alg: &Algebra<F>) -> Vec<Elt<F>> {
        let ncomp = self.topo.genus.len();
        let mut p: Vec<Elt<F>> = vec![(F::one(), F::zero()); ncomp];
        let x = (F::zero(), F::one());
        let x_minus_h = (h.neg(), F::one());
        for k in 0..self.ncyc {
            if mask >> k & 1 == 1 {
                let c = self.piece_comp[k] as usize;
                p[c] = alg.mul(&p[c], &x);
            }
        }
        for l in 0..ncups {
            if cup_bits >> l & 1 == 1 {
                let c = self.piece_comp[self.cups + l] as usize;
                p[c] = alg.mul(&p[c], &x);
            }
        }
        for l in 0..ncaps {
            if cap_bits >> l & 1 == 0 {
                let c = self.piece_comp[self.caps + l] as usize;
                p[c] = alg.mul(&p[c], &x_minus_h);
            }
        }
        p
    }
}

struct Step<'a> {
    old_len: usize,
    port_glue: [Glue; 4],
    /// Old position -> gluing port.
    old_glue: Vec<Option<u8>>,
    /// New position -> its node on the source side.
    new_seg: Vec<Seg>,
    mats: &'a mut Matchings,
    glue_cache: HashMap<(u32, u8), Rc<GlueInfo>>,
    tensor_cache: HashMap<(u32, u32, u8), Rc<Pieces>>,
    saddle_cache: HashMap<u32, Rc<Pieces>>,
}

impl Step<'_> {
    fn internal(&self, m: &[u8], s: usize, node: usize) -> usize {
        if node < self.old_len {
            m[node] as usize
        } else {
            self.old_len + PARTNER[s][node - self.old_len]
        }
    }

    fn glue(&self, node: usize) -> Option<usize> {
        if node < self.old_len {
            self.old_glue[node].map(|r| self.old_len + r as usize)
        } else {
            match self.port_glue[node - self.old_len] {
                Glue::Old(p) => Some(p as usize),
                Glue::Port(r) => Some(self.old_len + r as usize),
                Glue::New(_) => None,
            }
        }
    }

    fn new_pos(&self, node: usize) -> usize {
        if node < self.old_len {
            let mut n = 0;
            for p in 0..node {
                if self.old_glue[p].is_none() {
                    n += 1;
                }
            }
            n
        } else {
            match self.port_glue[node - self.old_len] {
                Glue::New(n) => n as usize,
                _ => unreachable!("glued port is not on the boundary"),
            }
        }
    }

    fn seg_node(&self, s: Seg) -> usize {
        match s {
            Seg::Old(p) => p as usize,
            Seg::Port(r) => self.old_len + r as usize,
        }
    }

    fn glue_info(&mut self, mat: u32, s: usize) -> Rc<GlueInfo> {
        if let Some(g) = self.glue_cache.get(&(mat, s as u8)) {
            return g.clone();
        }
        let m = self.mats.get(mat).to_vec();
        let nodes = self.old_len + 4;
        let mut seen = vec![false; nodes];
        let new_len = self.new_seg.len();
        let mut partner = vec![0u8; new_len];
        for n in 0..new_len {
            let start = self.seg_node(self.new_seg[n]);
            if seen[start] {
                continue;
            }
            let mut cur = start;
            let end = loop {
                let nxt = self.internal(&m, s, cur);
                seen[cur] = true;
                seen[nxt] = true;
                match self.glue(nxt) {
                    None => break nxt,
                    Some(g) => cur = g,
                }
            };
            let e = self.new_pos(end);
            partner[n] = e as u8;
            partner[e] = n as u8;
        }
        let mut loops = Vec::new();
        for node in 0..nodes {
            if seen[node] {
                continue;
            }
            loops.push(if node < self.old_len { Seg::Old(node as u8) } else { Seg::Port((node - self.old_len) as u8) });
            let mut cur = node;
            loop {
                let nxt = self.internal(&m, s, cur);
                seen[cur] = true;
                seen[nxt] = true;
                let g = self.glue(nxt).expect("closed loop");
                if g == node {
                    break;
                }
                cur = g;
            }
        }
        let info = Rc::new(GlueInfo { mat: self.mats.intern(partner), loops });
        self.glue_cache.insert((mat, s as u8), info.clone());
        info
    }

    fn extras(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for r in 0..4 {
            if let Glue::Port(q) = self.port_glue[r] {
                if r < q as usize {
                    e.push((r, q as usize));
                }
            }
        }
        e
    }

    /// `f (x) id` on the smoothing `s`, from `M` to `N`.
    fn tensor(&mut self, a: u32, b: u32, s: usize) -> Rc<Pieces> {
        if let Some(p) = self.tensor_cache.get(&(a, b, s as u8)) {
            return p.clone();
        }
        let (ga, gb) = (self.glue_info(a, s), self.glue_info(b, s));
        let (cyc, n1) = cycles(self.mats.get(a), self.mats.get(b));
        let mut sf = Surface::new(n1 + 2);
        let strip = |r: usize| n1 + STRIP[s][r];
        let piece_of = |seg: Seg| match seg {
            Seg::Old(p) => cyc[p as usize] as usize,
            Seg::Port(r) => strip(r as usize),
        };
        for r in 0..4 {
            if let Glue::Old(p) = self.port_glue[r] {
                sf.interval(cyc[p as usize] as usize, strip(r));
            }
        }
        for (r, q) in self.extras() {
            let e = sf.add_piece();
            sf.interval(e, strip(r));
            sf.interval(e, strip(q));
        }
        let cups = n1 + 2 + self.extras().len();
        for &seg in &ga.loops {
            let c = sf.add_piece();
            sf.circle(c, piece_of(seg));
        }
        let caps = cups + ga.loops.len();
        for &seg in &gb.loops {
            let c = sf.add_piece();
            sf.circle(c, piece_of(seg));
        }
        let (fc, nf) = cycles(self.mats.get(ga.mat), self.mats.get(gb.mat));
        let mut final_piece = vec![usize::MAX; nf];
        for (n, &f) in fc.iter().enumerate() {
            if final_piece[f as usize] == usize::MAX {
                final_piece[f as usize] = piece_of(self.new_seg[n]);
            }
        }
        let (piece_comp, topo) = sf.finish(&final_piece);
        let p = Rc::new(Pieces { piece_comp, topo, ncyc: n1, cups, caps });
        self.tensor_cache.insert((a, b, s as u8), p.clone());
        p
    }

    /// The saddle from the 0- to the 1-smoothing next to `M`.
    fn saddle(&mut self, a: u32) -> Rc<Pieces> {
        if let Some(p) = self.saddle_cache.get(&a) {
            return p.clone();
        }
        let (g0, g1) = (self.glue_info(a, 0), self.glue_info(a, 1));
        let m = self.mats.get(a).to_vec();
        let mut arc = vec![0usize; m.len()];
        let mut arcs = 0;
        for p in 0..m.len() {
            if p < m[p] as usize {
                arc[p] = arcs;
                arc[m[p] as usize] = arcs;
                arcs += 1;
            }
        }
        let saddle = arcs;
        let mut sf = Surface::new(arcs + 1);
        let piece_of = |seg: Seg| match seg {
            Seg::Old(p) => arc[p as usize],
            Seg::Port(_) => saddle,
        };
        for r in 0..4 {
            if let Glue::Old(p) = self.port_glue[r] {
                sf.interval(arc[p as usize], saddle);
            }
        }
        for _ in self.extras() {
            let e = sf.add_piece();
            sf.interval(e, saddle);
            sf.interval(e, saddle);
        }
        let cups = arcs + 1 + self.extras().len();
        for &seg in &g0.loops {
            let c = sf.add_piece();
            sf.circle(c, piece_of(seg));
        }
        let caps = cups + g0.loops.len();
        for &seg in &g1.loops {
            let c = sf.add_piece();
            sf.circle(c, piece_of(seg));
        }
        let (fc, nf) = cycles(self.mats.get(g0.mat), self.mats.get(g1.mat));
        let mut final_piece = vec![usize::MAX; nf];
        for (n, &f) in fc.iter().enumerate() {
            if final_piece[f as usize] == usize::MAX {
                final_piece[f as usize] = piece_of(self.new_seg[n]);
            }
        }
        let (piece_comp, topo) = sf.finish(&final_piece);
        let p = Rc::new(Pieces { piece_comp, topo, ncyc: 0, cups, caps });
        self.saddle_cache.insert(a, p.clone());
        p
    }
}

/// Greedy order: next is the crossing leaving the smallest open boundary.
fn next_crossing(crossings: &[[u32; 4]], done: &[bool], bnd: &[u32]) -> usize {
    let mut best = (usize::MAX, usize::MAX);
    for (c, x) in crossings.iter().enumerate() {
        if done[c] {
            continue;
        }
        let mut size = bnd.len() as isize;
        for (r, a) in x.iter().enumerate() {
            if bnd.contains(a) {
                size -= 1;
            } else if !x.iter().enumerate().any(|(q, b)| q != r && b == a) {
                size += 1;
            }
        }
        if (size as usize, c) < best {
            best = (size as usize, c);
        }
    }
    best.1
}

fn tangle_scan<F: Field>(d: &PlanarDiagram, th: &Theory<F>, opts: &mut ScanOptions<'_>) -> Result<Reducer<F>, ComplexError> {
    let mut crossings: Vec<[u32; 4]> = d.crossings().to_vec();
    let total = crossings.len();
    // cut the first arc of crossing 0 at a basepoint
    let cut = crossings[0][0];
    let fresh = d.arc_count() + 1;
    'outer: for (c, x) in crossings.iter_mut().enumerate() {
        for (r, a) in x.iter_mut().enumerate() {
            if (c, r) != (0, 0) && *a == cut {
                *a = fresh;
                break 'outer;
            }
        }
    }
    let mut mats = Matchings::default();
    let empty = mats.intern(Vec::new());
    let mut red = Reducer::new(Matchings::default(), Algebra::new(th));
    red.add_obj(empty, 0, 0, Provenance::Scan { index: 0 });
    let mut bnd: Vec<u32> = Vec::new();
    let mut done = vec![false; total];
    for step in 0..total {
        let c = next_crossing(&crossings, &done, &bnd);
        done[c] = true;
        let x = crossings[c];
        let old_len = bnd.len();
        let mut port_glue = [Glue::New(0); 4];
        let mut old_glue = vec![None; old_len];
        for r in 0..4 {
            if let Some(p) = bnd.iter().position(|&a| a == x[r]) {
                port_glue[r] = Glue::Old(p as u8);
                old_glue[p] = Some(r as u8);
            } else if let Some(q) = (0..4).find(|&q| q != r && x[q] == x[r]) {
                port_glue[r] = Glue::Port(q as u8);
            }
        }
        let mut new_bnd = Vec::new();
        let mut new_seg = Vec::new();
        for p in 0..old_len {
            if old_glue[p].is_none() {
                new_bnd.push(bnd[p]);
                new_seg.push(Seg::Old(p as u8));
            }
        }
        for r in 0..4 {
            if port_glue[r] == Glue::New(0) {
                port_glue[r] = Glue::New(new_bnd.len() as u8);
                new_bnd.push(x[r]);
                new_seg.push(Seg::Port(r as u8));
            }
        }
        if new_bnd.len() > MAX_BOUNDARY {
            return Err(ComplexError::ResourceCap { step, total, objects: red.alive_count() });
        }
        let mut st = Step {
            old_len,
            port_glue,
            old_glue,
            new_seg,
            mats: &mut mats,
            glue_cache: HashMap::new(),
            tensor_cache: HashMap::new(),
            saddle_cache: HashMap::new(),
        };
        let mut next = Reducer::new(Matchings::default(), Algebra::new(th));
        let mut base = vec![[0u32; 2]; red.objs.len()];
        let mut count = 0usize;
        for (o, ob) in red.objs.iter().enumerate() {
            if !ob.alive {
                continue;
            }
            for s in 0..2 {
                let g = st.glue_info(ob.mat, s);
                let nl = g.loops.len();
                for beta in 0..1u32 << nl {
                    let shift = nl as i32 - 2 * beta.count_ones() as i32;
                    let k = next.add_obj(g.mat, ob.h + s as i32, ob.q + s as i32 + shift, Provenance::Scan { index: count as u32 });
                    count += 1;
                    if beta == 0 {
                        base[o][s] = k;
                    }
                }
            }
        }
        if count > opts.max_objects {
            return Err(ComplexError::ResourceCap { step, total, objects: count });
        }
        let h = th.h.clone();
        for o1 in 0..red.objs.len() {
            if !red.objs[o1].alive {
                continue;
            }
            let m1 = red.objs[o1].mat;
            let mut targets: Vec<(&u32, &Mor<F>)> = red.out[o1].iter().collect();
            targets.sort_unstable_by_key(|e| *e.0);
            for s in 0..2 {
                let l1 = st.glue_info(m1, s).loops.len();
                for &(&o2, f) in &targets {
                    let m2 = red.objs[o2 as usize].mat;
                    let l2 = st.glue_info(m2, s).loops.len();
                    let pcs = st.tensor(m1, m2, s);
                    for b1 in 0..1u32 << l1 {
                        for b2 in 0..1u32 << l2 {
                            let mut acc: Mor<F> = Vec::new();
                            for (mask, cf) in f {
                                let polys = pcs.polys(&h, *mask, b1, b2, l1, l2, &red.alg);
                                for (m, v) in evaluate(&mut red.alg, &pcs.topo, &polys) {
                                    mor_add(&mut acc, m, &v.mul(cf));
                                }
                            }
                            next.add_entry(base[o1][s] + b1, base[o2 as usize][s] + b2, &acc);
                        }
                    }
                }
            }
            let sign = if red.objs[o1].h % 2 == 0 { F::one() } else { F::one().neg() };
            let (l0, l1) = (st.glue_info(m1, 0).loops.len(), st.glue_info(m1, 1).loops.len());
            let pcs = st.saddle(m1);
            for b0 in 0..1u32 << l0 {
                for b1 in 0..1u32 << l1 {
                    let polys = pcs.polys(&h, 0, b0, b1, l0, l1, &red.alg);
                    let mut v = evaluate(&mut red.alg, &pcs.topo, &polys);
                    for e in v.iter_mut() {
                        e.1 = e.1.mul(&sign);
                    }
                    next.add_entry(base[o1][0] + b0, base[o1][1] + b1, &v);
                }
            }
        }
        drop(st);
        next.mats = core::mem::take(&mut mats);
        next.reduce();
        mats = core::mem::take(&mut next.mats);
        bnd = new_bnd;
        red = next;
        let progress = ScanProgress {
            step: step + 1,
            total,
            boundary: bnd.len(),
            objects: red.alive_count(),
            entries: red.entry_count(),
        };
        log::debug!("scan {}/{}: boundary {}, {} objects", progress.step, total, progress.boundary, progress.objects);
        if let Some(cb) = opts.progress.as_mut() {
            cb(&progress);
        }
    }
    red.mats = mats;
    Ok(red)
}

/// Both the unreduced complex and, when defined, the reduced one.
pub fn scan_build_pair<F: Field>(
    d: &PlanarDiagram,
    sys: &FrobeniusSystem,
    def: DeformationKind,
    opts: &mut ScanOptions<'_>,
) -> Result<ScanOutput<F>, ComplexError> {
    let th = Theory::<F>::new(sys, def)?;
    scan_with(d, &th, opts)
}

/// The unreduced complex, built by scanning.
pub fn scan_build<F: Field>(
    d: &PlanarDiagram,
    sys: &FrobeniusSystem,
    def: DeformationKind,
    opts: &mut ScanOptions<'_>,
) -> Result<GradedComplex<F>, ComplexError> {
    Ok(scan_build_pair(d, sys, def, opts)?.unreduced)
}

pub(crate) fn scan_with<F: Field>(d: &PlanarDiagram, th: &Theory<F>, opts: &mut ScanOptions<'_>) -> Result<ScanOutput<F>, ComplexError> {
    let (np, nm) = (d.c_plus() as i32, d.c_minus() as i32);
    let shift = (-nm, np - 2 * nm);
    let mut arc = Matchings::default();
    let two = arc.intern(vec![1, 0]);
    let red = if d.crossing_count() == 0 {
        let mut r = Reducer::new(arc, Algebra::new(th));
        r.add_obj(two, 0, 0, Provenance::Scan { index: 0 });
        r
    } else {
        tangle_scan(d, th, opts)?
    };
    let reduced = match th.kind {
        DeformationKind::BarNatan => None,
        _ => {
            let mut bad = false;
            let c = red.into_complex_with(th.kind, 2, shift, |m| {
                bad |= m.len() > 1;
                m[0].1.clone()
            });
            if bad {
                return Err(ComplexError::Invariant("reduced entry mixes 1 and X".into()));
            }
            Some(c)
        }
    };
    // close the cut arc: O becomes O{+1} + O{-1}
    let mut mats = Matchings::default();
    let empty = mats.intern(Vec::new());
    let mut closed = Reducer::new(mats, Algebra::new(th));
    let mut base = vec![0u32; red.objs.len()];
    for (o, ob) in red.objs.iter().enumerate() {
        if ob.alive {
            base[o] = closed.add_obj(empty, ob.h, ob.q + 1, Provenance::Closed { index: o as u32, dotted: false });
            closed.add_obj(empty, ob.h, ob.q - 1, Provenance::Closed { index: o as u32, dotted: true });
        }
    }
    for (o, ob) in red.objs.iter().enumerate() {
        if !ob.alive {
            continue;
        }
        for (&t, m) in &red.out[o] {
            let mut c = [F::zero(), F::zero()];
            for (mask, v) in m {
                c[*mask as usize] = v.clone();
            }
            let (p, q) = (base[o], base[t as usize]);
            let entries = [
                (p, q, c[0].clone()),
                (p, q + 1, c[1].clone()),
                (p + 1, q, c[1].mul(&th.t)),
                (p + 1, q + 1, c[0].add(&c[1].mul(&th.h))),
            ];
            for (s, t, v) in entries {
                closed.add_entry(s, t, &vec![(0, v)]);
            }
        }
    }
    closed.reduce();
    let unreduced = closed.into_complex_with(th.kind, th.step(), shift, |m| m[0].1.clone());
    Ok(ScanOutput { unreduced, reduced })
}
