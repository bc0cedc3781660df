//! Crossingless matchings and dotted cobordisms between them.
//!
//! A morphism `M -> N` is a linear combination of surfaces made of one disk
//! per cycle of `M ∪ N`, each disk with at most one dot; a term is stored as
//! a bitmask over those cycles (cycles ordered by smallest boundary point).
//! Gluing pieces is evaluated with the Frobenius algebra: every connected
//! component with `b` boundary cycles, genus `g` and `k` dots becomes
//! `Delta^(b)(X^k H^g)` (or `eps(X^k H^g)` when closed), `H = 2X - h`.

use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::algebra::Field;

use super::Theory;

pub(crate) type Mor<F> = Vec<(u32, F)>;

/// Adds `c * term` into a mask-sorted morphism.
pub(crate) fn mor_add<F: Field>(m: &mut Mor<F>, mask: u32, c: &F) {
    if c.is_zero() {
        return;
    }
    match m.binary_search_by_key(&mask, |e| e.0) {
        Ok(k) => {
            let v = m[k].1.add(c);
            if v.is_zero() {
                m.remove(k);
            } else {
                m[k].1 = v;
            }
        }
        Err(k) => m.insert(k, (mask, c.clone())),
    }
}

pub(crate) fn mor_scale<F: Field>(m: &Mor<F>, c: &F) -> Mor<F> {
    m.iter().map(|(k, v)| (*k, v.mul(c))).filter(|e| !e.1.is_zero()).collect()
}

/// Interned matchings: `partner[p]` for each boundary point `p`.
#[derive(Default)]
pub(crate) struct Matchings {
    list: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, u32>,
}

impl Matchings {
    pub fn intern(&mut self, m: Vec<u8>) -> u32 {
        if let Some(&k) = self.index.get(&m) {
            return k;
        }
        let k = self.list.len() as u32;
        self.list.push(m.clone());
        self.index.insert(m, k);
        k
    }

    pub fn get(&self, k: u32) -> &[u8] {
        &self.list[k as usize]
    }
}

/// Cycles of `a ∪ b`: the cycle of each point and the count.
pub(crate) fn cycles(a: &[u8], b: &[u8]) -> (Vec<u8>, usize) {
    let mut cyc = vec![u8::MAX; a.len()];
    let mut n = 0;
    for s in 0..a.len() {
        if cyc[s] != u8::MAX {
            continue;
        }
        let mut p = s;
        loop {
            cyc[p] = n as u8;
            let q = a[p] as usize;
            cyc[q] = n as u8;
            p = b[q] as usize;
            if p == s {
                break;
            }
        }
        n += 1;
    }
    (cyc, n)
}

/// Elements `a + bX` of `F[X]/(X^2 - hX - t)`.
pub(crate) type Elt<F> = (F, F);

pub(crate) struct Algebra<F: Field> {
    h: F,
    t: F,
    xpow: Vec<Elt<F>>,
    hpow: Vec<Elt<F>>,
    /// `Delta^(b)(1)` and `Delta^(b)(X)` for `b = 1, 2, ...`.
    delta: Vec<[Mor<F>; 2]>,
}

impl<F: Field> Algebra<F> {
    pub fn new(th: &Theory<F>) -> Self {
        let mut a = Algebra { h: th.h.clone(), t: th.t.clone(), xpow: Vec::new(), hpow: Vec::new(), delta: Vec::new() };
        a.xpow.push((F::one(), F::zero()));
        a.hpow.push((F::one(), F::zero()));
        a.delta.push([vec![(0, F::one())], vec![(1, F::one())]]);
        a
    }

    pub fn mul(&self, a: &Elt<F>, b: &Elt<F>) -> Elt<F> {
        let bd = a.1.mul(&b.1);
        (a.0.mul(&b.0).add(&bd.mul(&self.t)), a.0.mul(&b.1).add(&a.1.mul(&b.0)).add(&bd.mul(&self.h)))
    }

    pub fn x_pow(&mut self, k: usize) -> Elt<F> {
        while self.xpow.len() <= k {
            let next = self.mul(self.xpow.last().unwrap(), &(F::zero(), F::one()));
            self.xpow.push(next);
        }
        self.xpow[k].clone()
    }

    pub fn handle_pow(&mut self, g: usize) -> Elt<F> {
        let handle = (self.h.neg(), F::from_i64(2));
        while self.hpow.len() <= g {
            let next = self.mul(self.hpow.last().unwrap(), &handle);
            self.hpow.push(next);
        }
        self.hpow[g].clone()
    }

    fn delta(&mut self, b: usize) -> &[Mor<F>; 2] {
        while self.delta.len() < b {
            let n = self.delta.len();
            let prev = &self.delta[n - 1];
            let mut next: [Mor<F>; 2] = [Vec::new(), Vec::new()];
            let high = 1u32 << (n - 1);
            let new = 1u32 << n;
            for (which, terms) in prev.iter().enumerate() {
                for (mask, c) in terms {
                    let rest = mask & !high;
                    if mask & high == 0 {
                        // 1 -> 1(x)X + X(x)1 - h 1(x)1
                        mor_add(&mut next[which], rest | new, c);
                        mor_add(&mut next[which], rest | high, c);
                        mor_add(&mut next[which], rest, &c.mul(&self.h).neg());
                    } else {
                        // X -> X(x)X + t 1(x)1
                        mor_add(&mut next[which], rest | high | new, c);
                        mor_add(&mut next[which], rest, &c.mul(&self.t));
                    }
                }
            }
            self.delta.push(next);
        }
        &self.delta[b - 1]
    }
}

/// Connected components of a glued surface.
pub(crate) struct Topo {
    pub genus: Vec<u8>,
    /// Final boundary cycles on each component, increasing.
    pub finals: Vec<Vec<u8>>,
}

/// Union-find bookkeeping for assembling a surface from disks.
pub(crate) struct Surface {
    parent: Vec<usize>,
    seams: Vec<usize>,
}

impl Surface {
    pub fn new(pieces: usize) -> Self {
        Surface { parent: (0..pieces).collect(), seams: vec![0; pieces] }
    }

    pub fn add_piece(&mut self) -> usize {
        let k = self.parent.len();
        self.parent.push(k);
        self.seams.push(0);
        k
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
            self.seams[lo] += self.seams[hi];
        }
        self.find(a)
    }

    /// Glues along an interval (Euler characteristic drops by one).
    pub fn interval(&mut self, a: usize, b: usize) {
        let r = self.union(a, b);
        self.seams[r] += 1;
    }

    /// Glues along a circle (Euler characteristic unchanged).
    pub fn circle(&mut self, a: usize, b: usize) {
        self.union(a, b);
    }

    /// Components, the component of every piece, and the topology given the
    /// piece carrying each final boundary cycle.
    pub fn finish(mut self, final_piece: &[usize]) -> (Vec<u8>, Topo) {
        let n = self.parent.len();
        let mut comp_of_root = vec![usize::MAX; n];
        let mut piece_comp = vec![0u8; n];
        let mut pieces_in = Vec::new();
        let mut seams_in = Vec::new();
        for p in 0..n {
            let r = self.find(p);
            if comp_of_root[r] == usize::MAX {
                comp_of_root[r] = pieces_in.len();
                pieces_in.push(0i64);
                seams_in.push(self.seams[r] as i64);
            }
            piece_comp[p] = comp_of_root[r] as u8;
            pieces_in[comp_of_root[r]] += 1;
        }
        let mut finals = vec![Vec::new(); pieces_in.len()];
        for (f, &p) in final_piece.iter().enumerate() {
            finals[piece_comp[p] as usize].push(f as u8);
        }
        let genus = (0..pieces_in.len())
            .map(|c| {
                let chi = pieces_in[c] - seams_in[c];
                let twice = 2 - chi - finals[c].len() as i64;
                debug_assert!(twice >= 0 && twice % 2 == 0, "bad surface");
                (twice / 2) as u8
            })
            .collect();
        (piece_comp, Topo { genus, finals })
    }
}

/// Evaluates a surface whose components carry the given dot polynomials.
pub(crate) fn evaluate<F: Field>(alg: &mut Algebra<F>, topo: &Topo, polys: &[Elt<F>]) -> Mor<F> {
    let mut out: Mor<F> = vec![(0, F::one())];
    for (c, poly) in polys.iter().enumerate() {
        let hp = alg.handle_pow(topo.genus[c] as usize);
        let p = alg.mul(poly, &hp);
        let finals = &topo.finals[c];
        if finals.is_empty() {
            if p.1.is_zero() {
                return Vec::new();
            }
            for e in out.iter_mut() {
                e.1 = e.1.mul(&p.1);
            }
            continue;
        }
        let [d1, dx] = alg.delta(finals.len());
        let mut local: Mor<F> = Vec::new();
        for (coef, terms) in [(&p.0, d1), (&p.1, dx)] {
            if coef.is_zero() {
                continue;
            }
            for (m, v) in terms {
                let mut spread = 0u32;
                for (k, &f) in finals.iter().enumerate() {
                    if m >> k & 1 == 1 {
                        spread |= 1 << f;
                    }
                }
                mor_add(&mut local, spread, &v.mul(coef));
            }
        }
        if local.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(out.len() * local.len());
        for (m1, v1) in &out {
            for (m2, v2) in &local {
                next.push((m1 | m2, v1.mul(v2)));
            }
        }
        next.sort_by_key(|e| e.0);
        out = next;
    }
    out
}

/// Topology of `N o M` for `M: A -> B`, `N: B -> C`.
pub(crate) struct Composite {
    topo: Topo,
    mask_first: Vec<u32>,
    mask_second: Vec<u32>,
}

impl Composite {
    pub fn new(a: &[u8], b: &[u8], c: &[u8]) -> Self {
        let (c1, n1) = cycles(a, b);
        let (c2, n2) = cycles(b, c);
        let (c3, n3) = cycles(a, c);
        let mut s = Surface::new(n1 + n2);
        for p in 0..b.len() {
            if p < b[p] as usize {
                s.interval(c1[p] as usize, n1 + c2[p] as usize);
            }
        }
        let mut final_piece = vec![usize::MAX; n3];
        for p in 0..a.len() {
            let f = c3[p] as usize;
            if final_piece[f] == usize::MAX {
                final_piece[f] = c1[p] as usize;
            }
        }
        let (piece_comp, topo) = s.finish(&final_piece);
        let ncomp = topo.genus.len();
        let mut mask_first = vec![0u32; ncomp];
        let mut mask_second = vec![0u32; ncomp];
        for k in 0..n1 {
            mask_first[piece_comp[k] as usize] |= 1 << k;
        }
        for k in 0..n2 {
            mask_second[piece_comp[n1 + k] as usize] |= 1 << k;
        }
        Composite { topo, mask_first, mask_second }
    }

    pub fn compose<F: Field>(&self, alg: &mut Algebra<F>, first: &Mor<F>, second: &Mor<F>) -> Mor<F> {
        let mut out: Mor<F> = Vec::new();
        let mut polys = Vec::with_capacity(self.mask_first.len());
        for (m1, v1) in first {
            for (m2, v2) in second {
                polys.clear();
                for c in 0..self.mask_first.len() {
                    let k = (m1 & self.mask_first[c]).count_ones() + (m2 & self.mask_second[c]).count_ones();
                    polys.push(alg.x_pow(k as usize));
                }
                let coef = v1.mul(v2);
                for (m, v) in evaluate(alg, &self.topo, &polys) {
                    mor_add(&mut out, m, &v.mul(&coef));
                }
            }
        }
        out
    }
}

pub(crate) type CompositeCache = HashMap<(u32, u32, u32), Rc<Composite>>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, Ring};
    use crate::complex::DeformationKind;

    type F3 = Fp<3>;

    fn lee() -> Algebra<F3> {
        Algebra::new(&Theory::of_kind(DeformationKind::Lee, 3).unwrap())
    }

    #[test]
    fn cycles_of_two_matchings() {
        // (01)(23) against (03)(12) is one cycle; against itself two.
        assert_eq!(cycles(&[1, 0, 3, 2], &[3, 2, 1, 0]).1, 1);
        assert_eq!(cycles(&[1, 0, 3, 2], &[1, 0, 3, 2]).1, 2);
        assert_eq!(cycles(&[], &[]).1, 0);
    }

    #[test]
    fn comultiplication_counit_is_identity() {
        let mut a = lee();
        // (eps (x) id) Delta(1) = 1 and Delta(X) likewise gives X.
        for which in 0..2 {
            let terms = a.delta(2)[which].clone();
            let mut acc = (F3::zero(), F3::zero());
            for (m, v) in terms {
                if m & 1 == 1 {
                    if m & 2 == 0 {
                        acc.0 = acc.0.add(&v);
                    } else {
                        acc.1 = acc.1.add(&v);
                    }
                }
            }
            let expect = if which == 0 { (F3::one(), F3::zero()) } else { (F3::zero(), F3::one()) };
            assert_eq!(acc, expect);
        }
    }

    #[test]
    fn identity_composes_to_identity() {
        let m = [1u8, 0, 3, 2];
        let comp = Composite::new(&m, &m, &m);
        let mut a = lee();
        let id: Mor<F3> = vec![(0, F3::one())];
        assert_eq!(comp.compose(&mut a, &id, &id), id);
        let dotted: Mor<F3> = vec![(2, F3::one())];
        assert_eq!(comp.compose(&mut a, &id, &dotted), dotted);
    }

    #[test]
    fn saddle_then_saddle_is_tube() {
        // (01)(23) -> (03)(12) -> (01)(23): a genus-0 surface with two
        // boundary cycles, i.e. the neck: X(x)1 + 1(x)X - h on the two cycles.
        let a = [1u8, 0, 3, 2];
        let b = [3u8, 2, 1, 0];
        let comp = Composite::new(&a, &b, &a);
        let mut alg = lee();
        let s: Mor<F3> = vec![(0, F3::one())];
        let r = comp.compose(&mut alg, &s, &s);
        assert_eq!(r, vec![(1, F3::one()), (2, F3::one())]);
    }
}
