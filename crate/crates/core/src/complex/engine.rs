//! Sparse complexes over the cobordism category and Gaussian elimination.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use hashbrown::{HashMap, HashSet};

use crate::algebra::{Field, SparseMatrix};

use super::tangle::{mor_add, mor_scale, Algebra, Composite, CompositeCache, Matchings, Mor};
use super::{DeformationKind, GradedComplex, Generator, Provenance, Theory};

#[derive(Clone, Copy, Debug)]
pub(crate) struct Obj {
    pub mat: u32,
    pub h: i32,
    pub q: i32,
    pub label: Provenance,
    pub alive: bool,
}

pub(crate) struct Reducer<F: Field> {
    pub objs: Vec<Obj>,
    pub out: Vec<HashMap<u32, Mor<F>>>,
    pub inc: Vec<HashSet<u32>>,
    pub mats: Matchings,
    pub alg: Algebra<F>,
    composites: CompositeCache,
    heap: BinaryHeap<Reverse<(u64, u32, u32)>>,
    /// Maps (degree, position) of the source complex to objects.
    positions: BTreeMap<(i32, usize), u32>,
}

impl<F: Field> Reducer<F> {
    pub fn new(mats: Matchings, alg: Algebra<F>) -> Self {
        Reducer {
            objs: Vec::new(),
            out: Vec::new(),
            inc: Vec::new(),
            mats,
            alg,
            composites: HashMap::new(),
            heap: BinaryHeap::new(),
            positions: BTreeMap::new(),
        }
    }

    pub fn add_obj(&mut self, mat: u32, h: i32, q: i32, label: Provenance) -> u32 {
        self.objs.push(Obj { mat, h, q, label, alive: true });
        self.out.push(HashMap::new());
        self.inc.push(HashSet::new());
        (self.objs.len() - 1) as u32
    }

    pub fn alive_count(&self) -> usize {
        self.objs.iter().filter(|o| o.alive).count()
    }

    pub fn entry_count(&self) -> usize {
        self.out.iter().map(|m| m.len()).sum()
    }

    fn is_pivot(&self, s: u32, t: u32, m: &Mor<F>) -> bool {
        let (a, b) = (&self.objs[s as usize], &self.objs[t as usize]);
        a.mat == b.mat && a.q == b.q && m.first().is_some_and(|e| e.0 == 0)
    }

    fn cost(&self, s: u32, t: u32) -> u64 {
        let ins = self.inc[t as usize].len().saturating_sub(1) as u64;
        let outs = self.out[s as usize].len().saturating_sub(1) as u64;
        ins * outs
    }

    /// Adds `m` to the entry `s -> t`.
    pub fn add_entry(&mut self, s: u32, t: u32, m: &Mor<F>) {
        if m.is_empty() {
            return;
        }
        let slot = self.out[s as usize].entry(t).or_default();
        for (k, v) in m {
            mor_add(slot, *k, v);
        }
        if slot.is_empty() {
            self.out[s as usize].remove(&t);
            self.inc[t as usize].remove(&s);
            return;
        }
        self.inc[t as usize].insert(s);
        let slot = &self.out[s as usize][&t];
        if self.is_pivot(s, t, slot) {
            let c = self.cost(s, t);
            self.heap.push(Reverse((c, s, t)));
        }
    }

    fn compose(&mut self, x: u32, a: u32, y: u32, first: &Mor<F>, second: &Mor<F>) -> Mor<F> {
        let (mx, ma, my) = (self.objs[x as usize].mat, self.objs[a as usize].mat, self.objs[y as usize].mat);
        if mx == ma && first.len() == 1 && first[0].0 == 0 {
            return mor_scale(second, &first[0].1);
        }
        if ma == my && second.len() == 1 && second[0].0 == 0 {
            return mor_scale(first, &second[0].1);
        }
        let comp = match self.composites.get(&(mx, ma, my)) {
            Some(c) => c.clone(),
            None => {
                let c = Rc::new(Composite::new(self.mats.get(mx), self.mats.get(ma), self.mats.get(my)));
                self.composites.insert((mx, ma, my), c.clone());
                c
            }
        };
        comp.compose(&mut self.alg, first, second)
    }

    /// Gaussian elimination along the isomorphism `b -> a`.
    pub fn cancel(&mut self, b: u32, a: u32) {
        let piv = self.out[b as usize][&a].clone();
        debug_assert!(piv.len() == 1 && piv[0].0 == 0, "pivot must be a multiple of the identity");
        let scale = piv[0].1.inv().expect("unit pivot").neg();
        let mut xs: Vec<u32> = self.inc[a as usize].iter().copied().filter(|&x| x != b).collect();
        let mut ys: Vec<u32> = self.out[b as usize].keys().copied().filter(|&y| y != a).collect();
        xs.sort_unstable();
        ys.sort_unstable();
        let gammas: Vec<Mor<F>> = ys.iter().map(|y| self.out[b as usize][y].clone()).collect();
        for &x in &xs {
            let delta = mor_scale(&self.out[x as usize][&a], &scale);
            for (k, &y) in ys.iter().enumerate() {
                let z = self.compose(x, a, y, &delta, &gammas[k]);
                self.add_entry(x, y, &z);
            }
        }
        for v in [a, b] {
            let targets: Vec<u32> = self.out[v as usize].keys().copied().collect();
            for t in targets {
                self.inc[t as usize].remove(&v);
            }
            self.out[v as usize].clear();
            let sources: Vec<u32> = self.inc[v as usize].drain().collect();
            for s in sources {
                self.out[s as usize].remove(&v);
            }
            self.objs[v as usize].alive = false;
        }
    }

    /// Cancels every available isomorphism, cheapest fill-in first.
    pub fn reduce(&mut self) {
        let mut all = Vec::new();
        for s in 0..self.out.len() as u32 {
            for (&t, m) in &self.out[s as usize] {
                if self.is_pivot(s, t, m) {
                    all.push(Reverse((self.cost(s, t), s, t)));
                }
            }
        }
        self.heap = all.into();
        while let Some(Reverse((c, s, t))) = self.heap.pop() {
            let valid = self.objs[s as usize].alive
                && self.objs[t as usize].alive
                && self.out[s as usize].get(&t).is_some_and(|m| self.is_pivot(s, t, m));
            if !valid {
                continue;
            }
            let now = self.cost(s, t);
            if now > c {
                self.heap.push(Reverse((now, s, t)));
                continue;
            }
            self.cancel(s, t);
        }
    }

    /// Scalar complexes live on the empty boundary.
    pub fn from_complex(c: &GradedComplex<F>) -> Self {
        let mut mats = Matchings::default();
        let empty = mats.intern(Vec::new());
        let th = Theory::<F> { kind: DeformationKind::None, h: F::zero(), t: F::zero() };
        let mut r = Reducer::new(mats, Algebra::new(&th));
        let degrees: Vec<i32> = c.degrees().collect();
        for &i in &degrees {
            for (k, g) in c.generators(i).iter().enumerate() {
                let o = r.add_obj(empty, i, g.j, g.label);
                r.positions.insert((i, k), o);
            }
        }
        for &i in &degrees {
            if let Some(d) = c.differential_ref(i) {
                for (row, col, v) in d.entries() {
                    let s = r.positions[&(i, col)];
                    let t = r.positions[&(i + 1, row)];
                    r.add_entry(s, t, &vec![(0, v.clone())]);
                }
            }
        }
        r
    }

    pub fn index_of(&self, i: i32, k: usize) -> u32 {
        self.positions[&(i, k)]
    }

    /// Reads off a scalar complex; every surviving object must sit on a
    /// boundary with no cycles against itself other than those in `value`.
    pub fn into_complex_with(
        &self,
        deformation: DeformationKind,
        step: i32,
        shift: (i32, i32),
        mut value: impl FnMut(&Mor<F>) -> F,
    ) -> GradedComplex<F> {
        let mut gens: BTreeMap<i32, Vec<Generator>> = BTreeMap::new();
        let mut place = vec![(0i32, 0usize); self.objs.len()];
        for (k, o) in self.objs.iter().enumerate() {
            if !o.alive {
                continue;
            }
            let i = o.h + shift.0;
            let list = gens.entry(i).or_default();
            place[k] = (i, list.len());
            list.push(Generator { j: o.q + shift.1, label: o.label });
        }
        let mut trip: BTreeMap<i32, Vec<(usize, usize, F)>> = BTreeMap::new();
        for (s, o) in self.objs.iter().enumerate() {
            if !o.alive {
                continue;
            }
            for (&t, m) in &self.out[s] {
                let (i, col) = place[s];
                let (_, row) = place[t as usize];
                let v = value(m);
                if !v.is_zero() {
                    trip.entry(i).or_default().push((row, col, v));
                }
            }
        }
        let size = |i: i32| gens.get(&i).map_or(0, |g| g.len());
        let diffs = trip
            .into_iter()
            .map(|(i, t)| (i, SparseMatrix::from_triplets(size(i + 1), size(i), t).expect("in range")))
            .collect();
        GradedComplex::new(deformation, step, gens, diffs).expect("consistent shapes")
    }

    pub fn into_complex(&self, deformation: DeformationKind, step: i32) -> GradedComplex<F> {
        self.into_complex_with(deformation, step, (0, 0), |m| m[0].1.clone())
    }
}
