//! Rank-n Frobenius systems `A = R[X]/(X^n - ...)` with counit and `Delta(1)`,
//! closed dotted-surface evaluation, and checks of the sphere, neck-cutting
//! and tubing identities at the level of evaluations.
//!
//! A dot is multiplication by `X`. A closed connected surface of genus `g`
//! with `d` dots evaluates to `eps(X^d H^g)` where `H = m(Delta(1))` is the
//! handle element; disjoint unions multiply.
//!
//! The rank-3 universal system is stored with `global_sign = -1`: its
//! counit and `Delta(1)` are the standard ones times -1, so a sphere with two
//! dots evaluates to -1 and the tube expands as minus the standard sum.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::algebra::{MPoly, ScalarRing};

/// Polynomials with integer coefficients in `X` and the parameters.
pub type Coeff = MPoly<BigInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SystemKind {
    /// `Z[h,t][X]/(X^2 - hX - t)`
    UniversalSl2,
    /// `h = 0, t = 1`
    LeeSl2,
    /// `t = 0` over `Z[h]`; the complexes use it over `F_2[h]`
    BarNatanSl2,
    /// `Z[a,b,c][X]/(X^3 - aX^2 - bX - c)`
    UniversalSl3,
    /// `Q[X]/(X^n)`
    Sln(usize),
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemKind::UniversalSl2 => write!(f, "universal_sl2"),
            SystemKind::LeeSl2 => write!(f, "lee_sl2"),
            SystemKind::BarNatanSl2 => write!(f, "barnatan_sl2"),
            SystemKind::UniversalSl3 => write!(f, "universal_sl3"),
            SystemKind::Sln(n) => write!(f, "sl{}", n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusError {
    RankTooSmall(usize),
    Invariant(String),
}

impl fmt::Display for FrobeniusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrobeniusError::RankTooSmall(n) => write!(f, "rank {} is below 2", n),
            FrobeniusError::Invariant(m) => write!(f, "system invariant failed: {}", m),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FrobeniusError {}

#[derive(Clone, Debug)]
pub struct FrobeniusSystem {
    kind: SystemKind,
    n: usize,
    ground: ScalarRing,
    vars: Arc<[String]>,
    /// `X^n` equals this polynomial of `X`-degree below `n`.
    relation: Coeff,
    /// `eps(X^i)` for `i < n`, before the global sign.
    counit: Vec<Coeff>,
    /// `Delta(1)` as `(i, j, c)`: `c X^i (x) X^j`, before the global sign.
    delta_of_unit: Vec<(usize, usize, Coeff)>,
    global_sign: i64,
}

/// A closed connected surface of genus `genus` carrying `dots` dots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClosedSurface {
    pub genus: u32,
    pub dots: u32,
}

/// Outcome of one verification; empty `failures` means pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub system: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{} {} [{}]: {} ({} cases)", verdict, self.check, self.system, verdict, self.cases)?;
        for m in &self.failures {
            write!(f, "\n    {}", m)?;
        }
        Ok(())
    }
}

pub fn make_system(kind: SystemKind) -> Result<FrobeniusSystem, FrobeniusError> {
    let int = |n: i64| BigInt::from(n);
    let sys = match kind {
        SystemKind::UniversalSl2 | SystemKind::LeeSl2 | SystemKind::BarNatanSl2 => {
            let (vars, ground): (&[&str], ScalarRing) = match kind {
                SystemKind::UniversalSl2 => (&["X", "h", "t"], ScalarRing::MultivariateIntegerPolynomials(["h", "t"].map(String::from).to_vec())),
                SystemKind::LeeSl2 => (&["X"], ScalarRing::Rationals),
                _ => (&["X", "h"], ScalarRing::MultivariateIntegerPolynomials(alloc::vec![String::from("h")])),
            };
            let vars = Coeff::ring(vars).expect("distinct names");
            let x = Coeff::var_in(&vars, "X");
            let one = Coeff::constant_in(&vars, int(1));
            let (h, t) = match kind {
                SystemKind::UniversalSl2 => (Coeff::var_in(&vars, "h"), Coeff::var_in(&vars, "t")),
                SystemKind::LeeSl2 => (Coeff::zero_in(&vars), one.clone()),
                _ => (Coeff::var_in(&vars, "h"), Coeff::zero_in(&vars)),
            };
            FrobeniusSystem {
                kind,
                n: 2,
                ground,
                relation: h.mul(&x).add(&t),
                counit: alloc::vec![Coeff::zero_in(&vars), one.clone()],
                delta_of_unit: alloc::vec![(0, 1, one.clone()), (1, 0, one.clone()), (0, 0, h.neg())],
                global_sign: 1,
                vars,
            }
        }
        SystemKind::UniversalSl3 => {
            let vars = Coeff::ring(&["X", "a", "b", "c"]).expect("distinct names");
            let x = Coeff::var_in(&vars, "X");
            let a = Coeff::var_in(&vars, "a");
            let b = Coeff::var_in(&vars, "b");
            let c = Coeff::var_in(&vars, "c");
            let one = Coeff::constant_in(&vars, int(1));
            let zero = Coeff::zero_in(&vars);
            FrobeniusSystem {
                kind,
                n: 3,
                ground: ScalarRing::MultivariateIntegerPolynomials(["a", "b", "c"].map(String::from).to_vec()),
                relation: a.mul(&x.pow(2)).add(&b.mul(&x)).add(&c),
                counit: alloc::vec![zero.clone(), zero, one.clone()],
                delta_of_unit: alloc::vec![
                    (2, 0, one.clone()),
                    (1, 1, one.clone()),
                    (0, 2, one.clone()),
                    (1, 0, a.neg()),
                    (0, 1, a.neg()),
                    (0, 0, b.neg()),
                ],
                global_sign: -1,
                vars,
            }
        }
        SystemKind::Sln(n) => {
            if n < 2 {
                return Err(FrobeniusError::RankTooSmall(n));
            }
            let vars = Coeff::ring(&["X"]).expect("one name");
            let one = Coeff::constant_in(&vars, int(1));
            let mut counit: Vec<Coeff> = (0..n).map(|_| Coeff::zero_in(&vars)).collect();
            counit[n - 1] = one.clone();
            FrobeniusSystem {
                kind,
                n,
                ground: ScalarRing::Rationals,
                relation: Coeff::zero_in(&vars),
                counit,
                delta_of_unit: (0..n).map(|i| (i, n - 1 - i, one.clone())).collect(),
                global_sign: 1,
                vars,
            }
        }
    };
    let problems: Vec<String> = [sys.verify_sphere_relations(), sys.verify_neck_cutting(), sys.verify_delta_symmetry()]
        .into_iter()
        .flat_map(|r| r.failures)
        .collect();
    if !problems.is_empty() {
        return Err(FrobeniusError::Invariant(problems.join("; ")));
    }
    Ok(sys)
}

impl FrobeniusSystem {
    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn ground_ring(&self) -> &ScalarRing {
        &self.ground
    }

    pub fn global_sign(&self) -> i64 {
        self.global_sign
    }

    pub fn delta_of_unit(&self) -> &[(usize, usize, Coeff)] {
        &self.delta_of_unit
    }

    pub fn relation(&self) -> &Coeff {
        &self.relation
    }

    fn name(&self) -> String {
        format!("{}", self.kind)
    }

    /// Drops one term of `Delta(1)`; a negative control for the checks.
    pub fn corrupted(&self, drop_term: usize) -> Self {
        let mut s = self.clone();
        if drop_term < s.delta_of_unit.len() {
            s.delta_of_unit.remove(drop_term);
        }
        s
    }

    pub fn scalar(&self, n: i64) -> Coeff {
        Coeff::constant_in(&self.vars, BigInt::from(n))
    }

    /// `X^k` reduced to the basis.
    pub fn x_pow(&self, k: u32) -> Coeff {
        self.reduce(&Coeff::var_in(&self.vars, "X").pow(k))
    }

    pub fn reduce(&self, p: &Coeff) -> Coeff {
        p.reduce_monic(0, self.n as u32, &self.relation).expect("same ring, monic relation")
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(&a.mul(b))
    }

    /// Counit before the global sign.
    pub fn counit_unsigned(&self, a: &Coeff) -> Coeff {
        let a = self.reduce(a);
        let mut acc = Coeff::zero_in(&self.vars);
        for i in 0..self.n {
            acc = acc.add(&a.coeff_in(0, i as u32).mul(&self.counit[i]));
        }
        acc
    }

    /// Counit including the global sign.
    pub fn counit(&self, a: &Coeff) -> Coeff {
        self.counit_unsigned(a).scale(&BigInt::from(self.global_sign))
    }

    /// Value of a sphere with `d` dots.
    pub fn sphere_value(&self, d: u32) -> Coeff {
        self.counit(&self.x_pow(d))
    }

    /// `m(Delta(1))` including the global sign.
    pub fn handle_element(&self) -> Coeff {
        let mut acc = Coeff::zero_in(&self.vars);
        for (i, j, c) in &self.delta_of_unit {
            acc = acc.add(&c.mul(&self.x_pow((i + j) as u32)));
        }
        self.reduce(&acc).scale(&BigInt::from(self.global_sign))
    }

    pub fn evaluate_closed_surface(&self, s: ClosedSurface) -> Coeff {
        let h = self.handle_element();
        let mut p = self.x_pow(s.dots);
        for _ in 0..s.genus {
            p = self.mul(&p, &h);
        }
        self.counit(&p)
    }

    fn pretty_basis(i: usize) -> String {
        match i {
            0 => String::from("1"),
            1 => String::from("X"),
            _ => format!("X^{}", i),
        }
    }

    /// `eps(X^i)` follows the sphere pattern: 1 for `i = n-1`, else 0.
    pub fn verify_sphere_relations(&self) -> CheckReport {
        let mut failures = Vec::new();
        for i in 0..self.n {
            let want = self.scalar(if i == self.n - 1 { 1 } else { 0 });
            let got = self.counit_unsigned(&self.x_pow(i as u32));
            if got != want {
                failures.push(format!("eps({}) = {}, expected {}", Self::pretty_basis(i), got, want));
            }
        }
        CheckReport { check: String::from("sphere relations"), system: self.name(), cases: self.n, failures }
    }

    /// `sum_k u_k eps(v_k a) = a` for every basis element `a`.
    pub fn verify_neck_cutting(&self) -> CheckReport {
        let mut failures = Vec::new();
        let sign = BigInt::from(self.global_sign);
        for i in 0..self.n {
            let a = self.x_pow(i as u32);
            let mut acc = Coeff::zero_in(&self.vars);
            for (u, v, c) in &self.delta_of_unit {
                let e = self.counit(&self.mul(&self.x_pow(*v as u32), &a));
                acc = acc.add(&self.x_pow(*u as u32).mul(&c.scale(&sign)).mul(&e));
            }
            let acc = self.reduce(&acc);
            if acc != a {
                failures.push(format!("basis element {} reconstructs to {}", Self::pretty_basis(i), acc));
            }
        }
        CheckReport { check: String::from("neck cutting"), system: self.name(), cases: self.n, failures }
    }

    pub fn verify_delta_symmetry(&self) -> CheckReport {
        let mut failures = Vec::new();
        let mut terms: Vec<(usize, usize, Coeff)> = Vec::new();
        for (i, j, c) in &self.delta_of_unit {
            match terms.iter_mut().find(|t| t.0 == *i && t.1 == *j) {
                Some(t) => t.2 = t.2.add(c),
                None => terms.push((*i, *j, c.clone())),
            }
        }
        for (i, j, c) in &terms {
            let mirror = terms
                .iter()
                .find(|t| t.0 == *j && t.1 == *i)
                .map(|t| t.2.clone())
                .unwrap_or_else(|| Coeff::zero_in(&self.vars));
            if &mirror != c {
                failures.push(format!("coefficient of {} (x) {} is not symmetric", Self::pretty_basis(*i), Self::pretty_basis(*j)));
            }
        }
        CheckReport { check: String::from("Delta(1) symmetry"), system: self.name(), cases: terms.len(), failures }
    }

    /// Expected value of `F` disjoint union a `k`-dotted sphere, read off the
    /// stated sphere lemma (the universal rank-3 system carries a minus sign).
    fn lemma_sphere_pattern(&self, f: &Coeff, k: u32) -> Coeff {
        let n = self.n as u32;
        if k + 1 < n {
            return Coeff::zero_in(&self.vars);
        }
        if k + 1 == n {
            return if self.kind == SystemKind::UniversalSl3 { f.neg() } else { f.clone() };
        }
        // Past n-1 dots the sphere reduces through the ring relation.
        f.mul(&self.sphere_value(k))
    }

    /// Sphere lemma on every `F = (g, d)` with `g <= 3`, `d <= n`.
    pub fn verify_lemma_spheres(&self) -> CheckReport {
        let mut failures = Vec::new();
        let mut cases = 0;
        for g in 0..=3 {
            for d in 0..=self.n as u32 {
                let f = self.evaluate_closed_surface(ClosedSurface { genus: g, dots: d });
                for k in 0..self.n as u32 {
                    cases += 1;
                    let union = f.mul(&self.sphere_value(k));
                    let want = self.lemma_sphere_pattern(&f, k);
                    if union != want {
                        failures.push(format!(
                            "F = (g={}, d={}), sphere with {} dots: got {}, expected {}",
                            g, d, k, union, want
                        ));
                    }
                }
            }
        }
        CheckReport { check: String::from("sphere lemma"), system: self.name(), cases, failures }
    }

    /// Tubing a dotless sphere into `(g, d)`: `sign * eval(g, d)` equals
    /// `sum c_ij eval(g, d + i) sphere(j)` over the stored `Delta(1)` terms.
    pub fn verify_tube_identity(&self, genus: u32, dots: u32) -> CheckReport {
        let lhs = self
            .evaluate_closed_surface(ClosedSurface { genus, dots })
            .scale(&BigInt::from(self.global_sign));
        let mut rhs = Coeff::zero_in(&self.vars);
        for (i, j, c) in &self.delta_of_unit {
            let d_part = self.evaluate_closed_surface(ClosedSurface { genus, dots: dots + *i as u32 });
            rhs = rhs.add(&c.mul(&d_part).mul(&self.sphere_value(*j as u32)));
        }
        let mut failures = Vec::new();
        if lhs != rhs {
            failures.push(format!("(g={}, d={}): tube side {} but expansion {}", genus, dots, lhs, rhs));
        }
        CheckReport { check: format!("tube identity g={} d={}", genus, dots), system: self.name(), cases: 1, failures }
    }

    /// Every check over `g <= 3`, `d <= n + 2`.
    pub fn verify_all(&self) -> Vec<CheckReport> {
        let mut out = alloc::vec![
            self.verify_sphere_relations(),
            self.verify_neck_cutting(),
            self.verify_delta_symmetry(),
            self.verify_lemma_spheres(),
        ];
        let mut tube = CheckReport { check: String::from("tube identity"), system: self.name(), cases: 0, failures: Vec::new() };
        for g in 0..=3 {
            for d in 0..=self.n as u32 + 2 {
                let r = self.verify_tube_identity(g, d);
                tube.cases += 1;
                tube.failures.extend(r.failures);
            }
        }
        out.push(tube);
        out
    }
}
