//! Sparse multivariate polynomials with named variables, terms kept sorted in
//! graded-lexicographic order.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::field::Ring;
use super::AlgebraError;

/// Exponent vector, compared by total degree first, then lexicographically
/// (larger exponent on an earlier variable is bigger).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Polynomial in the variables `vars` with coefficients in `C`.
#[derive(Clone)]
pub struct MPoly<C: Ring> {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> PartialEq for MPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<C: Ring> MPoly<C> {
    /// Declares a variable set. Names must be distinct.
    pub fn ring(names: &[&str]) -> Result<Arc<[String]>, AlgebraError> {
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(AlgebraError::DuplicateVariable(String::from(*a)));
            }
        }
        Ok(names.iter().map(|s| String::from(*s)).collect::<Vec<_>>().into())
    }

    pub fn zero_in(vars: &Arc<[String]>) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_in(vars: &Arc<[String]>, c: C) -> Self {
        let mut p = Self::zero_in(vars);
        p.add_term(Monomial(vec![0; vars.len()]), c);
        p
    }

    pub fn var_in(vars: &Arc<[String]>, name: &str) -> Self {
        let idx = vars.iter().position(|v| v == name).expect("unknown variable");
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = Self::zero_in(vars);
        p.add_term(Monomial(e), C::one());
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Constant term.
    pub fn constant_term(&self) -> C {
        self.terms
            .get(&Monomial(vec![0; self.vars.len()]))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                let s = e.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(AlgebraError::MixedRings)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = Self::zero_in(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("operands from different rings")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("operands from different rings")
    }

    pub fn neg(&self) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero_in(&self.vars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.mul(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant_in(&self.vars, C::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Coefficient of `var^k` as a polynomial in the remaining variables
    /// (kept in the same ring with exponent of `var` zeroed).
    pub fn coeff_in(&self, var: usize, k: u32) -> Self {
        let mut out = Self::zero_in(&self.vars);
        for (m, c) in &self.terms {
            if m.0[var] == k {
                let mut e = m.0.clone();
                e[var] = 0;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Reduces modulo the monic relation `var^n = relation` where `relation`
    /// has degree < n in `var`.
    pub fn reduce_monic(&self, var: usize, n: u32, relation: &Self) -> Result<Self, AlgebraError> {
        self.check(relation)?;
        if relation.degree_in(var) >= n {
            return Err(AlgebraError::NotMonicRelation);
        }
        let mut p = self.clone();
        loop {
            let top = p.degree_in(var);
            if top < n {
                return Ok(p);
            }
            // Replace every term of var-degree `top` by relation * var^(top-n).
            let mut next = Self::zero_in(&self.vars);
            for (m, c) in &p.terms {
                if m.0[var] == top {
                    let mut e = m.0.clone();
                    e[var] -= n;
                    let mut t = Self::zero_in(&self.vars);
                    t.add_term(Monomial(e), c.clone());
                    next = next.add(&t.mul(relation));
                } else {
                    next.add_term(m.clone(), c.clone());
                }
            }
            p = next;
        }
    }
}

impl<C: Ring> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Ring> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(self.vars.iter())
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { alloc::format!("{}^{}", v, e) })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", c, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Z = MPoly<BigInt>;

    #[test]
    fn difference_of_squares() {
        let r = Z::ring(&["X", "h"]).unwrap();
        let x = Z::var_in(&r, "X");
        let h = Z::var_in(&r, "h");
        let lhs = x.add(&h).mul(&x.sub(&h));
        let rhs = x.pow(2).sub(&h.pow(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduce_rank_two_relation() {
        let r = Z::ring(&["X", "h", "t"]).unwrap();
        let x = Z::var_in(&r, "X");
        let h = Z::var_in(&r, "h");
        let t = Z::var_in(&r, "t");
        let rel = h.mul(&x).add(&t);
        let red = x.pow(2).reduce_monic(0, 2, &rel).unwrap();
        assert_eq!(red, rel);
    }

    #[test]
    fn reduce_rank_three_relation() {
        let r = Z::ring(&["X", "a", "b", "c"]).unwrap();
        let x = Z::var_in(&r, "X");
        let a = Z::var_in(&r, "a");
        let b = Z::var_in(&r, "b");
        let c = Z::var_in(&r, "c");
        let rel = a.mul(&x.pow(2)).add(&b.mul(&x)).add(&c);
        assert_eq!(x.pow(3).reduce_monic(0, 3, &rel).unwrap(), rel);
    }

    #[test]
    fn mixed_rings_rejected() {
        let r1 = Z::ring(&["X"]).unwrap();
        let r2 = Z::ring(&["Y"]).unwrap();
        let a = Z::var_in(&r1, "X");
        let b = Z::var_in(&r2, "Y");
        assert_eq!(a.try_add(&b).unwrap_err(), AlgebraError::MixedRings);
    }

    #[test]
    fn duplicate_variables_rejected() {
        assert!(Z::ring(&["a", "a"]).is_err());
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![0, 3]);
        let c = Monomial(vec![1, 1]);
        assert!(b > a && a > c);
    }
}
