//! Univariate polynomials over a field, `F[x]`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::{Field, Ring};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `x^i`.
/// Trailing zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Scales to leading coefficient 1. The zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.leading().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].sub(&c.mul(di));
            }
            q[k] = c;
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `x` as a factor (the `x`-adic valuation).
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Evaluates at a point of the base field.
    pub fn eval(&self, at: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }
}

impl<F: Field> Ring for Poly<F> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }
    fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{}", c)?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}x", c)?,
                (_, true) => write!(f, "x^{}", i)?,
                (_, false) => write!(f, "{}x^{}", c, i)?,
            }
        }
        Ok(())
    }
}
