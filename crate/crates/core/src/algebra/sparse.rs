//! Row-major sparse matrices and rank over a field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::{Field, Ring};
use super::AlgebraError;

/// Sparse matrix; each row keeps its nonzero entries sorted by column.
#[derive(Clone, PartialEq)]
pub struct SparseMatrix<S: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, S)>>,
}

impl<S: Ring> SparseMatrix<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i].push((i, S::one()));
        }
        m
    }

    /// Builds from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, S)>,
    {
        let mut m = Self::zero(rows, cols);
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(AlgebraError::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            m.add_to(r, c, &v);
        }
        Ok(m)
    }

    /// Dense row lists, for tests and small literals.
    pub fn from_dense(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.add_to(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn row(&self, r: usize) -> &[(usize, S)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(k) => {
                if v.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = v;
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    row.insert(k, (c, v));
                }
            }
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &S) {
        let cur = self.get(r, c);
        self.set(r, c, cur.add(v));
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.data[c].push((r, v.clone()));
        }
        t
    }

    /// `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zero(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: Vec<S> = vec![S::zero(); other.cols];
            let mut touched = Vec::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    if acc[*c].is_zero() {
                        touched.push(*c);
                    }
                    acc[*c] = acc[*c].add(&a.mul(b));
                }
            }
            touched.sort_unstable();
            touched.dedup();
            out.data[r] = touched
                .into_iter()
                .filter(|c| !acc[*c].is_zero())
                .map(|c| (c, acc[c].clone()))
                .collect();
        }
        Ok(out)
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> SparseMatrix<T> {
        let mut out = SparseMatrix::zero(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            out.data[r] = row
                .iter()
                .map(|(c, v)| (*c, f(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        out
    }

    /// Submatrix on the given row and column index lists (in that order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, c) in cols.iter().enumerate() {
            pos[*c] = k;
        }
        let mut out = Self::zero(rows.len(), cols.len());
        for (k, r) in rows.iter().enumerate() {
            let mut row: Vec<(usize, S)> = self.data[*r]
                .iter()
                .filter(|(c, _)| pos[*c] != usize::MAX)
                .map(|(c, v)| (pos[*c], v.clone()))
                .collect();
            row.sort_by_key(|e| e.0);
            out.data[k] = row;
        }
        out
    }
}

impl<S: Ring> fmt::Debug for SparseMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<S> = (0..self.cols).map(|c| self.get(r, c)).collect();
            writeln!(f, "  {:?}", row)?;
        }
        write!(f, "]")
    }
}

/// `a - c * b` on sorted sparse vectors.
pub(crate) fn axpy<F: Field>(a: &[(usize, F)], c: &F, b: &[(usize, F)]) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, b[j].1.mul(c).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&b[j].1.mul(c));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form: rows are added one at a time and reduced
/// against the pivots collected so far.
#[derive(Clone)]
pub struct RowEchelon<F: Field> {
    pivots: Vec<Option<Vec<(usize, F)>>>,
    rank: usize,
}

impl<F: Field> RowEchelon<F> {
    pub fn new(cols: usize) -> Self {
        RowEchelon { pivots: vec![None; cols], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Adds a sorted sparse row; returns whether the rank went up.
    pub fn add_row(&mut self, row: &[(usize, F)]) -> bool {
        let mut v: Vec<(usize, F)> = row.to_vec();
        loop {
            let (lead, c) = match v.first() {
                None => return false,
                Some((l, c)) => (*l, c.clone()),
            };
            match &self.pivots[lead] {
                Some(p) => v = axpy(&v, &c, p),
                None => {
                    let inv = c.inv().expect("nonzero leading entry");
                    for e in v.iter_mut() {
                        e.1 = e.1.mul(&inv);
                    }
                    self.pivots[lead] = Some(v);
                    self.rank += 1;
                    return true;
                }
            }
        }
    }
}

/// Rank over a field by ordered sparse elimination (rows in index order,
/// pivot on the leading column).
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    // Eliminate along the shorter side.
    let t;
    let m = if m.rows > m.cols {
        t = m.transpose();
        &t
    } else {
        m
    };
    let mut ech = RowEchelon::new(m.cols);
    for r in 0..m.rows {
        ech.add_row(m.row(r));
    }
    ech.rank()
}
