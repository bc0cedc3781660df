//! Smith normal form over `F[x]` and homology of free complexes over it.

use alloc::vec::Vec;

use super::field::{Field, Ring};
use super::poly::Poly;
use super::sparse::SparseMatrix;
use super::AlgebraError;

/// Result of a Smith normal form computation.
///
/// `factors` are the nonzero diagonal entries, monic, each dividing the next.
/// `free_rank` is `cols - factors.len()`: the rank of the kernel of the
/// matrix viewed as a map on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors<F: Field> {
    pub factors: Vec<Poly<F>>,
    pub free_rank: usize,
}

impl<F: Field> InvariantFactors<F> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors that are not units.
    pub fn torsion(&self) -> Vec<Poly<F>> {
        self.factors.iter().filter(|f| !f.is_unit()).cloned().collect()
    }
}

fn min_degree_entry<F: Field>(
    a: &[Vec<Poly<F>>],
    rows: impl Iterator<Item = usize> + Clone,
    cols: impl Iterator<Item = usize> + Clone,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for r in rows {
        for c in cols.clone() {
            if let Some(d) = a[r][c].degree() {
                if best.is_none_or(|b| d < b.0) {
                    best = Some((d, r, c));
                }
            }
        }
    }
    best.map(|b| (b.1, b.2))
}

fn row_sub<F: Field>(a: &mut [Vec<Poly<F>>], target: usize, src: usize, q: &Poly<F>, from: usize) {
    for c in from..a[target].len() {
        if a[src][c].is_zero() {
            continue;
        }
        let v = a[target][c].sub(&q.mul(&a[src][c]));
        a[target][c] = v;
    }
}

fn col_sub<F: Field>(a: &mut [Vec<Poly<F>>], target: usize, src: usize, q: &Poly<F>, from: usize) {
    for row in a.iter_mut().skip(from) {
        if row[src].is_zero() {
            continue;
        }
        let v = row[target].sub(&q.mul(&row[src]));
        row[target] = v;
    }
}

/// Smith normal form of a matrix over `F[x]`. Pivots are entries of minimal
/// degree, ties broken by (row, col).
pub fn smith_normal_form<F: Field>(m: &SparseMatrix<Poly<F>>) -> InvariantFactors<F> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Poly<F>>> = (0..rows).map(|_| (0..cols).map(|_| Poly::zero()).collect()).collect();
    for (r, c, v) in m.entries() {
        a[r][c] = v.clone();
    }
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = min_degree_entry(&a, t..rows, t..cols) else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let (q, rem) = a[r][t].div_rem(&a[t][t]);
                row_sub(&mut a, r, t, &q, t);
                dirty |= !rem.is_zero();
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let (q, rem) = a[t][c].div_rem(&a[t][t]);
                col_sub(&mut a, c, t, &q, t);
                dirty |= !rem.is_zero();
            }
            if dirty {
                // A remainder of smaller degree appeared in row or column t.
                let mut best = (a[t][t].degree().unwrap(), t, t);
                for r in t + 1..rows {
                    if let Some(d) = a[r][t].degree() {
                        if d < best.0 {
                            best = (d, r, t);
                        }
                    }
                }
                for c in t + 1..cols {
                    if let Some(d) = a[t][c].degree() {
                        if d < best.0 {
                            best = (d, t, c);
                        }
                    }
                }
                a.swap(t, best.1);
                for row in a.iter_mut() {
                    row.swap(t, best.2);
                }
                continue;
            }
            let piv = a[t][t].clone();
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !a[r][c].is_zero() && !a[r][c].rem(&piv).is_zero()));
            match bad {
                Some(r) => {
                    let one = Poly::one();
                    row_sub(&mut a, t, r, &one.neg(), t);
                }
                None => break,
            }
        }
        factors.push(a[t][t].monic());
        t += 1;
    }
    let free_rank = cols - factors.len();
    InvariantFactors { factors, free_rank }
}

/// Homology at the middle spot of `C_{i-1} --d_in--> C_i --d_out--> C_{i+1}`
/// over `F[x]`. Matrices act on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PidHomology<F: Field> {
    pub free_rank: usize,
    pub torsion: Vec<Poly<F>>,
}

pub fn homology_of_complex_over_pid<F: Field>(
    d_in: &SparseMatrix<Poly<F>>,
    d_out: &SparseMatrix<Poly<F>>,
) -> Result<PidHomology<F>, AlgebraError> {
    if d_in.rows() != d_out.cols() {
        return Err(AlgebraError::DimensionMismatch {
            left: (d_out.rows(), d_out.cols()),
            right: (d_in.rows(), d_in.cols()),
        });
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(AlgebraError::NotAComplex);
    }
    let snf_in = smith_normal_form(d_in);
    let snf_out = smith_normal_form(d_out);
    let n = d_in.rows();
    Ok(PidHomology {
        free_rank: n - snf_in.rank() - snf_out.rank(),
        torsion: snf_in.torsion(),
    })
}
