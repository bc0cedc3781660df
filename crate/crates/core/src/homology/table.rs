use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::algebra::{rank, Field, ScalarRing};
use crate::complex::GradedComplex;

/// Ranks of a bigraded homology group over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub ring: ScalarRing,
    ranks: BTreeMap<(i32, i32), usize>,
}

impl HomologyTable {
    /// Zero ranks are dropped.
    pub fn new(ring: ScalarRing, ranks: BTreeMap<(i32, i32), usize>) -> Self {
        HomologyTable { ring, ranks: ranks.into_iter().filter(|e| e.1 > 0).collect() }
    }

    /// Homology of the `j`-preserving part of `c`, bidegree by bidegree.
    pub fn of_complex<F: Field>(c: &GradedComplex<F>) -> Self {
        let u = c.associated_graded();
        let mut ranks = BTreeMap::new();
        for i in u.degrees() {
            let mut js: Vec<i32> = u.generators(i).iter().map(|g| g.j).collect();
            js.sort_unstable();
            js.dedup();
            let d_out = u.differential(i);
            let d_in = u.differential(i - 1);
            for j in js {
                let sel = |k: i32| -> Vec<usize> {
                    u.generators(k).iter().enumerate().filter(|g| g.1.j == j).map(|g| g.0).collect()
                };
                let (prev, here, next) = (sel(i - 1), sel(i), sel(i + 1));
                let r_out = if next.is_empty() { 0 } else { rank(&d_out.select(&next, &here)) };
                let r_in = if prev.is_empty() { 0 } else { rank(&d_in.select(&here, &prev)) };
                ranks.insert((i, j), here.len() - r_out - r_in);
            }
        }
        HomologyTable::new(crate::complex::ring_of::<F>(), ranks)
    }

    pub fn rank(&self, i: i32, j: i32) -> usize {
        self.ranks.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((i32, i32), usize)> + '_ {
        self.ranks.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Smallest and largest `j - 2i` over the support.
    pub fn diagonals(&self) -> Option<(i32, i32)> {
        let ds = self.ranks.keys().map(|&(i, j)| j - 2 * i);
        Some((ds.clone().min()?, ds.max()?))
    }

    pub fn width(&self) -> usize {
        match self.diagonals() {
            Some((lo, hi)) => 1 + ((hi - lo) / 2) as usize,
            None => 0,
        }
    }

    /// Supported on two adjacent diagonals `j - 2i = s +- 1`.
    pub fn is_thin(&self) -> bool {
        self.diagonals().is_none_or(|(lo, hi)| hi - lo <= 2)
    }

    pub fn all_j_odd(&self) -> bool {
        self.ranks.keys().all(|&(_, j)| j.rem_euclid(2) == 1)
    }

    /// `sum (-1)^i rank q^j` as `(j, coefficient)` pairs.
    pub fn euler_characteristic(&self) -> BTreeMap<i32, i64> {
        let mut out = BTreeMap::new();
        for (&(i, j), &r) in &self.ranks {
            *out.entry(j).or_insert(0) += if i % 2 == 0 { r as i64 } else { -(r as i64) };
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// `(i, j) -> (-i, -j)`.
    pub fn mirrored(&self) -> Self {
        HomologyTable::new(self.ring.clone(), self.ranks.iter().map(|(&(i, j), &r)| ((-i, -j), r)).collect())
    }

    /// Grid with one row per `j` (descending) and one column per `i`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let (Some(imin), Some(imax)) = (self.ranks.keys().map(|k| k.0).min(), self.ranks.keys().map(|k| k.0).max()) else {
            return String::from("(zero)\n");
        };
        let jmin = self.ranks.keys().map(|k| k.1).min().unwrap();
        let jmax = self.ranks.keys().map(|k| k.1).max().unwrap();
        let _ = write!(s, "{:>5} |", "j\\i");
        for i in imin..=imax {
            let _ = write!(s, "{:>4}", i);
        }
        s.push('\n');
        let _ = writeln!(s, "{}", "-".repeat(7 + 4 * (imax - imin + 1) as usize));
        let mut j = jmax;
        while j >= jmin {
            if (imin..=imax).any(|i| self.rank(i, j) > 0) || (j - jmax) % 2 == 0 {
                let _ = write!(s, "{:>5} |", j);
                for i in imin..=imax {
                    match self.rank(i, j) {
                        0 => s.push_str("   ."),
                        r => {
                            let _ = write!(s, "{:>4}", r);
                        }
                    }
                }
                s.push('\n');
            }
            j -= 1;
        }
        s
    }

    /// `i,j,rank` lines after a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,j,rank\n");
        for (&(i, j), &r) in &self.ranks {
            let _ = writeln!(s, "{},{},{}", i, j, r);
        }
        s
    }
}

/// Nonnegative `r(i, j)` with `rank(i, j) = r(i, j - 1) + r(i, j + 1)`, if
/// any: the table splits as two shifted copies of a reduced table.
pub fn f2_splitting(t: &HomologyTable) -> Option<BTreeMap<(i32, i32), usize>> {
    let mut r: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    let mut by_i: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
    for ((i, j), _) in t.entries() {
        by_i.entry(i).or_default().push(j);
    }
    for (i, js) in by_i {
        let lo = *js.iter().min().unwrap();
        let hi = *js.iter().max().unwrap();
        for parity in [lo.rem_euclid(2), (lo + 1).rem_euclid(2)] {
            let start = lo - (lo - parity).rem_euclid(2);
            // r below the support vanishes
            let mut below: i64 = 0;
            let mut j = start;
            while j <= hi + 2 {
                let next = t.rank(i, j) as i64 - below;
                if next < 0 {
                    return None;
                }
                if j > hi && next != 0 {
                    return None;
                }
                if next > 0 {
                    r.insert((i, j + 1), next as usize);
                }
                below = next;
                j += 2;
            }
        }
    }
    Some(r)
}

pub fn f2_splitting_check(t: &HomologyTable) -> bool {
    f2_splitting(t).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(e: &[((i32, i32), usize)]) -> HomologyTable {
        HomologyTable::new(ScalarRing::PrimeField(2), e.iter().copied().collect())
    }

    #[test]
    fn unknot_table() {
        let t = table(&[((0, -1), 1), ((0, 1), 1)]);
        assert!(t.is_thin());
        assert_eq!(t.width(), 2);
        let r = f2_splitting(&t).unwrap();
        assert_eq!(r, BTreeMap::from([((0, 0), 1)]));
    }

    #[test]
    fn trefoil_over_f2_splits() {
        let t = table(&[((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((2, 7), 1), ((3, 7), 1), ((3, 9), 1)]);
        assert!(f2_splitting_check(&t));
        assert!(t.is_thin());
        let mut bad = t.ranks.clone();
        *bad.get_mut(&(2, 5)).unwrap() += 1;
        assert!(!f2_splitting_check(&table(&bad.into_iter().collect::<Vec<_>>())));
    }

    #[test]
    fn width_counts_diagonals() {
        let t = table(&[((0, 1), 1), ((1, 7), 1)]);
        assert_eq!(t.diagonals(), Some((1, 5)));
        assert_eq!(t.width(), 3);
        assert!(!t.is_thin());
    }

    #[test]
    fn text_grid_lists_rows_descending() {
        let t = table(&[((0, -1), 1), ((0, 1), 1)]);
        let s = t.to_text();
        let one = s.find("    1 |").unwrap();
        let minus = s.find("   -1 |").unwrap();
        assert!(one < minus);
        assert_eq!(t.to_csv(), "i,j,rank\n0,-1,1\n0,1,1\n");
    }
}
