//! Delooping: a closed circle is isomorphic to `rank` shifted empty objects.

use alloc::vec::Vec;

use crate::frobenius::{Coeff, FrobeniusSystem, SystemKind};

use super::ComplexError;

/// `phi_i = eps(phi[i] * -)` and `psi_i = psi[i]`, with the generator `i`
/// shifted by `shifts[i]` in `j`.
#[derive(Clone, Debug)]
pub struct Deloop {
    pub shifts: Vec<i32>,
    pub phi: Vec<Coeff>,
    pub psi: Vec<Coeff>,
}

impl Deloop {
    /// `phi_i psi_j` for all `i, j`.
    pub fn gram(&self, sys: &FrobeniusSystem) -> Vec<Vec<Coeff>> {
        self.phi
            .iter()
            .map(|p| self.psi.iter().map(|q| sys.counit(&sys.mul(p, q))).collect())
            .collect()
    }
}

/// The delooping isomorphism of `sys`, checked to satisfy
/// `phi_i psi_j = delta_ij` before it is returned.
pub fn deloop(sys: &FrobeniusSystem) -> Result<Deloop, ComplexError> {
    let n = sys.rank();
    let d = match sys.kind() {
        SystemKind::UniversalSl3 => return Err(ComplexError::UnsupportedSystem(sys.kind())),
        SystemKind::Sln(_) => Deloop {
            shifts: (0..n).map(|i| n as i32 - 1 - 2 * i as i32).collect(),
            phi: (0..n).map(|i| sys.x_pow((n - 1 - i) as u32)).collect(),
            psi: (0..n).map(|i| sys.x_pow(i as u32)).collect(),
        },
        _ => {
            // X - h, where h is the X-coefficient of X^2.
            let x = sys.x_pow(1);
            let h = sys.relation().coeff_in(0, 1);
            Deloop { shifts: alloc::vec![1, -1], phi: alloc::vec![x.sub(&h), sys.x_pow(0)], psi: alloc::vec![sys.x_pow(0), x] }
        }
    };
    for (i, row) in d.gram(sys).iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let expect = sys.scalar(i64::from(i == j));
            if *v != expect {
                return Err(ComplexError::Invariant(alloc::format!("delooping phi_{} psi_{} = {}", i, j, v)));
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::make_system;

    #[test]
    fn rank_two_systems() {
        for k in [SystemKind::UniversalSl2, SystemKind::LeeSl2, SystemKind::BarNatanSl2] {
            let sys = make_system(k).unwrap();
            let d = deloop(&sys).unwrap();
            assert_eq!(d.shifts, alloc::vec![1, -1]);
        }
    }

    #[test]
    fn sl3_has_three_summands() {
        let sys = make_system(SystemKind::Sln(3)).unwrap();
        let d = deloop(&sys).unwrap();
        assert_eq!(d.shifts, alloc::vec![2, 0, -2]);
        let g = d.gram(&sys);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g[i][j], sys.scalar(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn universal_sl3_is_not_attempted() {
        let sys = make_system(SystemKind::UniversalSl3).unwrap();
        assert!(deloop(&sys).is_err());
    }
}
