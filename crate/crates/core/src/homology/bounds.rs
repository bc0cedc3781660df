use alloc::vec::Vec;
use core::fmt;

use crate::algebra::ScalarRing;
use crate::complex::{DeformationKind, ScanOptions};
use crate::diagram::PlanarDiagram;

use super::{kh_table, require_knot, torsion_profile, HomologyError};

/// Where a bound value came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundRule {
    /// Nothing better than 0.
    Trivial,
    /// `2 pg_Lee - 4`
    PgLee(ScalarRing),
    /// `pg_BN - 2`
    PgBarNatan,
    /// `width - 2`
    Width(ScalarRing),
    /// `u_X - 1`
    TorsionX(ScalarRing),
}

impl fmt::Display for BoundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundRule::Trivial => f.write_str("trivial"),
            BoundRule::PgLee(r) => write!(f, "2*pg_Lee({})-4", r),
            BoundRule::PgBarNatan => f.write_str("pg_BN-2"),
            BoundRule::Width(r) => write!(f, "width({})-2", r),
            BoundRule::TorsionX(r) => write!(f, "u_X({})-1", r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub value: u32,
    pub rule: BoundRule,
}

impl Bound {
    fn zero() -> Self {
        Bound { value: 0, rule: BoundRule::Trivial }
    }

    fn raise(&mut self, value: i64, rule: BoundRule) {
        if value > self.value as i64 {
            *self = Bound { value: value as u32, rule };
        }
    }
}

/// Data computed over one coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingBounds {
    pub ring: ScalarRing,
    pub width: usize,
    pub thin: bool,
    pub pg_lee: Option<u32>,
    pub pg_bn: Option<u32>,
    pub u_x: Option<u32>,
    pub u_t: Option<u32>,
    pub u_h: Option<u32>,
    /// Lower bound for the distance to thin knots over this field.
    pub d_thin_lb: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub rings: Vec<RingBounds>,
    pub alt_lb: Bound,
    pub d_thin_lb: Bound,
    pub turaev_lb: Bound,
    pub unknotting_lb: Bound,
}

/// Data for one field: Lee in odd or zero characteristic, Bar-Natan in
/// characteristic 2.
pub fn ring_bounds(d: &PlanarDiagram, ring: &ScalarRing, opts: &mut ScanOptions<'_>) -> Result<RingBounds, HomologyError> {
    require_knot(d)?;
    let kh = kh_table(d, ring, opts)?;
    let def = if ring.characteristic() == 2 { DeformationKind::BarNatan } else { DeformationKind::Lee };
    let p = torsion_profile(d, def, ring, opts)?;
    let (pg_lee, pg_bn) = match def {
        DeformationKind::Lee => (Some(p.pg), None),
        _ => (None, Some(p.pg)),
    };
    let d_thin_lb = match def {
        DeformationKind::Lee => (2 * p.pg as i64 - 4).max(0),
        _ => (p.pg as i64 - 2).max(0),
    } as u32;
    Ok(RingBounds {
        ring: ring.clone(),
        width: kh.width(),
        thin: kh.is_thin(),
        pg_lee,
        pg_bn,
        u_x: p.u_x,
        u_t: p.u_t,
        u_h: p.u_h,
        d_thin_lb,
    })
}

/// Combines per-field data into the four lower bounds.
pub fn combine(rings: Vec<RingBounds>) -> BoundReport {
    let mut d_thin = Bound::zero();
    let mut turaev = Bound::zero();
    let mut unknotting = Bound::zero();
    for r in &rings {
        if let Some(pg) = r.pg_lee {
            d_thin.raise(2 * pg as i64 - 4, BoundRule::PgLee(r.ring.clone()));
            turaev.raise(2 * pg as i64 - 4, BoundRule::PgLee(r.ring.clone()));
        }
        if let Some(pg) = r.pg_bn {
            d_thin.raise(pg as i64 - 2, BoundRule::PgBarNatan);
            turaev.raise(pg as i64 - 2, BoundRule::PgBarNatan);
        }
        turaev.raise(r.width as i64 - 2, BoundRule::Width(r.ring.clone()));
        if let Some(u) = r.u_x {
            unknotting.raise(u as i64 - 1, BoundRule::TorsionX(r.ring.clone()));
        }
    }
    BoundReport { rings, alt_lb: d_thin.clone(), d_thin_lb: d_thin, turaev_lb: turaev, unknotting_lb: unknotting }
}

pub fn bound_report(d: &PlanarDiagram, rings: &[ScalarRing], opts: &mut ScanOptions<'_>) -> Result<BoundReport, HomologyError> {
    let per = rings.iter().map(|r| ring_bounds(d, r, opts)).collect::<Result<Vec<_>, _>>()?;
    Ok(combine(per))
}
