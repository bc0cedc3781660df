//! Text, CSV and JSON renderings.

use std::fmt::Write;

use khovanov_core::homology::{BoundReport, HomologyTable, SpectralPages, TorsionProfile};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub i: i32,
    pub j: i32,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionJson {
    #[serde(rename = "uX")]
    pub u_x: Option<u32>,
    pub ut: Option<u32>,
    pub uh: Option<u32>,
    pub pg: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsJson {
    pub alt_lb: u32,
    pub dthin_lb: u32,
    pub turaev_lb: u32,
    pub unknotting_lb: u32,
}

/// One knot over one ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotDocument {
    pub knot: String,
    pub ring: String,
    pub ranks: Vec<RankEntry>,
    pub width: usize,
    pub thin: bool,
    pub torsion: Option<TorsionJson>,
    pub bounds: Option<BoundsJson>,
}

impl From<&TorsionProfile> for TorsionJson {
    fn from(p: &TorsionProfile) -> Self {
        TorsionJson { u_x: p.u_x, ut: p.u_t, uh: p.u_h, pg: p.pg }
    }
}

impl From<&BoundReport> for BoundsJson {
    fn from(r: &BoundReport) -> Self {
        BoundsJson {
            alt_lb: r.alt_lb.value,
            dthin_lb: r.d_thin_lb.value,
            turaev_lb: r.turaev_lb.value,
            unknotting_lb: r.unknotting_lb.value,
        }
    }
}

impl KnotDocument {
    pub fn new(knot: &str, table: &HomologyTable) -> Self {
        KnotDocument {
            knot: knot.to_string(),
            ring: table.ring.to_string(),
            ranks: table.entries().map(|((i, j), rank)| RankEntry { i, j, rank }).collect(),
            width: table.width(),
            thin: table.is_thin(),
            torsion: None,
            bounds: None,
        }
    }

    pub fn table(&self) -> HomologyTable {
        let ring = khovanov_core::algebra::ScalarRing::parse_field(&self.ring).unwrap_or(khovanov_core::algebra::ScalarRing::Rationals);
        HomologyTable::new(ring, self.ranks.iter().map(|e| ((e.i, e.j), e.rank)).collect())
    }
}

pub fn table_text(knot: &str, t: &HomologyTable) -> String {
    let mut s = format!("Kh({}; {})\n", knot, t.ring);
    s.push_str(&t.to_text());
    let _ = writeln!(s, "width {}, {}", t.width(), if t.is_thin() { "thin" } else { "not thin" });
    s
}

pub fn torsion_text(p: &TorsionProfile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "deformation {} over {}", p.deformation, p.ring);
    let show = |v: Option<u32>| v.map_or("-".to_string(), |v| v.to_string());
    let _ = writeln!(s, "u_X {}  u_t {}  u_h {}  pg {}", show(p.u_x), show(p.u_t), show(p.u_h), p.pg);
    for (i, ks) in &p.factors {
        let _ = writeln!(s, "  H^{} torsion orders {:?}", i, ks);
    }
    let _ = writeln!(s, "free rank by degree {:?}", p.free_rank);
    s
}

pub fn pages_text(p: &SpectralPages) -> String {
    let mut s = String::new();
    for (r, t) in p.pages.iter().enumerate() {
        let _ = writeln!(s, "E_{} (total rank {})", r + 1, t.total_rank());
        s.push_str(&t.to_text());
    }
    let _ = writeln!(s, "collapses at page {}", p.collapse);
    s
}

pub fn bounds_text(knot: &str, r: &BoundReport) -> String {
    let mut s = format!("bounds for {}\n", knot);
    let show = |v: Option<u32>| v.map_or("-".to_string(), |v| v.to_string());
    for b in &r.rings {
        let _ = writeln!(
            s,
            "  {:>4}: width {} pg_Lee {} pg_BN {} u_X {} d_thin >= {}",
            b.ring.to_string(),
            b.width,
            show(b.pg_lee),
            show(b.pg_bn),
            show(b.u_x),
            b.d_thin_lb
        );
    }
    for (name, b) in [("alt", &r.alt_lb), ("d_thin", &r.d_thin_lb), ("g_T", &r.turaev_lb), ("u", &r.unknotting_lb)] {
        let _ = writeln!(s, "  {} >= {}  ({})", name, b.value, b.rule);
    }
    s
}
