//! The bundled table of prime knots up to ten crossings.
//!
//! One tab-separated record per knot:
//! `name crossings alternating signature s turaev_genus unknotting jones pd`.
//! The Jones polynomial is a list `exp:coef` in the variable `t`; unknown
//! values are left empty and ranges such as `[2,3]` are kept as text.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use khovanov_core::diagram::{parse_pd, DiagramError, PlanarDiagram};
use thiserror::Error;

pub const CORPUS_ENV: &str = "KHOVANOV_CORPUS";

const BUNDLED: &str = include_str!("../data/knots.tsv");

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("line {line}: bad PD code: {source}")]
    Diagram { line: usize, source: DiagramError },
    #[error("no knot named {0} in the corpus")]
    Unknown(String),
}

#[derive(Clone, Debug)]
pub struct KnotRecord {
    pub name: String,
    pub crossings: usize,
    pub alternating: bool,
    pub signature: Option<i64>,
    pub s: Option<i32>,
    pub turaev_genus: Option<u32>,
    pub unknotting: String,
    /// Exponent of `t` to coefficient.
    pub jones: BTreeMap<i32, i64>,
    pub diagram: PlanarDiagram,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    knots: Vec<KnotRecord>,
}

fn opt<T: std::str::FromStr>(s: &str) -> Option<T> {
    s.trim().parse().ok()
}

fn parse_jones(s: &str) -> Option<BTreeMap<i32, i64>> {
    s.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (e, c) = t.split_once(':')?;
            Some((e.trim().parse().ok()?, c.trim().parse().ok()?))
        })
        .collect()
}

impl Corpus {
    pub fn parse(text: &str) -> Result<Self, CorpusError> {
        let mut knots = Vec::new();
        for (n, raw) in text.lines().enumerate().skip(1) {
            let line = n + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = raw.split('\t').collect();
            if f.len() != 9 {
                return Err(CorpusError::Format { line, msg: format!("expected 9 fields, got {}", f.len()) });
            }
            let bad = |msg: &str| CorpusError::Format { line, msg: msg.to_string() };
            let diagram = parse_pd(f[8]).map_err(|source| CorpusError::Diagram { line, source })?;
            knots.push(KnotRecord {
                name: f[0].to_string(),
                crossings: opt(f[1]).ok_or_else(|| bad("bad crossing number"))?,
                alternating: f[2] == "Y",
                signature: opt(f[3]),
                s: opt(f[4]),
                turaev_genus: opt(f[5]),
                unknotting: f[6].to_string(),
                jones: parse_jones(f[7]).ok_or_else(|| bad("bad Jones polynomial"))?,
                diagram,
            });
        }
        Ok(Corpus { knots })
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled corpus is well formed")
    }

    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    /// The file named by `KHOVANOV_CORPUS`, else the bundled table.
    pub fn from_env() -> Result<Self, CorpusError> {
        match std::env::var_os(CORPUS_ENV) {
            Some(p) => Self::load(Path::new(&p)),
            None => Ok(Self::bundled()),
        }
    }

    pub fn get(&self, name: &str) -> Result<&KnotRecord, CorpusError> {
        self.knots.iter().find(|k| k.name == name).ok_or_else(|| CorpusError::Unknown(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &KnotRecord> {
        self.knots.iter()
    }

    pub fn up_to(&self, crossings: usize) -> impl Iterator<Item = &KnotRecord> {
        self.knots.iter().filter(move |k| k.crossings <= crossings)
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_loads() {
        let c = Corpus::bundled();
        assert_eq!(c.len(), 250);
        let t = c.get("3_1").unwrap();
        assert_eq!(t.diagram.writhe(), 3);
        assert_eq!(t.jones, BTreeMap::from([(1, 1), (3, 1), (4, -1)]));
        assert_eq!(c.get("0_1").unwrap().diagram.crossing_count(), 0);
        assert!(c.get("11a_1").is_err());
    }

    #[test]
    fn malformed_lines_are_rejected() {
        let head = "name\tcrossings\talternating\tsignature\ts\tturaev_genus\tunknotting\tjones\tpd\n";
        assert!(matches!(Corpus::parse(&format!("{head}x\t3\n")), Err(CorpusError::Format { line: 2, .. })));
        let bad_pd = format!("{head}x\t1\tY\t0\t0\t0\t0\t0:1\tPD[X[1,2]]\n");
        assert!(matches!(Corpus::parse(&bad_pd), Err(CorpusError::Diagram { .. })));
    }
}
