use std::fmt;
use std::str::FromStr;

use khovanov_core::diagram::{kmn_knot, parse_pd, torus_knot, DiagramError, PlanarDiagram};
use thiserror::Error;

use crate::corpus::{Corpus, CorpusError};

/// Where a knot comes from on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotSource {
    Pd(String),
    Corpus(String),
    Torus(i64, i64),
    Kmn(usize, usize),
}

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("unknown knot source {0:?}; use pd:, corpus:, torus:p,q or kmn:m,n")]
    Syntax(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

fn pair<T: FromStr>(s: &str) -> Option<(T, T)> {
    let (a, b) = s.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

impl FromStr for KnotSource {
    type Err = SourceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SourceError::Syntax(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "pd" => Ok(KnotSource::Pd(rest.to_string())),
            "corpus" => Ok(KnotSource::Corpus(rest.to_string())),
            "torus" => pair(rest).map(|(p, q)| KnotSource::Torus(p, q)).ok_or_else(bad),
            "kmn" => pair(rest).map(|(m, n)| KnotSource::Kmn(m, n)).ok_or_else(bad),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for KnotSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotSource::Pd(s) => write!(f, "pd:{}", s),
            KnotSource::Corpus(n) => write!(f, "corpus:{}", n),
            KnotSource::Torus(p, q) => write!(f, "torus:{},{}", p, q),
            KnotSource::Kmn(m, n) => write!(f, "kmn:{},{}", m, n),
        }
    }
}

impl KnotSource {
    /// A display name and the diagram.
    pub fn resolve(&self, corpus: impl FnOnce() -> Result<Corpus, CorpusError>) -> Result<(String, PlanarDiagram), SourceError> {
        let d = match self {
            KnotSource::Pd(s) => parse_pd(s)?,
            KnotSource::Corpus(n) => {
                let c = corpus()?;
                return Ok((n.clone(), c.get(n)?.diagram.clone()));
            }
            KnotSource::Torus(p, q) => torus_knot(*p, *q)?,
            KnotSource::Kmn(m, n) => kmn_knot(*m, *n)?,
        };
        let name = match self {
            KnotSource::Pd(_) => d.to_pd_string(),
            KnotSource::Torus(p, q) => format!("T({},{})", p, q),
            KnotSource::Kmn(m, n) => format!("K({},{})", m, n),
            KnotSource::Corpus(_) => unreachable!(),
        };
        Ok((name, d))
    }
}
