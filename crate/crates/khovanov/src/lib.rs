//! Command line, bundled knot corpus and output formats for `khovanov-core`.

pub mod cli;
pub mod corpus;
pub mod output;
pub mod source;
