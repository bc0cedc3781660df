//! The `khovanov` command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 a
//! resource cap was hit, 4 an internal invariant failed.

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use khovanov_core::algebra::ScalarRing;
use khovanov_core::complex::{DeformationKind, ScanOptions, ScanProgress};
use khovanov_core::diagram::PlanarDiagram;
use khovanov_core::frobenius::{make_system, SystemKind};
use khovanov_core::homology::{self, HomologyError, RingBounds};
use serde::Serialize;
use thiserror::Error;

use crate::corpus::Corpus;
use crate::output::{self, Format, KnotDocument};
use crate::source::{KnotSource, SourceError};

#[derive(Debug, Parser)]
#[command(name = "khovanov", version, about = "Khovanov homology, Lee and Bar-Natan torsion, and knot bounds")]
pub struct Cli {
    /// Worker threads for per-ring runs.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Cap on live objects during the scan.
    #[arg(long, global = true)]
    pub max_objects: Option<usize>,
    /// Report scan progress on stderr.
    #[arg(long, global = true)]
    pub progress: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Khovanov homology table.
    Kh(KhArgs),
    /// Torsion orders of the Lee or Bar-Natan complex.
    Torsion(DeformedArgs),
    /// Pages of the Lee or Bar-Natan spectral sequence (full cube).
    Pages(PagesArgs),
    /// Rasmussen's s.
    S(KnotArgs),
    /// Lower bounds on alternation number, distance to thin, Turaev genus
    /// and unknotting number.
    Bounds(BoundsArgs),
    /// Frobenius-system identities.
    FrobeniusCheck(FrobeniusArgs),
}

#[derive(Debug, Args)]
pub struct KnotArgs {
    /// pd:PD[...], corpus:NAME, torus:p,q or kmn:m,n
    #[arg(long)]
    pub knot: KnotSource,
    #[arg(long, default_value = "Q")]
    pub ring: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct KhArgs {
    #[command(flatten)]
    pub base: KnotArgs,
    /// Use the full cube instead of the scan.
    #[arg(long)]
    pub cube: bool,
    /// Write the simplified complex to a file.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Deformation {
    Lee,
    Barnatan,
}

#[derive(Debug, Args)]
pub struct DeformedArgs {
    #[command(flatten)]
    pub base: KnotArgs,
    /// Default: Lee, or Bar-Natan over F2.
    #[arg(long, value_enum)]
    pub deformation: Option<Deformation>,
}

#[derive(Debug, Args)]
pub struct PagesArgs {
    #[command(flatten)]
    pub def: DeformedArgs,
    #[arg(long)]
    pub max_r: Option<usize>,
    #[arg(long, default_value_t = khovanov_core::complex::DEFAULT_CUBE_CAP)]
    pub cube_cap: usize,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub knot: KnotSource,
    #[arg(long, value_delimiter = ',', default_value = "Q,F2")]
    pub rings: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FrobeniusArgs {
    /// Ranks `a..b` (inclusive) of the systems `Q[X]/(X^n)`.
    #[arg(long, default_value = "2..8")]
    pub n: String,
    /// Check one system only: universal_sl2, universal_sl3, lee_sl2,
    /// barnatan_sl2 or sl<n>.
    #[arg(long)]
    pub system: Option<String>,
    /// Drop a term of Delta(1) before checking; every run should fail.
    #[arg(long)]
    pub corrupt: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Homology(e) if e.is_resource_cap() => 3,
            CliError::Homology(HomologyError::Invariant(_)) => 4,
            CliError::Homology(HomologyError::Complex(khovanov_core::complex::ComplexError::Invariant(_))) => 4,
            CliError::Io(_) => 4,
            _ => 2,
        }
    }
}

fn parse_ring(s: &str) -> Result<ScalarRing, CliError> {
    ScalarRing::parse_field(s).map_err(|e| CliError::Usage(e.to_string()))
}

fn deformation(ring: &ScalarRing, d: Option<Deformation>) -> Result<DeformationKind, CliError> {
    let two = ring.characteristic() == 2;
    match (d, two) {
        (None, false) | (Some(Deformation::Lee), false) => Ok(DeformationKind::Lee),
        (None, true) | (Some(Deformation::Barnatan), true) => Ok(DeformationKind::BarNatan),
        (Some(Deformation::Lee), true) => Err(CliError::Usage("lee needs a ring of characteristic other than 2".into())),
        (Some(Deformation::Barnatan), false) => Err(CliError::Usage("barnatan is computed over F2 only".into())),
    }
}

/// Prints throttled scan progress to stderr.
struct Progress {
    start: Instant,
    last: Instant,
    tag: String,
}

impl Progress {
    fn new(tag: &str) -> Self {
        let now = Instant::now();
        Progress { start: now, last: now, tag: tag.to_string() }
    }

    fn report(&mut self, p: &ScanProgress) {
        if self.last.elapsed() < Duration::from_secs(1) && p.step + 1 < p.total {
            return;
        }
        self.last = Instant::now();
        let mb = (p.entries * 48 + p.objects * 96) as f64 / 1e6;
        eprintln!(
            "[{}] crossing {}/{} boundary {} objects {} entries {} ~{:.0} MB {:.1}s",
            self.tag,
            p.step + 1,
            p.total,
            p.boundary,
            p.objects,
            p.entries,
            mb,
            self.start.elapsed().as_secs_f64()
        );
    }
}

struct Ctx {
    max_objects: Option<usize>,
    progress: bool,
    jobs: usize,
}

impl Ctx {
    fn with_scan<T>(&self, tag: &str, f: impl FnOnce(&mut ScanOptions<'_>) -> T) -> T {
        let mut pr = Progress::new(tag);
        let mut cb = |p: &ScanProgress| pr.report(p);
        let mut opts = ScanOptions::default();
        if let Some(m) = self.max_objects {
            opts.max_objects = m;
        }
        if self.progress {
            opts.progress = Some(&mut cb);
        }
        f(&mut opts)
    }
}

fn knot(src: &KnotSource) -> Result<(String, PlanarDiagram), CliError> {
    Ok(src.resolve(Corpus::from_env)?)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| CliError::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn cmd_kh(ctx: &Ctx, a: &KhArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (name, d) = knot(&a.base.knot)?;
    let ring = parse_ring(&a.base.ring)?;
    let table = if a.cube {
        homology::kh_table_cube(&d, &ring, None)?
    } else {
        ctx.with_scan(&name, |o| homology::kh_table(&d, &ring, o))?
    };
    if let Some(path) = &a.dump {
        let sys = make_system(SystemKind::UniversalSl2).map_err(|e| CliError::Usage(e.to_string()))?;
        let text = ctx.with_scan(&name, |o| {
            khovanov_core::with_field!(&ring, F => khovanov_core::complex::scan_build::<F>(&d, &sys, DeformationKind::None, o).map(|c| c.dump()))
        })?;
        std::fs::write(path, text.map_err(HomologyError::from)?)?;
    }
    match a.base.format {
        Format::Text => write!(out, "{}", output::table_text(&name, &table))?,
        Format::Csv => write!(out, "{}", table.to_csv())?,
        Format::Json => emit_json(out, &KnotDocument::new(&name, &table))?,
    }
    Ok(())
}

fn cmd_torsion(ctx: &Ctx, a: &DeformedArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (name, d) = knot(&a.base.knot)?;
    let ring = parse_ring(&a.base.ring)?;
    let def = deformation(&ring, a.deformation)?;
    let p = ctx.with_scan(&name, |o| homology::torsion_profile(&d, def, &ring, o))?;
    match a.base.format {
        Format::Text => write!(out, "{}", output::torsion_text(&p))?,
        Format::Csv => {
            writeln!(out, "i,order")?;
            for (i, ks) in &p.factors {
                for k in ks {
                    writeln!(out, "{},{}", i, k)?;
                }
            }
        }
        Format::Json => {
            let table = ctx.with_scan(&name, |o| homology::kh_table(&d, &ring, o))?;
            let mut doc = KnotDocument::new(&name, &table);
            doc.torsion = Some((&p).into());
            emit_json(out, &doc)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct PagesJson {
    knot: String,
    ring: String,
    deformation: String,
    collapse: usize,
    pages: Vec<Vec<output::RankEntry>>,
}

fn cmd_pages(a: &PagesArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (name, d) = knot(&a.def.base.knot)?;
    let ring = parse_ring(&a.def.base.ring)?;
    let def = deformation(&ring, a.def.deformation)?;
    let p = homology::spectral_pages(&d, def, &ring, a.max_r, Some(a.cube_cap))?;
    match a.def.base.format {
        Format::Text => write!(out, "{}", output::pages_text(&p))?,
        Format::Csv => {
            writeln!(out, "r,i,j,rank")?;
            for (r, t) in p.pages.iter().enumerate() {
                for ((i, j), k) in t.entries() {
                    writeln!(out, "{},{},{},{}", r + 1, i, j, k)?;
                }
            }
        }
        Format::Json => emit_json(
            out,
            &PagesJson {
                knot: name,
                ring: ring.to_string(),
                deformation: def.to_string(),
                collapse: p.collapse,
                pages: p.pages.iter().map(|t| KnotDocument::new("", t).ranks).collect(),
            },
        )?,
    }
    Ok(())
}

fn cmd_s(ctx: &Ctx, a: &KnotArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (name, d) = knot(&a.knot)?;
    let ring = parse_ring(&a.ring)?;
    let s = ctx.with_scan(&name, |o| homology::s_invariant(&d, &ring, o))?;
    match a.format {
        Format::Text => writeln!(out, "s({}; {}) = {}", name, ring, s)?,
        Format::Csv => writeln!(out, "knot,ring,s\n{},{},{}", name, ring, s)?,
        Format::Json => emit_json(out, &serde_json::json!({ "knot": name, "ring": ring.to_string(), "s": s }))?,
    }
    Ok(())
}

fn cmd_bounds(ctx: &Ctx, a: &BoundsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (name, d) = knot(&a.knot)?;
    let rings = a.rings.iter().map(|r| parse_ring(r)).collect::<Result<Vec<_>, _>>()?;
    if rings.is_empty() {
        return Err(CliError::Usage("no rings given".into()));
    }
    let run = |r: &ScalarRing| ctx.with_scan(&format!("{} {}", name, r), |o| homology::ring_bounds(&d, r, o));
    let mut per: Vec<Result<RingBounds, HomologyError>> = Vec::new();
    for chunk in rings.chunks(ctx.jobs.max(1)) {
        if chunk.len() == 1 {
            per.push(run(&chunk[0]));
            continue;
        }
        let res: Vec<_> = std::thread::scope(|s| {
            let hs: Vec<_> = chunk.iter().map(|r| s.spawn(move || run(r))).collect();
            hs.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        per.extend(res);
    }
    let per = per.into_iter().collect::<Result<Vec<_>, _>>()?;
    let report = homology::combine(per);
    match a.format {
        Format::Text => write!(out, "{}", output::bounds_text(&name, &report))?,
        Format::Csv => {
            writeln!(out, "ring,width,pg_lee,pg_bn,u_x,dthin_lb")?;
            let show = |v: Option<u32>| v.map_or(String::new(), |v| v.to_string());
            for b in &report.rings {
                writeln!(out, "{},{},{},{},{},{}", b.ring, b.width, show(b.pg_lee), show(b.pg_bn), show(b.u_x), b.d_thin_lb)?;
            }
            let r = output::BoundsJson::from(&report);
            writeln!(out, "alt_lb,dthin_lb,turaev_lb,unknotting_lb\n{},{},{},{}", r.alt_lb, r.dthin_lb, r.turaev_lb, r.unknotting_lb)?;
        }
        Format::Json => {
            let mut docs = Vec::new();
            for b in &report.rings {
                let table = ctx.with_scan(&name, |o| homology::kh_table(&d, &b.ring, o))?;
                let mut doc = KnotDocument::new(&name, &table);
                doc.torsion = Some(output::TorsionJson { u_x: b.u_x, ut: b.u_t, uh: b.u_h, pg: b.pg_lee.or(b.pg_bn).unwrap_or(1) });
                doc.bounds = Some((&report).into());
                docs.push(doc);
            }
            emit_json(out, &docs)?;
        }
    }
    Ok(())
}

fn parse_system(s: &str) -> Result<SystemKind, CliError> {
    Ok(match s {
        "universal_sl2" => SystemKind::UniversalSl2,
        "universal_sl3" => SystemKind::UniversalSl3,
        "lee_sl2" => SystemKind::LeeSl2,
        "barnatan_sl2" => SystemKind::BarNatanSl2,
        _ => match s.strip_prefix("sl").and_then(|n| n.parse().ok()) {
            Some(n) => SystemKind::Sln(n),
            None => return Err(CliError::Usage(format!("unknown system {}", s))),
        },
    })
}

fn cmd_frobenius(a: &FrobeniusArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let kinds = match &a.system {
        Some(s) => vec![parse_system(s)?],
        None => {
            let (lo, hi) = a
                .n
                .split_once("..")
                .and_then(|(l, h)| Some((l.trim().parse::<usize>().ok()?, h.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| CliError::Usage(format!("bad range {}", a.n)))?;
            let mut v: Vec<SystemKind> = (lo..=hi).map(SystemKind::Sln).collect();
            v.extend([SystemKind::UniversalSl2, SystemKind::UniversalSl3]);
            v
        }
    };
    let mut failed = 0;
    for k in kinds {
        let mut sys = make_system(k).map_err(|e| CliError::Usage(e.to_string()))?;
        if a.corrupt {
            sys = sys.corrupted(0);
        }
        for r in sys.verify_all() {
            writeln!(out, "{}", r)?;
            if !r.passed() {
                failed += 1;
            }
        }
    }
    if failed > 0 {
        return Err(CliError::Failed(format!("{} checks failed", failed)));
    }
    writeln!(out, "all checks passed")?;
    Ok(())
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let ctx = Ctx { max_objects: cli.max_objects, progress: cli.progress, jobs: cli.jobs };
    let r = match &cli.command {
        Command::Kh(a) => cmd_kh(&ctx, a, out),
        Command::Torsion(a) => cmd_torsion(&ctx, a, out),
        Command::Pages(a) => cmd_pages(a, out),
        Command::S(a) => cmd_s(&ctx, a, out),
        Command::Bounds(a) => cmd_bounds(&ctx, a, out),
        Command::FrobeniusCheck(a) => cmd_frobenius(a, out),
    };
    match r {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}
