//! The `cpl` command line: registry catalog, series verification, tuple-oracle cross-checks,
//! matching certificates and candidate search.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails, 2 for usage
//! and I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use cpl_core::bijection::{exhaustive_match, Tag};
use cpl_core::error::Error;
use cpl_core::identity::BUILTIN_REGISTRY;
use cpl_core::oracle::{brute_tuple_counts, tuple_counts, uv_table, BRUTE_MAX};
use cpl_core::qseries::{search_candidates, verify_identity};
use cpl_core::{load_registry, Coefficients, IdentitySpec, Status, RANK};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable naming a registry file when `--registry` is absent.
pub const REGISTRY_ENV: &str = "CPL_REGISTRY";

pub const DEFAULT_NMAX_PROVEN: u64 = 1000;
pub const DEFAULT_NMAX_CONJECTURED: u64 = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StatusArg {
    Proven,
    Conjectured,
}

impl From<StatusArg> for Status {
    fn from(s: StatusArg) -> Status {
        match s {
            StatusArg::Proven => Status::Proven,
            StatusArg::Conjectured => Status::Conjectured,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "cpl", version, about = "Check colored-partition identities D_S(N) = 2^p D_T(N - m)")]
struct Cli {
    /// Registry file (JSON array of records); falls back to $CPL_REGISTRY, then the built-in list.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List registry entries.
    Catalog {
        #[arg(long, value_enum)]
        status: Option<StatusArg>,
    },
    /// Verify the series identity of the given entries.
    Verify {
        #[arg(long = "id", required = true)]
        ids: Vec<String>,
        /// Defaults to 1000 for proven and 2000 for conjectured entries.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        nmax: Option<u64>,
    },
    /// Verify every registry entry.
    VerifyAll {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        nmax: Option<u64>,
        #[arg(long, value_enum)]
        status: Option<StatusArg>,
    },
    /// Compare tuple counts of both sides, the U/V counts, and optionally explicit enumeration.
    Oracle {
        #[arg(long = "id", required = true)]
        ids: Vec<String>,
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
        nmax: u64,
        /// Also enumerate tuples explicitly up to this N (at most 15).
        #[arg(long)]
        brute_nmax: Option<u64>,
    },
    /// Run a matching certificate exhaustively.
    Bijection {
        /// One of lemma3_1, lemma3_3, lemma3_4, lemma3_5, lemma3_6, lemma3_7.
        #[arg(long)]
        lemma: String,
        #[arg(long, allow_negative_numbers = true)]
        value_max: Option<i64>,
    },
    /// Probe coefficient pairs for identities; prints matches as registry records.
    Search {
        #[arg(long)]
        modulus: u32,
        #[arg(long)]
        m_from: u32,
        /// Defaults to --m-from.
        #[arg(long)]
        m_to: Option<u32>,
        /// JSON array of {"A": [...], "B": [...]} pairs.
        #[arg(long, conflicts_with = "around", required_unless_present = "around")]
        pairs: Option<PathBuf>,
        /// Probe the entry and every single-coefficient ±1 change of it.
        #[arg(long)]
        around: Option<String>,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        nprobe: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        n0_max: u64,
    },
}

/// A disagreement at one N; counts are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    #[serde(rename = "N")]
    pub n: u64,
    pub left: String,
    pub right: String,
    /// Which comparison failed, for reports that run several.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub spec: String,
    pub n_from: u64,
    pub n_to: u64,
    pub holds: bool,
    pub first_failure: Option<Mismatch>,
    /// Disagreements below N0; informational only.
    pub below_n0: Vec<Mismatch>,
    pub timings_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub spec: String,
    pub n_from: u64,
    pub n_to: u64,
    pub holds: bool,
    pub first_failure: Option<Mismatch>,
    pub checks: Vec<String>,
    pub timings_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub name: String,
    pub status: String,
    pub source: String,
    #[serde(rename = "C")]
    pub modulus: u32,
    #[serde(rename = "A")]
    pub a: Vec<u32>,
    #[serde(rename = "B")]
    pub b: Vec<u32>,
    pub m: u32,
    #[serde(rename = "N0")]
    pub n0: u32,
    pub p: i32,
    pub factor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFailure {
    pub clause: String,
    pub element: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRow {
    pub case: String,
    pub family: String,
    pub elements: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub value: i64,
    pub left: u64,
    pub right: u64,
    pub expected_left: u64,
    pub expected_right: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub lemma: String,
    pub identity: String,
    pub value_max: i64,
    pub holds: bool,
    pub elements: u64,
    pub cases: Vec<CaseRow>,
    pub values: Vec<CountRow>,
    pub failure: Option<CertificateFailure>,
    pub timings_ms: u64,
}

/// Registry-format record, as printed by `search`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordOut {
    pub name: String,
    pub status: String,
    pub source: String,
    #[serde(rename = "C")]
    pub modulus: u32,
    #[serde(rename = "A")]
    pub a: Vec<u32>,
    #[serde(rename = "B")]
    pub b: Vec<u32>,
    pub m: u32,
    #[serde(rename = "N0")]
    pub n0: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairIn {
    #[serde(rename = "A")]
    a: Vec<u32>,
    #[serde(rename = "B")]
    b: Vec<u32>,
}

/// Default bound used by `bijection` when `--value-max` is omitted.
pub fn default_value_max(tag: Tag) -> i64 {
    match tag {
        Tag::Reflections => 25,
        Tag::SumMod6 | Tag::SplitSumMod6 => 40,
        Tag::QuadrupleShift | Tag::HadamardSplit | Tag::HadamardShift => 30,
    }
}

/// Error that maps to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<std::io::Error> for UsageError {
    fn from(e: std::io::Error) -> Self {
        UsageError(format!("i/o error: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, UsageError>;

/// Runs the command line with the given arguments (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs as usize)
        .build()
        .map_err(|e| UsageError(format!("cannot start {} workers: {e}", cli.jobs)))?;
    let registry = load(cli.registry.as_ref())?;
    match &cli.command {
        Command::Catalog { status } => {
            let rows: Vec<CatalogRow> = registry
                .iter()
                .filter(|s| status.is_none_or(|st| s.status() == st.into()))
                .map(catalog_row)
                .collect();
            emit_catalog(cli.format, &rows, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { ids, nmax } => {
            let specs = select(&registry, ids)?;
            let reports = pool.install(|| verify_many(&specs, *nmax))?;
            emit_verify(cli.format, &reports, out)?;
            Ok(exit_for(reports.iter().all(|r| r.holds)))
        }
        Command::VerifyAll { nmax, status } => {
            let specs: Vec<&IdentitySpec> = registry
                .iter()
                .filter(|s| status.is_none_or(|st| s.status() == st.into()))
                .collect();
            let reports = pool.install(|| verify_many(&specs, *nmax))?;
            emit_verify(cli.format, &reports, out)?;
            Ok(exit_for(reports.iter().all(|r| r.holds)))
        }
        Command::Oracle {
            ids,
            nmax,
            brute_nmax,
        } => {
            if let Some(b) = brute_nmax {
                if *b > BRUTE_MAX {
                    return Err(Error::BruteBound { n: *b, max: BRUTE_MAX }.into());
                }
            }
            let specs = select(&registry, ids)?;
            let reports: Vec<CliResult<OracleReport>> = pool.install(|| {
                use rayon::prelude::*;
                specs
                    .par_iter()
                    .map(|s| oracle_one(s, *nmax, *brute_nmax))
                    .collect()
            });
            let reports = reports.into_iter().collect::<CliResult<Vec<_>>>()?;
            emit_oracle(cli.format, &reports, out)?;
            Ok(exit_for(reports.iter().all(|r| r.holds)))
        }
        Command::Bijection { lemma, value_max } => {
            let tag: Tag = lemma.parse()?;
            let value_max = value_max.unwrap_or_else(|| default_value_max(tag));
            let report = pool.install(|| bijection(tag, value_max));
            emit_bijection(cli.format, &report, out)?;
            Ok(exit_for(report.holds))
        }
        Command::Search {
            modulus,
            m_from,
            m_to,
            pairs,
            around,
            nprobe,
            n0_max,
        } => {
            let m_to = m_to.unwrap_or(*m_from);
            if m_to < *m_from {
                return Err(UsageError(format!("--m-to {m_to} is below --m-from {m_from}")));
            }
            let generator = match (pairs, around) {
                (Some(path), _) => read_pairs(path)?,
                (None, Some(id)) => {
                    let base = select(&registry, std::slice::from_ref(id))?[0];
                    if base.modulus() != *modulus {
                        return Err(UsageError(format!(
                            "{id} has modulus {}, not {modulus}",
                            base.modulus()
                        )));
                    }
                    neighbours(base)
                }
                (None, None) => unreachable!("clap requires one of --pairs, --around"),
            };
            let found = search_candidates(*modulus, *m_from..=m_to, generator, *nprobe, *n0_max)?;
            let records: Vec<RecordOut> = found.iter().map(record_out).collect();
            emit_search(cli.format, &records, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn exit_for(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn load(path: Option<&PathBuf>) -> CliResult<Vec<IdentitySpec>> {
    let path = path
        .cloned()
        .or_else(|| std::env::var_os(REGISTRY_ENV).map(PathBuf::from));
    let text = match path {
        Some(p) => std::fs::read_to_string(&p)
            .map_err(|e| UsageError(format!("cannot read registry {}: {e}", p.display())))?,
        None => BUILTIN_REGISTRY.to_string(),
    };
    Ok(load_registry(&text)?)
}

fn select<'a>(registry: &'a [IdentitySpec], ids: &[String]) -> CliResult<Vec<&'a IdentitySpec>> {
    ids.iter()
        .map(|id| {
            registry
                .iter()
                .find(|s| s.name() == id)
                .ok_or_else(|| UsageError(format!("unknown spec id {id:?}")))
        })
        .collect()
}

fn default_nmax(spec: &IdentitySpec) -> u64 {
    match spec.status() {
        Status::Proven => DEFAULT_NMAX_PROVEN,
        Status::Conjectured => DEFAULT_NMAX_CONJECTURED,
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn verify_many(specs: &[&IdentitySpec], nmax: Option<u64>) -> CliResult<Vec<VerifyReport>> {
    use rayon::prelude::*;
    let reports: Vec<CliResult<VerifyReport>> = specs
        .par_iter()
        .map(|s| verify_one(s, nmax.unwrap_or_else(|| default_nmax(s))))
        .collect();
    reports.into_iter().collect()
}

fn mismatch(f: &cpl_core::Failure, check: Option<&str>) -> Mismatch {
    Mismatch {
        n: f.n,
        left: f.left.to_string(),
        right: f.right.to_string(),
        check: check.map(str::to_string),
    }
}

fn verify_one(spec: &IdentitySpec, nmax: u64) -> CliResult<VerifyReport> {
    let start = Instant::now();
    let r = verify_identity(spec, nmax)
        .map_err(|e| UsageError(format!("{}: {e}", spec.name())))?;
    Ok(VerifyReport {
        spec: r.spec_name,
        n_from: r.n_from,
        n_to: r.n_to,
        holds: r.holds,
        first_failure: r.first_failure.as_ref().map(|f| mismatch(f, None)),
        below_n0: r.sub_n0_observations.iter().map(|f| mismatch(f, None)).collect(),
        timings_ms: elapsed_ms(start),
    })
}

fn oracle_one(spec: &IdentitySpec, nmax: u64, brute: Option<u64>) -> CliResult<OracleReport> {
    let start = Instant::now();
    let n = nmax as usize;
    let c = spec.modulus();
    let left = tuple_counts(c, spec.a(), 0, n);
    let right = tuple_counts(c, spec.b(), spec.m(), n);
    let uv = uv_table(spec, n);
    let n0 = spec.n0() as u64;
    let mut checks = vec!["tuples".to_string(), "uv".to_string()];
    let mut first: Option<Mismatch> = None;
    let mut note = |cand: Mismatch| {
        if first.as_ref().is_none_or(|f| cand.n < f.n) {
            first = Some(cand);
        }
    };
    if let Some(i) = (n0 as usize..=n).find(|&i| left[i] != right[i]) {
        note(Mismatch {
            n: i as u64,
            left: left[i].to_string(),
            right: right[i].to_string(),
            check: Some("tuples".into()),
        });
    }
    if let Some(i) = (0..=n).find(|&i| uv[i].0 != uv[i].1) {
        note(Mismatch {
            n: i as u64,
            left: uv[i].0.to_string(),
            right: uv[i].1.to_string(),
            check: Some("uv".into()),
        });
    }
    if let Some(b) = brute {
        checks.push("brute".into());
        let b = b.min(nmax);
        let bl = brute_tuple_counts(c, spec.a(), 0, b)?;
        let br = brute_tuple_counts(c, spec.b(), spec.m(), b)?;
        for i in 0..=b as usize {
            for (side, brute, dp) in [("brute-left", bl[i], &left[i]), ("brute-right", br[i], &right[i])] {
                if u64::try_from(dp).ok() != Some(brute) {
                    note(Mismatch {
                        n: i as u64,
                        left: brute.to_string(),
                        right: dp.to_string(),
                        check: Some(side.into()),
                    });
                }
            }
        }
    }
    Ok(OracleReport {
        spec: spec.name().to_string(),
        n_from: 0,
        n_to: nmax,
        holds: first.is_none(),
        first_failure: first,
        checks,
        timings_ms: elapsed_ms(start),
    })
}

fn bijection(tag: Tag, value_max: i64) -> BijectionReport {
    let start = Instant::now();
    let result = exhaustive_match(tag, value_max);
    let timings_ms = elapsed_ms(start);
    let mut report = BijectionReport {
        lemma: tag.as_str().to_string(),
        identity: tag.identity().to_string(),
        value_max,
        holds: result.is_ok(),
        elements: 0,
        cases: Vec::new(),
        values: Vec::new(),
        failure: None,
        timings_ms,
    };
    match result {
        Ok(m) => {
            report.elements = m.elements;
            report.cases = m
                .cases
                .into_iter()
                .map(|c| CaseRow {
                    case: c.case,
                    family: c.family,
                    elements: c.elements,
                })
                .collect();
            report.values = m
                .values
                .into_iter()
                .map(|v| CountRow {
                    value: v.value,
                    left: v.left,
                    right: v.right,
                    expected_left: v.expected_left,
                    expected_right: v.expected_right,
                })
                .collect();
        }
        Err(Error::Certificate {
            clause,
            element,
            detail,
        }) => {
            report.failure = Some(CertificateFailure {
                clause,
                element,
                detail,
            });
        }
        Err(other) => {
            report.failure = Some(CertificateFailure {
                clause: "error".into(),
                element: String::new(),
                detail: other.to_string(),
            });
        }
    }
    report
}

fn read_pairs(path: &PathBuf) -> CliResult<Vec<(Coefficients, Coefficients)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read pairs {}: {e}", path.display())))?;
    let raw: Vec<PairIn> = serde_json::from_str(&text)
        .map_err(|e| UsageError(format!("pairs {}: {e}", path.display())))?;
    raw.into_iter()
        .enumerate()
        .map(|(i, p)| {
            let conv = |v: Vec<u32>, side: &str| -> CliResult<Coefficients> {
                let len = v.len();
                v.try_into().map_err(|_| {
                    UsageError(format!("pair #{i}: {side} has {len} entries, expected {RANK}"))
                })
            };
            Ok((conv(p.a, "A")?, conv(p.b, "B")?))
        })
        .collect()
}

/// The entry itself, then every change of one coefficient by ±1 that stays in `[0, C/2]`.
fn neighbours(spec: &IdentitySpec) -> Vec<(Coefficients, Coefficients)> {
    let half = spec.modulus() / 2;
    let (a, b) = (*spec.a(), *spec.b());
    let mut out = vec![(a, b)];
    for side in 0..2 {
        for i in 0..RANK {
            for delta in [-1i64, 1] {
                let (mut a2, mut b2) = (a, b);
                let target = if side == 0 { &mut a2 } else { &mut b2 };
                let v = target[i] as i64 + delta;
                if v < 0 || v > half as i64 {
                    continue;
                }
                target[i] = v as u32;
                out.push((a2, b2));
            }
        }
    }
    out
}

fn catalog_row(s: &IdentitySpec) -> CatalogRow {
    CatalogRow {
        name: s.name().to_string(),
        status: s.status().as_str().to_string(),
        source: s.source().to_string(),
        modulus: s.modulus(),
        a: s.a().to_vec(),
        b: s.b().to_vec(),
        m: s.m(),
        n0: s.n0(),
        p: s.p(),
        factor: s.factor().to_string(),
    }
}

fn record_out(s: &IdentitySpec) -> RecordOut {
    RecordOut {
        name: s.name().to_string(),
        status: s.status().as_str().to_string(),
        source: s.source().to_string(),
        modulus: s.modulus(),
        a: s.a().to_vec(),
        b: s.b().to_vec(),
        m: s.m(),
        n0: s.n0(),
    }
}

// --- rendering -----------------------------------------------------------------------------

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn opt(m: &Option<Mismatch>, f: impl Fn(&Mismatch) -> String) -> String {
    m.as_ref().map(f).unwrap_or_default()
}

fn emit_json<T: Serialize>(value: &T, out: &mut dyn Write) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

fn emit_table(format: Format, headers: &[&str], rows: &[Vec<String>], out: &mut dyn Write) -> CliResult<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(headers).map_err(|e| UsageError(e.to_string()))?;
            for r in rows {
                w.write_record(r).map_err(|e| UsageError(e.to_string()))?;
            }
            w.flush()?;
        }
        Format::Markdown => {
            writeln!(out, "| {} |", headers.join(" | "))?;
            writeln!(out, "|{}", "---|".repeat(headers.len()))?;
            for r in rows {
                writeln!(out, "| {} |", r.join(" | "))?;
            }
        }
        Format::Json => unreachable!("json is emitted through serde"),
    }
    Ok(())
}

fn emit_catalog(format: Format, rows: &[CatalogRow], out: &mut dyn Write) -> CliResult<()> {
    if format == Format::Json {
        return emit_json(&rows, out);
    }
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                r.status.clone(),
                r.source.clone(),
                r.modulus.to_string(),
                join(&r.a),
                join(&r.b),
                r.m.to_string(),
                r.n0.to_string(),
                r.factor.clone(),
            ]
        })
        .collect();
    emit_table(
        format,
        &["name", "status", "source", "C", "A", "B", "m", "N0", "factor"],
        &table,
        out,
    )
}

fn emit_verify(format: Format, reports: &[VerifyReport], out: &mut dyn Write) -> CliResult<()> {
    if format == Format::Json {
        return emit_json(&reports, out);
    }
    let table: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.spec.clone(),
                r.n_from.to_string(),
                r.n_to.to_string(),
                r.holds.to_string(),
                opt(&r.first_failure, |f| f.n.to_string()),
                opt(&r.first_failure, |f| f.left.clone()),
                opt(&r.first_failure, |f| f.right.clone()),
                r.below_n0
                    .iter()
                    .map(|f| f.n.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                r.timings_ms.to_string(),
            ]
        })
        .collect();
    emit_table(
        format,
        &[
            "spec",
            "n_from",
            "n_to",
            "holds",
            "failure_N",
            "failure_left",
            "failure_right",
            "below_n0",
            "timings_ms",
        ],
        &table,
        out,
    )
}

fn emit_oracle(format: Format, reports: &[OracleReport], out: &mut dyn Write) -> CliResult<()> {
    if format == Format::Json {
        return emit_json(&reports, out);
    }
    let table: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.spec.clone(),
                r.n_from.to_string(),
                r.n_to.to_string(),
                r.holds.to_string(),
                r.checks.join(" "),
                opt(&r.first_failure, |f| f.check.clone().unwrap_or_default()),
                opt(&r.first_failure, |f| f.n.to_string()),
                opt(&r.first_failure, |f| f.left.clone()),
                opt(&r.first_failure, |f| f.right.clone()),
                r.timings_ms.to_string(),
            ]
        })
        .collect();
    emit_table(
        format,
        &[
            "spec",
            "n_from",
            "n_to",
            "holds",
            "checks",
            "failure_check",
            "failure_N",
            "failure_left",
            "failure_right",
            "timings_ms",
        ],
        &table,
        out,
    )
}

fn emit_bijection(format: Format, r: &BijectionReport, out: &mut dyn Write) -> CliResult<()> {
    if format == Format::Json {
        return emit_json(r, out);
    }
    if let Some(f) = &r.failure {
        return emit_table(
            format,
            &["lemma", "value_max", "holds", "clause", "element", "detail"],
            &[vec![
                r.lemma.clone(),
                r.value_max.to_string(),
                "false".into(),
                f.clause.clone(),
                f.element.clone(),
                f.detail.clone(),
            ]],
            out,
        );
    }
    let cases: Vec<Vec<String>> = r
        .cases
        .iter()
        .map(|c| vec![c.case.clone(), c.family.clone(), c.elements.to_string()])
        .collect();
    let values: Vec<Vec<String>> = r
        .values
        .iter()
        .map(|v| {
            vec![
                v.value.to_string(),
                v.left.to_string(),
                v.right.to_string(),
                v.expected_left.to_string(),
                v.expected_right.to_string(),
            ]
        })
        .collect();
    if format == Format::Markdown {
        writeln!(
            out,
            "{} (identity {}): {} elements up to value {}, all clauses pass\n",
            r.lemma, r.identity, r.elements, r.value_max
        )?;
        emit_table(format, &["case", "family", "elements"], &cases, out)?;
        writeln!(out)?;
    }
    emit_table(
        format,
        &["value", "left", "right", "expected_left", "expected_right"],
        &values,
        out,
    )
}

fn emit_search(format: Format, records: &[RecordOut], out: &mut dyn Write) -> CliResult<()> {
    if format == Format::Json {
        return emit_json(&records, out);
    }
    let table: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                r.modulus.to_string(),
                join(&r.a),
                join(&r.b),
                r.m.to_string(),
                r.n0.to_string(),
            ]
        })
        .collect();
    emit_table(format, &["name", "C", "A", "B", "m", "N0"], &table, out)
}

