//! Commands behind the `hjpoly` binary.
//!
//! Each command returns its result instead of printing it, so the tests can
//! drive the same code paths as the binary. Exit codes: 0 success, 1 a
//! certified failure, 2 bad input (usage, parse, I/O).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use hjpoly::certify::{self, certify_theorem, CertifyError, TheoremOptions};
use hjpoly::cover::{
    chi_bruteforce, chi_weak, tau_bruteforce, tau_exact, tau_exact_with_deadline, weak_coloring_bound,
    CoverError, WallClock,
};
use hjpoly::hj::{hj_hypergraph, HjError, HjHypergraph};
use hjpoly::io::{to_off, ChiSolutionFile, FormatError, HypergraphFile, RealizationFile, TauSolutionFile};
use hjpoly::ratlin::{format_rat, Rat};
use hjpoly::realize::{realize_pipeline, CertifiedRealization, DrawingConfig, RealizeError};
use num_bigint::BigInt;
use serde::Serialize;

/// Largest vertex count for which reports compute the weak chromatic number.
pub const REPORT_CHI_VERTEX_CAP: usize = 64;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io { path: PathBuf, source: std::io::Error },
    Parse(String),
    /// The computation ran and a check failed.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failure(_) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Parse(m) => write!(f, "parse: {m}"),
            CliError::Failure(m) => write!(f, "failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<HjError> for CliError {
    fn from(e: HjError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<RealizeError> for CliError {
    fn from(e: RealizeError) -> Self {
        match e {
            RealizeError::InvalidConfig(_) | RealizeError::DegenerateSize { .. } => {
                CliError::Usage(format!("realize: {e}"))
            }
            _ => CliError::Failure(format!("realize: {e}")),
        }
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::CapExceeded { .. } | CertifyError::Mismatch(..) => {
                CliError::Usage(format!("certify: {e}"))
            }
            _ => CliError::Failure(format!("certify: {e}")),
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

/// One per run, written to stderr by the binary.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub versions: BTreeMap<String, String>,
    pub timings_ms: BTreeMap<String, u128>,
    pub outcome: String,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        let mut versions = BTreeMap::new();
        versions.insert("hjpoly".to_string(), env!("CARGO_PKG_VERSION").to_string());
        RunManifest {
            command: command.to_string(),
            config: BTreeMap::new(),
            versions,
            timings_ms: BTreeMap::new(),
            outcome: String::new(),
        }
    }

    /// Runs `f` and records its wall time under `stage`.
    pub fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings_ms.insert(stage.to_string(), start.elapsed().as_millis());
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

pub fn cmd_hj(d: usize, n: usize, out: &Path) -> Result<HjHypergraph, CliError> {
    let hj = hj_hypergraph(d, n)?;
    write_file(out, &with_newline(HypergraphFile::from_hj(&hj).to_json()))?;
    Ok(hj)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    Tau,
    Chi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Exact,
    Bruteforce,
}

impl std::str::FromStr for SolveMode {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "tau" => Ok(SolveMode::Tau),
            "chi" => Ok(SolveMode::Chi),
            _ => Err(CliError::Usage(format!("unknown mode {s:?} (expected tau or chi)"))),
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "exact" => Ok(Strategy::Exact),
            "bruteforce" => Ok(Strategy::Bruteforce),
            _ => Err(CliError::Usage(format!(
                "unknown strategy {s:?} (expected exact or bruteforce)"
            ))),
        }
    }
}

/// Solves the hypergraph in `input` and writes the solution JSON to `out`;
/// returns that JSON. A time budget only applies to the exact `τ` solver,
/// which then may report bounds with `exact: false`.
pub fn cmd_solve(
    input: &Path,
    mode: SolveMode,
    strategy: Strategy,
    out: &Path,
    time_budget: Option<Duration>,
) -> Result<String, CliError> {
    let h = HypergraphFile::from_json(&read_file(input)?)?.hypergraph()?;
    let json = match mode {
        SolveMode::Tau => {
            let sol = match (strategy, time_budget) {
                (Strategy::Bruteforce, _) => tau_bruteforce(&h)?,
                (Strategy::Exact, None) => tau_exact(&h),
                (Strategy::Exact, Some(b)) => tau_exact_with_deadline(&h, &WallClock::after(b)),
            };
            serde_json::to_string(&TauSolutionFile::from(&sol))
        }
        SolveMode::Chi => {
            let (chi, coloring) = match strategy {
                Strategy::Exact => chi_weak(&h)?,
                Strategy::Bruteforce => chi_bruteforce(&h)?,
            };
            serde_json::to_string(&ChiSolutionFile::new(chi, &coloring))
        }
    }
    .expect("serializable");
    let json = with_newline(json);
    write_file(out, &json)?;
    Ok(json)
}

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    pub epsilon: Option<Rat>,
    pub precision: Option<u32>,
}

impl BuildOptions {
    pub fn config(&self, d: usize, n: usize, seed: u64) -> DrawingConfig {
        let mut cfg = DrawingConfig::new(d, n, seed);
        cfg.epsilon_override = self.epsilon.clone();
        if let Some(p) = self.precision {
            cfg.initial_precision = p;
            cfg.max_precision = cfg.max_precision.max(p);
        }
        cfg
    }
}

pub fn cmd_build(
    d: usize,
    n: usize,
    seed: u64,
    opts: &BuildOptions,
    out: &Path,
) -> Result<CertifiedRealization, CliError> {
    let real = realize_pipeline(&opts.config(d, n, seed))?;
    write_file(out, &with_newline(RealizationFile::from_certified(&real).to_json()))?;
    Ok(real)
}

/// Re-checks the certificates stored in a realization file.
pub fn cmd_certify(input: &Path) -> Result<String, CliError> {
    let file = RealizationFile::from_json(&read_file(input)?)?;
    let real = file.realization()?;
    let bundle = file
        .certificates()?
        .ok_or_else(|| CliError::Parse("file carries no certificates".into()))?;
    certify::verify_bundle(&real, &bundle)?;
    Ok(format!(
        "{}/{} line certificates and {}/{} vertex certificates verified\n",
        bundle.lines.len(),
        real.lines.len(),
        bundle.vertices.len(),
        real.points.len()
    ))
}

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub build: BuildOptions,
    pub full_hull: bool,
    pub subset_cap: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringCheck {
    pub chi: usize,
    pub tau_over_vertices: String,
    pub bound: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HullReport {
    pub facet_count: usize,
    pub simplicial: bool,
    pub lines_among_facets: bool,
    pub tau_facets: usize,
    pub rho_facets: String,
    pub tau_facets_at_least_tau_lines: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    pub epsilon: String,
    pub precision_bits: u32,
    pub vertex_count: usize,
    pub line_count: usize,
    pub lines_certified: usize,
    pub vertices_certified: usize,
    pub convex_position: bool,
    pub tau_hj: usize,
    pub rho_hj: String,
    pub coloring_check: Option<ColoringCheck>,
    pub full_hull: Option<HullReport>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// True when every computed check passed, including simpliciality.
    pub fn all_passed(&self) -> bool {
        self.lines_certified == self.line_count
            && self.convex_position
            && self.coloring_check.as_ref().is_none_or(|c| c.holds)
            && self.full_hull.as_ref().is_none_or(|h| {
                h.simplicial && h.lines_among_facets && h.tau_facets_at_least_tau_lines
            })
    }

    pub fn summary(&self) -> String {
        let (d, n) = (self.d, self.n);
        let mut s = String::new();
        let _ = writeln!(s, "HJ({d},{n}): {} vertices, {} lines", self.vertex_count, self.line_count);
        let _ = writeln!(s, "τ(HJ({d},{n})) = {}", self.tau_hj);
        let _ = writeln!(s, "ρ(HJ({d},{n})) = {}", self.rho_hj);
        let _ = writeln!(
            s,
            "realization: seed {}, ε = {}, {} bits",
            self.seed, self.epsilon, self.precision_bits
        );
        let _ = writeln!(s, "{}/{} lines certified as facets", self.lines_certified, self.line_count);
        let _ = writeln!(
            s,
            "{}/{} points certified as vertices",
            self.vertices_certified, self.vertex_count
        );
        match &self.coloring_check {
            Some(c) => {
                let _ = writeln!(
                    s,
                    "χ(HJ({d},{n})) = {}: τ/|V| = {} ≤ (χ−1)/χ = {} {}",
                    c.chi,
                    c.tau_over_vertices,
                    c.bound,
                    if c.holds { "holds" } else { "VIOLATED" }
                );
            }
            None => {
                let _ = writeln!(s, "χ not computed (more than {REPORT_CHI_VERTEX_CAP} vertices)");
            }
        }
        if let Some(h) = &self.full_hull {
            let _ = writeln!(
                s,
                "hull: {} facets, simplicial = {}, all lines among facets = {}",
                h.facet_count, h.simplicial, h.lines_among_facets
            );
            let _ = writeln!(
                s,
                "τ(H(Q)) = {} ≥ τ(HJ({d},{n})) = {}, ρ(H(Q)) = {}",
                h.tau_facets, self.tau_hj, h.rho_facets
            );
        }
        s
    }
}

fn ratio(a: usize, b: usize) -> Rat {
    Rat::new(BigInt::from(a), BigInt::from(b))
}

/// Builds `(d, n, seed)`, certifies it, and summarises the result.
///
/// The report is returned even when a check fails; callers decide the exit
/// status with [`Report::all_passed`].
pub fn cmd_report(d: usize, n: usize, seed: u64, opts: &ReportOptions) -> Result<Report, CliError> {
    let hj = hj_hypergraph(d, n)?;
    let cfg = opts.build.config(d, n, seed);
    let built = realize_pipeline(&cfg)?;
    let real = &built.realization;
    let theorem = certify_theorem(
        real,
        &hj,
        TheoremOptions {
            full_hull: opts.full_hull,
            subset_cap: opts.subset_cap,
        },
    )?;

    let v = hj.hypergraph.vertex_count();
    let tau_hj = match theorem.tau_lines {
        Some(t) => t,
        None => tau_exact(&hj.hypergraph).tau,
    };
    let rho = ratio(tau_hj, v);

    let coloring_check = if v <= REPORT_CHI_VERTEX_CAP {
        let (chi, _) = chi_weak(&hj.hypergraph)?;
        let bound = weak_coloring_bound(chi);
        Some(ColoringCheck {
            chi,
            tau_over_vertices: format_rat(&rho),
            bound: format_rat(&bound),
            holds: rho <= bound,
        })
    } else {
        None
    };

    let full_hull = match (&theorem.facet_hypergraph, theorem.tau_facets) {
        (Some(fh), Some(tau_facets)) => Some(HullReport {
            facet_count: fh.edge_count(),
            simplicial: theorem.simplicial.unwrap_or(false),
            lines_among_facets: theorem.lines_among_facets.unwrap_or(false),
            tau_facets,
            rho_facets: format_rat(&ratio(tau_facets, v)),
            tau_facets_at_least_tau_lines: tau_facets >= tau_hj,
        }),
        _ => None,
    };

    Ok(Report {
        d,
        n,
        seed,
        epsilon: format_rat(&real.epsilon),
        precision_bits: real.precision_bits,
        vertex_count: v,
        line_count: theorem.line_count,
        lines_certified: theorem.lines_certified,
        vertices_certified: built.certificates.vertices.len(),
        convex_position: theorem.convex_position,
        tau_hj,
        rho_hj: format_rat(&rho),
        coloring_check,
        full_hull,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Off,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "off" => Ok(ExportFormat::Off),
            "json" => Ok(ExportFormat::Json),
            _ => Err(CliError::Usage(format!("unknown format {s:?} (expected off or json)"))),
        }
    }
}

pub const DEFAULT_OFF_DIGITS: u32 = 17;

pub fn cmd_export(input: &Path, format: ExportFormat, out: &Path, digits: u32) -> Result<(), CliError> {
    let file = RealizationFile::from_json(&read_file(input)?)?;
    let real = file.realization()?;
    let text = match format {
        ExportFormat::Json => {
            let certs = file.certificates()?;
            with_newline(RealizationFile::from_realization(&real, certs.as_ref()).to_json())
        }
        ExportFormat::Off => to_off(&real, digits, &input.display().to_string()),
    };
    write_file(out, &text)
}
