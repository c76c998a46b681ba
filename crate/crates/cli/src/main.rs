use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use hjpoly::ratlin::parse_rat;
use hjpoly_cli::{
    cmd_build, cmd_certify, cmd_export, cmd_hj, cmd_report, cmd_solve, write_file, BuildOptions, CliError,
    ExportFormat, ReportOptions, RunManifest, SolveMode, Strategy, DEFAULT_OFF_DIGITS,
};

#[derive(Parser)]
#[command(name = "hjpoly", version, about = "Hales-Jewett hypergraphs realized as facets of polytopes")]
struct Cli {
    /// Worker threads for the parallel stages (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct BuildArgs {
    #[arg(short)]
    d: usize,
    #[arg(short)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Override ε, as "p/q".
    #[arg(long)]
    eps: Option<String>,
    /// Initial rounding precision in bits.
    #[arg(long)]
    precision: Option<u32>,
}

impl BuildArgs {
    fn options(&self) -> Result<BuildOptions, CliError> {
        let epsilon = match &self.eps {
            None => None,
            Some(s) => Some(parse_rat(s).ok_or_else(|| CliError::Usage(format!("bad --eps {s:?}")))?),
        };
        Ok(BuildOptions {
            epsilon,
            precision: self.precision,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write HJ(d,n) as hypergraph JSON.
    Hj {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute τ or χ of a hypergraph file.
    Solve {
        input: PathBuf,
        #[arg(long, default_value = "tau")]
        mode: String,
        #[arg(long, default_value = "exact")]
        strategy: String,
        #[arg(long)]
        out: PathBuf,
        /// Seconds; the exact τ solver then may return bounds only.
        #[arg(long)]
        time_budget: Option<f64>,
    },
    /// Build and certify a realization.
    Build {
        #[command(flatten)]
        args: BuildArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check the certificates stored in a realization file.
    Certify { input: PathBuf },
    /// Build, certify, then print a summary.
    Report {
        #[command(flatten)]
        args: BuildArgs,
        /// Also enumerate every facet of the hull.
        #[arg(long)]
        full_hull: bool,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// What to print on stdout: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Convert a realization file.
    Export {
        input: PathBuf,
        /// off (lossy decimals) or json (lossless).
        #[arg(long)]
        format: String,
        #[arg(long)]
        out: PathBuf,
        /// Decimal digits after the point for OFF.
        #[arg(long, default_value_t = DEFAULT_OFF_DIGITS)]
        digits: u32,
    },
}

fn run(cli: Cli, manifest: &mut RunManifest) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Hj { d, n, out } => {
            manifest.config.extend([("d".into(), d.to_string()), ("n".into(), n.to_string())]);
            let hj = manifest.timed("hj", || cmd_hj(d, n, &out))?;
            manifest.outcome = format!(
                "{} vertices, {} edges",
                hj.hypergraph.vertex_count(),
                hj.hypergraph.edge_count()
            );
        }
        Command::Solve {
            input,
            mode,
            strategy,
            out,
            time_budget,
        } => {
            manifest.config.extend([
                ("input".into(), input.display().to_string()),
                ("mode".into(), mode.clone()),
                ("strategy".into(), strategy.clone()),
            ]);
            let mode: SolveMode = mode.parse()?;
            let strategy: Strategy = strategy.parse()?;
            let budget = match time_budget {
                Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
                Some(s) => return Err(CliError::Usage(format!("bad --time-budget {s}"))),
                None => None,
            };
            let json = manifest.timed("solve", || cmd_solve(&input, mode, strategy, &out, budget))?;
            manifest.outcome = json.trim().to_string();
        }
        Command::Build { args, out } => {
            echo_build(manifest, &args);
            let opts = args.options()?;
            let real = manifest.timed("build", || cmd_build(args.d, args.n, args.seed, &opts, &out))?;
            manifest.outcome = format!(
                "certified {} points, {} lines at {} bits",
                real.realization.points.len(),
                real.certificates.lines.len(),
                real.realization.precision_bits
            );
        }
        Command::Certify { input } => {
            manifest.config.insert("input".into(), input.display().to_string());
            let msg = manifest.timed("certify", || cmd_certify(&input))?;
            print!("{msg}");
            manifest.outcome = msg.trim().to_string();
        }
        Command::Report {
            args,
            full_hull,
            out,
            format,
        } => {
            echo_build(manifest, &args);
            manifest.config.insert("full_hull".into(), full_hull.to_string());
            if format != "text" && format != "json" {
                return Err(CliError::Usage(format!("unknown format {format:?} (expected text or json)")));
            }
            let opts = ReportOptions {
                build: args.options()?,
                full_hull,
                subset_cap: None,
            };
            let report = manifest.timed("report", || cmd_report(args.d, args.n, args.seed, &opts))?;
            let json = report.to_json();
            if let Some(out) = out {
                write_file(&out, &format!("{json}\n"))?;
            }
            if format == "json" {
                println!("{json}");
            } else {
                print!("{}", report.summary());
            }
            if !report.all_passed() {
                return Err(CliError::Failure("a report check failed".into()));
            }
            manifest.outcome = "all checks passed".into();
        }
        Command::Export {
            input,
            format,
            out,
            digits,
        } => {
            manifest.config.extend([
                ("input".into(), input.display().to_string()),
                ("format".into(), format.clone()),
            ]);
            let format: ExportFormat = format.parse()?;
            manifest.timed("export", || cmd_export(&input, format, &out, digits))?;
            manifest.outcome = format!("wrote {}", out.display());
        }
    }
    Ok(())
}

fn echo_build(manifest: &mut RunManifest, args: &BuildArgs) {
    manifest.config.extend([
        ("d".into(), args.d.to_string()),
        ("n".into(), args.n.to_string()),
        ("seed".into(), args.seed.to_string()),
        ("eps".into(), args.eps.clone().unwrap_or_else(|| "auto".into())),
        (
            "precision".into(),
            args.precision.map_or_else(|| "default".into(), |p| p.to_string()),
        ),
    ]);
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Hj { .. } => "hj",
        Command::Solve { .. } => "solve",
        Command::Build { .. } => "build",
        Command::Certify { .. } => "certify",
        Command::Report { .. } => "report",
        Command::Export { .. } => "export",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut manifest = RunManifest::new(command_name(&cli.command));
    let code = match run(cli, &mut manifest) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            manifest.outcome = e.to_string();
            e.exit_code()
        }
    };
    eprintln!("{}", manifest.to_json());
    ExitCode::from(code as u8)
}
