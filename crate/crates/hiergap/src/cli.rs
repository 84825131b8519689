//! Command-line front end.
//!
//! Subcommands: `bands` (per-point dispersion table plus interval table),
//! `gaps` (interval table only), `hierarchical` (per-element gap tables,
//! intersection, containment report, band diagram), `fibonacci` (per-depth
//! interval tables and a stacked diagram), `verify` (randomized self-check
//! suite).
//!
//! Exit codes: 0 success, 1 usage/config/IO error, 2 verification failure.

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::interval::{complement_pairs, IntervalKind};
use crate::model::fibonacci_cell;
use crate::report::{
    bands_csv, fmt_g12, intervals_csv, render_band_svg, report_text, write_atomic, SvgTrack,
};
use crate::spectrum::{
    hierarchical_gaps, sample_grid, scan_spectrum, verify_containment, SpectrumResult,
    DEFAULT_EDGE_EPSILON, DEFAULT_SAMPLES,
};
use crate::verify::{all_passed, run_suite, Fault, VerifyOptions};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Word length at depth 20 is 6765 sites; deeper requests are refused.
pub const MAX_FIBONACCI_DEPTH: u32 = 20;

#[derive(Debug, Parser)]
#[command(
    name = "hiergap",
    version,
    about = "Floquet-Bloch band structure and hierarchical gap prediction for periodic lattices"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
#[derive(Debug)]
enum Cmd {
    /// Scan the dispersion relation; write per-point and interval tables
    Bands(RunArgs),
    /// Write the band/gap interval table only
    Gaps(RunArgs),
    /// Predict hierarchical gaps, verify containment, write tables and diagram
    Hierarchical(RunArgs),
    /// Scan the Fibonacci tiling family of the configured element pair
    Fibonacci(RunArgs),
    /// Run the randomized self-check suite
    Verify(VerifyArgs),
}

#[derive(Args)]
#[derive(Debug)]
struct RunArgs {
    /// Path to a JSON system description
    #[arg(long)]
    config: PathBuf,
    /// Output directory (default: the config's `out`, or "out")
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid points for spectral scans
    #[arg(long)]
    grid: Option<usize>,
    /// Bisection tolerance for band edges, in lambda
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for randomized checks
    #[arg(long)]
    seed: Option<u64>,
    /// Emit SVG diagrams (default)
    #[arg(long, overrides_with = "no_svg")]
    svg: bool,
    /// Suppress SVG diagrams
    #[arg(long, overrides_with = "svg")]
    no_svg: bool,
}

#[derive(Args)]
#[derive(Debug)]
struct VerifyArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Random trials per matrix-algebra check
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Inject a deliberate defect to exercise the failure exit path
    #[arg(long, hide = true, value_enum)]
    inject_fault: Option<FaultArg>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaultArg {
    NegateTrace,
}

/// Resolved invocation: config plus command-line overrides.
struct Run {
    config: SystemConfig,
    stem: String,
    out: PathBuf,
    grid: usize,
    tol: f64,
    seed: u64,
    svg: bool,
}

impl RunArgs {
    fn resolve(&self) -> Result<Run> {
        let config = SystemConfig::load(&self.config)?;
        let stem = self
            .config
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "system".into());
        Ok(Run {
            stem,
            out: self.out.clone().unwrap_or_else(|| PathBuf::from(config.out_dir())),
            grid: self.grid.unwrap_or_else(|| config.grid()),
            tol: self.tol.unwrap_or_else(|| config.tol()),
            seed: self.seed.unwrap_or_else(|| config.seed()),
            svg: if self.no_svg {
                false
            } else if self.svg {
                true
            } else {
                config.want_svg()
            },
            config,
        })
    }
}

impl Run {
    fn path(&self, suffix: &str) -> PathBuf {
        self.out.join(format!("{}_{}", self.stem, suffix))
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Bands(args) => cmd_bands(&args.resolve()?),
        Cmd::Gaps(args) => cmd_gaps(&args.resolve()?),
        Cmd::Hierarchical(args) => cmd_hierarchical(&args.resolve()?),
        Cmd::Fibonacci(args) => cmd_fibonacci(&args.resolve()?),
        Cmd::Verify(args) => cmd_verify(&args),
    }
}

fn print_intervals(scan: &SpectrumResult) {
    for iv in &scan.intervals {
        println!("  {} ({}, {})", iv.kind.as_str(), fmt_g12(iv.lo), fmt_g12(iv.hi));
    }
}

fn cmd_bands(run: &Run) -> Result<i32> {
    let cell = run.config.cell()?;
    let range = run.config.lambda_range()?;
    let samples = sample_grid(&cell, range, run.grid, DEFAULT_EDGE_EPSILON)?;
    let scan = scan_spectrum(&cell, range, run.grid, run.tol)?;

    let bands_path = run.path("bands.csv");
    write_atomic(&bands_path, &bands_csv(&samples, cell.len()))?;
    let intervals_path = run.path("intervals.csv");
    write_atomic(&intervals_path, &intervals_csv(&scan.intervals))?;

    println!("{}: {} sites, {} grid points", cell.name, cell.len(), samples.len());
    print_intervals(&scan);
    println!("wrote {}", bands_path.display());
    println!("wrote {}", intervals_path.display());
    Ok(0)
}

fn cmd_gaps(run: &Run) -> Result<i32> {
    let cell = run.config.cell()?;
    let range = run.config.lambda_range()?;
    let scan = scan_spectrum(&cell, range, run.grid, run.tol)?;

    let intervals_path = run.path("intervals.csv");
    write_atomic(&intervals_path, &intervals_csv(&scan.intervals))?;

    println!("{}: {} intervals over ({}, {})", cell.name, scan.intervals.len(), fmt_g12(range.lo), fmt_g12(range.hi));
    print_intervals(&scan);
    println!("wrote {}", intervals_path.display());
    Ok(0)
}

fn cmd_hierarchical(run: &Run) -> Result<i32> {
    let cell = run.config.cell()?;
    let range = run.config.lambda_range()?;
    let elements = run.config.elements()?;
    let report = verify_containment(&cell, range, DEFAULT_SAMPLES)?;

    for (i, element) in elements.iter().enumerate() {
        let gaps = element.gap_set(range)?;
        write_atomic(&run.path(&format!("element_{}.csv", i + 1)), &intervals_csv(&gaps.intervals))?;
    }
    write_atomic(&run.path("hierarchical.csv"), &intervals_csv(&report.predicted))?;
    write_atomic(&run.path("report.txt"), &report_text(&cell.name, range, &report))?;

    if run.svg {
        let mut tracks = Vec::with_capacity(elements.len() + 1);
        for element in &elements {
            let gaps = element.gap_set(range)?;
            let pairs: Vec<(f64, f64)> = gaps.intervals.iter().map(|g| (g.lo, g.hi)).collect();
            tracks.push(SvgTrack {
                label: format!("{} ({})", element.label, element.kind.name()),
                pass_bands: complement_pairs(range, &pairs),
            });
        }
        let combined: Vec<(f64, f64)> =
            report.combined_gaps.iter().map(|g| (g.lo, g.hi)).collect();
        tracks.push(SvgTrack {
            label: "combined cell".into(),
            pass_bands: complement_pairs(range, &combined),
        });
        let hatched: Vec<(f64, f64)> = report.predicted.iter().map(|g| (g.lo, g.hi)).collect();
        let svg_path = run.path("hierarchical.svg");
        let title = format!("{}: hierarchical band gaps", cell.name);
        write_atomic(&svg_path, &render_band_svg(&title, range, &tracks, &hatched))?;
        println!("wrote {}", svg_path.display());
    }

    if report.predicted.is_empty() {
        println!("no hierarchical gaps predicted in ({}, {})", fmt_g12(range.lo), fmt_g12(range.hi));
    }
    for iv in &report.predicted {
        println!("predicted hierarchical gap: ({}, {})", fmt_g12(iv.lo), fmt_g12(iv.hi));
    }
    if !report.degenerate.is_empty() {
        eprintln!(
            "warning: degenerate elements with empty gap sets: {}",
            report.degenerate.join(", ")
        );
    }
    println!("wrote {}", run.path("hierarchical.csv").display());
    println!("wrote {}", run.path("report.txt").display());

    if report.containment_verified {
        println!("containment verified ({} samples)", report.samples_checked);
        Ok(0)
    } else {
        eprintln!("containment verification FAILED; this indicates an internal inconsistency");
        Ok(2)
    }
}

fn cmd_fibonacci(run: &Run) -> Result<i32> {
    let Some((a, b, depth)) = run.config.fibonacci_pair()? else {
        return Err(Error::config("the fibonacci command needs a fibonacci block in the config"));
    };
    if depth < 1 {
        return Err(Error::invalid("fibonacci depth must be >= 1"));
    }
    if depth > MAX_FIBONACCI_DEPTH {
        return Err(Error::invalid(format!(
            "fibonacci depth {depth} exceeds the maximum {MAX_FIBONACCI_DEPTH} (word length grows geometrically)"
        )));
    }
    let range = run.config.lambda_range()?;
    let predicted = hierarchical_gaps(&[a.clone(), b.clone()], range)?;
    let hatched: Vec<(f64, f64)> = predicted.intervals.iter().map(|g| (g.lo, g.hi)).collect();

    let mut tracks = Vec::with_capacity(depth as usize);
    for d in 1..=depth {
        let cell = fibonacci_cell(&a, &b, d)?;
        let scan = scan_spectrum(&cell, range, run.grid, run.tol)?;
        let table_path = run.path(&format!("f{d:02}_intervals.csv"));
        write_atomic(&table_path, &intervals_csv(&scan.intervals))?;
        let pass: Vec<(f64, f64)> = scan
            .intervals
            .iter()
            .filter(|iv| iv.kind == IntervalKind::PassBand)
            .map(|iv| (iv.lo, iv.hi))
            .collect();
        println!("depth {d}: {} sites, {} pass bands", cell.len(), pass.len());
        tracks.push(SvgTrack { label: format!("F{d} ({} sites)", cell.len()), pass_bands: pass });
    }

    if run.svg {
        let svg_path = run.path("fibonacci.svg");
        let title = format!("Fibonacci tilings of {} and {}", a.label, b.label);
        write_atomic(&svg_path, &render_band_svg(&title, range, &tracks, &hatched))?;
        println!("wrote {}", svg_path.display());
    }
    for iv in &predicted.intervals {
        println!("hierarchical gap (all depths): ({}, {})", fmt_g12(iv.lo), fmt_g12(iv.hi));
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let run = args.run.resolve()?;
    let cell = run.config.cell()?;
    let range = run.config.lambda_range()?;
    let opts = VerifyOptions {
        trials: args.trials,
        seed: run.seed,
        samples_per_interval: 64,
        fault: args.inject_fault.map(|f| match f {
            FaultArg::NegateTrace => Fault::NegateTrace,
        }),
    };
    let checks = run_suite(&cell, range, &opts)?;
    for c in &checks {
        println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    if all_passed(&checks) {
        println!("verification passed ({} checks)", checks.len());
        Ok(0)
    } else {
        eprintln!("verification FAILED");
        Ok(2)
    }
}
