//! Command line entry point.
//!
//! Exit codes: 0 all enabled checks pass; 1 usage or parse error; 2 the
//! ordinary-double-point certification failed; 3 an identity check failed
//! (an input outside the hypothesis, or a bug).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use polespec::ArithMode;
use polespec_cli::{parse_check_selection, run, EmitFormat, JobSpec, WotzlawSelection};

#[derive(Parser)]
#[command(
    name = "polespec",
    about = "Exact Koszul cohomology, pole order spectral pages and spectra of \
             projective hypersurfaces with ordinary double points",
    version
)]
struct Cli {
    /// Polynomial: a file path or an inline expression such as
    /// "x^2*y^2 + x^2*z^2 + y^2*z^2"
    #[arg(long)]
    poly: String,

    /// Singular point list file, one point per line ("0:1:-1"); omit for a
    /// smooth hypersurface
    #[arg(long)]
    points: Option<PathBuf>,

    /// Upper end of the degree window (default covers all spectra supports)
    #[arg(long)]
    kmax: Option<i64>,

    /// Arithmetic mode for rank computations
    #[arg(long, default_value = "rational", value_parser = ["rational", "modular"])]
    mode: String,

    /// Number of primes for modular certification
    #[arg(long, default_value_t = 3)]
    primes: usize,

    /// Output format
    #[arg(long, default_value = "table")]
    emit: EmitFormat,

    /// Identity checks to run: "all" or a comma separated list
    #[arg(long, default_value = "all")]
    checks: String,

    /// Which quotient variants to report
    #[arg(long, default_value = "both")]
    wotzlaw: WotzlawSelection,

    /// Write the report to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let poly = if std::path::Path::new(&cli.poly).is_file() {
        match std::fs::read_to_string(&cli.poly) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("polespec: cannot read {}: {e}", cli.poly);
                return ExitCode::from(1);
            }
        }
    } else {
        cli.poly.clone()
    };

    let points = match &cli.points {
        None => String::new(),
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("polespec: cannot read {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
    };

    let checks = match parse_check_selection(&cli.checks) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("polespec: {e}");
            return ExitCode::from(1);
        }
    };

    let job = JobSpec {
        poly,
        points,
        kmax: cli.kmax,
        mode: match cli.mode.as_str() {
            "modular" => ArithMode::Modular { primes: cli.primes },
            _ => ArithMode::Rational,
        },
        emit: cli.emit,
        checks,
        wotzlaw: cli.wotzlaw,
    };

    let report = match run(&job) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("polespec: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };

    let bytes = report.emit(job.emit);
    let wrote = match &cli.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| e.to_string()),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = wrote {
        eprintln!("polespec: cannot write report: {e}");
        return ExitCode::from(1);
    }

    if report.any_check_failed() {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
