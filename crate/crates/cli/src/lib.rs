//! Pipeline orchestration for the command line front end: parse the inputs,
//! run the analysis, emit the report.

pub mod parse;
pub mod report;

use polespec::suite::{Analysis, AnalysisError, CheckSelection, CHECK_NAMES};
use polespec::ArithMode;

pub use report::{EmitFormat, Report, WotzlawSelection};

/// A fully described job: inputs as text, window and mode knobs, output
/// format and check selection.
#[derive(Clone, Debug)]
pub struct JobSpec {
    /// Polynomial expression text.
    pub poly: String,
    /// Point list text (empty for a smooth hypersurface).
    pub points: String,
    pub kmax: Option<i64>,
    pub mode: ArithMode,
    pub emit: EmitFormat,
    pub checks: CheckSelection,
    pub wotzlaw: WotzlawSelection,
}

impl JobSpec {
    pub fn new(poly: impl Into<String>, points: impl Into<String>) -> JobSpec {
        JobSpec {
            poly: poly.into(),
            points: points.into(),
            kmax: None,
            mode: ArithMode::Rational,
            emit: EmitFormat::Table,
            checks: CheckSelection::All,
            wotzlaw: WotzlawSelection::Both,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("polynomial: {0}")]
    Poly(#[from] parse::PolyParseError),
    #[error("points: {0}")]
    Points(#[from] parse::PointParseError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("unknown check name '{0}'")]
    UnknownCheck(String),
}

impl RunError {
    /// Exit code contract: 1 usage/parse, 2 certification failure, other
    /// pipeline failures fall back to 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Analysis(e) if e.stage == "certification" => 2,
            _ => 1,
        }
    }
}

/// Parse a `--checks` flag value: `all` or a comma separated name list.
pub fn parse_check_selection(text: &str) -> Result<CheckSelection, RunError> {
    if text.trim() == "all" {
        return Ok(CheckSelection::All);
    }
    let mut set = std::collections::BTreeSet::new();
    for name in text.split(',') {
        let name = name.trim();
        if name.is_empty() {
            continue;
        }
        if !CHECK_NAMES.contains(&name) {
            return Err(RunError::UnknownCheck(name.to_string()));
        }
        set.insert(name.to_string());
    }
    Ok(CheckSelection::Only(set))
}

/// Run a job start to finish and return the deterministic report.
pub fn run(job: &JobSpec) -> Result<Report, RunError> {
    let mut f = parse::parse_polynomial(&job.poly)?;
    let points = parse::parse_points(&job.points, f.num_vars())?;
    if let Some(p) = points.first() {
        // A cone omits trailing variables from its equation; the point
        // list fixes the ambient dimension.
        if p.num_vars() > f.num_vars() {
            f = f.extend_vars(p.num_vars());
        }
    }
    let analysis = Analysis::compute(f, points, job.kmax, job.mode)?;
    let identity = analysis.identity_suite(&job.checks);
    Ok(Report::from_analysis(
        &analysis,
        &identity,
        job.poly.trim(),
        job.wotzlaw,
    ))
}
