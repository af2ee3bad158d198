//! Report assembly and emission.
//!
//! The table format puts degrees across the top, one row per quantity:
//! one header row of degrees `k`, one row per quantity, blank cells for
//! zeros. The JSON schema is versioned and stores every integer as a
//! decimal string; a JSON report parses back into an identical value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use polespec::suite::{Analysis, IdentityReport};
use polespec::Spectrum;

pub const SCHEMA: &str = "polespec-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitFormat {
    Table,
    Json,
    Csv,
}

/// Which quotient variants to show in the comparison table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WotzlawSelection {
    Powers,
    Symbolic,
    Both,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema: String,
    pub input: InputEcho,
    pub mode: String,
    pub window: Window,
    /// Row name -> sorted `[k, value]` cells, zeros omitted.
    pub tables: Vec<TableRow>,
    pub defects: Vec<(String, String)>,
    pub spectra: SpectraLines,
    pub wotzlaw: Vec<WotzlawEntry>,
    pub checks: Vec<CheckEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct InputEcho {
    pub n: String,
    pub d: String,
    pub tau: String,
    pub poly: String,
    pub points: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Window {
    pub kmin: String,
    pub kmax: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TableRow {
    pub label: String,
    pub cells: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SpectraLines {
    pub pole: Vec<String>,
    pub steenbrink: Vec<String>,
    pub pole_level0: Vec<String>,
    pub pole_level1: Vec<String>,
    pub steenbrink_level0: Vec<String>,
    pub steenbrink_level1: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WotzlawEntry {
    pub q: String,
    pub degree: String,
    pub powers: Option<String>,
    pub symbolic: Option<String>,
    pub hodge: String,
    pub proven_powers: bool,
    pub proven_symbolic: bool,
    pub matches_powers: Option<bool>,
    pub matches_symbolic: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckEntry {
    pub name: String,
    pub status: String,
    pub witnesses: Vec<String>,
}

pub const TABLE_ROWS: &[&str] = &[
    "gamma_k", "mu_k", "snu_k", "mu2_k", "snu2_k", "Sp_P", "Sp",
];

impl Report {
    pub fn from_analysis(
        analysis: &Analysis,
        identity: &IdentityReport,
        poly_echo: &str,
        wotzlaw_sel: WotzlawSelection,
    ) -> Report {
        let row_of_usize = |m: &BTreeMap<i64, usize>| -> Vec<(String, String)> {
            m.iter()
                .filter(|(&k, &v)| k >= 1 && v != 0)
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect()
        };
        let row_of_spectrum = |s: &Spectrum| -> Vec<(String, String)> {
            s.iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect()
        };
        let gamma_row: Vec<(String, String)> = analysis
            .gamma
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();

        let tables = vec![
            TableRow {
                label: "gamma_k".into(),
                cells: gamma_row,
            },
            TableRow {
                label: "mu_k".into(),
                cells: row_of_usize(&analysis.mu),
            },
            TableRow {
                label: "snu_k".into(),
                cells: row_of_usize(&analysis.snu),
            },
            TableRow {
                label: "mu2_k".into(),
                cells: row_of_usize(&analysis.mu2),
            },
            TableRow {
                label: "snu2_k".into(),
                cells: row_of_usize(&analysis.snu2),
            },
            TableRow {
                label: "Sp_P".into(),
                cells: row_of_spectrum(&analysis.sp_pole),
            },
            TableRow {
                label: "Sp".into(),
                cells: row_of_spectrum(&analysis.sp),
            },
        ];

        let defects = analysis
            .defects
            .iter()
            .filter(|(_, &v)| v != 0)
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();

        let wotzlaw = analysis
            .wotzlaw
            .iter()
            .map(|row| {
                let show_powers = wotzlaw_sel != WotzlawSelection::Symbolic;
                let show_symbolic = wotzlaw_sel != WotzlawSelection::Powers;
                WotzlawEntry {
                    q: row.q.to_string(),
                    degree: row.degree.to_string(),
                    powers: show_powers.then(|| row.powers_dim.to_string()),
                    symbolic: show_symbolic.then(|| row.symbolic_dim.to_string()),
                    hodge: row.hodge_dim.to_string(),
                    proven_powers: row.proven_powers,
                    proven_symbolic: row.proven_symbolic,
                    matches_powers: show_powers
                        .then_some(row.powers_dim as i64 == row.hodge_dim),
                    matches_symbolic: show_symbolic
                        .then_some(row.symbolic_dim as i64 == row.hodge_dim),
                }
            })
            .collect();

        let checks = identity
            .checks
            .iter()
            .map(|c| CheckEntry {
                name: c.name.to_string(),
                status: c.status.as_str().to_string(),
                witnesses: c.witnesses.iter().map(|w| w.to_string()).collect(),
            })
            .collect();

        Report {
            schema: SCHEMA.to_string(),
            input: InputEcho {
                n: analysis.n.to_string(),
                d: analysis.d.to_string(),
                tau: analysis.tau().to_string(),
                poly: poly_echo.to_string(),
                points: analysis.cert.points.iter().map(|p| p.to_string()).collect(),
            },
            mode: match analysis.mode {
                polespec::ArithMode::Rational => "rational".to_string(),
                polespec::ArithMode::Modular { primes } => format!("modular({primes})"),
            },
            window: Window {
                kmin: "1".to_string(),
                kmax: analysis.kmax.to_string(),
            },
            tables,
            defects,
            spectra: SpectraLines {
                pole: analysis.sp_pole.canonical_lines(),
                steenbrink: analysis.sp.canonical_lines(),
                pole_level0: analysis.refined.sp_pole0.canonical_lines(),
                pole_level1: analysis.refined.sp_pole1.canonical_lines(),
                steenbrink_level0: analysis.refined.sp0.canonical_lines(),
                steenbrink_level1: analysis.refined.sp1.canonical_lines(),
            },
            wotzlaw,
            checks,
        }
    }

    pub fn emit(&self, format: EmitFormat) -> Vec<u8> {
        match format {
            EmitFormat::Table => self.emit_table().into_bytes(),
            EmitFormat::Json => {
                let mut bytes = serde_json::to_vec_pretty(self).expect("report serializes");
                bytes.push(b'\n');
                bytes
            }
            EmitFormat::Csv => self.emit_csv().into_bytes(),
        }
    }

    pub fn parse_json(bytes: &[u8]) -> Result<Report, serde_json::Error> {
        serde_json::from_slice(bytes)
    }

    pub fn any_check_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == "fail")
    }

    fn emit_table(&self) -> String {
        let mut out = String::new();
        let kmin: i64 = self.window.kmin.parse().unwrap_or(1);
        let kmax: i64 = self.window.kmax.parse().unwrap_or(1);

        out.push_str(&format!("polespec report ({})\n", self.schema));
        out.push_str(&format!("poly: {}\n", self.input.poly));
        out.push_str(&format!(
            "n: {}  d: {}  tau: {}  mode: {}  window: k = {}..{}\n",
            self.input.n, self.input.d, self.input.tau, self.mode, kmin, kmax
        ));
        if self.input.points.is_empty() {
            out.push_str("points: none (smooth)\n");
        } else {
            out.push_str(&format!("points: {}\n", self.input.points.join("  ")));
        }
        out.push('\n');

        // Dimension and spectrum table, k across the top, blanks for zero.
        let ks: Vec<i64> = (kmin..=kmax).collect();
        let lookup = |row: &TableRow, k: i64| -> String {
            let key = k.to_string();
            row.cells
                .iter()
                .find(|(kk, _)| *kk == key)
                .map(|(_, v)| v.clone())
                .unwrap_or_default()
        };
        let label_width = TABLE_ROWS.iter().map(|r| r.len()).max().unwrap_or(0);
        let mut widths: Vec<usize> = Vec::with_capacity(ks.len());
        for &k in &ks {
            let mut w = k.to_string().len();
            for row in &self.tables {
                w = w.max(lookup(row, k).len());
            }
            widths.push(w);
        }
        out.push_str(&format!("{:<label_width$} |", "k"));
        for (i, &k) in ks.iter().enumerate() {
            out.push_str(&format!(" {:>width$}", k, width = widths[i]));
        }
        out.push('\n');
        for row in &self.tables {
            out.push_str(&format!("{:<label_width$} |", row.label));
            for (i, &k) in ks.iter().enumerate() {
                out.push_str(&format!(" {:>width$}", lookup(row, k), width = widths[i]));
            }
            out.push('\n');
        }
        out.push('\n');

        out.push_str("defects (nonzero):");
        if self.defects.is_empty() {
            out.push_str(" none\n");
        } else {
            out.push('\n');
            for (k, v) in &self.defects {
                out.push_str(&format!("  def_{k} = {v}\n"));
            }
        }
        out.push('\n');

        out.push_str("spectra (canonical lines):\n");
        for (name, lines) in [
            ("Sp_P", &self.spectra.pole),
            ("Sp", &self.spectra.steenbrink),
            ("Sp_P^0", &self.spectra.pole_level0),
            ("Sp_P^1", &self.spectra.pole_level1),
            ("Sp^0", &self.spectra.steenbrink_level0),
            ("Sp^1", &self.spectra.steenbrink_level1),
        ] {
            out.push_str(&format!("  {name}:"));
            if lines.is_empty() {
                out.push_str(" 0\n");
            } else {
                out.push('\n');
                for line in lines {
                    out.push_str(&format!("    {line}\n"));
                }
            }
        }
        out.push('\n');

        out.push_str("graded quotient comparison:\n");
        out.push_str("  q  degree  powers  symbolic  hodge  proven      match\n");
        for row in &self.wotzlaw {
            let proven = match (row.proven_powers, row.proven_symbolic) {
                (true, true) => "both",
                (false, true) => "symbolic",
                (true, false) => "powers",
                (false, false) => "none",
            };
            let matches = match (row.matches_powers, row.matches_symbolic) {
                (Some(a), Some(b)) if a && b => "yes".to_string(),
                (Some(a), None) => if a { "yes" } else { "no" }.to_string(),
                (None, Some(b)) => if b { "yes" } else { "no" }.to_string(),
                (Some(_), Some(_)) => "no".to_string(),
                (None, None) => "-".to_string(),
            };
            out.push_str(&format!(
                "  {:<2} {:<7} {:<7} {:<9} {:<6} {:<11} {}\n",
                row.q,
                row.degree,
                row.powers.clone().unwrap_or_else(|| "-".into()),
                row.symbolic.clone().unwrap_or_else(|| "-".into()),
                row.hodge,
                proven,
                matches
            ));
        }
        out.push('\n');

        out.push_str("checks:\n");
        for c in &self.checks {
            if c.witnesses.is_empty() {
                out.push_str(&format!("  {:<24} {}\n", c.name, c.status));
            } else {
                out.push_str(&format!(
                    "  {:<24} {} at {}\n",
                    c.name,
                    c.status,
                    c.witnesses.join(",")
                ));
            }
        }
        out
    }

    fn emit_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("section,label,key,value\n");
        out.push_str(&format!("input,n,,{}\n", self.input.n));
        out.push_str(&format!("input,d,,{}\n", self.input.d));
        out.push_str(&format!("input,tau,,{}\n", self.input.tau));
        out.push_str(&format!("input,mode,,{}\n", self.mode));
        for row in &self.tables {
            for (k, v) in &row.cells {
                out.push_str(&format!("table,{},{},{}\n", row.label, k, v));
            }
        }
        for (k, v) in &self.defects {
            out.push_str(&format!("defect,def_k,{k},{v}\n"));
        }
        for (name, lines) in [
            ("Sp_P", &self.spectra.pole),
            ("Sp", &self.spectra.steenbrink),
        ] {
            for line in lines {
                let (key, value) = line.split_once(": ").unwrap_or((line.as_str(), ""));
                out.push_str(&format!("spectrum,{name},{key},{value}\n"));
            }
        }
        for w in &self.wotzlaw {
            out.push_str(&format!("wotzlaw,q{},degree,{}\n", w.q, w.degree));
            if let Some(p) = &w.powers {
                out.push_str(&format!("wotzlaw,q{},powers,{p}\n", w.q));
            }
            if let Some(s) = &w.symbolic {
                out.push_str(&format!("wotzlaw,q{},symbolic,{s}\n", w.q));
            }
            out.push_str(&format!("wotzlaw,q{},hodge,{}\n", w.q, w.hodge));
        }
        for c in &self.checks {
            out.push_str(&format!("check,{},status,{}\n", c.name, c.status));
        }
        out
    }
}

impl std::str::FromStr for EmitFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(EmitFormat::Table),
            "json" => Ok(EmitFormat::Json),
            "csv" => Ok(EmitFormat::Csv),
            other => Err(format!("unknown format '{other}' (table|json|csv)")),
        }
    }
}

impl std::str::FromStr for WotzlawSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "powers" => Ok(WotzlawSelection::Powers),
            "symbolic" => Ok(WotzlawSelection::Symbolic),
            "both" => Ok(WotzlawSelection::Both),
            other => Err(format!("unknown variant '{other}' (powers|symbolic|both)")),
        }
    }
}

/// Pass/fail summary of the check section, used for the exit code.
pub fn check_summary(report: &Report) -> (usize, usize) {
    let failed = report.checks.iter().filter(|c| c.status == "fail").count();
    (report.checks.len(), failed)
}
