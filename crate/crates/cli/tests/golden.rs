//! Golden corpus diffs, JSON round-trip, and determinism checks.

use std::path::Path;

use polespec::ArithMode;
use polespec_cli::{run, EmitFormat, JobSpec, Report};

const THREE: (&str, &str) = ("x^2*y^2 + x^2*z^2 + y^2*z^2", "1:0:0\n0:1:0\n0:0:1\n");
const SIX: (&str, &str) = (
    "x*y*z*(x+y+z)",
    "0:0:1\n0:1:0\n1:0:0\n0:1:-1\n1:0:-1\n1:-1:0\n",
);
const CAYLEY: (&str, &str) = (
    "x*y*z + x*y*w + x*z*w + y*z*w",
    "1:0:0:0\n0:1:0:0\n0:0:1:0\n0:0:0:1\n",
);

fn golden_path(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden/v1")
        .join(name)
}

fn assert_golden(name: &str, actual: &[u8]) {
    let path = golden_path(name);
    if std::env::var("UPDATE_GOLDEN").is_ok() {
        std::fs::write(&path, actual).expect("update golden file");
        return;
    }
    let expected = std::fs::read(&path)
        .unwrap_or_else(|e| panic!("cannot read golden file {}: {e}", path.display()));
    if expected != actual {
        panic!(
            "golden mismatch for {name}; run with UPDATE_GOLDEN=1 to refresh\n--- actual ---\n{}",
            String::from_utf8_lossy(actual)
        );
    }
}

fn job(input: (&str, &str), emit: EmitFormat) -> JobSpec {
    let mut j = JobSpec::new(input.0, input.1);
    j.emit = emit;
    j
}

#[test]
fn golden_tables_byte_exact() {
    for (input, name) in [
        (THREE, "three_node_quartic.txt"),
        (SIX, "six_node_quartic.txt"),
        (("x^4 + y^4 + z^4", ""), "fermat_quartic.txt"),
        (CAYLEY, "cayley_cubic.txt"),
        (("y^2*z - x^3 - x^2*z", "0:0:1\n"), "nodal_plane_cubic.txt"),
    ] {
        let j = job(input, EmitFormat::Table);
        let report = run(&j).unwrap();
        assert_golden(name, &report.emit(EmitFormat::Table));
    }
}

#[test]
fn golden_json_and_csv_byte_exact() {
    let j = job(THREE, EmitFormat::Json);
    let report = run(&j).unwrap();
    assert_golden("three_node_quartic.json", &report.emit(EmitFormat::Json));
    assert_golden("three_node_quartic.csv", &report.emit(EmitFormat::Csv));
}

#[test]
fn json_round_trip_is_identity() {
    for input in [THREE, SIX, CAYLEY] {
        let j = job(input, EmitFormat::Json);
        let report = run(&j).unwrap();
        let parsed = Report::parse_json(&report.emit(EmitFormat::Json)).unwrap();
        assert_eq!(report, parsed);
    }
}

#[test]
fn reports_are_deterministic_across_runs_and_thread_counts() {
    let j = job(SIX, EmitFormat::Table);
    let first = run(&j).unwrap().emit(EmitFormat::Table);
    let second = run(&j).unwrap().emit(EmitFormat::Table);
    assert_eq!(first, second);

    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let from_single_thread = single.install(|| run(&j).unwrap().emit(EmitFormat::Table));
    assert_eq!(first, from_single_thread);

    let mut modular = j.clone();
    modular.mode = ArithMode::Modular { primes: 3 };
    let m1 = run(&modular).unwrap().emit(EmitFormat::Json);
    let m2 = run(&modular).unwrap().emit(EmitFormat::Json);
    assert_eq!(m1, m2);
}

#[test]
fn blank_cell_convention_zero_renders_empty() {
    let j = job(SIX, EmitFormat::Table);
    let text = String::from_utf8(run(&j).unwrap().emit(EmitFormat::Table)).unwrap();
    // Sp row: zero at k = 5 renders blank between the entries at 4 and 6.
    let sp_line = text
        .lines()
        .find(|l| l.starts_with("Sp      |"))
        .expect("Sp row present");
    assert!(sp_line.contains(" 1 3   1"), "Sp row: {sp_line}");
    // and the negative entry is printed as is
    assert!(sp_line.contains("-3"), "Sp row: {sp_line}");
}

#[test]
fn exit_paths_and_stage_tagging() {
    // certification failure is tagged with its stage
    let j = JobSpec::new(THREE.0, "1:0:0\n"); // incomplete point list
    match run(&j) {
        Err(e) => {
            assert_eq!(e.exit_code(), 2, "{e}");
            assert!(e.to_string().contains("certification"), "{e}");
        }
        Ok(_) => panic!("expected certification failure"),
    }

    let j = JobSpec::new("x^2 + y^3", "");
    match run(&j) {
        Err(e) => assert_eq!(e.exit_code(), 1),
        Ok(_) => panic!("expected parse failure"),
    }
}
