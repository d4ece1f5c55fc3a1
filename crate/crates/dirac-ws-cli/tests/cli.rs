//! End-to-end tests of the installed binary: golden values, byte
//! determinism, JSON shape, parameter precedence, and the exit-code
//! contract (0 ok, 2 usage, 3 runtime, 4 failed checks).

// frozen reference values keep their full recorded precision
#![allow(clippy::excessive_precision)]

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

/// Constant-mass well levels, frozen from a 50-digit evaluation of the
/// quantization condition (decaying outside tails).
const WELL_LEVELS: [f64; 5] = [
    -0.41775719465170593,
    -0.23666025850900839,
    -0.01839775946169749,
    0.20990644946974685,
    0.42619055479568683,
];

/// Barrier transmission/reflection at e = 0.6 for the constant-mass
/// reference configuration, same provenance.
const T_REF: f64 = 0.36614334749319188881;
const R_REF: f64 = 0.63385665250680811119;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirac-ws"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn assert_exit(o: &Output, code: i32) {
    assert_eq!(
        o.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        String::from_utf8_lossy(&o.stdout),
        String::from_utf8_lossy(&o.stderr)
    );
}

fn stdout_str(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn csv_rows(text: &str) -> (Vec<&str>, Vec<Vec<&str>>) {
    let mut lines = text.lines();
    let header = lines.next().expect("header row").split(',').collect();
    let rows = lines.map(|l| l.split(',').collect()).collect();
    (header, rows)
}

/// Row whose abscissa (column `col`) is closest to `x`.
fn nearest_row<'a>(rows: &'a [Vec<&'a str>], col: usize, x: f64) -> &'a Vec<&'a str> {
    rows.iter()
        .min_by(|a, b| {
            let da = (a[col].parse::<f64>().unwrap() - x).abs();
            let db = (b[col].parse::<f64>().unwrap() - x).abs();
            da.total_cmp(&db)
        })
        .expect("nonempty table")
}

#[test]
fn fig1_golden_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["figure", "fig1", "--grid", "40", "--out", "fig1.csv"],
    );
    assert_exit(&o, 0);

    let text = fs::read_to_string(dir.path().join("fig1.csv")).unwrap();
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, ["e", "t_const", "r_const", "t_pdm", "r_pdm"]);
    assert_eq!(rows.len(), 40);

    let row = nearest_row(&rows, 0, 0.6);
    let t: f64 = row[1].parse().unwrap();
    let r: f64 = row[2].parse().unwrap();
    assert!((t - T_REF).abs() < 1e-12, "t_const {t}");
    assert!((r - R_REF).abs() < 1e-12, "r_const {r}");
    let tp: f64 = row[3].parse().unwrap();
    assert!(
        (tp - t).abs() > 1e-6,
        "the mass step must move the transmission"
    );

    // the outer threshold lands exactly on the grid: abscissa kept, data holed
    let hole = nearest_row(&rows, 0, 0.4);
    assert_eq!(&hole[1..], ["", "", "", ""]);

    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("fig1.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["command"], "figure fig1");
    assert_eq!(manifest["outputs"], serde_json::json!(["fig1.csv"]));
    assert_eq!(manifest["params"]["m1"], 0.01);
    assert_eq!(manifest["params"]["grid"], 40);
}

#[test]
fn figure_writes_default_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["figure", "fig2", "--grid", "10"]);
    assert_exit(&o, 0);
    assert!(dir.path().join("fig2.manifest.json").is_file());
    let text = fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, ["v0", "t_const", "r_const", "t_pdm", "r_pdm"]);
    assert_eq!(rows.len(), 10);
}

#[test]
fn fig5_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("a")).unwrap();
    fs::create_dir(dir.path().join("b")).unwrap();
    for sub in ["a", "b"] {
        let out = format!("{sub}/fig5.csv");
        let o = run(
            dir.path(),
            &["figure", "fig5", "--grid", "400", "--out", &out],
        );
        assert_exit(&o, 0);
    }
    for name in ["fig5.csv", "fig5_roots.csv"] {
        let a = fs::read(dir.path().join("a").join(name)).unwrap();
        let b = fs::read(dir.path().join("b").join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
    let roots = fs::read_to_string(dir.path().join("a/fig5_roots.csv")).unwrap();
    let (header, rows) = csv_rows(&roots);
    assert_eq!(header, ["index", "e", "residual"]);
    assert!(!rows.is_empty());
}

#[test]
fn fig2_json_structure_and_holes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "figure",
            "fig2",
            "--grid",
            "10",
            "--format",
            "json",
            "--out",
            "fig2.json",
        ],
    );
    assert_exit(&o, 0);

    let doc: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("fig2.json")).unwrap()).unwrap();
    assert_eq!(doc["manifest"]["command"], "figure fig2");
    assert_eq!(doc["manifest"]["outputs"], serde_json::json!(["fig2.json"]));
    let series = doc["series"].as_array().unwrap();
    assert_eq!(series.len(), 10);

    // v0 = 1.2 closes the inner channel of the constant-mass pair only: the
    // const cells hole out while the stepped-mass cells stay live
    let at = |x: f64| {
        series
            .iter()
            .find(|row| (row["v0"].as_f64().unwrap() - x).abs() < 1e-9)
            .unwrap_or_else(|| panic!("no row at v0 = {x}"))
    };
    let hole = at(1.2);
    assert!(hole["t_const"].is_null());
    assert!(hole["t_pdm"].is_f64());
    let live = at(0.3);
    assert!(live["t_const"].is_f64());

    assert!(dir.path().join("fig2.manifest.json").is_file());
}

#[test]
fn panel_figures_merge_into_one_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["figure", "fig3", "--grid", "12", "--out", "fig3.csv"],
    );
    assert_exit(&o, 0);
    let text = fs::read_to_string(dir.path().join("fig3.csv")).unwrap();
    let (header, rows) = csv_rows(&text);
    assert_eq!(
        header,
        ["e", "t_a2", "t_a5", "t_a25", "t_l5", "t_l10", "t_l20"]
    );
    assert_eq!(rows.len(), 12);

    let o = run(
        dir.path(),
        &["figure", "fig4", "--grid", "12", "--out", "fig4.csv"],
    );
    assert_exit(&o, 0);
    let text = fs::read_to_string(dir.path().join("fig4.csv")).unwrap();
    let (header, _) = csv_rows(&text);
    assert_eq!(header[0], "v0");
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_exit(&run(d, &["figure", "fig1", "--nonsense"]), 2);
    assert_exit(&run(d, &["sweep", "--var", "energy", "--window", "2:1"]), 2);
    assert_exit(&run(d, &["sweep", "--var", "energy", "--window", "0.5"]), 2);
    assert_exit(&run(d, &["sweep", "--var", "v0", "--window", "0.5:1.5"]), 2);
    assert_exit(
        &run(
            d,
            &[
                "sweep", "--var", "energy", "--window", "0.5:1.0", "--at-e", "0.7",
            ],
        ),
        2,
    );
    assert_exit(&run(d, &["figure", "fig1", "--grid", "1"]), 2);
    assert_exit(&run(d, &["bound", "--m0", "0"]), 2);

    fs::write(d.join("bad.cfg"), "volume = 9\n").unwrap();
    let o = run(d, &["bound", "--config", "bad.cfg"]);
    assert_exit(&o, 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown config key"));
}

#[test]
fn unwritable_out_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["figure", "fig1", "--grid", "8", "--out", "missing/fig1.csv"],
    );
    assert_exit(&o, 3);
}

#[test]
fn check_failure_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["check", "--suite", "unitarity", "--tol", "1e-18"],
    );
    assert_exit(&o, 4);
    assert!(stdout_str(&o).contains("check unitarity: FAIL"));

    let ok = run(dir.path(), &["check", "--suite", "supercritical"]);
    assert_exit(&ok, 0);
    assert!(stdout_str(&ok).contains("check supercritical: ok"));
}

#[test]
fn check_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["check", "--suite", "bound", "--out", "report.txt"],
    );
    assert_exit(&o, 0);
    let report = fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(report.contains("check bound: ok"));
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["command"], "check");
    assert_eq!(manifest["params"]["suite"], "bound");
}

#[test]
fn config_file_sits_between_preset_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("prec.cfg"),
        "# local tweaks\nm0 = 0.5\nalpha = 7\n",
    )
    .unwrap();
    let o = run(
        dir.path(),
        &[
            "figure", "fig1", "--grid", "8", "--config", "prec.cfg", "--m0", "0.45", "--out",
            "p.csv",
        ],
    );
    assert_exit(&o, 0);
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("p.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["params"]["m0"], 0.45, "flag beats config file");
    assert_eq!(manifest["params"]["alpha"], 7.0, "config file beats preset");
    assert_eq!(
        manifest["params"]["v0"], 1.2,
        "untouched preset value survives"
    );
}

#[test]
fn bound_preset_matches_the_frozen_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["bound", "--preset", "fig6", "--grid", "2000"]);
    assert_exit(&o, 0);
    let text = stdout_str(&o);
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, ["index", "e", "residual"]);
    assert_eq!(rows.len(), WELL_LEVELS.len());
    for (row, want) in rows.iter().zip(&WELL_LEVELS) {
        let e: f64 = row[1].parse().unwrap();
        assert!((e - want).abs() <= 1e-8, "level {e} vs {want}");
        let residual: f64 = row[2].parse().unwrap();
        assert!(residual <= 1e-6);
    }
}

#[test]
fn resonances_reach_the_unit_plateau() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["resonances", "--preset", "fig1", "--window", "0.4:0.8"],
    );
    assert_exit(&o, 0);
    let text = stdout_str(&o);
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, ["index", "e", "t_at_peak", "residual"]);
    assert_eq!(rows.len(), 4);
    let first: f64 = rows[0][1].parse().unwrap();
    assert!(
        (first - 0.44874047875243331).abs() < 1e-9,
        "first peak {first}"
    );
    let mut last = 0.0;
    for row in &rows {
        let e: f64 = row[1].parse().unwrap();
        let t: f64 = row[2].parse().unwrap();
        assert!(e > last, "peaks must come out ascending");
        assert!(t >= 0.999, "peak at {e} only reaches t = {t}");
        last = e;
    }
}

#[test]
fn degenerate_window_gives_identical_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "sweep", "--var", "energy", "--window", "0.6:0.6", "--grid", "3",
        ],
    );
    assert_exit(&o, 0);
    let text = stdout_str(&o);
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, ["x", "t", "r", "defect", "evanescent"]);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0], rows[1]);
    assert_eq!(rows[1], rows[2]);
    // default parameters are the constant-mass reference, so the golden
    // transmission applies here too
    let t: f64 = rows[0][1].parse().unwrap();
    assert!((t - T_REF).abs() < 1e-12);
    assert_eq!(rows[0][4], "0");
}

#[test]
fn json_stdout_sweep_has_no_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "--format", "json", "sweep", "--var", "energy", "--window", "0.85:1.2", "--grid", "7",
        ],
    );
    assert_exit(&o, 0);
    let doc: Value = serde_json::from_str(&stdout_str(&o)).unwrap();
    assert_eq!(doc["manifest"]["outputs"], serde_json::json!([]));
    let series = doc["series"].as_array().unwrap();
    assert_eq!(series.len(), 7);
    for row in series {
        // the whole window sits inside the interior evanescent band
        assert_eq!(row["evanescent"], Value::Bool(false));
        assert!(row["t"].as_f64().unwrap() < 0.01);
    }
}
