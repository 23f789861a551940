//! End-to-end tests of the `curved-mie` binary: exit codes, error wording,
//! table shapes, and the numeric promises the emitted tables make.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curved-mie"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn out_text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn err_text(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process should exit, not signal")
}

fn config_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(text.as_bytes()).expect("write config");
    f.flush().expect("flush config");
    f
}

/// Splits one CSV line honoring the minimal-quoting convention the binary
/// emits (fields are quoted only when they contain commas, quotes, or
/// newlines; inner quotes are doubled).
fn split_csv_line(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut chars = line.chars().peekable();
    let mut quoted = false;
    while let Some(c) = chars.next() {
        if quoted {
            if c == '"' {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    cur.push('"');
                } else {
                    quoted = false;
                }
            } else {
                cur.push(c);
            }
        } else if c == '"' && cur.is_empty() {
            quoted = true;
        } else if c == ',' {
            fields.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    fields.push(cur);
    fields
}

fn csv_table(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = split_csv_line(lines.next().expect("header line"));
    let rows = lines.map(split_csv_line).collect();
    (header, rows)
}

fn col(header: &[String], name: &str) -> usize {
    header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("column {name} missing from {header:?}"))
}

fn f(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("not a float: {s:?}"))
}

#[test]
fn missing_config_file_is_a_usage_error_naming_the_path() {
    let out = run(&["--config", "/no/such/dir/config.json", "spectrum"]);
    assert_eq!(code(&out), 2, "stderr: {}", err_text(&out));
    assert!(
        err_text(&out).contains("/no/such/dir/config.json"),
        "stderr should name the path: {}",
        err_text(&out)
    );
}

#[test]
fn unknown_config_key_is_rejected_by_name() {
    let cfg = config_file(r#"{"params": {"wellDepth": 3.0}}"#);
    let out = run(&["--config", cfg.path().to_str().unwrap(), "spectrum"]);
    assert_eq!(code(&out), 2);
    assert!(
        err_text(&out).contains("wellDepth"),
        "stderr should name the offending key: {}",
        err_text(&out)
    );
}

#[test]
fn config_cannot_set_both_well_strength_conventions() {
    let cfg = config_file(r#"{"params": {"V0": 1.0, "epsilon": 0.5}}"#);
    let out = run(&["--config", cfg.path().to_str().unwrap(), "spectrum"]);
    assert_eq!(code(&out), 2);
    assert!(
        err_text(&out).contains("choose one"),
        "stderr: {}",
        err_text(&out)
    );
}

#[test]
fn unknown_molecule_is_rejected_listing_the_configured_names() {
    let cfg = config_file(
        r#"{"molecules": {
            "CH": {"epsilon_depth": 0.5, "a": 1.0, "reduced_mass": 1.0},
            "NO": {"epsilon_depth": 0.4, "a": 1.2, "reduced_mass": 1.1}
        }}"#,
    );
    let out = run(&[
        "--config",
        cfg.path().to_str().unwrap(),
        "potential",
        "--molecule",
        "XY",
    ]);
    assert_eq!(code(&out), 2);
    let err = err_text(&out);
    assert!(
        err.contains("CH") && err.contains("NO"),
        "stderr should list known molecules: {err}"
    );
}

#[test]
fn repulsive_coupling_without_a_bound_channel_is_a_numerical_error() {
    // V0 = -2 flips the centrifugal-like coefficient below the critical
    // value, so no real exponent exists and the closed form must refuse.
    let cfg = config_file(r#"{"params": {"V0": -2.0}}"#);
    let out = run(&["--config", cfg.path().to_str().unwrap(), "spectrum"]);
    assert_eq!(code(&out), 3, "stderr: {}", err_text(&out));
}

#[test]
fn wavefunction_requires_an_even_grid() {
    let out = run(&["wavefunction", "--n", "1", "--grid-points", "1023"]);
    assert_eq!(code(&out), 2);
    assert!(err_text(&out).contains("even"), "stderr: {}", err_text(&out));
}

#[test]
fn wavefunction_refuses_to_emit_both_modes_at_once() {
    let out = run(&["--mode", "both", "wavefunction", "--n", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn free_particle_spectrum_oracle_column_matches_the_sine_ladder() {
    // With the well switched off the levels are L(L+2)/2 = 0, 3/2, 4.
    let cfg = config_file(r#"{"params": {"V0": 0.0}}"#);
    let out = run(&[
        "--config",
        cfg.path().to_str().unwrap(),
        "spectrum",
        "--with-oracle",
        "--n-max",
        "3",
        "--grid-points",
        "1024",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", err_text(&out));
    assert!(
        err_text(&out).contains("free motion"),
        "the V0 = 0 note should be on stderr: {}",
        err_text(&out)
    );
    let (header, rows) = csv_table(&out_text(&out));
    let (c_n, c_e) = (col(&header, "n"), col(&header, "E_oracle"));
    let exact = [0.0, 1.5, 4.0];
    assert_eq!(rows.len(), 3);
    for row in &rows {
        let n: usize = row[c_n].parse().unwrap();
        let e = f(&row[c_e]);
        assert!(
            (e - exact[n - 1]).abs() < 1e-5,
            "n = {n}: oracle {e} vs exact {}",
            exact[n - 1]
        );
    }
}

#[test]
fn spectrum_emits_both_modes_with_distinct_exponents() {
    let out = run(&["--mode", "both", "spectrum", "--n-max", "2"]);
    assert_eq!(code(&out), 0, "stderr: {}", err_text(&out));
    let (header, rows) = csv_table(&out_text(&out));
    let (c_mode, c_j) = (col(&header, "mode"), col(&header, "j"));
    let j_of = |mode: &str| -> f64 {
        let row = rows
            .iter()
            .find(|r| r[c_mode] == mode)
            .unwrap_or_else(|| panic!("no rows for mode {mode}"));
        f(&row[c_j])
    };
    let (jp, jr) = (j_of("paper_literal"), j_of("rederived"));
    assert!(
        (jp - jr).abs() > 0.1,
        "the two readings should disagree on j: {jp} vs {jr}"
    );
    // Lexicographic mode blocks: published reading first, rederived second.
    let first_rederived = rows.iter().position(|r| r[c_mode] == "rederived").unwrap();
    assert!(rows[..first_rederived]
        .iter()
        .all(|r| r[c_mode] == "paper_literal"));
}

#[test]
fn csv_floats_carry_seventeen_significant_digits_and_unix_endings() {
    let out = run(&["spectrum", "--n-max", "2"]);
    let text = out_text(&out);
    assert!(!text.contains('\r'), "CSV must use \\n endings only");
    assert!(text.ends_with('\n'), "CSV must end with a newline");
    let (header, rows) = csv_table(&text);
    let c_e = col(&header, "E_analytic");
    for row in &rows {
        let cell = &row[c_e];
        let (mantissa, _exp) = cell.split_once('e').unwrap_or_else(|| {
            panic!("float cell should use a lowercase scientific e: {cell:?}")
        });
        let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
        assert_eq!(
            digits.len(),
            17,
            "17 significant digits expected in {cell:?}"
        );
    }
}

#[test]
fn flat_potential_minimum_sits_at_the_length_scale_with_half_depth() {
    // epsilon_depth 0.5 means strength 1, so the minimum is V(a) = -1/2.
    let cfg = config_file(
        r#"{"molecules": {"CH": {"epsilon_depth": 0.5, "a": 1.0, "reduced_mass": 1.0}}}"#,
    );
    let out = run(&[
        "--config",
        cfg.path().to_str().unwrap(),
        "potential",
        "--space",
        "flat",
        "--molecule",
        "CH",
        "--samples",
        "500",
        "--r-max",
        "5",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", err_text(&out));
    let (header, rows) = csv_table(&out_text(&out));
    let (c_x, c_v) = (col(&header, "x"), col(&header, "V"));
    let min_row = rows
        .iter()
        .min_by(|a, b| f(&a[c_v]).total_cmp(&f(&b[c_v])))
        .unwrap();
    assert!((f(&min_row[c_x]) - 1.0).abs() < 1e-12, "r_min = {}", min_row[c_x]);
    assert!((f(&min_row[c_v]) + 0.5).abs() < 1e-12, "V_min = {}", min_row[c_v]);
}

#[test]
fn curved_potential_shows_the_mirror_double_well_flat_at_the_equator() {
    let cfg = config_file(
        r#"{"molecules": {"CH": {"epsilon_depth": 0.5, "a": 1.0, "reduced_mass": 1.0}}}"#,
    );
    let out = run(&[
        "--config",
        cfg.path().to_str().unwrap(),
        "potential",
        "--space",
        "curved",
        "--molecule",
        "CH",
        "--samples",
        "512",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", err_text(&out));
    let (header, rows) = csv_table(&out_text(&out));
    let (c_x, c_v) = (col(&header, "x"), col(&header, "V"));
    let v: Vec<f64> = rows.iter().map(|r| f(&r[c_v])).collect();
    let x: Vec<f64> = rows.iter().map(|r| f(&r[c_x])).collect();

    // The equator is a grid point on an even grid, and the well vanishes
    // there exactly.
    let equator = x
        .iter()
        .position(|&p| (p - std::f64::consts::FRAC_PI_2).abs() < 1e-12)
        .expect("equator row present");
    assert!(v[equator].abs() <= 1e-12, "V(pi/2) = {}", v[equator]);

    // Two strict local minima, mirror images about the equator.
    let minima: Vec<usize> = (1..v.len() - 1)
        .filter(|&k| v[k] < v[k - 1] && v[k] < v[k + 1])
        .collect();
    assert_eq!(minima.len(), 2, "minima at {minima:?}");
    assert!(minima[0] < equator && equator < minima[1]);

    // A double well pinched between two singular poles has three monotone-run
    // boundaries: down into the left well, up to the equator hump, down into
    // the right well, up toward the pole.
    let mut changes = 0;
    let mut prev = 0i8;
    for w in v.windows(2) {
        let d = w[1] - w[0];
        if d == 0.0 {
            continue;
        }
        let s = if d > 0.0 { 1 } else { -1 };
        if prev != 0 && s != prev {
            changes += 1;
        }
        prev = s;
    }
    assert_eq!(changes, 3, "derivative sign changes");
}

#[test]
fn wavefunction_table_is_normalized_with_endpoints_absent() {
    let n_grid = 1024usize;
    let out = run(&["wavefunction", "--n", "1", "--grid-points", "1024"]);
    assert_eq!(code(&out), 0, "stderr: {}", err_text(&out));
    let (header, rows) = csv_table(&out_text(&out));
    let (c_psi, c_abs2) = (col(&header, "psi"), col(&header, "abs2"));
    assert_eq!(rows.len(), n_grid - 1, "interior points only");
    let h = std::f64::consts::PI / n_grid as f64;
    assert!(f(&rows[0][c_psi]) > 0.0);
    assert!((f(&rows[0][c_psi]) - h).abs() < 1e-12);
    assert!(f(&rows.last().unwrap()[c_psi]) < std::f64::consts::PI);

    // Composite Simpson over the closed interval; both endpoint values are 0.
    let mut integral = 0.0;
    for (k, row) in rows.iter().enumerate() {
        let weight = if (k + 1) % 2 == 1 { 4.0 } else { 2.0 };
        integral += weight * f(&row[c_abs2]);
    }
    integral *= h / 3.0;
    assert!(
        (integral - 1.0).abs() <= 1e-6,
        "Simpson norm = {integral}"
    );
}

#[test]
fn wavefunction_oracle_column_tracks_the_analytic_profile_pointwise() {
    // The profile has a fractional-power boundary layer that the amplitude
    // division magnifies, so the advertised 1e-3 pointwise agreement needs
    // the fine grid.
    let out = run(&[
        "wavefunction",
        "--n",
        "1",
        "--grid-points",
        "4096",
        "--oracle",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", err_text(&out));
    let (header, rows) = csv_table(&out_text(&out));
    let (c_re, c_or) = (col(&header, "re"), col(&header, "oracle"));
    let worst = rows
        .iter()
        .map(|r| (f(&r[c_re]) - f(&r[c_or])).abs())
        .fold(0.0f64, f64::max);
    assert!(worst < 1e-3, "max pointwise gap {worst:.3e}");
}

#[test]
fn verify_subset_runs_only_the_requested_suites() {
    let out = run(&[
        "verify",
        "--suites",
        "geometry,specfun",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", err_text(&out));
    let doc: serde_json::Value = serde_json::from_str(&out_text(&out)).unwrap();
    assert_eq!(doc["passed"], serde_json::Value::Bool(true));
    let rows = doc["rows"].as_array().expect("rows array");
    assert!(!rows.is_empty());
    let mut suites: Vec<&str> = rows
        .iter()
        .map(|r| r["suite"].as_str().unwrap())
        .collect();
    suites.dedup();
    assert_eq!(suites, ["geometry", "specfun"]);
    for row in rows {
        assert!(row["check"].is_string() && row["status"].is_string());
        assert!(row["measured"].is_number());
    }
}

#[test]
fn full_verify_passes_on_the_dimensionless_defaults() {
    let out = run(&["verify"]);
    assert_eq!(code(&out), 0, "stderr: {}", err_text(&out));
    let err = err_text(&out);
    assert!(
        err.contains("mode arbitration: rederived wins"),
        "the arbitration verdict should be prominent: {err}"
    );
    let doc: serde_json::Value = serde_json::from_str(&out_text(&out)).unwrap();
    assert_eq!(doc["passed"], serde_json::Value::Bool(true));
    assert_eq!(doc["arbitration"]["winner"], "rederived");
}

#[test]
fn algebra_battery_reports_every_relation_as_holding() {
    let out = run(&["algebra"]);
    assert_eq!(code(&out), 0, "stderr: {}", err_text(&out));
    let (header, rows) = csv_table(&out_text(&out));
    let (c_check, c_status) = (col(&header, "check"), col(&header, "status"));
    assert!(rows.len() >= 10, "battery should be substantial: {} rows", rows.len());
    for row in &rows {
        assert_ne!(row[c_status], "fail", "failing relation: {}", row[c_check]);
    }
    // Both scored identities and informational cross-readings are present.
    assert!(rows.iter().any(|r| r[c_status] == "pass"));
    assert!(rows.iter().any(|r| r[c_status] == "info"));
}

#[test]
fn tampered_tolerance_fails_the_full_verify_run() {
    let cfg = config_file(r#"{"tolerances": {"verify_tol": 1e-20}}"#);
    let out = run(&["--config", cfg.path().to_str().unwrap(), "verify"]);
    assert_eq!(code(&out), 1);
    let err = err_text(&out);
    assert!(err.contains("FAILED"), "stderr: {err}");
    // The failing measured value accompanies the verdict.
    assert!(err.contains("e-"), "stderr should carry the measured error: {err}");
}

#[test]
fn single_point_sweep_reduces_to_the_spectrum_rows() {
    let cfg = config_file(r#"{"params": {"R": 2.0, "V0": 1.0}}"#);
    let spectrum = run(&[
        "--config",
        cfg.path().to_str().unwrap(),
        "spectrum",
        "--with-oracle",
        "--n-max",
        "2",
        "--grid-points",
        "512",
    ]);
    let sweep = run(&[
        "sweep",
        "--over",
        "R=2",
        "--n-max",
        "2",
        "--grid-points",
        "512",
    ]);
    assert_eq!(code(&spectrum), 0);
    assert_eq!(code(&sweep), 0);

    let (sh, srows) = csv_table(&out_text(&spectrum));
    let (wh, wrows) = csv_table(&out_text(&sweep));
    assert_eq!(wrows.len(), srows.len());
    for (srow, wrow) in srows.iter().zip(&wrows) {
        assert_eq!(srow[col(&sh, "n")], wrow[col(&wh, "n")]);
        assert_eq!(srow[col(&sh, "mode")], wrow[col(&wh, "mode")]);
        // Identical arithmetic path, identical formatting: equal strings.
        assert_eq!(srow[col(&sh, "E_analytic")], wrow[col(&wh, "E_analytic")]);
        assert_eq!(srow[col(&sh, "E_oracle")], wrow[col(&wh, "E_oracle")]);
    }
}

#[test]
fn sweep_records_per_point_failures_and_keeps_going() {
    let out = run(&[
        "sweep",
        "--over",
        "V0=-2,1",
        "--n-max",
        "1",
        "--grid-points",
        "512",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", err_text(&out));
    let (header, rows) = csv_table(&out_text(&out));
    let (c_v0, c_err, c_e) = (
        col(&header, "V0"),
        col(&header, "error"),
        col(&header, "E_analytic"),
    );
    let bad: Vec<_> = rows.iter().filter(|r| f(&r[c_v0]) < 0.0).collect();
    let good: Vec<_> = rows.iter().filter(|r| f(&r[c_v0]) > 0.0).collect();
    assert!(!bad.is_empty() && !good.is_empty());
    for row in bad {
        assert!(!row[c_err].is_empty(), "failure row should explain itself");
        assert!(row[c_e].is_empty());
    }
    for row in good {
        assert!(row[c_err].is_empty());
        assert!(!row[c_e].is_empty());
    }
}

#[test]
fn sweep_gap_to_the_flat_limit_shrinks_with_radius() {
    let out = run(&[
        "sweep",
        "--over",
        "R=10,20,40,80",
        "--n-max",
        "1",
        "--grid-points",
        "512",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", err_text(&out));
    let (header, rows) = csv_table(&out_text(&out));
    let (c_r, c_e, c_mode) = (
        col(&header, "R"),
        col(&header, "E_analytic"),
        col(&header, "mode"),
    );
    let e_flat = -(3.0 - 5.0f64.sqrt()) / 4.0;
    let mut gaps: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r[c_mode] == "rederived")
        .map(|r| (f(&r[c_r]), (f(&r[c_e]) - e_flat).abs()))
        .collect();
    gaps.sort_by(|a, b| a.0.total_cmp(&b.0));
    assert_eq!(gaps.len(), 4);
    for pair in gaps.windows(2) {
        assert!(
            pair[1].1 < pair[0].1,
            "gap should shrink with radius: {gaps:?}"
        );
    }
}

#[test]
fn json_tables_round_trip() {
    let out = run(&["spectrum", "--n-max", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let text = out_text(&out);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, again);
    let rows = doc.as_array().expect("array of row objects");
    assert_eq!(rows.len(), 2);
    for row in rows {
        for key in ["n", "j", "mode", "E_analytic", "E_oracle", "abs_err", "rel_err"] {
            assert!(row.get(key).is_some(), "missing key {key}");
        }
        // No oracle requested: those cells are null, not absent.
        assert!(row["E_oracle"].is_null());
    }
}

#[test]
fn out_flag_writes_the_table_to_disk_and_keeps_stdout_quiet() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.csv");
    let out = run(&[
        "spectrum",
        "--n-max",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", err_text(&out));
    assert!(out_text(&out).is_empty(), "table should go to the file only");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,j,mode,"), "file content: {text}");
}
