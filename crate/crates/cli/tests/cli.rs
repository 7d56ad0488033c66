use std::path::PathBuf;
use std::process::{Command, Output};

use dqw_core::oracle::{fd_levels_extrapolated, fd_spectrum, FdGrid};
use dqw_core::{RawParams, WellParams64};

fn config(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn dqw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqw")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = dqw(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Header and numeric rows (empty cells become NaN).
fn parse(csv: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = csv.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| if c.is_empty() { f64::NAN } else { c.parse().unwrap_or(f64::NAN) }).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

fn gaas(b: f64) -> WellParams64 {
    RawParams::gaas(b).validate().unwrap()
}

#[test]
fn levels_match_oracle_count() {
    let gaas_conf = config("gaas.conf");
    let (header, rows) = parse(&ok(&["levels", "--config", &gaas_conf]));
    assert_eq!(header, ["n", "parity", "E_eV", "k_per_nm"]);
    let fd = fd_levels_extrapolated(&gaas(5.0), 0.005, 12.0, 10).unwrap();
    assert_eq!(rows.len(), fd.len());
    for (r, e) in rows.iter().zip(&fd) {
        assert!(((r[2] - e) / e).abs() < 1e-6);
    }
}

#[test]
fn empty_config_names_missing_keys() {
    let dir = tempdir();
    let path = dir.join("empty.conf");
    std::fs::write(&path, "").unwrap();
    let out = dqw(&["levels", "--config", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    for key in ["a_nm", "b_nm", "vb_ev", "vc_ev", "m0", "mb", "mc"] {
        assert!(err.contains(key), "{err}");
    }
}

#[test]
fn config_errors_carry_line_numbers() {
    let dir = tempdir();
    let path = dir.join("bad.conf");
    std::fs::write(&path, "a_nm = 6\n# comment\nb_nm = five\n").unwrap();
    let out = dqw(&["levels", "--config", path.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn override_beats_config() {
    let gaas_conf = config("gaas.conf");
    let (_, wide) = parse(&ok(&["levels", "--config", &gaas_conf, "--b-nm", "15"]));
    let (_, direct) = parse(&ok(&["levels", "--config", &gaas_conf]));
    assert!((wide[1][2] - wide[0][2]) < (direct[1][2] - direct[0][2]));
    let expected = dqw_core::find_levels(&gaas(15.0), None).unwrap();
    assert_eq!(wide[0][2], expected[0].energy);
}

#[test]
fn sweep_gap_decreases_with_barrier_width() {
    let gaas_conf = config("gaas.conf");
    let args = ["sweep", "--config", &gaas_conf, "--param", "b", "--from", "1", "--to", "15", "--steps", "141"];
    let text = ok(&args);
    let (header, rows) = parse(&text);
    assert_eq!(rows.len(), 141);
    let (e1, e2) = (column(&header, "E_1s"), column(&header, "E_2a"));
    let gaps: Vec<f64> = rows.iter().map(|r| r[e2] - r[e1]).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(text, ok(&args), "sweep output must be byte-identical across runs");
}

#[test]
fn sweep_with_two_steps_has_two_rows() {
    let gaas_conf = config("gaas.conf");
    let (_, rows) = parse(&ok(&["sweep", "--config", &gaas_conf, "--param", "vb", "--from", "0.1", "--to", "0.1671", "--steps", "2"]));
    assert_eq!(rows.len(), 2);
}

#[test]
fn sweep_rejects_bad_ranges() {
    let gaas_conf = config("gaas.conf");
    for (from, to, steps) in [("5", "1", "10"), ("1", "5", "1")] {
        let out = dqw(&["sweep", "--config", &gaas_conf, "--param", "b", "--from", from, "--to", to, "--steps", steps]);
        assert!(!out.status.success());
    }
}

#[test]
fn sweep_warns_once_for_unbound_levels() {
    let gaas_conf = config("gaas.conf");
    let out = dqw(&[
        "sweep", "--config", &gaas_conf, "--param", "a", "--from", "2", "--to", "6", "--steps", "9", "--levels", "3",
        "--transition", "2a3s",
    ]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.matches("warning").count(), 1, "{err}");
    let (header, rows) = parse(&String::from_utf8(out.stdout).unwrap());
    assert!(rows[0][column(&header, "E_3s")].is_nan());
    assert!(rows[0][column(&header, "total_2a3s")].is_nan());
}

#[test]
fn wavefunction_parity_and_oracle_shape() {
    let gaas_conf = config("gaas.conf");
    let (_, anti) = parse(&ok(&["wavefunction", "--config", &gaas_conf, "--level", "2"]));
    assert_eq!(anti.len(), 2001);
    assert!((anti[1000][0] - 8.5).abs() < 1e-12);
    assert!(anti[1000][1].abs() < 1e-10);

    let (_, sym) = parse(&ok(&["wavefunction", "--config", &gaas_conf, "--level", "1", "--samples", "2001"]));
    for i in 0..1000 {
        assert!((sym[i][1] - sym[2000 - i][1]).abs() < 1e-10);
    }

    let p = gaas(5.0);
    let fd = &fd_spectrum(&p, &FdGrid::new(&p, 0.005, 30.0).unwrap(), 1).unwrap()[0];
    let h = fd.x[1] - fd.x[0];
    let fd_at = |x: f64| {
        let t = (x - fd.x[0]) / h;
        let i = t.floor() as usize;
        let f = t - i as f64;
        fd.psi[i] * (1.0 - f) + fd.psi[i + 1] * f
    };
    let sign = if fd_at(3.0) > 0.0 { 1.0 } else { -1.0 };
    let worst = sym.iter().fold(0.0f64, |m, r| m.max((r[1] - sign * fd_at(r[0])).abs()));
    assert!(worst < 1e-4, "max-norm deviation {worst:e}");
}

#[test]
fn wavefunction_of_unbound_level_fails() {
    let gaas_conf = config("gaas.conf");
    let out = dqw(&["wavefunction", "--config", &gaas_conf, "--level", "7"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("level 7 not found"));
}

#[test]
fn dipole_columns_and_estimate() {
    let gaas_conf = config("gaas.conf");
    let (header, rows) = parse(&ok(&["dipole", "--config", &gaas_conf]));
    assert_eq!(header, ["b_nm", "d1", "d2", "d3", "total", "approx"]);
    let r = &rows[0];
    assert_eq!((r[0], r[5]), (5.0, 5.5));
    assert!((2.0 * (r[1] + r[2]) + r[3] - r[4]).abs() < 1e-12);

    let (_, named) = parse(&ok(&["dipole", "--config", &gaas_conf, "--transition", "2a3s"]));
    let (_, pair) = parse(&ok(&["dipole", "--config", &gaas_conf, "--transition", "3,2"]));
    for (x, y) in named[0][..5].iter().zip(&pair[0][..5]) {
        assert!((x - y).abs() < 1e-14);
    }
    assert!((named[0][5] - 16.0 * 6.0 / (9.0 * std::f64::consts::PI.powi(2))).abs() < 1e-15);
}

#[test]
fn validate_reports_and_sets_exit_status() {
    let out = ok(&["validate", "--config", &config("gaas.conf")]);
    assert!(out.contains("PASS spectrum") && !out.contains("FAIL"));
    assert!(!out.contains("closed-form"));

    let out = ok(&["validate", "--config", &config("gaas_equal_mass.conf")]);
    assert!(out.contains("PASS closed-form dipoles"), "{out}");

    let bad = dqw(&["validate", "--config", &config("gaas.conf"), "--corrupt-constant", "0.0385"]);
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stdout).contains("FAIL spectrum"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempdir();
    let path = dir.join("levels.csv");
    let gaas_conf = config("gaas.conf");
    let stdout = ok(&["levels", "--config", &gaas_conf, "--out", path.to_str().unwrap()]);
    assert!(stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), ok(&["levels", "--config", &gaas_conf]));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dqw-cli-test-{}-{:?}", std::process::id(), std::thread::current().id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
