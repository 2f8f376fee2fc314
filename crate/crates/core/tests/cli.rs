use std::path::Path;
use std::process::{Command, Output};

fn fracstep(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracstep"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn solve_constant_first_order_problem() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracstep(
        &[
            "solve",
            "--class",
            "p1-caputo",
            "--alpha",
            "0.5",
            "--y0",
            "2",
            "--x-end",
            "10",
            "--out",
            "s.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert!(csv.starts_with("x,y_numeric,y_analytic,abs_error\n"));
    let rows = rows(&csv);
    assert_eq!(rows.len(), 1001);
    assert!(rows.iter().all(|r| (num(&r[1]) - 2.0).abs() <= 1e-10));
}

#[test]
fn solve_reports_euler_error_on_p0() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracstep(
        &[
            "solve",
            "--class",
            "p0-caputo",
            "--alpha",
            "0.1",
            "--y0",
            "1",
            "--x-end",
            "5",
            "--out",
            "s.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    let row = rows(&csv).into_iter().find(|r| r[0] == "1").unwrap();
    let e = num(&row[3]);
    assert!((e - 1.33e-4).abs() < 0.05 * 1.33e-4, "{e}");
}

#[test]
fn abs_error_column_is_recomputable() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracstep(
        &[
            "solve", "--class", "p2-rl", "--method", "gear", "--alpha", "0.5", "--y0", "1", "--yp0", "1", "--x-end",
            "4", "--out", "s.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    for r in rows(&csv) {
        assert_eq!(num(&r[3]), (num(&r[1]) - num(&r[2])).abs(), "{r:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = |name: &'static str| {
        vec![
            "solve",
            "--class",
            "p2-caputo",
            "--method",
            "adams",
            "--alpha",
            "0.9",
            "--y0",
            "-1",
            "--yp0",
            "1",
            "--x-end",
            "3",
            "--out",
            name,
        ]
    };
    assert!(fracstep(&args("a.csv"), dir.path()).status.success());
    assert!(fracstep(&args("b.csv"), dir.path()).status.success());
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 5] = [
        &["solve", "--alpha", "0.5", "--x-end", "1", "--h", "0"],
        &[
            "solve",
            "--alpha",
            "0.5",
            "--x-end",
            "1",
            "--method",
            "euler",
            "--caputo-form",
            "case3",
        ],
        &["solve", "--alpha", "1.5", "--x-end", "1"],
        &["table", "7"],
        &["figure", "1"],
    ];
    for args in cases {
        let out = fracstep(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn override_flag_allows_undocumented_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "solve",
        "--alpha",
        "0.5",
        "--y0",
        "1",
        "--x-end",
        "1",
        "--method",
        "gear",
        "--caputo-form",
        "case1",
    ];
    assert_eq!(fracstep(&args, dir.path()).status.code(), Some(2));
    let mut with = args.to_vec();
    with.push("--allow-any-form");
    let out = fracstep(&with, dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("undefined-combination"));
}

#[test]
fn divergence_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracstep(
        &[
            "solve",
            "--class",
            "p0-caputo",
            "--alpha",
            "0.5",
            "--lambda",
            "-50",
            "--y0",
            "1",
            "--x-end",
            "10",
            "--out",
            "s.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn strict_tables_pass() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["1", "2", "3", "4", "5", "6"] {
        let out = fracstep(&["table", id, "--strict"], dir.path());
        assert!(out.status.success(), "table {id}");
        assert!(dir.path().join(format!("table{id}.csv")).exists());
    }
}

#[test]
fn table_one_analytic_row() {
    let dir = tempfile::tempdir().unwrap();
    assert!(fracstep(&["table", "1", "--out", "t.csv"], dir.path()).status.success());
    let csv = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    let got: Vec<f64> = rows(&csv)
        .into_iter()
        .filter(|r| r[1] == "0.1" && r[2] == "analytical")
        .map(|r| num(&r[4]))
        .collect();
    let want = [1.0944780, 15.2447755, 32.9377877, 56.8955141, 86.9374806];
    assert_eq!(got.len(), 5);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= 5e-7);
    }
}

#[test]
fn table_four_marks_missing_cell() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracstep(&["table", "4", "--out", "t.csv"], dir.path());
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    let hole: Vec<_> = rows(&csv)
        .into_iter()
        .filter(|r| r[1] == "0.9" && r[3] == "10")
        .collect();
    assert_eq!(hole.len(), 4);
    assert!(hole.iter().all(|r| r[5].is_empty() && r[6] == "not-reported"));
    assert!(rows(&csv).iter().any(|r| r[6] == "documented"));
}

#[test]
fn golden_tables() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["5", "6"] {
        assert!(fracstep(&["table", id, "--out", "t.csv"], dir.path()).status.success());
        let got = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
        let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/table{id}.csv"));
        assert_eq!(got, std::fs::read_to_string(golden).unwrap(), "table {id}");
    }
}

#[test]
fn figures() {
    let dir = tempfile::tempdir().unwrap();
    for id in 2..=6 {
        let out = fracstep(&["figure", &id.to_string(), "--out", "fig"], dir.path());
        assert!(out.status.success(), "figure {id}");
    }
    let read = |name: &str| std::fs::read_to_string(dir.path().join("fig").join(name)).unwrap();

    let f5 = read("figure5_alpha0.5.csv");
    assert!(f5.starts_with("x,y\n"));
    let at1 = rows(&f5).into_iter().find(|r| r[0] == "1").unwrap();
    assert!((num(&at1[1]) - 0.4275836).abs() < 5e-8);

    for alpha in ["0.1", "0.5", "0.9"] {
        let f6 = read(&format!("figure6_alpha{alpha}.csv"));
        assert_eq!(rows(&f6)[0], ["0", "1"]);
        let f4 = read(&format!("figure4_alpha{alpha}.csv"));
        assert!(f4.starts_with("x,y,y_numeric\n"));
        assert!(rows(&f4).iter().all(|r| (num(&r[1]) - num(&r[2])).abs() <= 1e-6));
        assert_eq!(rows(&read(&format!("figure2_alpha{alpha}.csv"))).len(), 1001);
    }
}

#[test]
fn ml_command() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        String::from_utf8(fracstep(args, dir.path()).stdout)
            .unwrap()
            .trim()
            .to_string()
    };
    assert_eq!(run(&["ml", "--alpha", "1", "--beta", "1", "--z", "1"]), "2.718281828");
    let v = num(&run(&["ml", "--alpha", "0.5", "--z", "-1"]));
    assert!((v - 0.4275836).abs() < 5e-8);
    let z = -(std::f64::consts::FRAC_PI_2).powi(2);
    let c = num(&run(&["ml", "--alpha", "2", "--z", &z.to_string()]));
    assert!(c.abs() < 1e-12);
    assert_ne!(
        fracstep(&["ml", "--alpha", "0", "--z", "1"], dir.path()).status.code(),
        Some(0)
    );
}
