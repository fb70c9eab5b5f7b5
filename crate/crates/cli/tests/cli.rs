use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_skewcoh");

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env("SKEWCOH_OUT_DIR", dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn field(report: &str, key: &str) -> f64 {
    report
        .lines()
        .find_map(|l| {
            let mut parts = l.split_whitespace();
            (parts.next() == Some(key)).then(|| parts.next().unwrap().parse().unwrap())
        })
        .unwrap_or_else(|| panic!("no {key} in\n{report}"))
}

#[test]
fn werner_numeric_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "coherence",
            "--family",
            "werner",
            "--p",
            "0.5",
            "--basis",
            "a1",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(field(&out, "diff") < 1e-10);
    let expected = (8.0 - (0.5f64 * (48.0 - 13.5)).sqrt() - 1.5) / 16.0;
    assert!((field(&out, "closed") - expected).abs() < 1e-10);
}

#[test]
fn maximally_mixed_has_no_coherence() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "coherence",
            "--family",
            "bell",
            "--c",
            "0,0,0",
            "--basis",
            "a2",
        ],
    );
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "numeric"), 0.0);
}

#[test]
fn x_state_flags_printed_discrepancy() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "coherence",
            "--family",
            "xz",
            "--r",
            "0.1",
            "--s",
            "0.1",
            "--c",
            "0.2,0.1,0.3",
            "--basis",
            "a1",
            "--csv",
            "x.csv",
        ],
    );
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(field(&out, "diff") < 1e-9);
    assert!(field(&out, "printed-diff") > 1e-8);
    assert!(stderr(&o).contains("warning"));
    let csv = std::fs::read_to_string(dir.path().join("x.csv")).unwrap();
    assert!(csv.starts_with("state,basis,numeric,closed,printed\n"));
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn invalid_arguments_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["coherence", "--family", "bell", "--c", "1,1,1"][..],
        &["coherence", "--family", "werner", "--p", "nan"],
        &["coherence", "--family", "werner"],
        &["coherence", "--family", "bell", "--c", "0,0"],
        &["surface", "--field", "channel:BF", "--level", "0.1"],
        &["surface", "--field", "bd-a4", "--level", "0.1"],
        &["frobnicate"],
    ] {
        let o = run(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn surface_writes_obj_and_echoes_path() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "surface",
            "--field",
            "bd-a1",
            "--level",
            "0.05",
            "--resolution",
            "41",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let path = dir.path().join("bd-a1_level0.05.obj");
    assert!(stdout(&o).contains(&*path.to_string_lossy()));
    let obj = std::fs::read_to_string(path).unwrap();
    assert!(obj.lines().any(|l| l.starts_with("v ")));
    assert!(obj.lines().any(|l| l.starts_with("f ")));
}

#[test]
fn unreachable_level_warns_and_writes_empty_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "surface",
            "--field",
            "bd-a1",
            "--level",
            "0.6",
            "--resolution",
            "21",
        ],
    );
    assert!(o.status.success());
    assert!(stderr(&o).contains("empty mesh"));
    let obj = std::fs::read_to_string(dir.path().join("bd-a1_level0.6.obj")).unwrap();
    assert!(!obj.lines().any(|l| l.starts_with("v ")));
}

#[test]
fn channel_surface_at_large_p() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "surface",
            "--field",
            "channel:BF",
            "--p",
            "0.6",
            "--level",
            "0.05",
            "--format",
            "ply",
            "--resolution",
            "41",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let ply = std::fs::read_to_string(dir.path().join("channel-BF_p0.6_level0.05.ply")).unwrap();
    assert!(ply.starts_with("ply\n"));
}

#[test]
fn out_dir_flag_overrides_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = run(
        env_dir.path(),
        &[
            "curve",
            "--family",
            "isotropic",
            "--out-dir",
            flag_dir.path().to_str().unwrap(),
        ],
    );
    assert!(o.status.success());
    assert!(flag_dir.path().join("isotropic_curve.csv").exists());
    assert!(!env_dir.path().join("isotropic_curve.csv").exists());
}

#[test]
fn dynamics_writes_four_curves() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["dynamics", "--c", "-0.2,0.6,0.6"]);
    assert!(o.status.success(), "{}", stderr(&o));
    for kind in ["BF", "PF", "BPF", "GAD"] {
        let csv = std::fs::read_to_string(dir.path().join(format!("dynamics_{kind}.csv"))).unwrap();
        let rows: Vec<(f64, f64)> = csv
            .lines()
            .skip(1)
            .map(|l| {
                let (p, c) = l.split_once(',').unwrap();
                (p.parse().unwrap(), c.parse().unwrap())
            })
            .collect();
        assert_eq!(rows.len(), 101);
        assert!(rows.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-10), "{kind}");
        if kind == "PF" || kind == "GAD" {
            assert!(rows[100].1 <= 1e-12);
        }
    }
}

#[test]
fn verify_single_suite() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["verify", "--suite", "table2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("[PASS] table2"));
    assert!(!out.contains("closed-forms"));
    assert!(out.contains("1/1 suites passed"));
}

#[test]
fn verify_failure_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["verify", "--suite", "surfaces", "--resolution", "41"],
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn bases_round_trip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["bases"]);
    assert!(o.status.success());
    let file = dir.path().join("amubs.txt");
    std::fs::write(&file, &o.stdout).unwrap();
    let o = run(dir.path(), &["bases", "--input", file.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("mutually unbiased: yes"));

    std::fs::write(&file, "1 0\n0 1\n\n1 0\n0 1\n").unwrap();
    let o = run(dir.path(), &["bases", "--input", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn missing_input_file_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["bases", "--input", "/nonexistent/bases.txt"]);
    assert_eq!(o.status.code(), Some(1));
}
