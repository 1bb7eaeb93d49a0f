use std::path::Path;
use std::process::{Command, Output};

use purimetrics::commands::{ClassJson, MeasureValue, ReportJson, StokesJson, TableColumn};
use purimetrics::io::{MatrixFile, StateFile};
use purimetrics_core::bloch::su_n_basis;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_purimetrics"))
        .args(args)
        .env_remove("PURIMETRICS_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn table1_text_matches_reference_values() {
    let text = stdout(&["table1"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0].split_whitespace().collect::<Vec<_>>(),
        ["P", "E", "F", "C", "D", "M"]
    );
    let row = |name: &str| -> Vec<String> {
        let line = lines.iter().find(|l| l.starts_with(name)).unwrap();
        line.split_whitespace().skip(1).map(String::from).collect()
    };
    assert_eq!(
        row("pi_sskf"),
        ["1.000", "0.625", "0.500", "0.500", "0.250", "0.000"]
    );
    assert_eq!(
        row("pi_edpw"),
        ["1.000", "0.625", "0.500", "0.000", "0.250", "0.000"]
    );
    assert_eq!(
        row("pi_b"),
        ["1.000", "0.827", "0.707", "1.000", "0.395", "0.000"]
    );
    assert_eq!(
        row("pi_v"),
        ["1.000", "0.330", "0.210", "0.369", "0.054", "0.000"]
    );
}

#[test]
fn table1_json_has_full_precision() {
    let cols: Vec<TableColumn> = serde_json::from_str(&stdout(&["table1", "--json"])).unwrap();
    assert_eq!(cols.len(), 6);
    let d = cols.iter().find(|c| c.label == "D").unwrap();
    assert_eq!(d.pi_sskf, 0.25);
    assert!((d.pi_v - 0.0536).abs() < 1e-4);
}

#[test]
fn report_near_maximally_mixed() {
    let r: ReportJson = serde_json::from_str(&stdout(&[
        "report",
        "--spectrum",
        "0.3333333,0.3333333,0.3333334",
        "--json",
    ]))
    .unwrap();
    for v in [r.pi_s, r.pi_v, r.pi_b, r.pi_edpw, r.pi_sskf] {
        assert!(v < 1e-6, "{v}");
    }
    assert_eq!(r.barakat.len(), 2);
}

#[test]
fn report_from_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "d.json",
        r#"{"dim":3,"entries":[[[0.5,0],[0,0],[0,0]],[[0,0],[0.25,0],[0,0]],[[0,0],[0,0],[0.25,0]]]}"#,
    );
    let r: ReportJson =
        serde_json::from_str(&stdout(&["report", "--matrix", &m, "--json"])).unwrap();
    assert_eq!(r.spectrum, [0.5, 0.25, 0.25]);
    assert!((r.pi_sskf - 0.25).abs() < 1e-12);
    assert_eq!(r.xy.map(|[x, _]| x), Some(0.25));

    // a polarization matrix needs --normalize
    let phi = write(
        dir.path(),
        "phi.json",
        r#"{"dim":2,"entries":[[[3,0],[0,0]],[[0,0],[1,0]]]}"#,
    );
    assert_eq!(run(&["report", "--matrix", &phi]).status.code(), Some(1));
    let r: ReportJson = serde_json::from_str(&stdout(&[
        "report",
        "--matrix",
        &phi,
        "--normalize",
        "--json",
    ]))
    .unwrap();
    assert_eq!(r.spectrum, [0.75, 0.25]);
}

#[test]
fn channel_scales_sskf() {
    let text = stdout(&[
        "channel",
        "--spectrum",
        "0.75,0.125,0.125",
        "--p",
        "0.4",
        "--measure",
        "sskf",
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,measure,value,ratio"));
    let fields: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .filter_map(|f| f.parse().ok())
        .collect();
    assert_eq!(fields[0], 0.4);
    assert!((fields[1] - 0.25).abs() < 1e-12);
    assert!((fields[2] - 0.4).abs() < 1e-12);
}

#[test]
fn channel_profile_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("profile.csv");
    stdout(&[
        "channel",
        "--spectrum",
        "1,0",
        "--profile",
        "--grid",
        "0:1:0.25",
        "--out",
        out.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().count(), 1 + 5 * 5);
    assert!(text.lines().any(|l| l == "0.5,sskf,0.5,0.5"));
}

#[test]
fn sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    stdout(&["sweep", "--lambda1", "0.5", "--out", out.to_str().unwrap()]);
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("lambda1,lambda2,lambda3,pi_b,pi_sskf,pi_v,pi_edpw")
    );
    assert_eq!(lines.count(), 201);
    assert_eq!(run(&["sweep", "--lambda1", "0.2"]).status.code(), Some(1));
}

#[test]
fn entangle_examples() {
    let dir = tempfile::tempdir().unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bell = write(
        dir.path(),
        "bell.json",
        &format!(r#"{{"dims":[2,2],"amplitudes":[[[{h},0],[0,0]],[[0,0],[{h},0]]]}}"#),
    );
    let v: Vec<MeasureValue> = serde_json::from_str(&stdout(&[
        "entangle",
        "--state",
        &bell,
        "--measure",
        "von_neumann",
        "--json",
    ]))
    .unwrap();
    assert!((v[0].value - 1.0).abs() < 1e-10);

    let psi_c = write(
        dir.path(),
        "c.json",
        &format!(
            r#"{{"dims":[3,3],"amplitudes":[[[{h},0],[0,0],[0,0]],[[0,0],[{h},0],[0,0]],[[0,0],[0,0],[0,0]]]}}"#
        ),
    );
    let text = stdout(&["entangle", "--state", &psi_c]);
    let von_neumann: f64 = text
        .lines()
        .find(|l| l.starts_with("von_neumann"))
        .and_then(|l| l.split_whitespace().nth(1))
        .unwrap()
        .parse()
        .unwrap();
    assert!((von_neumann - 0.631).abs() < 1e-3);

    let file: StateFile = serde_json::from_str(&std::fs::read_to_string(&psi_c).unwrap()).unwrap();
    assert_eq!(file.dims, [3, 3]);

    let ragged = write(
        dir.path(),
        "r.json",
        r#"{"dims":[2,2],"amplitudes":[[[1,0],[0,0]],[[0,0]]]}"#,
    );
    assert_eq!(
        run(&["entangle", "--state", &ragged]).status.code(),
        Some(1)
    );
}

#[test]
fn basis_round_trips_through_matrix_format() {
    let files: Vec<MatrixFile> = serde_json::from_str(&stdout(&["basis", "--dim", "3"])).unwrap();
    let basis = su_n_basis(3).unwrap();
    assert_eq!(files.len(), 8);
    for (f, q) in files.iter().zip(basis.matrices()) {
        assert_eq!(&f.to_matrix().unwrap(), q);
    }
}

#[test]
fn classify_named_points() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("[0,0,0,0,0,0,0,1]", "Unphysical"),
        ("[0,0,0,0,0,0,0,-1]", "PurePhysical"),
        ("[0,0,0,0,0,0,0,0.5]", "BoundaryPhysical"),
        (
            "[0,0,0.21650635094610965,0,0,0,0,0.125]",
            "InteriorPhysical",
        ),
    ];
    for (k, (r, class)) in cases.iter().enumerate() {
        let f = write(
            dir.path(),
            &format!("{k}.json"),
            &format!(r#"{{"dim":3,"r":{r}}}"#),
        );
        let c: ClassJson =
            serde_json::from_str(&stdout(&["classify", "--bloch", &f, "--json"])).unwrap();
        assert_eq!(&c.class, class);
    }
}

#[test]
fn stokes_both_directions() {
    let m: MatrixFile = serde_json::from_str(&stdout(&["stokes", "--stokes", "2,1,0,0"])).unwrap();
    assert_eq!(m.entries[0][0], [1.5, 0.0]);
    assert_eq!(m.entries[1][1], [0.5, 0.0]);
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "phi.json", &serde_json::to_string(&m).unwrap());
    let s: StokesJson =
        serde_json::from_str(&stdout(&["stokes", "--matrix", &f, "--json"])).unwrap();
    assert_eq!(s.s, [2.0, 1.0, 0.0, 0.0]);
    assert_eq!(s.degree_of_polarization, 0.5);
    assert_eq!(
        run(&["stokes", "--stokes", "1,1,1,0"]).status.code(),
        Some(1)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["report", "--spectrum", "0.5,0.4"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["report", "--spectrum", "0.5,abc"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["report"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["channel", "--spectrum", "1,0", "--p", "1.5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["report", "--matrix", "/nonexistent.json"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn tolerance_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_purimetrics"))
        .args(["report", "--spectrum", "0.5,0.5"])
        .env("PURIMETRICS_TOL", "nope")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // a 1e-6 trace error is rejected by default and accepted at 1e-5
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.json",
        r#"{"dim":2,"entries":[[[0.500001,0],[0,0]],[[0,0],[0.5,0]]]}"#,
    );
    assert_eq!(run(&["report", "--matrix", &m]).status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_purimetrics"))
        .args(["report", "--matrix", &m])
        .env("PURIMETRICS_TOL", "1e-5")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["table1", "--json"],
        vec!["sweep", "--lambda1", "0.7", "--points", "31"],
        vec!["report", "--spectrum", "0.6,0.3,0.1"],
        vec!["channel", "--spectrum", "0.6,0.3,0.1", "--profile"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}
