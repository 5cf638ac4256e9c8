use std::path::Path;
use std::process::{Command, Output};

fn ququint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ququint")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn decompose_to(path: &Path, args: &[&str]) -> Output {
    let mut all = vec!["decompose"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    ququint(&all)
}

fn gate_kinds(path: &Path) -> (usize, usize) {
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let gates = doc["gates"].as_array().unwrap();
    let cz = gates.iter().filter(|g| g.get("cz").is_some()).count();
    (cz, gates.len() - cz)
}

#[test]
fn decompose_c4z_and_c3z() {
    let dir = tempfile::tempdir().unwrap();
    let c4z = dir.path().join("c4z.json");
    let o = decompose_to(&c4z, &["--n", "5", "--method", "ququint", "--odd-variant", "single"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "two_particle_gates: 3\nancilla_systems: 0\n");
    assert_eq!(gate_kinds(&c4z), (3, 4));

    let c3z = dir.path().join("c3z.json");
    assert!(decompose_to(&c3z, &["--n", "4", "--method", "ququint"]).status.success());
    assert_eq!(gate_kinds(&c3z), (1, 0));

    let qubit = dir.path().join("qubit.json");
    let o = decompose_to(&qubit, &["--n", "5", "--method", "qubit"]);
    assert_eq!(stdout(&o), "two_particle_gates: 37\nancilla_systems: 3\n");
}

#[test]
fn usage_errors_exit_2_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.json");
    for args in [
        vec!["--n", "1"],
        vec!["--n", "4", "--method", "octonion"],
        vec!["--n", "4", "--target", "x:9"],
        vec!["--n", "4", "--odd-variant", "both"],
    ] {
        let o = decompose_to(&out, &args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
        assert!(o.stdout.is_empty());
        assert!(!out.exists());
    }

    let csv = dir.path().join("never.csv");
    for args in [
        ["count", "--n-range", "2..10", "--format", "xml"],
        ["count", "--n-range", "9..3", "--format", "csv"],
        ["count", "--n-range", "2..31", "--format", "csv"],
    ] {
        let mut args = args.to_vec();
        args.extend_from_slice(&["--out", csv.to_str().unwrap()]);
        assert_eq!(ququint(&args).status.code(), Some(2));
        assert!(!csv.exists());
    }
    assert_eq!(ququint(&["grover", "--n", "4", "--omega", "101"]).status.code(), Some(2));
    assert_eq!(ququint(&["verify", "--n", "11"]).status.code(), Some(2));
}

#[test]
fn verify_passes_built_in_decompositions() {
    for args in [
        ["--n", "6", "--method", "ququint"],
        ["--n", "7", "--method", "qutrit"],
        ["--n", "5", "--method", "qubit"],
    ] {
        let mut all = vec!["verify", "--exhaustive"];
        all.extend_from_slice(&args);
        let o = ququint(&all);
        assert!(o.status.success(), "{args:?}");
        assert!(stdout(&o).ends_with("result: pass\n"));
    }
    let o = ququint(&["verify", "--n", "7", "--odd-variant", "neighbor", "--target", "x:3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("inputs_checked: 256\n"));
}

#[test]
fn verify_file_flags_corrupted_document() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    assert!(decompose_to(&good, &["--n", "4"]).status.success());
    let o = ququint(&["verify", "--file", good.to_str().unwrap()]);
    assert!(o.status.success());

    // move the phase from |3>|3> to |3>|2>
    let text = std::fs::read_to_string(&good).unwrap().replace("\"j\": 3", "\"j\": 2");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, text).unwrap();
    let o = ququint(&["verify", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("failing_input: 1110\n"));

    std::fs::write(&bad, "{\"version\": \"1.0\"}").unwrap();
    assert_eq!(ququint(&["verify", "--file", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn simulate_probabilities_and_shots() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("c4z.json");
    assert!(decompose_to(&doc, &["--n", "5"]).status.success());
    let d = doc.to_str().unwrap();

    let o = ququint(&["simulate", d, "--input", "11111", "--probs"]);
    assert_eq!(stdout(&o), "outcome,probability\n11111,1.000000000000\nleakage,0.000000000000\n");
    let o = ququint(&["simulate", d, "--input", "11011", "--probs"]);
    assert!(stdout(&o).contains("\n11011,1.000000000000\n"));

    let a = ququint(&["simulate", d, "--input", "11011", "--shots", "1000", "--seed", "7"]);
    let b = ququint(&["simulate", d, "--input", "11011", "--shots", "1000", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), "outcome,count\n11011,1000\n");

    let o = ququint(&["simulate", d, "--input", "111", "--probs"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_superposed_state_file() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("cz.json");
    assert!(decompose_to(&doc, &["--n", "2", "--method", "qutrit"]).status.success());
    // (|00> + |11>) / sqrt 2 over two qutrits
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![[0.0, 0.0]; 9];
    amps[0] = [h, 0.0];
    amps[4] = [h, 0.0];
    let state = dir.path().join("state.json");
    std::fs::write(&state, serde_json::to_string(&amps).unwrap()).unwrap();
    let o = ququint(&["simulate", doc.to_str().unwrap(), "--state", state.to_str().unwrap(), "--probs"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("\n00,0.500000000000\n") && text.contains("\n11,0.500000000000\n"));
}

#[test]
fn grover_reports() {
    let o = ququint(&["grover", "--n", "5", "--omega", "10101", "--method", "ququint"]);
    let text = stdout(&o);
    assert!(text.contains("iterations: 4\n"));
    assert!(text.contains("success_probability: 0.999182\n"));
    assert!(text.contains("two_particle_gates: 24\n"));

    let o = ququint(&["grover", "--n", "2", "--omega", "11", "--method", "reference", "--report", "json"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((report["success_probability"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let o = ququint(&["grover", "--n", "3", "--omega", "010", "--method", "qubit", "--iterations", "1"]);
    assert!(stdout(&o).contains("iterations: 1\n"));
}

#[test]
fn count_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("counts.csv");
    let o = ququint(&["count", "--n-range", "2..10", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let file = std::fs::read_to_string(&out).unwrap();
    let again = stdout(&ququint(&["count", "--n-range", "2..10", "--format", "csv"]));
    assert_eq!(file, again);
    let lines: Vec<_> = file.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[4], "5,4,37,7,3,296,56,24,12.333");

    let o = ququint(&["count", "--n-range", "3..5", "--format", "json", "--odd-variant", "neighbor"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 3);
    assert_eq!(report["odd_variant"], "neighbor");
}
