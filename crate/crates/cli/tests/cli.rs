use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn avgord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avgord"))
        .args(args)
        .output()
        .expect("spawn avgord")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = avgord(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Fresh scratch directory per test.
fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn core_data(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(file)
}

#[test]
fn average_order_of_expressions() {
    for (expr, o, order, psi) in [
        ("C(2)^2", "7/4", "4", "7"),
        ("", "1/1", "1", "1"),
        ("1", "1/1", "1", "1"),
        ("D4", "19/8", "8", "19"),
        ("Q8", "27/8", "8", "27"),
        ("C(9) x C(3)", "187/27", "27", "187"),
    ] {
        let v = json(&["o", expr]);
        assert_eq!(v["o"], o, "{expr}");
        assert_eq!(v["order"], order, "{expr}");
        assert_eq!(v["psi"], psi, "{expr}");
    }
    assert!(stdout(&avgord(&["o", "C(2)^2"])).contains("7/4 (1.75000000000000)"));
}

#[test]
fn permutation_expressions() {
    let path = core_data("q8.gens");
    let v = json(&["o", &format!("perm:{}", path.display())]);
    assert_eq!(v["o"], "27/8");
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        &["o", "C(1)"][..],
        &["o", "C(6)"],
        &["o", "C(2"],
        &["approx", "--target", "0"],
        &["approx", "--target", "-1"],
        &["approx", "--target", "2", "--eps", "0"],
        &["approx", "--target", "2", "--exclude", "4"],
        &["bogus"],
    ] {
        assert_eq!(avgord(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn approx_writes_verifiable_certificate() {
    let dir = scratch("approx_ge1");
    let cert = dir.join("c.json");
    let cert_s = cert.to_str().unwrap();
    let v = json(&[
        "approx", "--target", "3.5", "--eps", "1e-4", "--out", cert_s,
    ]);
    assert_eq!(v["mode"], "ge1");
    let claimed = v["claimed_ratio_decimal"]
        .as_str()
        .unwrap()
        .parse::<f64>()
        .unwrap();
    assert!(claimed <= 3.5 && 3.5 <= claimed * (1.0 + 1e-4));

    let out = avgord(&["verify", cert_s]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict        ok"));

    // Changing one digit of the claimed ratio breaks the certificate.
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    let ratio = doc["claimed_ratio"].as_str().unwrap().to_string();
    let (num, den) = ratio.split_once('/').unwrap();
    doc["claimed_ratio"] = Value::String(format!("{num}/{den}1"));
    fs::write(&cert, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(avgord(&["verify", cert_s]).status.code(), Some(6));

    assert_eq!(
        avgord(&["verify", dir.join("missing.json").to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn approx_below_one_abelian_and_nilpotent() {
    let dir = scratch("approx_le1");
    let abelian = dir.join("a.json");
    let v = json(&[
        "approx",
        "--target",
        "0.37",
        "--out",
        abelian.to_str().unwrap(),
    ]);
    assert_eq!(v["mode"], "le1_abelian");
    assert_eq!(
        avgord(&["verify", abelian.to_str().unwrap()]).status.code(),
        Some(0)
    );

    let nil = dir.join("n.json");
    let v = json(&[
        "approx",
        "--target",
        "0.9",
        "--nilpotent",
        "--base",
        "D4C4",
        "--out",
        nil.to_str().unwrap(),
    ]);
    assert_eq!(v["mode"], "sub_unit_nilpotent");
    assert_eq!(
        avgord(&["verify", nil.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn custom_base_pair_from_files() {
    let dir = scratch("approx_perm");
    fs::copy(core_data("d4.gens"), dir.join("d4.gens")).unwrap();
    fs::copy(core_data("c4.gens"), dir.join("c4.gens")).unwrap();
    let cert = dir.join("c.json");
    let out = avgord(&[
        "approx",
        "--target",
        "0.95",
        "--nilpotent",
        "--base-g",
        dir.join("d4.gens").to_str().unwrap(),
        "--base-h",
        dir.join("c4.gens").to_str().unwrap(),
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    // Paths are stored relative to the certificate, so the directory can move.
    let moved = scratch("approx_perm_moved");
    for f in ["d4.gens", "c4.gens", "c.json"] {
        fs::copy(dir.join(f), moved.join(f)).unwrap();
    }
    fs::remove_dir_all(&dir).unwrap();
    assert_eq!(
        avgord(&["verify", moved.join("c.json").to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn plans_for_tiny_targets() {
    let v = &json(&["approx", "--target", "0", "--plan"])["plan"];
    assert_eq!(v["n"], 4);
    assert_eq!(v["p"], 7);
    assert_eq!(v["bound"], "1/2401");

    // No built-in nilpotent pair reaches 0.3: exit 4 with the plan on stdout.
    let dir = scratch("insufficient");
    let out = avgord(&[
        "approx",
        "--target",
        "0.3",
        "--nilpotent",
        "--out",
        dir.join("c.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("plan index"));
    assert!(!dir.join("c.json").exists());
}

#[test]
fn budget_exhaustion_exits_3() {
    let dir = scratch("budget");
    let out = avgord(&[
        "approx",
        "--target",
        "5",
        "--max-terms",
        "10",
        "--out",
        dir.join("c.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let dir = scratch("determinism");
    let run = |name: &str| {
        let path = dir.join(name);
        let out = avgord(&[
            "--json",
            "approx",
            "--target",
            "2.5",
            "--eps",
            "1e-5",
            "--exclude",
            "3,7",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        (fs::read(&path).unwrap(), stdout(&out).replace(name, ""))
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn excluded_primes_are_skipped() {
    let dir = scratch("exclude");
    let cert = dir.join("c.json");
    json(&[
        "approx",
        "--target",
        "2",
        "--exclude",
        "2,5",
        "--out",
        cert.to_str().unwrap(),
    ]);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(doc["trace"]["excluded"], serde_json::json!([1, 3]));
    let indices: Vec<u64> = doc["trace"]["indices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i.as_u64().unwrap())
        .collect();
    assert!(
        !indices.contains(&1) && !indices.contains(&3),
        "{indices:?}"
    );
}

#[test]
fn oracle_check() {
    let v = json(&["oracle-check", "--max-order", "128"]);
    assert_eq!(v["ok"], true);
    assert_eq!(
        avgord(&["oracle-check", "--max-order", "1"]).status.code(),
        Some(0)
    );
    assert_eq!(
        avgord(&["oracle-check", "--max-order", "5000"])
            .status
            .code(),
        Some(5)
    );
}

#[test]
fn seq_table() {
    let v = json(&["seq", "-m", "2", "-N", "3"]);
    let rows = v["rows"].as_array().unwrap();
    let r: Vec<&str> = rows.iter().map(|row| row["r"].as_str().unwrap()).collect();
    assert_eq!(r, ["7/6", "25/21", "121/105"]);
    assert!((rows[0]["x"].as_f64().unwrap() - (7.0f64 / 6.0).ln()).abs() < 1e-15);
    let text = stdout(&avgord(&["seq", "-N", "2"]));
    assert_eq!(text.lines().count(), 3);
}
