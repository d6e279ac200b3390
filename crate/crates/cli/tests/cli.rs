use std::path::Path;
use std::process::{Command, Output};

use gralift::io::{parse_rank_code, parse_subspace_code};
use gralift::{lift_code, Matrix, MatrixRing, RankMetricCode, Side};

fn gralift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gralift"))
        .args(args)
        .env_remove("GRALIFT_ENUM_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn verify_small_primes_exit_zero() {
    let out = gralift(&["verify", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("(4,4,2,2)_2 OK"));
    let out = gralift(&["verify", "3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("(4,9,2,2)_3 OK"));
}

#[test]
fn injected_faults_flip_verify() {
    for fault in ["gl-order", "gamma-full", "gamma-ideal", "lift-factor", "lift-params", "gaussian"] {
        for p in ["2", "3"] {
            let out = gralift(&["verify", p, "--inject-fault", fault]);
            assert_eq!(out.status.code(), Some(1), "fault {fault} at p = {p}");
            assert!(stdout(&out).contains("FAIL"));
        }
    }
}

#[test]
fn verify_json_lists_checks() {
    let out = gralift(&["--format", "json", "verify", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["p"], 2);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn formula_commands() {
    assert_eq!(stdout(&gralift(&["gaussian", "4", "2", "2"])), "35\n");
    assert_eq!(stdout(&gralift(&["gl-order", "2"])), "6\n");
    let dist = stdout(&gralift(&["distribution", "3"]));
    let last = dist.lines().last().unwrap();
    assert_eq!(last.split_whitespace().collect::<Vec<_>>(), ["1", "32", "48"]);
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&gralift(&["--format", "json", "distribution", "2"]))).unwrap();
    assert_eq!((json["a0"].as_u64(), json["a1"].as_u64(), json["a2"].as_u64()), (Some(1), Some(9), Some(6)));
}

#[test]
fn json_key_order_is_stable() {
    let a = stdout(&gralift(&["--format", "json", "weights-report", "2"]));
    let b = stdout(&gralift(&["--format", "json", "weights-report", "2"]));
    assert_eq!(a, b);
    let keys: Vec<&str> = a
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(keys, ["p", "gamma_full_ring", "gamma_minimal_ideal", "reports"]);
}

#[test]
fn budget_overrun_has_its_own_status() {
    let out = gralift(&["idempotents", "11"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("GRALIFT_ENUM_BUDGET"));

    let out = Command::new(env!("CARGO_BIN_EXE_gralift"))
        .args(["verify", "3"])
        .env("GRALIFT_ENUM_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(gralift(&["verify", "4"]).status.code(), Some(2));
    assert_eq!(gralift(&["ideal", "2", "up", "0", "0", "0", "1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "rankcode 2 2 2\n2 2 2\n0 0\n").unwrap();
    let out = gralift(&["rankcode-info", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line"));
}

fn ideal_code(p: u64, side: Side, entries: &[i64]) -> RankMetricCode {
    let ring = MatrixRing::over_prime(p).unwrap();
    let g = Matrix::from_ints(2, 2, ring.field(), entries).unwrap();
    RankMetricCode::from_matrices(ring.principal_ideal(&g, side).unwrap().elements).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (p, side, entries) in [
        ("2", Side::Left, [0i64, 0, 0, 1]),
        ("2", Side::Right, [0, 0, 0, 1]),
        ("3", Side::Left, [0, 2, 0, 1]),
        ("3", Side::Right, [1, 1, 0, 0]),
    ] {
        let code_path = dir.path().join(format!("ideal_{p}_{side}.txt"));
        let lifted_path = dir.path().join(format!("lift_{p}_{side}.txt"));
        let mut args = vec!["ideal", p, if side == Side::Left { "left" } else { "right" }];
        let e: Vec<String> = entries.iter().map(i64::to_string).collect();
        args.extend(e.iter().map(String::as_str));
        args.extend(["-o", path_str(&code_path)]);
        assert!(gralift(&args).status.success());

        let expected = ideal_code(p.parse().unwrap(), side, &entries);
        let parsed = parse_rank_code(&std::fs::read_to_string(&code_path).unwrap()).unwrap();
        assert_eq!(parsed.code, expected);
        assert_eq!(parsed.ideal.unwrap().side, side);

        let out = gralift(&["lift", path_str(&code_path), "-o", path_str(&lifted_path)]);
        assert!(out.status.success(), "{}", stderr(&out));
        let lifted = parse_subspace_code(&std::fs::read_to_string(&lifted_path).unwrap()).unwrap();
        assert_eq!(lifted, lift_code(&expected).unwrap().codewords);
        assert_eq!(lifted.params().to_string(), format!("(4,{},2,2)_{p}", expected.len()));
    }
}

#[test]
fn stdout_code_file_matches_written_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i.txt");
    let printed = stdout(&gralift(&["ideal", "3", "left", "0", "2", "0", "1"]));
    assert!(gralift(&["ideal", "3", "left", "0", "2", "0", "1", "-o", path_str(&path)]).status.success());
    assert_eq!(printed, std::fs::read_to_string(&path).unwrap());
}

#[test]
fn lift_report_json_shape() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i.txt");
    assert!(gralift(&["ideal", "2", "left", "0", "0", "0", "1", "-o", path_str(&path)]).status.success());
    let out = gralift(&["--format", "json", "lift", path_str(&path)]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["source"]["rho"], 2);
    assert_eq!(v["source"]["delta"], 1);
    assert_eq!(v["lifted"]["n"], 4);
    assert_eq!(v["lifted"]["M"], 4);
    assert_eq!(v["lifted"]["d"], 2);
    assert_eq!(v["lifted"]["k"], 2);
    assert_eq!(v["theorem_ok"], true);
}

#[test]
fn rankcode_info_reports_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i.txt");
    assert!(gralift(&["ideal", "3", "right", "1", "1", "0", "0", "-o", path_str(&path)]).status.success());
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&gralift(&["--format", "json", "rankcode-info", path_str(&path)]))).unwrap();
    assert_eq!(v["code"]["size"], 9);
    assert_eq!(v["code"]["rho"], 2);
    assert_eq!(v["delta_equals_omega"]["equal"], true);
}

#[test]
fn idempotents_lists_census() {
    let out = gralift(&["--format", "json", "idempotents", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["census"]["raw_count"], 12);
    assert_eq!(v["census"]["distinct_left_ideals"], 4);
    assert_eq!(v["left_ideals"].as_array().unwrap().len(), 4);
    assert_eq!(v["idempotents"].as_array().unwrap().len(), 12);
}

#[test]
fn weights_report_single_side() {
    let out = gralift(&["weights-report", "3", "--side", "right"]);
    let text = stdout(&out);
    assert!(out.status.success());
    assert!(text.contains("128/81"));
    assert!(text.contains("8/9"));
    assert!(text.contains("right cyclic submodules: E = false, H = true, homogeneous = false"));
    assert!(!text.contains("left cyclic"));
}
