use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn qcag(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qcag")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn records(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "records"]);
    let (code, out, err) = qcag(&all);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const HYPER_31: &str = r#"
[field]
p = 31

[curve]
family = "hyperelliptic"
B = [1, 0, 0, 0, 0, 1]

[automorphism]
kind = "diagonal"
ex = -1
ey = 2
"#;

#[test]
fn points_from_config_and_preset() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "h31.toml", HYPER_31);
    assert_eq!(records(&["points", "--config", &cfg])["count"], 28);
    assert_eq!(records(&["points", "--preset", "hyper-31"])["count"], 28);
    let herm = write(dir.path(), "herm.toml", "[curve]\nfamily = \"hermitian\"\nq = 3\n");
    let r = records(&["points", "--config", &herm]);
    assert_eq!(r["count"], 28);
    // elements of F_9 come back as coefficient arrays
    assert_eq!(r["points"][0][0].as_array().unwrap().len(), 2);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_field = write(dir.path(), "bad.toml", "[field]\np = 6\n[curve]\nfamily = \"generic\"\nm = 3\nB = [1, 0, 1]\n");
    assert_eq!(qcag(&["points", "--config", &bad_field]).0, 2);
    let typo = write(dir.path(), "typo.toml", "[feild]\np = 7\n");
    assert_eq!(qcag(&["points", "--config", &typo]).0, 2);
    assert_eq!(qcag(&["points", "--config", "/nonexistent/job.toml"]).0, 2);
    assert_eq!(qcag(&["build", "--preset", "hyper-31"]).0, 2, "t is required");
    assert_eq!(qcag(&["build", "--preset", "hyper-31", "--t-range", "3-5"]).0, 2);
}

#[test]
fn orbits_listing_and_identity() {
    let r = records(&["orbits", "--preset", "hyper-41"]);
    let long: Vec<&Value> = r["orbits"].as_array().unwrap().iter().filter(|o| o["long"] == true).collect();
    assert_eq!(long.len(), 6);
    assert!(long.iter().all(|o| o["length"] == 8));

    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "id.toml", &HYPER_31.replace("kind = \"diagonal\"\nex = -1\ney = 2", "kind = \"identity\""));
    let r = records(&["orbits", "--config", &cfg]);
    assert_eq!(r["order"], 1);
    assert_eq!(r["orbits"].as_array().unwrap().len(), 27);
    assert!(r["orbits"].as_array().unwrap().iter().all(|o| o["length"] == 1));
}

#[test]
fn build_reports_and_constraint_exit() {
    let r = records(&["build", "--preset", "kummer-127", "--t", "13"]);
    assert_eq!((r[0]["n"].as_u64(), r[0]["k"].as_u64(), r[0]["qc_verified"].as_bool()), (Some(147), Some(7), Some(true)));

    let r = records(&["build", "--preset", "hyper-31", "--t", "3"]);
    assert_eq!((r[0]["n"].as_u64(), r[0]["k"].as_u64(), r[0]["d_lower"].as_u64()), (Some(20), Some(2), Some(18)));
    assert_eq!(r[0]["classification"], "NMDS");

    let (code, _, err) = qcag(&["build", "--preset", "hyper-31", "--t", "20"]);
    assert_eq!(code, 3, "{err}");
    assert_eq!(qcag(&["build", "--preset", "hyper-31", "--t", "2"]).0, 3);
}

#[test]
fn orbit_selection_by_length_and_gqc() {
    let dir = tempfile::tempdir().unwrap();
    let gqc = write(dir.path(), "gqc.toml", &format!("{HYPER_31}\n[orbits]\nselect = \"gqc\"\n"));
    let r = records(&["build", "--config", &gqc, "--t", "4"]);
    assert_eq!((r[0]["n"].as_u64(), r[0]["k"].as_u64()), (Some(27), Some(3)));
    assert_eq!(r[0]["co_index"], "(2,5,10,10)");
    let by_len = write(dir.path(), "len.toml", &format!("{HYPER_31}\n[orbits]\nselect = \"lengths\"\nlengths = [5, 10]\n"));
    let r = records(&["verify-qc", "--config", &by_len, "--t", "4"]);
    assert_eq!((r[0]["n"].as_u64(), r[0]["qc_verified"].as_bool()), (Some(25), Some(true)));
    let bad_id = write(dir.path(), "ids.toml", &format!("{HYPER_31}\n[orbits]\nselect = \"explicit\"\nids = [9]\n"));
    assert_eq!(qcag(&["build", "--config", &bad_id, "--t", "4"]).0, 2);
}

#[test]
fn distance_exact_and_bounded() {
    let r = records(&["distance", "--preset", "hyper-31", "--t", "5"]);
    assert_eq!((r[0]["distance"]["lower"].as_u64(), r[0]["distance"]["exact"].as_bool()), (Some(15), Some(true)));
    let r = records(&["distance", "--preset", "hyper-31", "--t", "17"]);
    assert_eq!(r[0]["distance"]["lower"], 4);
    assert_eq!(r[0]["distance"]["strategy"], "column_search");
    let r = records(&["distance", "--preset", "kummer-127", "--t", "77", "--budget", "100000"]);
    let d = &r[0]["distance"];
    assert_eq!(d["exact"], false);
    assert!(d["lower"].as_u64().unwrap() < d["upper"].as_u64().unwrap());
    assert!(d["lower"].as_u64().unwrap() >= 147 - 77);
}

#[test]
fn matrix_files_round_trip_through_verify_qc() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    let (code, _, err) = qcag(&["build", "--preset", "hyper-31", "--t", "6", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let (code, text, _) = qcag(&["verify-qc", "--matrix", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.contains("shift-invariant") && !text.contains("NOT"));

    // relabel the blocks so the shift no longer acts on orbits
    let body = std::fs::read_to_string(&out).unwrap().replacen("blocks=10,10", "blocks=4,16", 1);
    let bad = write(dir.path(), "bad.txt", &body);
    let (code, text, _) = qcag(&["verify-qc", "--matrix", &bad]);
    assert_eq!(code, 4, "{text}");

    let (code, _, _) = qcag(&["build", "--preset", "hyper-31", "--t-range", "3..5", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(dir.path().join("g.txt.t3").exists() && dir.path().join("g.txt.t4").exists());
}

#[test]
fn census_pass_note_and_failure() {
    let (code, text, _) = qcag(&["census", "--preset", "hermitian-3"]);
    assert_eq!(code, 0, "{text}");
    for case in ["S_p", "case1", "case2", "case3"] {
        assert!(text.contains(&format!("PASS {case}:")), "{case}\n{text}");
    }
    let (code, text, _) = qcag(&["census", "--preset", "normtrace-2-3"]);
    assert_eq!(code, 0);
    assert!(text.contains("note: the count q^(2r)/p = 32"));
    let (code, text, _) = qcag(&["census", "--preset", "quotient-5-2"]);
    assert_eq!(code, 4);
    assert!(text.contains("FAIL eta"));
}

#[test]
fn reproduce_outcomes() {
    let (code, text, _) = qcag(&["reproduce", "hyper-41"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.ends_with("reproduce hyper-41: PASS\n"));

    // all distances agree; the t = 17 code has dual distance 15 and is AMDS
    let (code, text, _) = qcag(&["reproduce", "hyper-31"]);
    assert_eq!(code, 4);
    assert!(text.contains("MISMATCH nmds_t"));
    assert!(text.contains("observed [3,19]"));
    assert!(text.contains("MISMATCH (1 of 7 checks)"));

    assert_eq!(qcag(&["reproduce", "quotient-5-3"]).0, 0);
    assert_eq!(qcag(&["reproduce", "hermitian-7"]).0, 0);
    assert_eq!(qcag(&["reproduce", "nope-3"]).0, 2);
    assert_eq!(qcag(&["reproduce", "hyper-37"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    let a = qcag(&["orbits", "--preset", "normtrace-2-3", "--format", "records"]);
    let b = qcag(&["orbits", "--preset", "normtrace-2-3", "--format", "records"]);
    assert_eq!(a, b);
}
