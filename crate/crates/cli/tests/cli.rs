use std::io::Write;
use std::process::{Command, Output, Stdio};

use leonard_core::leonard::{krawtchouk_family, validate};
use leonard_core::serial::{canonical_json, system_to_json};
use leonard_core::FieldSpec;
use serde_json::Value;

fn leonard(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_leonard"))
        .args(args)
        .env_remove("LEONARD_FIELD")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = leonard(args, stdin);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn pipeline(d: &str) -> Value {
    let c = ok(
        &[
            "construct",
            "--family",
            "krawtchouk",
            "--d",
            d,
            "--field",
            "Q",
        ],
        "",
    );
    let s = ok(&["validate"], &c);
    serde_json::from_str(&ok(&["xspace"], &s)).unwrap()
}

#[test]
fn krawtchouk_d3_has_five_dimensional_x() {
    let x = pipeline("3");
    assert_eq!(x["dim"], 5);
    assert_eq!(x["spans"], true);
    assert_eq!(x["independent"], true);
    assert_eq!(x["basis"].as_array().unwrap().len(), 5);
}

#[test]
fn krawtchouk_d1_has_four_dimensional_x() {
    let x = pipeline("1");
    assert_eq!(x["dim"], 4);
    assert_eq!(x["independent"], false);
}

#[test]
fn zero_subdiagonal_is_rejected_with_exit_2() {
    let c = ok(&["construct", "--family", "krawtchouk", "--d", "3"], "");
    let mut v: Value = serde_json::from_str(&c).unwrap();
    v["a_mat"]["rows"][2][1] = Value::String("0".into());
    let out = leonard(&["validate"], &v.to_string());
    assert_eq!(out.status.code(), Some(2));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["axiom"], "(v)");
    assert!(diag["message"].as_str().unwrap().contains("irreducibility"));
}

#[test]
fn round_trip_is_byte_equal_to_in_process_construction() {
    for (d, field, f) in [
        ("3", "Q", FieldSpec::Rationals),
        ("4", "GF(101)", FieldSpec::Prime(101)),
    ] {
        let c = ok(
            &[
                "construct",
                "--family",
                "krawtchouk",
                "--d",
                d,
                "--field",
                field,
            ],
            "",
        );
        let s = ok(&["validate"], &c);
        let direct = validate(&krawtchouk_family(d.parse().unwrap(), f).unwrap()).unwrap();
        assert_eq!(s.trim_end(), canonical_json(&system_to_json(&direct)));
        // Validating a validated system changes nothing.
        assert_eq!(ok(&["validate"], &s), s);
    }
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(
        leonard(&["construct", "--bogus"], "").status.code(),
        Some(1)
    );
    assert_eq!(leonard(&["frobnicate"], "").status.code(), Some(1));
    assert_eq!(leonard(&["validate"], "not json").status.code(), Some(1));
    assert_eq!(leonard(&["--help"], "").status.code(), Some(0));
}

#[test]
fn field_defaults_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_leonard"))
        .args(["construct", "--family", "krawtchouk", "--d", "2"])
        .env("LEONARD_FIELD", "GF(7)")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["field"], "GF(7)");
}

#[test]
fn affine_and_parameters() {
    let c = ok(
        &[
            "construct",
            "--family",
            "krawtchouk",
            "--d",
            "3",
            "--affine",
            "-1,2,1/2,0",
        ],
        "",
    );
    let p: Value = serde_json::from_str(&ok(&["awparams"], &c)).unwrap();
    assert_eq!(p["beta"], "2");
    assert_eq!(p["rho"], "4");
    assert_eq!(p["rho_star"], "1");
    let u: Value = serde_json::from_str(&ok(&["upsilon", "--star"], &c)).unwrap();
    assert_eq!(
        (u["kernel_dim"].as_u64(), u["image_dim"].as_u64()),
        (Some(3), Some(2))
    );
}

#[test]
fn construct_from_file_and_output_flag() {
    let dir = tempfile::tempdir().unwrap();
    let cand = dir.path().join("c.json");
    let out = dir.path().join("x.json");
    let c = ok(&["construct", "--family", "krawtchouk", "--d", "2"], "");
    std::fs::write(&cand, &c).unwrap();
    let again = ok(&["construct", "--from", cand.to_str().unwrap()], "");
    assert_eq!(again, c);
    ok(
        &[
            "xspace",
            "--input",
            cand.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
        ],
        "",
    );
    let x: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(x["dim"], 5);
}

#[test]
fn census_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.json");
    let recs = dir.path().join("r.ndjson");
    std::fs::write(
        &job,
        r#"{"field":"GF(3)","d":2,"mode":"exhaustive","checkpoint_every":50}"#,
    )
    .unwrap();
    let rec_arg = recs.to_str().unwrap();
    let out: Value = serde_json::from_str(&ok(
        &[
            "census",
            "--job",
            job.to_str().unwrap(),
            "--workers",
            "2",
            "--records",
            rec_arg,
        ],
        "",
    ))
    .unwrap();
    assert_eq!(out["summary"]["total"], 18);
    assert_eq!(out["complete"], true);
    let report: Value = serde_json::from_str(&ok(&["report", "--records", rec_arg], "")).unwrap();
    assert_eq!(report, out["summary"]);
    let table = ok(&["report", "--records", rec_arg, "--text"], "");
    assert!(table.trim_end().ends_with("total 18"));

    // Without a records file the records are inlined; the seed flag is
    // honoured for sampling jobs.
    std::fs::write(
        &job,
        r#"{"field":"GF(5)","d":2,"mode":"random_sample","sample_count":300}"#,
    )
    .unwrap();
    let a = ok(
        &["census", "--job", job.to_str().unwrap(), "--seed", "3"],
        "",
    );
    let b = ok(
        &[
            "census",
            "--job",
            job.to_str().unwrap(),
            "--seed",
            "3",
            "--workers",
            "3",
        ],
        "",
    );
    let c = ok(&["census", "--job", job.to_str().unwrap()], "");
    let d = ok(
        &["census", "--job", job.to_str().unwrap(), "--seed", "0"],
        "",
    );
    assert_eq!(a, b);
    assert_eq!(c, d);
    assert_ne!(a, c);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert!(!v["records"].as_array().unwrap().is_empty());
}
