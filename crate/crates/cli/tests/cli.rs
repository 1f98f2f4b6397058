//! End-to-end tests of the `argshift` binary: exit codes, JSON report
//! shapes, and the documented subcommand behaviors.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_argshift"))
}

#[test]
fn commute_reports_witness_and_exit_code() {
    let out = bin()
        .args(["commute", "--a", "E[1,2]", "--b", "E[2,1]"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let line = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["check"], "commute");
    assert_eq!(v["status"], "fail");
    assert_eq!(v["witness"], "E[1,1] - E[2,2]");

    let out = bin()
        .args(["commute", "--a", "E[1,1]", "--b", "E[2,2]"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn commute_requires_family_for_f_generators() {
    let out = bin()
        .args(["commute", "--a", "F[1,2]", "--b", "F[2,1]"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args([
            "commute", "--a", "F[1,2]", "--b", "F[2,1]", "--family", "oN", "--n", "5",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1)); // they do not commute
}

#[test]
fn apply_dmu_power_zero_echoes_normalized_input() {
    let mu = r#"{"family":"glN","N":2,"entries":[["1","0"],["0","2"]]}"#;
    let dir = std::env::temp_dir().join("argshift-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mu_gl2.json");
    std::fs::write(&path, mu).unwrap();

    let out = bin()
        .args([
            "apply-dmu",
            "--mu",
            path.to_str().unwrap(),
            "--element",
            "E[2,1]E[1,2]",
            "--power",
            "0",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // E[2,1]E[1,2] = E[1,2]E[2,1] - E[1,1] + E[2,2], printed in PBW order
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "-E[1,1] + E[1,2]E[2,1] + E[2,2]");
}

#[test]
fn apply_dmu_rejects_malformed_mu() {
    let dir = std::env::temp_dir().join("argshift-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mu_bad.json");
    // violates the orthogonal skew constraint
    std::fs::write(
        &path,
        r#"{"family":"oN","N":4,"entries":[["1","0","0","0"],["0","0","0","0"],["0","0","0","0"],["0","0","0","0"]]}"#,
    )
    .unwrap();
    let out = bin()
        .args([
            "apply-dmu",
            "--mu",
            path.to_str().unwrap(),
            "--element",
            "F[1,1]",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("error"));
}

#[test]
fn generate_emits_labelled_family() {
    let out = bin()
        .args(["generate", "--family", "sp", "--n", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let members = v.as_array().unwrap();
    // sp_2: m = 2, p = 0, 1
    assert_eq!(members.len(), 2);
    assert_eq!(members[0]["label"]["kind"], "phi");
    assert_eq!(members[0]["label"]["m"], 2);
    assert!(members[0]["element"].is_string());
}

#[test]
fn check_counterexample_suite_passes() {
    let out = bin()
        .args([
            "check",
            "--suite",
            "counterexamples",
            "--family",
            "oN",
            "--max-n",
            "5",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut saw = 0;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "pass");
        assert!(v["ms"].is_u64());
        saw += 1;
    }
    assert!(
        saw >= 3,
        "expected the three orthogonal counterexample checks"
    );
}

#[test]
fn check_reports_are_deterministic() {
    let run = || {
        let out = bin()
            .args([
                "check",
                "--suite",
                "identities",
                "--family",
                "glN",
                "--max-n",
                "2",
                "--seed",
                "7",
            ])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        // strip the timing field, everything else must be identical
        String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("ms");
                v.to_string()
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}
