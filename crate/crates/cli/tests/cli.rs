//! End-to-end tests against the compiled binary: exit codes, text
//! output, and text/JSON verdict agreement.

use std::process::{Command, Output};

fn fekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fekit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_reports_the_equivalence_pair_with_witness_one() {
    let out = fekit(&["check", "evens", "odds"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("Yes k=1"));
    println!("acceptance 02 (cli): PASS - check evens odds prints Yes k=1 with exit 0");
}

#[test]
fn check_refutes_naturals_into_evens_with_certificate() {
    let out = fekit(&["check", "nat", "evens"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("No, certificate F={0,1}"));
    println!("acceptance 02 (cli): PASS - check nat evens prints the {{0,1}} certificate with exit 1");
}

#[test]
fn check_oracle_crosscheck_agrees() {
    let out = fekit(&["check", "evens", "odds", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("agreement: ok"));
}

#[test]
fn check_json_and_text_verdicts_match() {
    let text = fekit(&["check", "up(01;4;2)", "evens"]);
    let json_out = fekit(&["check", "up(01;4;2)", "evens", "--json"]);
    assert_eq!(text.status.code(), json_out.status.code());
    let doc: serde_json::Value = serde_json::from_str(stdout(&json_out).trim()).expect("valid JSON");
    let outcome = doc["verdict"]["outcome"].as_str().unwrap();
    let first_word = stdout(&text);
    let first_word = first_word.split([' ', ',']).next().unwrap().to_lowercase();
    assert_eq!(outcome, first_word);
}

#[test]
fn classify_reports_exact_density_for_evens() {
    let out = fekit(&["classify", "evens"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("density: 1/2 (exact)"));
    assert!(text.contains("thick: No"));
    assert!(text.contains("syndetic: Yes"));
    assert!(text.contains("piecewise syndetic: Yes"));

    let json_out = fekit(&["classify", "evens", "--json"]);
    let doc: serde_json::Value =
        serde_json::from_str(stdout(&json_out).trim()).expect("valid JSON");
    assert_eq!(doc["density"]["value"], "1/2");
    assert_eq!(doc["density"]["method"], "exact");
    assert_eq!(doc["thick"]["outcome"], "no");
    assert_eq!(doc["syndetic"]["outcome"], "yes");
}

#[test]
fn minimal_prints_the_counted_enumeration() {
    let out = fekit(&["minimal", "--n", "2", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{0,1}\n{0,2}\ncount=2=C(2,1)\n");
}

#[test]
fn construct_pair_reproduces_the_golden_trace() {
    let out = fekit(&["construct-pair", "nat", "--count", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("A = [0, 3, 11, 32]"));
    assert!(text.contains("B = [1, 6, 19, 53]"));
    assert!(text.contains("verification: pass"));
}

#[test]
fn construct_pair_fails_fast_on_a_finite_source() {
    let out = fekit(&["construct-pair", "{0,1,2}", "--count", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("source exhausted"));
}

#[test]
fn chain_is_certified_on_the_naturals() {
    let out = fekit(&["chain", "nat", "--depth", "2", "--count", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("certified: yes"));
    assert!(text.contains("step 1:"));
    assert!(text.contains("step 2:"));
}

#[test]
fn chain_truncates_on_a_finite_source() {
    let out = fekit(&["chain", "{0,1,2}", "--depth", "3", "--count", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("TRUNCATED"));
}

#[test]
fn laws_emits_line_oriented_json() {
    let out = fekit(&["laws", "--corpus", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut saw_report = false;
    for line in text.lines() {
        let doc: serde_json::Value = serde_json::from_str(line).expect("every line is JSON");
        if doc.get("law").is_some() {
            saw_report = true;
            assert!(doc.get("instance").is_some());
            assert!(doc.get("outcome").is_some());
            assert!(doc.get("witness").is_some());
        }
    }
    assert!(saw_report);
    assert!(text.lines().last().unwrap().contains("summary"));
}

#[test]
fn laws_writes_report_file_with_out_flag() {
    let dir = std::env::temp_dir().join(format!("fekit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("laws.jsonl");
    let out = fekit(&["laws", "--corpus", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let contents = std::fs::read_to_string(&path).unwrap();
    assert!(contents.lines().count() > 0);
    for line in contents.lines() {
        serde_json::from_str::<serde_json::Value>(line).expect("valid JSON line");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn parse_errors_exit_with_usage_code() {
    let out = fekit(&["check", "up(;2;2)", "evens"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("residue 2 is not below period 2"));

    let out = fekit(&["classify", "up(;0;0)"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_arguments_exit_with_usage_code() {
    let out = fekit(&[]);
    assert_eq!(out.status.code(), Some(3));
    let out = fekit(&["check", "evens"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn help_lists_every_subcommand() {
    let out = fekit(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for sub in ["check", "classify", "construct-pair", "chain", "minimal", "laws"] {
        assert!(text.contains(sub), "help misses {sub}");
    }
}
