//! Black-box tests of the binary: exit codes, exact text and JSON bytes,
//! format selection, thread-invariant sweeps, and JSON round-trips.

use std::process::{Command, Output};

use seven::ManifoldDescriptor;

fn seven(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seven"))
        .args(args)
        .env_remove("SEVEN_OUTPUT")
        .output()
        .expect("binary runs")
}

fn seven_with_env(args: &[&str], value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seven"))
        .args(args)
        .env("SEVEN_OUTPUT", value)
        .output()
        .expect("binary runs")
}

fn out(output: Output) -> String {
    assert!(
        output.status.success(),
        "exit {:?}, stderr: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).expect("utf8 stdout")
}

fn fails_with(output: Output, code: i32, message: &str) {
    assert_eq!(output.status.code(), Some(code));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains(message), "stderr was: {stderr}");
}

#[test]
fn validate_reports_the_class() {
    assert_eq!(out(seven(&["validate", "--theta", "1,28,0,0"])), "valid (k=1, p=28, eps=0, delta=0)\n");
    assert_eq!(
        out(seven(&["validate", "--theta", "1,28,0,0", "--json"])),
        "{\"k\":1,\"p\":28,\"eps\":0,\"delta\":0}\n"
    );
}

#[test]
fn unrealizable_classes_are_domain_errors() {
    let output = seven(&["validate", "--theta", "1,4,1,0"]);
    assert_eq!(output.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&output.stderr), "odd k forces eps=0\n");
    assert!(output.stdout.is_empty());

    fails_with(seven(&["validate", "--theta", "1,5,0,0"]), 1, "congruence violated (mod 24)");
    fails_with(
        seven(&["bundle-invariants", "--cat", "diff", "--theta", "1,4,0,1"]),
        1,
        "non-smoothable theta in DIFF category",
    );
    fails_with(seven(&["core-invariants", "--cat", "top", "--core", "1,1,1"]), 1, "c = 1 requires even k");
    fails_with(
        seven(&["count", "--cat", "top", "--core", "6,1,0", "--rank", "3"]),
        1,
        "odd rank",
    );
}

#[test]
fn malformed_literals_are_usage_errors() {
    assert_eq!(seven(&["validate", "--theta", "1,4,1"]).status.code(), Some(2));
    assert_eq!(seven(&["validate", "--theta", "a,b,c,d"]).status.code(), Some(2));
    assert_eq!(seven(&["classify", "--cat", "top"]).status.code(), Some(2));
    assert_eq!(seven(&["no-such-verb"]).status.code(), Some(2));
}

#[test]
fn classify_prints_normal_form_and_witness() {
    assert_eq!(
        out(seven(&["classify", "--cat", "diff", "--theta", "1,28,0,0"])),
        "M^0_{6,1} # Sigma_1 [DIFF] m=1 raw=1\n"
    );
    assert_eq!(
        out(seven(&["classify", "--cat", "top", "--theta", "-2,430,1,0"])),
        "M^0_{108,-2} [TOP] m=18\n"
    );
    assert_eq!(
        out(seven(&["classify", "--cat", "diff", "--theta", "1,28,0,0", "--json"])),
        "{\"descriptor\":{\"category\":\"DIFF\",\"rank\":0,\"core\":{\"l\":6,\"k\":1,\"c\":0},\"exotic\":1},\"witness_m\":1,\"exotic_raw\":1}\n"
    );
}

#[test]
fn no_absorb_exposes_the_raw_exotic_count() {
    assert_eq!(
        out(seven(&["classify", "--cat", "diff", "--theta", "0,24,0,0"])),
        "M^0_{6,0} [DIFF] m=1 raw=1\n"
    );
    assert_eq!(
        out(seven(&["classify", "--cat", "diff", "--theta", "0,24,0,0", "--no-absorb"])),
        "M^0_{6,0} # Sigma_1 [DIFF] m=1 raw=1\n"
    );
}

#[test]
fn admits_answers_both_ways_with_success() {
    assert_eq!(
        out(seven(&["admits", "--cat", "diff", "--core", "-1,2,0", "--exotic", "2"])),
        "(k=-2, p=142, eps=1, delta=0) rank 0\n"
    );
    assert_eq!(
        out(seven(&["admits", "--cat", "diff", "--core", "-1,2,0", "--exotic", "2", "--json"])),
        "{\"theta\":{\"k\":-2,\"p\":142,\"eps\":1,\"delta\":0},\"rank\":0}\n"
    );
    assert_eq!(out(seven(&["admits", "--cat", "diff", "--core", "-1,2,0", "--exotic", "25"])), "none\n");
    assert_eq!(
        out(seven(&["admits", "--cat", "diff", "--core", "-1,2,0", "--exotic", "25", "--json"])),
        "null\n"
    );
}

#[test]
fn count_prints_certificates() {
    assert_eq!(
        out(seven(&["count", "--cat", "top", "--core", "6,1,0"])),
        "infinite (witness (k=1, p=28, eps=0, delta=0) rank 0, period 5376)\n"
    );
    assert_eq!(
        out(seven(&["count", "--cat", "top", "--core", "6,1,0", "--json"])),
        "{\"count\":\"infinite\",\"witness\":{\"theta\":{\"k\":1,\"p\":28,\"eps\":0,\"delta\":0},\"rank\":0},\"period\":5376}\n"
    );
    assert_eq!(
        out(seven(&["count", "--cat", "diff", "--core", "6,0,0", "--rank", "2"])),
        "1 (witness (k=0, p=24, eps=0, delta=0) rank 2)\n"
    );
    assert_eq!(
        out(seven(&["count", "--cat", "diff", "--core", "6,0,0", "--rank", "2", "--json"])),
        "{\"count\":{\"finite\":1},\"witness\":{\"theta\":{\"k\":0,\"p\":24,\"eps\":0,\"delta\":0},\"rank\":2}}\n"
    );
}

#[test]
fn invariant_tuples_render_in_both_formats() {
    assert_eq!(
        out(seven(&["core-invariants", "--cat", "diff", "--core", "-1,2,0", "--json"])),
        "{\"h4_k\":2,\"b4_free_rank\":0,\"ph\":{\"mod\":2,\"val\":0},\"linking\":\"1/2\",\"ks\":0,\"s1\":\"7/8\",\"mu\":\"223/224\"}\n"
    );
    assert_eq!(
        out(seven(&["bundle-invariants", "--cat", "top", "--theta", "2,2,1,0"])),
        "torsion k: 2\nfree rank: 0\nph: 0 (mod 2)\nlinking: 1/2\nks: 0\ns1: 1/8\nmu: undefined\n"
    );
}

#[test]
fn pinned_residue_sets_print_as_lists() {
    assert_eq!(out(seven(&["list-spheres"])), "0 4 6 8 10 14 18 20 22 24\n");
    assert_eq!(out(seven(&["list-spheres", "--json"])), "[0,4,6,8,10,14,18,20,22,24]\n");
    assert_eq!(out(seven(&["list-tangent"])), "0 2 7 8 12 14 15 16 19 22 23 26\n");
}

#[test]
fn json_format_selection_has_flag_over_env_over_text() {
    let text = "0 4 6 8 10 14 18 20 22 24\n";
    let json = "[0,4,6,8,10,14,18,20,22,24]\n";
    assert_eq!(out(seven(&["list-spheres"])), text);
    assert_eq!(out(seven_with_env(&["list-spheres"], "json")), json);
    assert_eq!(out(seven_with_env(&["list-spheres"], "text")), text);
    assert_eq!(out(seven_with_env(&["list-spheres", "--json"], "text")), json);
}

#[test]
fn sweep_bytes_do_not_depend_on_thread_count() {
    let base = seven(&["sweep", "--cat", "top", "--kmax", "6", "--pmax", "200"]);
    let five = seven(&["sweep", "--cat", "top", "--kmax", "6", "--pmax", "200", "--threads", "5"]);
    let many = seven(&["sweep", "--cat", "top", "--kmax", "6", "--pmax", "200", "--threads", "13"]);
    assert!(base.status.success());
    assert!(!base.stdout.is_empty());
    assert_eq!(base.stdout, five.stdout);
    assert_eq!(base.stdout, many.stdout);

    let json_one = seven(&["sweep", "--cat", "diff", "--kmax", "4", "--pmax", "100", "--json"]);
    let json_four =
        seven(&["sweep", "--cat", "diff", "--kmax", "4", "--pmax", "100", "--json", "--threads", "4"]);
    assert_eq!(json_one.stdout, json_four.stdout);
}

#[test]
fn sweep_rows_are_classified_lines() {
    let text = out(seven(&["sweep", "--cat", "diff", "--kmax", "2", "--pmax", "50"]));
    for line in text.lines() {
        assert!(line.contains(" -> "), "unexpected sweep line {line:?}");
        assert!(line.contains("delta=0"), "smooth sweep must skip delta=1: {line:?}");
    }

    let json = out(seven(&["sweep", "--cat", "top", "--kmax", "2", "--pmax", "50", "--json"]));
    assert!(!json.is_empty());
    for line in json.lines() {
        let row: serde_json::Value = serde_json::from_str(line).expect("sweep rows are JSON");
        for key in ["theta", "descriptor", "witness_m", "exotic_raw"] {
            assert!(row.get(key).is_some(), "row missing {key}: {line}");
        }
    }
}

#[test]
fn emitted_descriptors_parse_and_round_trip() {
    let line = out(seven(&["classify", "--cat", "diff", "--theta", "1,28,0,0", "--json"]));
    let row: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    let descriptor: ManifoldDescriptor =
        serde_json::from_value(row["descriptor"].clone()).expect("emitted descriptor parses");
    assert_eq!(serde_json::to_value(descriptor).unwrap(), row["descriptor"]);

    // Feeding the parsed descriptor back through the binary finds a class
    // that classifies to the very same descriptor.
    let core = format!("{},{},{}", descriptor.core().l(), descriptor.core().k(), descriptor.core().c());
    let witness_line = out(seven(&[
        "admits",
        "--cat",
        "diff",
        "--core",
        &core,
        "--exotic",
        &descriptor.exotic().to_string(),
        "--rank",
        &descriptor.rank().to_string(),
        "--json",
    ]));
    let witness: serde_json::Value = serde_json::from_str(witness_line.trim()).unwrap();
    let theta = format!(
        "{},{},{},{}",
        witness["theta"]["k"], witness["theta"]["p"], witness["theta"]["eps"], witness["theta"]["delta"]
    );
    let reclassified = out(seven(&["classify", "--cat", "diff", "--theta", &theta, "--json"]));
    let round: serde_json::Value = serde_json::from_str(reclassified.trim()).unwrap();
    assert_eq!(round["descriptor"], row["descriptor"]);
}
