use kacseq::cli::{run, run_source, Args, Command, Convention, Format};
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command as Process;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn structured(command: Command, file: &str) -> Args {
    let mut a = Args::new(command, fixture(file));
    a.format = Format::Structured;
    a
}

fn json(out: &kacseq::cli::Outcome) -> Value {
    serde_json::from_str(&out.stdout).expect("structured output is JSON")
}

#[test]
fn kac_verify_on_s3_factorization() {
    let out = run(&structured(Command::KacVerify, "s3_factorization.kac"));
    assert_eq!(out.exit_code, 0, "{}", out.stdout);
    let v = json(&out);
    assert_eq!(v["ok"], true);
    let positions = v["result"]["report"]["positions"].as_array().unwrap();
    assert_eq!(positions.len(), 5);
    assert!(positions.iter().all(|p| p["verdict"]["exact"] == true));
    assert_eq!(v["result"]["report"]["modulus"], 6);
}

#[test]
fn method6_on_triangle() {
    let out = run(&structured(Command::Method6, "triangle.kac"));
    assert_eq!(out.exit_code, 0, "{}", out.stdout);
    let r = &json(&out)["result"]["report"];
    assert_eq!(r["h2_lie_dim"], 3);
    assert_eq!(r["h2_lie_invariant_t"], 1);
    assert_eq!(r["h2_lie_invariant_n"], 1);
    assert_eq!(r["h2_lie_invariant_all"], 0);
    assert_eq!(r["determined"]["rational_dim"], 1);
    assert_eq!(r["determined"]["finite_part"], serde_json::json!([3]));
    let human = run(&Args::new(Command::Method6, fixture("triangle.kac")));
    assert!(human.stdout.contains("(1, 1, 0)"));
    assert!(human.stdout.contains("MP-H2 = k x Z/3"));
}

#[test]
fn method6_on_plane_and_sl3() {
    let plane = json(&run(&structured(Command::Method6, "plane.kac")));
    assert_eq!(plane["result"]["report"]["determined"], serde_json::json!({ "rational_dim": 1, "finite_part": [] }));
    let sl3 = json(&run(&structured(Command::Method6, "sl3.kac")));
    assert_eq!(sl3["result"]["report"]["h2_lie_dim"], 0);
    assert_eq!(sl3["result"]["report"]["determined"]["finite_part"], serde_json::json!([3]));
}

#[test]
fn corrupted_table_is_rejected_with_witness() {
    let out = run(&structured(Command::Validate, "corrupted_table.kac"));
    assert_eq!(out.exit_code, 2);
    let e = &json(&out)["error"];
    assert_eq!(e["code"], "NotAssociative");
    assert_eq!(e["witness"].as_array().unwrap().len(), 3);
    // the `order` statement that introduces the table
    assert_eq!(e["line"], 3);
    let human = run(&Args::new(Command::Validate, fixture("corrupted_table.kac")));
    assert_eq!(human.exit_code, 2);
    assert!(human.stderr.starts_with("error[NotAssociative]"));
}

#[test]
fn parse_errors_carry_line_and_column() {
    let a = structured(Command::Validate, "inline");
    let out = run_source(&a, "group C2 { cyclic 2 }\n\ngroup X {\n  cyclic two\n}\n");
    assert_eq!(out.exit_code, 2);
    let e = &json(&out)["error"];
    assert_eq!(e["code"], "ParseError");
    assert_eq!((e["line"].as_u64(), e["column"].as_u64()), (Some(4), Some(10)));
    let unclosed = run_source(&a, "group C2 {\n cyclic 2\n");
    assert_eq!(json(&unclosed)["error"]["code"], "ParseError");
    let unknown = run_source(&a, "pair P {\n  T C5\n  N C5\n}\n");
    assert_eq!(json(&unknown)["error"]["line"], 2);
}

#[test]
fn structured_output_is_deterministic() {
    let a = structured(Command::MpCohomology, "pairs.kac");
    let mut a = a;
    a.target = Some("Inv3".into());
    let first = run(&a);
    let second = run(&a);
    assert_eq!(first.exit_code, 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.contains("time"));
    let human = run(&Args { format: Format::Human, ..a });
    assert!(human.stdout.contains("time: "));
}

#[test]
fn target_is_required_when_ambiguous() {
    let out = run(&structured(Command::KacVerify, "pairs.kac"));
    assert_eq!(out.exit_code, 2);
    assert_eq!(json(&out)["error"]["code"], "UsageError");
}

#[test]
fn bidegree_matches_iterated_cohomology() {
    let mut a = structured(Command::Bidegree, "pairs.kac");
    a.target = Some("Inv3".into());
    for m in [3, 6] {
        a.modulus = Some(m);
        let out = run(&a);
        assert_eq!(out.exit_code, 0, "{}", out.stdout);
        let entries = json(&out)["result"]["entries"].as_array().unwrap().clone();
        assert_eq!(entries.len(), 3);
        assert!(entries.iter().all(|e| e["isomorphic"] == true));
    }
}

#[test]
fn ez_verify_and_unsigned_shuffle() {
    let mut a = structured(Command::EzVerify, "pairs.kac");
    a.target = Some("Inv3".into());
    let out = run(&a);
    assert_eq!(out.exit_code, 0, "{}", out.stdout);
    a.convention = Some(Convention::B);
    let out = run(&a);
    assert_eq!(out.exit_code, 3);
    assert_eq!(json(&out)["error"]["code"], "NotChainMap");
}

#[test]
fn size_guard_and_force() {
    let mut a = structured(Command::GroupCohomology, "s3_factorization.kac");
    a.target = Some("S3".into());
    a.max_degree = Some(7);
    let out = run(&a);
    assert_eq!(out.exit_code, 4, "{}", out.stdout);
    assert_eq!(json(&out)["error"]["code"], "SizeGuard");
    a.max_degree = Some(3);
    let out = run(&a);
    assert_eq!(out.exit_code, 0);
    let degrees = json(&out)["result"]["degrees"].as_array().unwrap().clone();
    let h: Vec<Value> = degrees.iter().map(|d| d["invariant_factors"].clone()).collect();
    assert_eq!(h, vec![serde_json::json!([6]), serde_json::json!([2]), serde_json::json!([2]), serde_json::json!([6])]);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_kacseq");
    let ok = Process::new(bin).args(["validate"]).arg(fixture("triangle.kac")).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Process::new(bin).args(["validate"]).arg(fixture("corrupted_table.kac")).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let missing = Process::new(bin).args(["validate", "/nonexistent/file.kac"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
    let kac = Process::new(bin)
        .args(["kac-verify", "--format", "structured", "--modulus", "2"])
        .arg(fixture("s3_factorization.kac"))
        .output()
        .unwrap();
    assert_eq!(kac.status.code(), Some(0));
}
