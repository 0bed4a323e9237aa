use std::process::{Command, Output};

use serde_json::Value;

fn conequant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conequant")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = conequant(&full);
    (serde_json::from_str(&stdout(&o)).expect("json output"), o.status.code().unwrap())
}

#[test]
fn relation_residual_vanishes() {
    let (v, code) = json(&["quantize-relation", "--N", "4", "--a", "0", "--b", "2", "--c", "1", "--d", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["residual_is_zero"], true);
    assert_eq!(v["command"], "quantize-relation");
    assert_eq!(v["achieved_precision"], "exact");
}

#[test]
fn unshifted_relation_fails_with_exit_one() {
    let o = conequant(&[
        "quantize-relation",
        "--N",
        "4",
        "--a",
        "0",
        "--b",
        "1",
        "--c",
        "1",
        "--d",
        "0",
        "--variant",
        "b-d",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("residual_is_zero: false"));
}

#[test]
fn generator_brackets() {
    let o = conequant(&["cone-bracket", "--N", "4", "--a", "0", "--b", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("-(dz)^3"));
    let o = conequant(&["cone-bracket", "--N", "5", "--a", "3", "--b", "1"]);
    assert_eq!(stdout(&o).lines().next(), Some("2*z^3 (dz)^3"));
    assert_eq!(conequant(&["cone-bracket", "--N", "4", "--a", "3", "--b", "1"]).status.code(), Some(2));
}

#[test]
fn membership_examples() {
    let o = conequant(&["curve-member", "D^-1*z^3", "--N", "5", "--divisor", "5*inf"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("true"));
    let o = conequant(&["curve-member", "D^-1*z^3", "--divisor", "4*inf"]);
    assert_eq!(o.status.code(), Some(1));
    let o = conequant(&["curve-member", "D^-1*z^3", "--N", "5", "--field", "z*D"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(conequant(&["curve-member", "D^-1"]).status.code(), Some(2));
}

#[test]
fn syntax_errors_are_usage_errors() {
    let o = conequant(&["psido-eval", "z +"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("byte 3"), "{err}");
    assert!(err.contains("expected operand"), "{err}");
    assert_eq!(conequant(&["psido-eval"]).status.code(), Some(2));
    assert_eq!(conequant(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn operator_arithmetic() {
    let o = conequant(&["psido-eval", "D^-1*z - z*D^-1"]);
    assert_eq!(stdout(&o), "-D^-2\nachieved precision: exact\n");
    let o = conequant(&["psido-mul", "D^-1", "z"]);
    assert!(stdout(&o).starts_with("z*D^-1 - D^-2\n"));
    let (v, code) = json(&["psido-inv", "D + 3*w", "--prec", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["roundtrip"], true);
    assert_eq!(v["achieved_precision"], -7);
    assert_eq!(v["precision"], 6);
    let o = conequant(&["psido-eval", "D^-1", "--field", "z*D", "--prec", "3"]);
    assert!(stdout(&o).starts_with("z*D^-1 - z*D^-2 + z*D^-3 - z*D^-4 + O(D^-5)"), "{}", stdout(&o));
}

#[test]
fn local_expansions() {
    let o = conequant(&["curve-expand", "(z^2 + 1)^-1", "--place", "z^2 + 1", "--prec", "0"]);
    assert_eq!(stdout(&o).lines().next(), Some("(-1/2*t)*(z - t)^-1 + O(1)"));
    let (v, _) = json(&["curve-residue", "(z^2 + 1)^-1"]);
    assert_eq!(v["result"]["sum"], "0");
    let o = conequant(&["curve-residue", "w", "--place", "inf"]);
    assert_eq!(stdout(&o).lines().next(), Some("-1"));
}

#[test]
fn presentation_and_gr() {
    assert_eq!(conequant(&["cone-presentation", "--N", "4", "--nmax", "3"]).status.code(), Some(0));
    let (v, code) = json(&["quantize-gr", "--N", "5", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["is_basis"], true);
    assert_eq!(v["result"]["dim"], 7);
}

#[test]
fn pullback_flags_non_effective_witness() {
    let (v, code) = json(&["quantize-pullback", "D^-1", "--map", "z^2", "--divisor", "1*inf"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["ramification"]["effective"], false);
    assert_eq!(v["result"]["ramification"]["flagged"][0], "0");
}

#[test]
fn lifting_and_tables() {
    let (v, code) = json(&["lift-experiment"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["mod_order4"], true);
    assert_eq!(v["result"]["mod_order5"], false);
    let o = conequant(&["rc-solve", "--imax", "2", "--nmax", "2"]);
    assert!(stdout(&o).starts_with("0: 1 -1/2 1/2\n1: 1 -1 1\n2: 1 -3/2 9/5\n"));
    let o = conequant(&["rc-table", "--i", "1", "--j", "1", "--k", "1"]);
    assert!(stdout(&o).starts_with("1 1 0\n  0 0 1\n1 1 1\n  1 0 1/2\n  0 1 -1/2\n"), "{}", stdout(&o));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["rc-table", "--i", "2", "--j", "1", "--k", "2", "--format", "json"];
    assert_eq!(stdout(&conequant(&args)), stdout(&conequant(&args)));
}

#[test]
fn selftest_single_criterion() {
    let o = conequant(&["selftest", "--only", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS [ 3]"));
    assert_eq!(conequant(&["selftest", "--only", "99"]).status.code(), Some(2));
}

const GOLDEN: [(&str, &[&str]); 4] = [
    ("quantize_relation.json", &["quantize-relation", "--N", "4", "--a", "0", "--b", "2", "--c", "1", "--d", "1"]),
    ("cone_bracket.json", &["cone-bracket", "--N", "4", "--a", "0", "--b", "1"]),
    ("rc_table.json", &["rc-table", "--i", "1", "--j", "2", "--k", "3"]),
    ("psido_inv.json", &["psido-inv", "1 - z*D^-1", "--prec", "5"]),
];

/// Set `UPDATE_GOLDEN=1` to rewrite.
#[test]
fn json_reports_match_golden() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (name, args) in GOLDEN {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let actual = stdout(&conequant(&full));
        let p = dir.join(name);
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&p, &actual).unwrap();
        } else {
            assert_eq!(actual, std::fs::read_to_string(&p).unwrap(), "{name}");
        }
    }
}
