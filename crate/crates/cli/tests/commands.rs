use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qorder_cli::format::{parse, to_canonical, StructFile, TableFile, WitnessFile};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn qorder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qorder"))
        .args(args)
        .env_remove("QORDER_BUDGET")
        .output()
        .unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = qorder(args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn trs_completion_of_the_unit_over_q3_has_three_objects() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cc.struct");
    let table = dir.path().join("cc.table");
    let (code, _, err) = run(&["complete", "--trs", p(&data("c1.struct")), "-o", p(&out), "--table", p(&table)]);
    assert_eq!(code, 0, "{err}");
    let s: StructFile = parse(&std::fs::read_to_string(&out).unwrap(), "cc").unwrap();
    assert_eq!(s.objects.len(), 3);
    assert_eq!(s.hom, vec![vec!["0", "0", "0"], vec!["0", "m", "m"], vec!["0", "m", "1"]]);
    let t: TableFile = parse(&std::fs::read_to_string(&table).unwrap(), "table").unwrap();
    let idempotents: Vec<&str> = t.probes.iter().map(|pr| pr.idempotent.as_str()).collect();
    assert_eq!(idempotents, ["0", "m", "1"]);
    assert_eq!(t.embedding.unwrap(), vec![("a".to_string(), "phi2".to_string())]);
    // the committed copy is what the factor fixture points at
    assert_eq!(std::fs::read_to_string(&out).unwrap(), std::fs::read_to_string(data("c1cc.struct")).unwrap());
}

#[test]
fn skeletal_cat_completion_keeps_one_object() {
    let (code, stdout, _) = run(&["complete", "--cat", "--skeletal", p(&data("c1.struct"))]);
    assert_eq!(code, 0);
    let s: StructFile = parse(&stdout, "stdout").unwrap();
    assert_eq!(s.objects.len(), 1);
}

#[test]
fn complete_needs_a_mode() {
    let (code, _, _) = run(&["complete", p(&data("c1.struct"))]);
    assert_eq!(code, 2);
}

#[test]
fn non_regular_matrix_is_an_input_error() {
    let (code, _, err) = run(&["adjoint", p(&data("one.mat"))]);
    assert_eq!(code, 2);
    assert!(err.contains("not a regular semidistributor"), "{err}");
}

#[test]
fn adjoint_writes_the_right_adjoint() {
    let (code, stdout, _) = run(&["adjoint", p(&data("m.mat"))]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("left adjoint: yes\n"));
    assert!(stdout.contains("\"entries\""));
}

#[test]
fn convergence_failure_exits_one() {
    let (code, _, err) = run(&["converge", p(&data("m.mat"))]);
    assert_eq!(code, 1);
    assert!(err.contains("does not converge"));
}

#[test]
fn mismatched_composition_is_an_input_error() {
    let (code, _, _) = run(&["compose", p(&data("m.mat")), p(&data("m.mat"))]);
    assert_eq!(code, 2);
}

#[test]
fn syntax_errors_report_line_and_column() {
    let (code, _, err) = run(&["validate", p(&data("bad.struct"))]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.struct:4:1:"), "{err}");
}

#[test]
fn classify_lists_stable_objects() {
    let (code, stdout, _) = run(&["classify", p(&data("sm.struct"))]);
    assert_eq!(code, 0);
    assert!(stdout.contains("category: no"));
    assert!(stdout.contains("stable objects: [a]"));
}

#[test]
fn prop_checks_hold_or_fail_with_witness() {
    assert_eq!(run(&["prop-check", "prop16"]).0, 0);
    assert_eq!(run(&["prop-check", "lemma13", "--base", "q2", "--seed", "3"]).0, 0);
    let (code, stdout, _) = run(&["prop-check", "prop23", "--base", "n3"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("witness: completeness differs"));
    assert_eq!(run(&["prop-check", "prop99"]).0, 2);
}

#[test]
fn tiny_budget_exits_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_qorder"))
        .args(["prop-check", "prop19", "--base", "q3"])
        .env("QORDER_BUDGET", "steps=1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn malformed_budget_is_an_input_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_qorder"))
        .args(["morita", p(&data("c1.struct")), p(&data("c1.struct"))])
        .env("QORDER_BUDGET", "zzz")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn morita_witnesses_validate() {
    let dir = tempfile::tempdir().unwrap();
    let iso = dir.path().join("iso.witness");
    let eqv = dir.path().join("eqv.witness");
    let c1 = data("c1.struct");
    let (code, stdout, _) = run(&["morita", p(&c1), p(&c1), "--witness", p(&iso), "--equivalence", p(&eqv)]);
    assert_eq!(code, 0);
    assert!(stdout.contains("VERDICT: isomorphic\n"));
    assert_eq!(run(&["validate", p(&iso)]).0, 0);
    assert_eq!(run(&["validate", p(&eqv)]).0, 0);

    let (code, stdout, _) = run(&["morita", p(&c1), p(&data("sm.struct"))]);
    assert_eq!(code, 0);
    assert!(stdout.contains("VERDICT: not isomorphic\ncompletions: not equivalent\n"));
}

#[test]
fn reshuffle_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r.struct");
    assert_eq!(run(&["reshuffle", p(&data("sm.struct")), "-o", p(&r)]).0, 0);
    let s: StructFile = parse(&std::fs::read_to_string(&r).unwrap(), "r").unwrap();
    assert_eq!(s.objects[0].ty, "m");
    let (code, stdout, _) = run(&["unreshuffle", p(&r)]);
    assert_eq!(code, 0);
    assert_eq!(stdout, std::fs::read_to_string(data("sm.canonical.struct")).unwrap());
}

#[test]
fn unreshuffle_needs_an_idm_base() {
    assert_eq!(run(&["unreshuffle", p(&data("sm.struct"))]).0, 2);
}

#[test]
fn normalize_with_a_splitting_witness() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("s.witness");
    assert_eq!(run(&["normalize", p(&data("c1.struct")), "--witness", p(&w)]).0, 0);
    let parsed: WitnessFile = parse(&std::fs::read_to_string(&w).unwrap(), "w").unwrap();
    assert!(matches!(parsed, WitnessFile::Splitting { ref splittings } if splittings.len() == 1));
    assert_eq!(run(&["normalize", p(&data("c1.struct")), "--splitting", p(&w)]).0, 0);
    assert_eq!(run(&["validate", p(&w)]).0, 0);
    // not a category
    assert_eq!(run(&["normalize", p(&data("sm.struct"))]).0, 2);
}

#[test]
fn factor_extends_the_embedding() {
    let (code, stdout, err) = run(&["factor", "--map", p(&data("embed.map"))]);
    assert_eq!(code, 0, "{err}");
    assert!(stdout.starts_with("extension: phi0 -> phi0, phi1 -> phi1, phi2 -> phi2\n"));
}

#[test]
fn idm_output_is_canonical() {
    let (code, stdout, _) = run(&["idm", "q2"]);
    assert_eq!(code, 0);
    let f: qorder_cli::format::QuantFile = parse(&stdout, "idm").unwrap();
    assert_eq!(to_canonical(&f), stdout);
}
