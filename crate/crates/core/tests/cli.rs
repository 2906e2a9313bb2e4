use std::path::{Path, PathBuf};
use std::process::Command;

use pbw::algebra::Datum;
use pbw::cli::parse_expr;
use pbw::presets::{preset, LiftParams, NAMES};

fn pbw(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pbw")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn emit(dir: &Path, name: &str, extra: &[&str]) -> PathBuf {
    let f = dir.join(format!("{}.json", name));
    let mut args = vec!["preset", name];
    args.extend_from_slice(extra);
    args.extend_from_slice(&["-o", f.to_str().unwrap()]);
    let (code, _, err) = pbw(&args);
    assert_eq!(code, 0, "{}", err);
    f
}

#[test]
fn taft_check_prints_pass_with_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let f = emit(dir.path(), "taft", &["--n", "3"]);
    let (code, out, _) = pbw(&["check", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last().unwrap(), "PASS, dim 9");
}

#[test]
fn every_preset_round_trips_and_checks() {
    let dir = tempfile::tempdir().unwrap();
    for name in NAMES {
        let f = emit(dir.path(), name, &[]);
        let text = std::fs::read_to_string(&f).unwrap();
        let d = Datum::from_json(&text).unwrap();
        // bit-exact serialization round trip
        assert_eq!(d.to_json() + "\n", text, "{}", name);
        assert_eq!(d.to_json(), preset(name, &LiftParams::default()).unwrap().datum.to_json());
        let (code, out, err) = pbw(&["check", f.to_str().unwrap(), "--mode", "reduced"]);
        assert_eq!(code, 0, "{}: {}{}", name, out, err);
    }
}

#[test]
fn json_report_mirrors_text() {
    let dir = tempfile::tempdir().unwrap();
    let f = emit(dir.path(), "uq_sl2", &["--n", "3"]);
    let (code, out, _) = pbw(&["check", f.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["dimension"], 27);
    assert_eq!(v["mode"], "full");
    let conds = v["conditions"].as_array().unwrap();
    assert!(!conds.is_empty());
    assert!(conds.iter().all(|c| c["status"] == "pass" && c["residue_terms"] == 0));

    let (_, text, _) = pbw(&["check", f.to_str().unwrap()]);
    let ids: Vec<&str> = conds.iter().map(|c| c["id"].as_str().unwrap()).collect();
    for id in ids {
        assert!(text.contains(id), "{} missing from text", id);
    }
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = emit(dir.path(), "uq_sl2", &["--n", "3"]);
    let mut d = Datum::from_json(&std::fs::read_to_string(&f).unwrap()).unwrap();
    let r = d.ring.clone();
    d.set_red("12", &r.one_poly() - &r.grp_poly(&[1]));
    let g = dir.path().join("bad.json");
    std::fs::write(&g, d.to_json()).unwrap();
    let (code, out, _) = pbw(&["check", g.to_str().unwrap(), "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "FAIL");
    let (code, out, _) = pbw(&["check", g.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.trim_end().ends_with("condition(s) violated"), "{}", out);
}

#[test]
fn invalid_datum_exits_two_with_violations() {
    let dir = tempfile::tempdir().unwrap();
    let f = emit(dir.path(), "taft", &["--n", "3"]);
    let mut d = Datum::from_json(&std::fs::read_to_string(&f).unwrap()).unwrap();
    d.set_height("1", Some(2));
    let g = dir.path().join("bad.json");
    std::fs::write(&g, d.to_json()).unwrap();
    let (code, out, _) = pbw(&["check", g.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.starts_with("invalid: "), "{}", out);

    let h = dir.path().join("garbage.json");
    std::fs::write(&h, "{ not json").unwrap();
    let (code, _, err) = pbw(&["check", h.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: "));
}

#[test]
fn nf_examples() {
    let dir = tempfile::tempdir().unwrap();
    let w = emit(dir.path(), "weyl", &[]);
    let (code, out, _) = pbw(&["nf", w.to_str().unwrap(), "x1*x2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "x2*x1 + 1");
    let q = emit(dir.path(), "quantum_plane", &["--n", "4", "--k", "1"]);
    let (_, out, _) = pbw(&["nf", q.to_str().unwrap(), "x1*x2"]);
    assert_eq!(out.trim(), "z * x2*x1");
    let (code, _, err) = pbw(&["nf", q.to_str().unwrap(), "x1 * (x2"]);
    assert_eq!(code, 2);
    assert!(err.contains("1:9:"), "{}", err);
}

#[test]
fn expression_grammar() {
    let d = preset("lifting_a2_1a", &LiftParams::default()).unwrap().datum;
    let r = &d.ring;
    let x1 = r.x(r.idx(&[1]));
    let x2 = r.x(r.idx(&[2]));
    let x12 = r.x(r.idx(&[1, 2]));
    assert_eq!(parse_expr(r, "x12").unwrap(), x12);
    assert_eq!(parse_expr(r, "x1^3").unwrap(), r.pow(&x1, 3));
    assert_eq!(parse_expr(r, "-x1 + 2*x2").unwrap(), &(-&x1) + &x2.scale(&r.int(2)));
    assert_eq!(parse_expr(r, "[x1,x2]_0").unwrap(), r.q_commutator(&x1, &x2, &r.one()));
    assert_eq!(parse_expr(r, "[x1,x2]_{-1}").unwrap(), r.q_commutator(&x1, &x2, &r.zeta(-1)));
    assert_eq!(parse_expr(r, "[x1,x2]").unwrap(), r.graded_commutator(&x1, &x2).unwrap());
    assert_eq!(parse_expr(r, "q(1,2) * g1").unwrap(), r.grp_poly(&r.word_g(&[1])).scale(&r.q_word(&[1], &[2])));
    assert_eq!(parse_expr(r, "h2").unwrap(), r.grp_poly(&[0, 1]));
    assert_eq!(parse_expr(r, "z^4").unwrap(), r.one_poly());
    assert!(parse_expr(r, "h3").is_err());
    assert_eq!(parse_expr(r, "x{1,2}").unwrap(), x12);
    let e = parse_expr(r, "x1 +\n  x21").unwrap_err();
    assert_eq!((e.line, e.column), (2, 4));
    assert!(parse_expr(r, "x1 x2").is_err());
    assert!(parse_expr(r, "1/0").is_err());
}

#[test]
fn lyndon_and_shirshov_commands() {
    let (code, out, _) = pbw(&["shirshov", "11212"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(112, 12)");
    let (_, out, _) = pbw(&["lyndon", "--theta", "2", "--max-len", "8"]);
    assert_eq!(out.lines().count(), 2 + 1 + 2 + 3 + 6 + 9 + 18 + 30);
    let (code, _, _) = pbw(&["shirshov", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn dim_hilbert_and_redundant() {
    let dir = tempfile::tempdir().unwrap();
    let f = emit(dir.path(), "uq_sl2", &["--n", "3"]);
    let (_, out, _) = pbw(&["dim", f.to_str().unwrap(), "--oracle"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "27");
    assert!(lines[1].starts_with("oracle rank 27 "), "{}", lines[1]);
    let q = emit(dir.path(), "quantum_plane", &[]);
    let (_, out, _) = pbw(&["dim", q.to_str().unwrap()]);
    assert_eq!(out.trim(), "infinite");
    let (_, out, _) = pbw(&["hilbert", q.to_str().unwrap(), "--max-deg", "10"]);
    assert_eq!(out.trim(), "1 2 3 4 5 6 7 8 9 10 11");
    let a = emit(dir.path(), "lifting_a2_1a", &[]);
    let (_, out, _) = pbw(&["redundant", a.to_str().unwrap()]);
    assert!(out.contains("red_112") && out.contains("red_122"), "{}", out);
}

#[test]
fn preset_parameters_and_errors() {
    let (code, out, _) = pbw(&["preset", "lifting_a1xa1", "--lambda", "12=3", "--mu", "1=0"]);
    assert_eq!(code, 0);
    assert!(Datum::from_json(&out).is_ok());
    let (code, _, err) = pbw(&["preset", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("nope"));
    // μ_2 is forced to vanish in case 4a
    let (code, _, _) = pbw(&["preset", "lifting_a2_4a", "--mu", "2=1"]);
    assert_eq!(code, 2);
    let (code, out, _) = pbw(&["preset", "list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), NAMES.len());
}

#[test]
fn exactly_one_subcommand() {
    let (code, _, _) = pbw(&[]);
    assert_eq!(code, 2);
    let (code, _, _) = pbw(&["frobnicate"]);
    assert_eq!(code, 2);
}
