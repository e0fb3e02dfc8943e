mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use common::fixture;
use quandle::enumeration::Catalog;

fn quandle_cmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quandle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fx(rel: &str) -> String {
    fixture(rel).to_string_lossy().into_owned()
}

fn ok(args: &[&str]) -> String {
    let out = quandle_cmd(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    quandle_cmd(args).status.code().expect("exit code")
}

#[test]
fn verify_and_qp() {
    assert_eq!(
        ok(&["verify", &fx("quandles/latin3.txt")]),
        "quandle (latin, connected)\n"
    );
    assert_eq!(ok(&["qp", &fx("quandles/latin3.txt")]), "3st\n");
    assert_eq!(
        ok(&["qp", &fx("quandles/latin3.txt"), "--spec", "2", "-1"]),
        "-6\n"
    );
    assert_eq!(
        ok(&["qp", &fx("quandles/latin3.txt"), "--spec", "0", "1"]),
        "0\n"
    );
    assert_eq!(
        ok(&["qp", &fx("quandles/embedded_pairs.txt"), "--row", "--col"]),
        "2s^2 + 2s^4\n2t^2 + 2t^4\n"
    );
    assert_eq!(
        ok(&["verify", &fx("quandles/constant_rack3.txt")]),
        "rack (not a quandle)\n"
    );
    let zero = ok(&["qp", &fx("quandles/constant_rack3.txt")]);
    assert!(zero.contains("conventional value 0"), "{zero}");
}

#[test]
fn subquandles_orbits_and_isomorphism() {
    let q = fx("quandles/embedded_pairs.txt");
    assert_eq!(ok(&["subqp", &q, "--subset", "1,2"]), "2s^2t^4\n");
    assert_eq!(ok(&["subqp", &q, "--subset", "3,4"]), "2s^4t^2\n");
    assert_eq!(ok(&["orbits", &q]), "{1,2} {3} {4}\n");
    let a = fx("quandles/orbit_pair_a.txt");
    let b = fx("quandles/orbit_pair_b.txt");
    assert_eq!(ok(&["iso", &a, &b]), "not isomorphic\n");
    assert!(ok(&["iso", &a, &a]).starts_with("isomorphic: 1->1"));
}

#[test]
fn exit_codes() {
    // domain errors
    assert_eq!(code(&["qp", &fx("quandles/not_a_rack.txt")]), 1);
    assert_eq!(
        code(&["subqp", &fx("quandles/latin3.txt"), "--subset", "1,2"]),
        1
    );
    assert_eq!(
        code(&[
            "color",
            &fx("links/trefoil.pd"),
            &fx("quandles/constant_rack3.txt")
        ]),
        1
    );
    assert_eq!(code(&["enumerate", "8"]), 1);
    // parse and usage errors
    assert_eq!(code(&["qp", &fx("links/trefoil.pd")]), 2);
    assert_eq!(
        code(&[
            "color",
            &fx("quandles/latin3.txt"),
            &fx("quandles/latin3.txt")
        ]),
        2
    );
    assert_eq!(code(&["qp", "/nonexistent/q.txt"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["construct", "alexander", "5"]), 2);
    assert_eq!(code(&["--help"]), 0);
    let usage = quandle_cmd(&["frobnicate"]);
    assert!(String::from_utf8_lossy(&usage.stderr).contains("Usage"));
}

#[test]
fn links() {
    let trefoil = fx("links/trefoil.pd");
    let r3 = fx("quandles/latin3.txt");
    assert_eq!(ok(&["color", &trefoil, &r3]), "9\n");
    assert_eq!(ok(&["phi", &trefoil, &r3]), "{st: 3, 3st: 6}\n");
    assert_eq!(
        ok(&["phi", &trefoil, &r3, "--spec", "1", "1"]),
        "3z + 6z^3\n"
    );
    assert_eq!(ok(&["phi", &trefoil, &r3, "--spec", "0", "0"]), "9\n");
    let listed = ok(&["color", &fx("links/unknot.txt"), &r3, "--list"]);
    assert_eq!(listed, "3\n1\n2\n3\n");
}

#[test]
fn homomorphisms() {
    let dir = tempfile::tempdir().unwrap();
    let t2 = dir.path().join("t2.txt");
    let t3 = dir.path().join("t3.txt");
    fs::write(&t2, ok(&["construct", "trivial", "2"])).unwrap();
    fs::write(&t3, ok(&["construct", "trivial", "3"])).unwrap();
    let text = ok(&["hom", t2.to_str().unwrap(), t3.to_str().unwrap(), "--kqp"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[0], "1 1\t2st");
    assert_eq!(lines[1], "1 2\t2st");
}

#[test]
fn construct_output_is_accepted_everywhere() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = fx("groups/s3.txt");
    let families: Vec<(&str, Vec<&str>)> = vec![
        ("trivial", vec!["3"]),
        ("alexander", vec!["5", "2"]),
        ("dihedral", vec!["4"]),
        ("conjugation", vec![&s3]),
        ("conjugation", vec![&s3, "2"]),
        ("homogeneous", vec![&s3, "1,2,4,3,6,5"]),
        ("symplectic", vec!["2", "2"]),
    ];
    let trefoil = fx("links/trefoil.pd");
    for (k, (family, params)) in families.iter().enumerate() {
        let mut args = vec!["construct", family];
        args.extend(params.iter().copied());
        let path = dir.path().join(format!("q{k}.txt"));
        fs::write(&path, ok(&args)).unwrap();
        let p = path.to_str().unwrap();
        for sub in [
            vec!["verify", p],
            vec!["qp", p, "--row", "--col"],
            vec!["subqp", p, "--subset", "1"],
            vec!["orbits", p],
            vec!["iso", p, p],
            vec!["hom", p, p],
            vec!["color", &trefoil, p],
            vec!["phi", &trefoil, p, "--spec", "1", "1"],
        ] {
            ok(&sub);
        }
    }
    // a rack parses everywhere; quandle-only commands refuse it as a domain error
    let rack = dir.path().join("rack.txt");
    fs::write(&rack, ok(&["construct", "constant-rack", "4", "-1"])).unwrap();
    let r = rack.to_str().unwrap();
    ok(&["verify", r]);
    ok(&["qp", r]);
    ok(&["orbits", r]);
    assert_eq!(code(&["hom", r, r]), 1);
}

#[test]
fn enumerate_persists_a_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(&["enumerate", "4", "--out", dir.path().to_str().unwrap()]);
    assert!(out.contains("7 isomorphism classes of order 4, 7 distinct polynomials"));
    let catalog = Catalog::load(dir.path(), 4).unwrap();
    assert_eq!(catalog.len(), 7);
    for k in 1..=7 {
        let file = dir.path().join(format!("q4-{k:03}.txt"));
        assert!(ok(&["verify", file.to_str().unwrap()]).starts_with("quandle"));
    }
    assert!(!Path::new(&dir.path().join("q4-008.txt")).exists());
}

#[test]
fn conjecture_through_five() {
    let out = ok(&["conjecture", "5"]);
    assert!(
        out.ends_with("no counterexamples through order 5\n"),
        "{out}"
    );
}

#[test]
fn json_output_is_canonical() {
    let dir = tempfile::tempdir().unwrap();
    let rack = dir.path().join("rack.txt");
    fs::write(&rack, ok(&["construct", "constant-rack", "3", "1"])).unwrap();
    let trefoil = fx("links/trefoil.pd");
    let r3 = fx("quandles/latin3.txt");
    let pairs = fx("quandles/embedded_pairs.txt");
    let runs: Vec<Vec<&str>> = vec![
        vec!["verify", &r3],
        vec!["qp", &pairs, "--row", "--col", "--spec", "2", "3"],
        vec!["qp", rack.to_str().unwrap()],
        vec!["subqp", &pairs, "--subset", "1,2"],
        vec!["orbits", &pairs],
        vec!["iso", &r3, &r3],
        vec!["enumerate", "4"],
        vec!["conjecture", "4"],
        vec!["hom", &r3, &r3, "--kqp"],
        vec!["construct", "dihedral", "5"],
        vec!["color", &trefoil, &r3, "--list"],
        vec!["phi", &trefoil, &r3],
        vec!["phi", &trefoil, &r3, "--spec", "1", "1"],
    ];
    for run in runs {
        let mut args = vec!["--json"];
        args.extend(run.iter().copied());
        let text = ok(&args);
        assert_eq!(text.lines().count(), 1, "{args:?}");
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(
            serde_json::to_string(&value).unwrap() + "\n",
            text,
            "{args:?}"
        );
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let one = ok(&["--threads", "1", "enumerate", "5"]);
    let two = ok(&["--threads", "2", "enumerate", "5"]);
    assert_eq!(one, two);
}
