//! The `ncdp` binary: exit codes per command, determinism and file round trips.

use std::path::Path;
use std::process::{Command, Output};

use ncdp::formats::{builtin_collection_text, BUILTIN_COLLECTIONS};

fn ncdp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncdp")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    ncdp(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    let o = ncdp(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const BAD_CLASSES: &str =
    r#"{"surface":{"kind":"quadric"},"base_index":1,"classes":[{"rank":1,"c1":[0],"twice_ch2":0}]}"#;
const BAD_QUIVER: &str = r#"{"vertices":[1,2],"arrows":[{"id":"a","source":1,"target":7}]}"#;

#[test]
fn euler_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&["euler", "builtin:p2"]);
    assert!(out.starts_with("1\t3\t6\n0\t1\t3\n0\t0\t1\n"), "{out}");
    assert_eq!(code(&["euler", &write(dir.path(), "bad.json", BAD_CLASSES)]), 1);
    assert_eq!(code(&["euler", &write(dir.path(), "junk.json", "{ nope")]), 2);
    assert_eq!(code(&["euler", "/nonexistent/c.json"]), 2);
    assert_eq!(code(&["euler", "builtin:nope"]), 2);
}

#[test]
fn mutate_exit_codes_and_inverse_words() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&["mutate", "builtin:p2", "L1"]), 0);
    assert_eq!(code(&["mutate", "builtin:p2", "L9"]), 1);
    assert_eq!(code(&["mutate", "builtin:p2", "Q1"]), 2);
    assert_eq!(code(&["mutate", "/nonexistent/c.json", "L1"]), 2);

    for name in ["p2", "quadric", "blowup2"] {
        let plain = dir.path().join(format!("{name}.json"));
        let plain = plain.to_str().unwrap();
        assert_eq!(code(&["mutate", &format!("builtin:{name}"), "", "-o", plain]), 0);
        let before = std::fs::read_to_string(plain).unwrap();
        let back = stdout(&["mutate", plain, "L1 R1"]);
        assert_eq!(back, before, "{name}");
        assert_eq!(stdout(&["mutate", plain, "R2 L2"]), before, "{name}");
    }
}

#[test]
fn helix_exit_codes() {
    let out = stdout(&["helix", "builtin:quadric", "--periods", "3", "--very-strong"]);
    assert!(out.contains("omega twist identity: ok"));
    assert!(out.contains("very strong: PASS"));
    assert_eq!(code(&["helix", "builtin:blowup3"]), 0);
    assert_eq!(code(&["helix", "builtin:p2-misordered", "--very-strong"]), 1);
    assert_eq!(code(&["helix", "builtin:p2", "--periods", "x"]), 2);
}

#[test]
fn rollup_exit_codes_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.json");
    let out = stdout(&["rollup", "builtin:p2", "-o", q.to_str().unwrap()]);
    assert!(out.contains("total arrows: 9"));
    assert!(!out.contains("VIOLATED"));
    assert_eq!(
        stdout(&["cycles", q.to_str().unwrap(), "--maxlen", "3"]).lines().last(),
        Some("27 primitive cycle classes")
    );
    assert_eq!(code(&["rollup", "builtin:p2-misordered"]), 1);
    assert_eq!(code(&["rollup", "/nonexistent/c.json"]), 2);
}

#[test]
fn cover_and_cycles_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&["cover", "builtin:p2", "--lo", "0", "--hi", "2"]), 0);
    assert_eq!(code(&["cover", "builtin:p2", "--lo", "2", "--hi", "0"]), 2);
    assert_eq!(code(&["cover", &write(dir.path(), "bad.json", BAD_QUIVER)]), 1);
    assert_eq!(code(&["cover", "builtin:p2", "--lo", "a"]), 2);
    assert_eq!(
        stdout(&["cycles", "builtin:quadric", "--maxlen", "4"]).lines().last(),
        Some("16 primitive cycle classes")
    );
    assert_eq!(code(&["cycles", &write(dir.path(), "bad.json", BAD_QUIVER)]), 1);
    assert_eq!(code(&["cycles", &write(dir.path(), "junk.json", "[")]), 2);
}

#[test]
fn sklyanin_deriv_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let generic = dir.path().join("generic.json");
    let generic = generic.to_str().unwrap();
    assert_eq!(code(&["sklyanin", "--params", "1,2,3", "-o", generic]), 0);
    let monomial = dir.path().join("monomial.json");
    let monomial = monomial.to_str().unwrap();
    assert_eq!(code(&["sklyanin", "--params", "1,0,0", "-o", monomial]), 0);
    assert_eq!(code(&["sklyanin", "--params", "0,0,0"]), 1);
    assert_eq!(code(&["sklyanin", "--params", "1,2"]), 2);
    assert_eq!(code(&["sklyanin", "--params", "1,x,2"]), 2);

    let d = stdout(&["deriv", generic, "--arrow", "x211"]);
    assert_eq!(d.lines().count(), 1);
    assert!(d.starts_with("d/dx211\t"));
    assert_eq!(stdout(&["deriv", generic]).lines().count(), 9);
    assert_eq!(code(&["deriv", generic, "--arrow", "nope"]), 1);
    assert_eq!(code(&["deriv", "/nonexistent/phi.json"]), 2);

    let table = dir.path().join("t.tsv");
    assert_eq!(code(&["verify", generic, "builtin:p2", "--maxlevel", "1", "--table", table.to_str().unwrap()]), 0);
    let tsv = std::fs::read_to_string(&table).unwrap();
    assert!(tsv.starts_with("source\ttarget\tcomputed\texpected\tverdict\n"));
    assert_eq!(code(&["verify", generic, "builtin:p2", "--maxlevel", "1", "--field", "modp:101"]), 0);
    let o = ncdp(&["verify", monomial, "builtin:p2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("computed 12 vs expected 10"));
    assert_eq!(code(&["verify", generic, "builtin:quadric", "--maxlevel", "1"]), 1);
    assert_eq!(code(&["verify", generic, "builtin:p2", "--field", "modp:4"]), 2);
    assert_eq!(code(&["verify", &write(dir.path(), "junk.json", "{"), "builtin:p2"]), 2);
}

#[test]
fn pointscheme_and_points_exit_codes() {
    let out = stdout(&["pointscheme", "--params", "1,2,3"]);
    assert!(out.contains("smooth: true"), "{out}");
    assert!(stdout(&["pointscheme", "--params", "1,-1,0"]).contains("identically zero"));
    assert_eq!(code(&["pointscheme", "--params", "0,0,0"]), 1);
    assert_eq!(code(&["pointscheme", "--params", ""]), 2);
    assert_eq!(stdout(&["points", "--params", "1,-1,0", "--prime", "5"]), "31\n");
    assert_eq!(code(&["points", "--params", "1,2,3", "--prime", "4"]), 1);
    assert_eq!(code(&["points", "--params", "1,2,3", "--prime", "-3"]), 2);
    assert_eq!(code(&["points", "--params", "1,2,3"]), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["rollup", "builtin:blowup2"],
        vec!["helix", "builtin:blowup1", "--periods", "3"],
        vec!["cycles", "builtin:p2", "--maxlen", "6"],
        vec!["sklyanin", "--params", "2,-1/3,5"],
        vec!["verify", "--help"],
    ] {
        assert_eq!(ncdp(&args).stdout, ncdp(&args).stdout, "{args:?}");
    }
}

#[test]
fn golden_foundations_round_trip_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in BUILTIN_COLLECTIONS {
        let src = write(dir.path(), &format!("{name}.json"), text);
        let copy = dir.path().join(format!("{name}.copy.json"));
        let copy = copy.to_str().unwrap();
        // an empty word rewrites the classes without the optional metadata
        assert_eq!(code(&["mutate", &src, "", "-o", copy]), 0);
        assert_eq!(stdout(&["mutate", copy, ""]), std::fs::read_to_string(copy).unwrap());
        let f = ncdp::formats::parse_collection(builtin_collection_text(name).unwrap()).unwrap();
        assert_eq!(ncdp::formats::to_json(&f), *text);
    }
}
