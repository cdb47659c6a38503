use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;
use stairpack::geom::Point;
use stairpack::rational::rat;
use stairpack::PackingInstance;
use stairpack_cli::format::{parse, serialize};

fn stairpack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stairpack")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn validate_reports_ok_and_violations() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.txt", "1 2\n0 0\n1/2 1/2\n");
    let o = stairpack(&["validate", &good]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "OK\n");

    let bad = write(dir.path(), "bad.txt", "1 2\n0 0\n1/4 1/4\n");
    let o = stairpack(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("VIOLATION translates 0,1"), "{}", stdout(&o));
}

#[test]
fn parse_errors_exit_one_and_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.txt", "1 2\n0 0\n1/x 0\n");
    let o = stairpack(&["validate", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let o = stairpack(&["validate", "/nonexistent/file"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(stairpack(&[]).status.code(), Some(1));
    assert_eq!(stairpack(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(stairpack(&["lattice", "-k", "9"]).status.code(), Some(1));
    assert_eq!(stairpack(&["lattice", "-k", "0"]).status.code(), Some(1));
    let o = stairpack(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("stairify"));
    assert_eq!(stairpack(&["--version"]).status.code(), Some(0));
}

#[test]
fn stair_commands_reject_non_normal_input() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "dup.txt", "2 2\n0 0\n0 0\n");
    for cmd in ["stairify", "certify"] {
        let o = stairpack(&[cmd, &f]);
        assert_eq!(o.status.code(), Some(2), "{cmd}");
        assert!(stderr(&o).contains("not normal; run normalize"), "{}", stderr(&o));
    }
    let invalid = write(dir.path(), "inv.txt", "1 2\n0 0\n1/4 1/4\n");
    assert_eq!(stairpack(&["stairify", &invalid]).status.code(), Some(2));
}

#[test]
fn stairify_prints_table_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "two.txt", "1 2\n0 0\n1/2 1/2\n");
    let svg = dir.path().join("two.svg");
    let o = stairpack(&["stairify", &f, "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("0 (0,0) 1 1 0 3/4"), "{text}");
    assert!(text.contains("sum r = 1 <= (2k-1)N = 2"));
    assert_eq!(text.matches(" PASS").count(), 15);
    let picture = fs::read_to_string(svg).unwrap();
    assert!(picture.contains("<g id=\"stairs\""));
}

#[test]
fn certify_prints_the_chain() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "two.txt", "1 2\n0 0\n1/2 1/2\n");
    let o = stairpack(&["certify", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "1/4 <= 4/7\n4/7 <= 4/7\n4/7 <= 3/5\n3/5 <= 2/3\nVERDICT: PASS\n"
    );
}

#[test]
fn lattice_clip_pipeline_validates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lattice.txt");
    let o = stairpack(&["lattice", "-k", "2", "--window", "20", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("density 8/5"));
    let v = stairpack(&["validate", out.to_str().unwrap()]);
    assert_eq!(stdout(&v), "OK\n");
    let p = parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((p.k(), p.l()), (2, 20));

    let o = stairpack(&["lattice", "-k", "1", "--window", "3"]);
    let p = parse(&stdout(&o)).unwrap();
    assert_eq!(p.len(), 9);
}

#[test]
fn search_is_deterministic_and_valid() {
    let args = ["search", "-k", "2", "-l", "4", "--seed", "11", "--iters", "300"];
    let a = stairpack(&args);
    let b = stairpack(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let p = parse(&stdout(&a)).unwrap();
    assert!(stairpack::packing::is_normal(&p));
    assert!(stairpack::packing::validate(&p).is_ok());
    let other = stairpack(&["search", "-k", "2", "-l", "4", "--seed", "12", "--iters", "300"]);
    assert_ne!(stdout(&a), stdout(&other));
}

#[test]
fn normalize_separates_duplicates() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "dup.txt", "2 2\n0 0\n0 0\n1 0\n");
    let o = stairpack(&["normalize", &f, "--epsilon", "1/4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let p = parse(&stdout(&o)).unwrap();
    assert!(stairpack::packing::is_normal(&p));
    assert_eq!(p.len(), 3);
    assert_eq!(p.l(), 3);
    let normal = write(dir.path(), "n.txt", &stdout(&o));
    assert_eq!(stdout(&stairpack(&["validate", &normal])), "OK\n");
    assert_eq!(stairpack(&["stairify", &normal]).status.code(), Some(0));

    for bad in ["0", "1", "-1/2", "x"] {
        let o = stairpack(&["normalize", &f, "--epsilon", bad]);
        assert_eq!(o.status.code(), Some(1), "epsilon {bad}");
    }
    let invalid = write(dir.path(), "inv.txt", "1 2\n0 0\n1/4 1/4\n");
    assert_eq!(stairpack(&["normalize", &invalid]).status.code(), Some(2));
}

#[test]
fn shadow_reports_multiplicity() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "two.txt", "1 2\n0 0\n1/2 1/2\n");
    let o = stairpack(&["shadow", &f, "--dir", "1,1/2", "--samples", "300", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("max multiplicity 1 <= k = 1"), "{}", stdout(&o));
    let o = stairpack(&["shadow", &f, "--dir", "0,0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = stairpack(&["shadow", &f, "--strict", "--samples", "100"]);
    assert_eq!(o.status.code(), Some(0));
}

fn instance() -> impl Strategy<Value = PackingInstance> {
    (1u32..4, 1u32..5).prop_flat_map(|(k, l)| {
        let coord = (0i64..=(8 * i64::from(l) - 8).max(0), 1i64..=8)
            .prop_map(|(n, d)| rat(n * d / 8, d));
        prop::collection::vec((coord.clone(), coord), 0..6).prop_map(move |pts| {
            let offsets = pts.into_iter().map(|(x, y)| Point::new(x, y)).collect();
            PackingInstance::new(k, l, offsets).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn serialize_parse_round_trip(p in instance()) {
        let text = serialize(&p);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(serialize(&back), text);
    }
}
