use std::path::Path;
use std::process::{Command, Output};

use bvn_cli::{format_element, parse_element, Specs};
use bvn_core::{Element, SubgroupSpec};
use proptest::prelude::*;

const IDENTITY: &str = "bv{n=2,r=1,H=Id; domain: .; braid: ; labels: [-]; range: .}";
const BRAIDED: &str = "bv{n=3, r=1, H=Id;\n  domain: ((. . (. . .)) . .);\n  braid: s3 s2 S1 S4 S3;\n  labels: [-, -, -, -, -, -, -];\n  range: (. (. . .) (. . .))}\n";
const G1G1: &str = "bv{n=2, r=1, H=B2; domain: (. .); braid: ; labels: [s1 s1, -]; range: (. .)}";

fn bvn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bvn")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn identity_parses_and_reduces() {
    let v = parse_element(IDENTITY, &Specs::new()).unwrap();
    assert!(v.is_identity());
    let o = bvn(&["reduce", IDENTITY]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "bv{n=2, r=1, H=Id; domain: .; braid: ; labels: [-]; range: .}");
}

#[test]
fn braided_depth_three_element() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "braided.bv", BRAIDED);
    let v = parse_element(BRAIDED, &Specs::new()).unwrap();
    assert_eq!(v.strands(), 7);
    assert_eq!(v.depth(), 3);
    assert_eq!(v.braid().to_string(), "s3 s2 S1 S4 S3");
    let o = bvn(&["inverse", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("braid: s3 s4 s1 S2 S3;"), "{}", stdout(&o));
}

#[test]
fn equal_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.bv", G1G1);
    let b = write(dir.path(), "b.bv", IDENTITY);
    let o = bvn(&["equal", &a, &a]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "true"));
    let expanded = parse_element(G1G1, &Specs::new()).unwrap().expand_at_range_leaf(1).unwrap();
    let c = write(dir.path(), "c.bv", &format_element(&expanded));
    let o = bvn(&["equal", &a, &c]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "true"));
    let d = write(dir.path(), "d.bv", "bv{n=2, r=1, H=B2; domain: .; braid: ; labels: [s1]; range: .}");
    let o = bvn(&["equal", &a, &d]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(1), "false"));
    // different groups, missing files, bad syntax and bad flags are usage errors
    assert_eq!(bvn(&["equal", &a, &b]).status.code(), Some(2));
    assert_eq!(bvn(&["equal", &a, "/nonexistent.bv"]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.bv", "bv{n=2, r=1, H=Id;\n domain: (. .); braid: s2; labels: [-, -]; range: (. .)}");
    let o = bvn(&["reduce", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:24"), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(bvn(&["reduce", &a, "--frobnicate"]).status.code(), Some(2));
    assert_eq!(bvn(&[]).status.code(), Some(2));
}

#[test]
fn decompose_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g1g1.bv", G1G1);
    let o = bvn(&["decompose", "--verify", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "g_s1 g_s1");
    for target in ["bv", "minimal"] {
        let o = bvn(&["decompose", "--verify", "--target", target, "--json", &f]);
        assert_eq!(o.status.code(), Some(0));
        let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(j["verified"], serde_json::Value::Bool(true));
    }
    let r = bvn(&["random", "--n", "3", "--depth", "5", "--seed", "4"]);
    let v = write(dir.path(), "v.bv", &stdout(&r));
    assert_eq!(bvn(&["decompose", "--verify", "--target", "minimal", &v]).status.code(), Some(0));
    let two = write(dir.path(), "two.bv", "bv{n=2, r=2, H=Id; domain: . .; braid: s1; labels: [-, -]; range: . .}");
    assert_eq!(bvn(&["decompose", &two]).status.code(), Some(2));
}

#[test]
fn evaluate_round_trips_decompose() {
    let o = bvn(&["evaluate", "--n", "2", "x_0 h_1 g_s1^-1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = parse_element(&stdout(&o), &Specs::new()).unwrap();
    let w = bvn(&["decompose", "--verify", stdout(&o).trim()]);
    assert_eq!(w.status.code(), Some(0));
    let back = bvn(&["evaluate", "--n", "2", stdout(&w).trim()]);
    assert!(parse_element(&stdout(&back), &Specs::new()).unwrap().equals(&v));
    assert_eq!(bvn(&["evaluate", "--n", "2", "x_7"]).status.code(), Some(2));
    assert_eq!(bvn(&["evaluate", "--n", "2", "--H", "Id", "g_s1"]).status.code(), Some(2));
}

#[test]
fn subgroup_files_name_h() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "Sq.txt", "# squares of generators\na = s1 s1\nb = s2 s2\n");
    let e = write(dir.path(), "e.bv", "bv{n=3, r=1, H=Sq; domain: (. . .); braid: s1; labels: [a, -, b^-1]; range: (. . .)}");
    let o = bvn(&["--H", &h, "compose", &e, &e]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("H=Sq"));
    assert_eq!(bvn(&["reduce", &e]).status.code(), Some(2));
    let o = bvn(&["random", "--n", "3", "--H", &h, "--seed", "2", "--count", "3"]);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn json_mirrors_the_grammar() {
    let o = bvn(&["reduce", "--json", G1G1]);
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["n"], 2);
    assert_eq!(j["r"], 1);
    assert_eq!(j["H"], "B2");
    assert_eq!(j["domain"], "(. .)");
    assert_eq!(j["braid"], "");
    assert_eq!(j["labels"], serde_json::json!(["s1 s1", "-"]));
    assert_eq!(j["range"], "(. .)");
}

#[test]
fn confluence_command() {
    let o = bvn(&["confluence", "--count", "500", "--max-slices", "12", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim().ends_with("0 counterexamples"), "{}", stdout(&o));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = bvn(&["random", "--n", "3", "--r", "2", "--seed", "11", "--count", "5"]);
    let b = bvn(&["random", "--n", "3", "--r", "2", "--seed", "11", "--count", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let f = write(dir.path(), "braided.bv", BRAIDED);
    let (s1, s2) = (dir.path().join("1.svg"), dir.path().join("2.svg"));
    assert_eq!(bvn(&["render", &f, "--out", s1.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(bvn(&["render", &f, "--out", s2.to_str().unwrap()]).status.code(), Some(0));
    let svg = std::fs::read_to_string(&s1).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&s2).unwrap());
    assert!(svg.contains("<svg") && svg.contains("version=\"1.1\""));
    assert_eq!(bvn(&["render", "--normal", G1G1]).status.code(), Some(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn format_then_parse(seed in any::<u64>(), n in 2usize..5, r in 1usize..3, full in any::<bool>()) {
        let spec = if full { SubgroupSpec::braid_group(n) } else { SubgroupSpec::identity(n) };
        let v = Element::random(spec.into(), r, 4, seed);
        let text = format_element(&v);
        let w = parse_element(&text, &Specs::new()).unwrap();
        prop_assert_eq!(&w, &v);
        prop_assert_eq!(format_element(&w), text);
    }
}
