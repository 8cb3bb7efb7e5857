//! The ten acceptance criteria, one line each. Criteria 1 to 9 run in
//! process; criterion 10 drives the `bvn` binary. Runs without the test
//! harness so the lines are always printed.

use std::process::Command;

use bvn_cli::acceptance::{self, Outcome, Scale};

const SEED: u64 = 7;

fn bvn(args: &[&str], stdin: Option<&str>) -> (Option<i32>, String) {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_bvn"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::null())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let o = child.wait_with_output().unwrap();
    (o.status.code(), String::from_utf8_lossy(&o.stdout).into_owned())
}

/// Grammar round trip in process, then the exit-code contract and a full
/// `selftest` through the binary.
fn cli_contract() -> Outcome {
    let round_trip = acceptance::grammar_round_trip(SEED, Scale::Full);
    let a = "bv{n=2, r=1, H=B2; domain: (. .); braid: s1; labels: [s1, -]; range: (. .)}";
    let b = "bv{n=2, r=1, H=B2; domain: (. .); braid: ; labels: [s1, -]; range: (. .)}";
    let mut failures = Vec::new();
    let mut expect = |what: &str, got: (Option<i32>, String), code: i32, out: Option<&str>| {
        if got.0 != Some(code) || out.is_some_and(|o| got.1.trim() != o) {
            failures.push(format!("{what}: exit {:?}, output {:?}", got.0, got.1.trim()));
        }
    };
    expect("equal a a", bvn(&["equal", a, a], None), 0, Some("true"));
    expect("equal a b", bvn(&["equal", a, b], None), 1, Some("false"));
    expect("equal from stdin", bvn(&["equal", "-", a], Some(a)), 0, Some("true"));
    expect("syntax error", bvn(&["reduce", "bv{n=2, r=1, H=Id; domain: (.); braid: ; labels: [-]; range: .}"], None), 2, None);
    expect("unknown flag", bvn(&["reduce", a, "--nope"], None), 2, None);
    expect("missing file", bvn(&["inverse", "/no/such/file.bv"], None), 2, None);
    expect("decompose --verify", bvn(&["decompose", "--verify", a], None), 0, None);
    let (code, out) = bvn(&["selftest"], None);
    let lines = out.lines().filter(|l| l.starts_with("[PASS]")).count();
    expect("selftest", (code, String::new()), 0, None);
    let passed = round_trip.passed && failures.is_empty() && lines == 10;
    let mut detail = format!("{}; exit codes checked; selftest {lines}/10 green", round_trip.detail);
    if !failures.is_empty() {
        detail.push_str(&format!("; {}", failures.join("; ")));
    }
    Outcome { id: 10, name: "CLI contract", passed, detail }
}

fn main() {
    let mut outcomes = acceptance::run_all(SEED, Scale::Full);
    outcomes.pop();
    outcomes.push(cli_contract());
    println!("\nacceptance criteria");
    for o in &outcomes {
        println!("{o}");
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if failed.is_empty() {
        println!("all {} criteria pass\n", outcomes.len());
    } else {
        println!("failed criteria: {failed:?}\n");
        std::process::exit(1);
    }
}
