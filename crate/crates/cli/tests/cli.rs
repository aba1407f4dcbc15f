use std::io::Write;
use std::process::{Command, Output, Stdio};

use tempfile::NamedTempFile;
use tightrank_core::fixtures;
use tightrank_core::hoa::{parse_hoa, serialize_hoa};
use tightrank_core::oracle::lasso_equiv;
use tightrank_core::scc::is_semi_deterministic;
use tightrank_core::{Alphabet, Ba, Symbol};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tightrank"))
}

fn write_hoa(ba: &Ba) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(serialize_hoa(ba).as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn stat(line: &str, key: &str) -> u64 {
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in {line}"))
        .parse()
        .unwrap()
}

/// A nondeterministic component with an accepting state but not inherently weak.
fn non_elevator() -> Ba {
    let mut b = Ba::builder(Alphabet::letters(1), 2);
    let a = Symbol(0);
    b.add_initial(0).set_accepting(1);
    for (p, q) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        b.add_transition(p, a, q);
    }
    b.build()
}

#[test]
fn complement_prints_hoa_and_stats() {
    let f = write_hoa(&fixtures::running_example());
    let o = run(&["complement", f.path().to_str().unwrap(), "--trub=elevator", "--stats"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = parse_hoa(&stdout(&o)).expect("output reparses");
    assert!(out.num_states() > 0);
    let line = stderr(&o).lines().find(|l| l.starts_with("waiting=")).unwrap().to_string();
    for key in ["waiting", "tight", "total", "time_ms"] {
        stat(&line, key);
    }
    assert!(stat(&line, "max_rank") <= 3);
    assert_eq!(stat(&line, "total"), stat(&line, "waiting") + stat(&line, "tight"));
}

#[test]
fn stats_only_keeps_stdout_empty() {
    let f = write_hoa(&fixtures::mixed_example());
    let o = run(&["complement", f.path().to_str().unwrap(), "--stats-only"]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("max_rank="));
}

#[test]
fn complement_reads_standard_input() {
    let mut child = bin()
        .args(["complement", "-", "--propagate=outer,inner"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(serialize_hoa(&fixtures::dataflow_example()).as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    parse_hoa(&stdout(&o)).unwrap();
}

#[test]
fn analyze_mixed_example() {
    let f = write_hoa(&fixtures::mixed_example());
    let o = run(&["analyze", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("{q}: N 1"), "{text}");
    assert!(text.contains("{s,t}: IWA 0"), "{text}");
    assert!(text.contains("elevator: true"), "{text}");
}

#[test]
fn semidet_output_is_semi_deterministic() {
    let ba = fixtures::mixed_example();
    let f = write_hoa(&ba);
    let o = run(&["semidet", f.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let sd = parse_hoa(&stdout(&o)).unwrap();
    assert!(is_semi_deterministic(&sd));
    assert_eq!(lasso_equiv(&ba, &sd, 2, 3).unwrap(), None);
}

#[test]
fn semidet_rejects_non_elevator() {
    let f = write_hoa(&non_elevator());
    let o = run(&["semidet", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn check_passes_on_fixtures() {
    for ba in [fixtures::running_example(), fixtures::mixed_example()] {
        let f = write_hoa(&ba);
        let o = run(&["check", f.path().to_str().unwrap(), "--trub=elevator", "--propagate=outer,inner"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
}

#[test]
fn gen_is_deterministic_and_reparses() {
    let args = ["gen", "--n", "5", "--symbols", "2", "--td", "1.5", "--ad", "0.5", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let ba = parse_hoa(&stdout(&a)).unwrap();
    assert_eq!(ba.num_states(), 5);
}

#[test]
fn generated_automata_check_under_every_flag_set() {
    let flag_sets: [&[&str]; 6] = [
        &[],
        &["--trub=elevator"],
        &["--trub=general", "--propagate=outer"],
        &["--trub=elevator", "--propagate=outer,inner"],
        &["--trub=elevator", "--deelevate", "--trim"],
        &["--propagate=outer,inner"],
    ];
    for seed in 0..4 {
        let gen = run(&["gen", "--n", "4", "--seed", &seed.to_string()]);
        let mut f = NamedTempFile::new().unwrap();
        f.write_all(&gen.stdout).unwrap();
        for flags in flag_sets {
            let mut args = vec!["check", f.path().to_str().unwrap()];
            args.extend_from_slice(flags);
            let o = run(&args);
            assert_eq!(o.status.code(), Some(0), "seed {seed} {flags:?}: {}", stdout(&o));
        }
    }
}

#[test]
fn parse_errors_exit_2() {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(b"HOA: v1\nStates: 1\nAcceptance: 2 Inf(0)&Fin(1)\n--BODY--\n--END--\n").unwrap();
    let o = run(&["complement", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error"));
}

#[test]
fn bad_flags_exit_2() {
    let f = write_hoa(&fixtures::running_example());
    let o = run(&["complement", f.path().to_str().unwrap(), "--trub=bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["complement", "/nonexistent/file.hoa"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_elevator_falls_back_with_warning() {
    let f = write_hoa(&non_elevator());
    let o = run(&["complement", f.path().to_str().unwrap(), "--trub=elevator"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
}
