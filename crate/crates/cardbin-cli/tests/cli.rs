//! End-to-end tests of the `cardbin` binary: exit codes, output shapes,
//! determinism, and file round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cardbin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cardbin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    p.push(name);
    p.to_str().unwrap().to_owned()
}

#[test]
fn gen_run_opt_verify_round_trip() {
    let inst = tmp("small_k4_l1.bpcc");
    let cert = tmp("small_k4_l1.pack");
    let out = cardbin(&[
        "gen", "--family", "ff-small", "--k", "4", "--ell", "1", "--out", &inst, "--cert", &cert,
    ]);
    assert!(out.status.success(), "{out:?}");

    let out = cardbin(&["run", "--alg", "ff", "--k", "4", "--in", &inst]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("bins 16"), "{}", stdout(&out));

    let ff_pack = tmp("small_k4_l1.ff.pack");
    let trace = tmp("small_k4_l1.trace");
    let out = cardbin(&[
        "run", "--alg", "ff", "--k", "4", "--in", &inst, "--out", &ff_pack, "--trace", &trace,
    ]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&trace).unwrap().starts_with("place 0 -> 0"));

    // everything the CLI writes is re-readable by the CLI
    let out = cardbin(&["verify", "--what", "packing", "--k", "4", "--in", &inst, "--packing", &ff_pack]);
    assert!(out.status.success(), "{}", stdout(&out));
    let out = cardbin(&["verify", "--what", "packing", "--k", "4", "--in", &inst, "--packing", &cert]);
    assert!(out.status.success());

    let out = cardbin(&["opt", "--k", "4", "--in", &inst]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("opt 8"), "{}", stdout(&out));

    let out = cardbin(&[
        "verify", "--what", "weights", "--k", "4", "--in", &inst, "--packing", &ff_pack,
        "--opt", &cert,
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn duel_reports_exact_ratio() {
    let out = cardbin(&["duel", "--adversary", "abs-k3", "--alg", "ff", "--k", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ratio=7/4 (1.750000)"), "{}", stdout(&out));

    let out = cardbin(&["duel", "--adversary", "abs-k4plus", "--alg", "ff", "--k", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ratio=2/1 (2.000000)"), "{}", stdout(&out));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["verify", "--what", "weights", "--k", "5", "--random", "5", "--seed", "42"];
    let a = cardbin(&args);
    let b = cardbin(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let t1 = cardbin(&["table", "--k-from", "2", "--k-to", "5", "--ell", "3"]);
    let t2 = cardbin(&["table", "--k-from", "2", "--k-to", "5", "--ell", "3"]);
    assert!(t1.status.success());
    assert_eq!(t1.stdout, t2.stdout);
    assert!(stdout(&t1).contains("asymptote"));
}

#[test]
fn exit_codes() {
    // infeasible packing: exit 1
    let inst = tmp("bad_inst.bpcc");
    let pack = tmp("bad_pack.pack");
    std::fs::write(&inst, "BPCC v1\nk 2\nitem 2/3 x3\n").unwrap();
    std::fs::write(&pack, "PACKING v1\nbins 1\nbin 0: 0 1 2\n").unwrap();
    let out = cardbin(&["verify", "--what", "packing", "--k", "2", "--in", &inst, "--packing", &pack]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");

    // unknown flag: exit 2
    let out = cardbin(&["run", "--algorithm", "ff", "--k", "2", "--in", &inst]);
    assert_eq!(out.status.code(), Some(2));

    // k mismatch with the instance file: exit 2
    let out = cardbin(&["run", "--alg", "ff", "--k", "3", "--in", &inst]);
    assert_eq!(out.status.code(), Some(2));

    // unknown family: exit 2
    let out = cardbin(&["gen", "--family", "nope", "--k", "4", "--ell", "1", "--out", &tmp("x")]);
    assert_eq!(out.status.code(), Some(2));
}
