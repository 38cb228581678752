use std::process::{Command, Output};

use rll_cli::commands::Envelope;
use rll_core::calculus::Sequent;
use rll_core::expr::{parse, Alphabet};
use rll_core::proof::{check, ProofGraph};
use rll_core::semantics::{member, UPWord};

fn rll(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rll")).args(args).output().expect("run rll")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn proofs_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/proofs")
}

fn ab() -> Alphabet {
    Alphabet::new("ab").unwrap()
}

#[test]
fn member_exit_codes() {
    let o = rll(&["member", "--alphabet", "ab", "--word", "(a)^w", "--expr", "nu X. a X"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "member\n"));
    let o = rll(&["member", "--alphabet", "ab", "--word", "b(a)^w", "--expr", "nu X. a X", "--solver", "spm"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "non-member\n"));
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["member", "--word", "(a", "--expr", "T"],
        vec!["member", "--word", "(a)^w", "--expr", "a X"],
        vec!["frobnicate"],
        vec!["decide"],
        vec!["parse", "--alphabet", "aa", "--expr", "T"],
        vec!["corpus", "run", "--filter", "nothing"],
    ] {
        let o = rll(&args);
        assert_eq!(o.status.code(), Some(64), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn check_verdicts() {
    let dir = proofs_dir();
    let o = rll(&["check", dir.join("f_a_cap_f_b.prf").to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "accepted\n"));
    let o = rll(&["check", dir.join("nu_xx_mu_xx_mu_r.prf").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("not-progressing "));

    let tmp = std::env::temp_dir().join(format!("rll-broken-{}.prf", std::process::id()));
    let text = std::fs::read_to_string(dir.join("nu_a_implies_i_a.prf")).unwrap().replace("rule h_a", "rule h_b");
    std::fs::write(&tmp, text).unwrap();
    let o = rll(&["check", tmp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("local-violation 1\n"));
    std::fs::write(&tmp, "alphabet: ab\nnode n0: |- ; rule frob\n").unwrap();
    assert_eq!(rll(&["check", tmp.to_str().unwrap()]).status.code(), Some(65));
    std::fs::remove_file(&tmp).unwrap();
    assert_eq!(rll(&["check", "/nonexistent/x.prf"]).status.code(), Some(66));
}

#[test]
fn decide_outputs() {
    let o = rll(&["decide", "--alphabet", "ab", "--sequent", "i_a |- f_a"]);
    assert_eq!(o.status.code(), Some(1));
    let line = stdout(&o);
    let word = line.strip_prefix("refuted ").unwrap().trim();
    let w = UPWord::parse(word, &ab()).unwrap();
    assert!(member(&w, &parse("i_a", &ab()).unwrap()).unwrap());
    assert!(!member(&w, &parse("f_a", &ab()).unwrap()).unwrap());

    let o = rll(&["decide", "--sequent", "nu X. X + a X |-"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not guarded"));

    let tmp = std::env::temp_dir().join(format!("rll-emit-{}.prf", std::process::id()));
    let o = rll(&["decide", "--sequent", "f_a |- i_b", "--emit-proof", tmp.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "proved\n"));
    let o = rll(&["check", tmp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_file(&tmp).unwrap();
}

#[test]
fn json_round_trips() {
    let o = rll(&["decide", "--sequent", "f_a & nu Y. a Y |-", "--json"]);
    let env: Envelope = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((env.command.as_str(), env.result.as_str()), ("decide", "proved"));
    let s = Sequent::parse(&env.inputs["sequent"], &ab()).unwrap();
    assert_eq!(s, Sequent::parse("f_a & nu Y. a Y |-", &ab()).unwrap());
    let proof = ProofGraph::parse(env.witness.unwrap().as_str().unwrap()).unwrap();
    check(&proof).unwrap();
    assert_eq!(proof.root_sequent(), &s);

    let o = rll(&["decide", "--sequent", "i_a & i_b |- f_a", "--json"]);
    let env: Envelope = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(env.result, "refuted");
    UPWord::parse(env.witness.unwrap().as_str().unwrap(), &ab()).unwrap();

    let o = rll(&["parse", "--expr", "f_b", "--json"]);
    let env: Envelope = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(parse(&env.result, &ab()).unwrap(), parse("f_b", &ab()).unwrap());
    assert_eq!(env.witness.unwrap()["guarded"], serde_json::json!(true));

    let o = rll(&["member", "--word", "ab(b)^w", "--expr", "f_a", "--json"]);
    let env: Envelope = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(env.result, "member");
    assert_eq!(UPWord::parse(&env.inputs["word"], &ab()).unwrap().to_string(), "ab(b)^w");
}

#[test]
fn complement_and_apa() {
    let o = rll(&["complement", "--expr", "nu X. a X"]);
    let c = parse(stdout(&o).trim(), &ab()).unwrap();
    assert_eq!(c, parse("nu X. a X", &ab()).unwrap().complement(&ab()));
    let o = rll(&["export-apa", "--expr", "nu X. a X", "--dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph apa {") && dot.contains("peripheries=2"));
    let o = rll(&["export-apa", "--expr", "i_a"]);
    assert!(stdout(&o).lines().filter(|l| l.starts_with("state ")).count() == 5);
}

#[test]
fn corpus_filter() {
    let o = rll(&["corpus", "run", "--filter", "proofs", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("PASS  1") && out.contains("PASS  2") && !out.contains(" 3 "));
    assert!(out.ends_with("2/2 criteria passed\n"));
}
