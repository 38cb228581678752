//! The subcommands of `rll`, as functions from arguments to an [`Outcome`].

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use rll_core::automaton::{build_apa, export_dot, Apa};
use rll_core::calculus::Sequent;
use rll_core::decide::{decide, DecideError, Decision};
use rll_core::expr::{fl_closure, parse, Alphabet, Expr};
use rll_core::proof::{check, CheckError, ProofGraph};
use rll_core::semantics::{member_with, Solver, UPWord};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::corpus::{self, Corpus};

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Non-member, refuted, or a failing corpus run.
    pub const NO: i32 = 1;
    pub const LOCAL_VIOLATION: i32 = 2;
    pub const NOT_PROGRESSING: i32 = 3;
    pub const UNGUARDED: i32 = 4;
    pub const USAGE: i32 = 64;
    /// A proof file or manifest that does not parse.
    pub const DATA: i32 = 65;
    pub const NO_INPUT: i32 = 66;
    /// The decision procedure failed to verify its own answer.
    pub const INTERNAL: i32 = 70;
    pub const CANT_CREATE: i32 = 73;
}

/// What a command prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, msg: impl std::fmt::Display) -> Outcome {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// The `--json` output: one object per invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

/// Formats a successful run: `text` in plain mode, the envelope in JSON
/// mode.
struct Report<'a> {
    command: &'a str,
    inputs: Vec<(&'a str, String)>,
    json: bool,
}

impl Report<'_> {
    fn finish(self, code: i32, result: &str, text: String, witness: Option<serde_json::Value>) -> Outcome {
        let stdout = if self.json {
            let env = Envelope {
                command: self.command.into(),
                inputs: self.inputs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
                result: result.into(),
                witness,
            };
            serde_json::to_string(&env).expect("envelope serialises") + "\n"
        } else {
            text
        };
        Outcome { code, stdout, stderr: String::new() }
    }
}

fn alphabet(spec: &str) -> Result<Alphabet, Outcome> {
    Alphabet::new(spec).map_err(|e| Outcome::error(exit::USAGE, e))
}

fn closed_expr(text: &str, a: &Alphabet) -> Result<Expr, Outcome> {
    let e = parse(text, a).map_err(|e| Outcome::error(exit::USAGE, e))?;
    if !e.is_closed() {
        return Err(Outcome::error(exit::USAGE, format!("`{e}` has free variables {:?}", e.free_vars())));
    }
    Ok(e)
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(out) => return out,
        }
    };
}

/// `rll parse`: the canonical form of an expression or sequent.
pub fn parse_cmd(alphabet_spec: &str, expr: Option<&str>, sequent: Option<&str>, json: bool) -> Outcome {
    let a = tri!(alphabet(alphabet_spec));
    match (expr, sequent) {
        (Some(text), None) => {
            let e = tri!(parse(text, &a).map_err(|e| Outcome::error(exit::USAGE, e)));
            let printed = e.to_string();
            let witness = json.then(|| {
                let closure = fl_closure(&e).map(|fl| fl.len()).ok();
                json!({ "size": e.size(), "closed": e.is_closed(), "guarded": e.is_guarded().ok(), "closure": closure })
            });
            let r = Report { command: "parse", inputs: vec![("alphabet", a.to_string()), ("expr", text.into())], json };
            r.finish(exit::OK, &printed, format!("{printed}\n"), witness)
        }
        (None, Some(text)) => {
            let s = tri!(Sequent::parse(text, &a).map_err(|e| Outcome::error(exit::USAGE, e)));
            let printed = s.to_string();
            let r =
                Report { command: "parse", inputs: vec![("alphabet", a.to_string()), ("sequent", text.into())], json };
            r.finish(exit::OK, &printed, format!("{printed}\n"), None)
        }
        _ => Outcome::error(exit::USAGE, "give exactly one of --expr and --sequent"),
    }
}

/// `rll member`: exit 0 if the word is in the language, 1 if not.
pub fn member_cmd(alphabet_spec: &str, word: &str, expr: &str, solver: Solver, json: bool) -> Outcome {
    let a = tri!(alphabet(alphabet_spec));
    let w = tri!(UPWord::parse(word, &a).map_err(|e| Outcome::error(exit::USAGE, e)));
    let e = tri!(closed_expr(expr, &a));
    let verdict = tri!(member_with(&w, &e, solver).map_err(|e| Outcome::error(exit::USAGE, e)));
    let result = if verdict { "member" } else { "non-member" };
    let r = Report {
        command: "member",
        inputs: vec![("alphabet", a.to_string()), ("word", w.to_string()), ("expr", e.to_string())],
        json,
    };
    r.finish(if verdict { exit::OK } else { exit::NO }, result, format!("{result}\n"), None)
}

/// `rll check`: 0 accepted, 2 local violation, 3 no progress.
pub fn check_cmd(path: &Path, json: bool) -> Outcome {
    let text =
        tri!(std::fs::read_to_string(path)
            .map_err(|e| Outcome::error(exit::NO_INPUT, format!("{}: {e}", path.display()))));
    let p = tri!(ProofGraph::parse(&text).map_err(|e| Outcome::error(exit::DATA, format!("{}: {e}", path.display()))));
    let r = Report { command: "check", inputs: vec![("file", path.display().to_string())], json };
    match check(&p) {
        Ok(()) => r.finish(exit::OK, "accepted", "accepted\n".into(), None),
        Err(CheckError::Local(v)) => {
            let lines: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            let mut text = format!("local-violation {}\n", lines.len());
            for l in &lines {
                let _ = writeln!(text, "  {l}");
            }
            r.finish(exit::LOCAL_VIOLATION, "local-violation", text, Some(json!(lines)))
        }
        Err(CheckError::Progress(l)) => {
            let lasso = l.describe(&p);
            r.finish(exit::NOT_PROGRESSING, "not-progressing", format!("not-progressing {lasso}\n"), Some(json!(lasso)))
        }
    }
}

/// `rll decide`: 0 proved, 1 refuted, 4 unguarded input.
pub fn decide_cmd(alphabet_spec: &str, sequent: &str, emit_proof: Option<&Path>, json: bool) -> Outcome {
    let a = tri!(alphabet(alphabet_spec));
    let s = tri!(Sequent::parse(sequent, &a).map_err(|e| Outcome::error(exit::USAGE, e)));
    let r = Report { command: "decide", inputs: vec![("alphabet", a.to_string()), ("sequent", s.to_string())], json };
    match decide(&s, &a) {
        Ok(Decision::Proved(p)) => {
            let proof = p.to_text();
            if let Some(path) = emit_proof {
                if let Err(e) = std::fs::write(path, &proof) {
                    return Outcome::error(exit::CANT_CREATE, format!("{}: {e}", path.display()));
                }
            }
            r.finish(exit::OK, "proved", "proved\n".into(), Some(json!(proof)))
        }
        Ok(Decision::Refuted(w)) => {
            let word = w.to_string();
            r.finish(exit::NO, "refuted", format!("refuted {word}\n"), Some(json!(word)))
        }
        Err(e @ (DecideError::Unguarded { .. } | DecideError::Open { .. })) => Outcome::error(exit::UNGUARDED, e),
        Err(e @ DecideError::ForeignLetter { .. }) => Outcome::error(exit::USAGE, e),
        Err(e @ DecideError::Internal(_)) => Outcome::error(exit::INTERNAL, e),
    }
}

/// `rll complement`: the structural complement.
pub fn complement_cmd(alphabet_spec: &str, expr: &str, json: bool) -> Outcome {
    let a = tri!(alphabet(alphabet_spec));
    let e = tri!(parse(expr, &a).map_err(|e| Outcome::error(exit::USAGE, e)));
    let c = e.complement(&a).to_string();
    let r = Report { command: "complement", inputs: vec![("alphabet", a.to_string()), ("expr", e.to_string())], json };
    r.finish(exit::OK, &c, format!("{c}\n"), None)
}

fn apa_listing(apa: &Apa) -> String {
    let mut out = String::new();
    for (i, s) in apa.states.iter().enumerate() {
        let owner = if apa.universal.contains(&i) { "A" } else { "E" };
        let init = if i == apa.initial { " initial" } else { "" };
        let _ = writeln!(out, "state q{i} {owner} colour {}{init}: {s}", apa.colour[i]);
    }
    for &(s, letter, t) in &apa.transitions {
        let label = letter.map(|a| a.to_string()).unwrap_or_else(|| "eps".into());
        let _ = writeln!(out, "edge q{s} {label} q{t}");
    }
    out
}

/// `rll export-apa`: states and transitions, or Graphviz with `--dot`.
pub fn export_apa_cmd(alphabet_spec: &str, expr: &str, dot: bool, json: bool) -> Outcome {
    let a = tri!(alphabet(alphabet_spec));
    let e = tri!(closed_expr(expr, &a));
    let apa = tri!(build_apa(&e).map_err(|err| Outcome::error(exit::USAGE, err)));
    let text = if dot { export_dot(&apa) } else { apa_listing(&apa) };
    let r = Report { command: "export-apa", inputs: vec![("alphabet", a.to_string()), ("expr", e.to_string())], json };
    let result = format!("{} states", apa.states.len());
    r.finish(exit::OK, &result, text.clone(), Some(json!(text)))
}

/// `rll corpus run`: the acceptance table; exit 1 on any failure.
pub fn corpus_run_cmd(manifest: Option<&Path>, seed: u64, filter: Option<&str>, json: bool) -> Outcome {
    let path = manifest.map(Path::to_path_buf).unwrap_or_else(Corpus::default_path);
    let c = tri!(Corpus::load(&path).map_err(|e| Outcome::error(exit::DATA, e)));
    let reports = tri!(corpus::run(&c, seed, filter).map_err(|e| Outcome::error(exit::USAGE, e)));
    let passed = reports.iter().filter(|r| r.passed).count();
    let all = passed == reports.len();
    let mut text = format!("corpus run seed={seed}\n");
    for r in &reports {
        let _ = writeln!(text, "{}", r.line());
        for f in &r.failures {
            let _ = writeln!(text, "     {f}");
        }
    }
    let _ = writeln!(text, "{passed}/{} criteria passed", reports.len());
    let mut inputs = vec![("seed", seed.to_string())];
    if let Some(f) = filter {
        inputs.push(("filter", f.to_string()));
    }
    let r = Report { command: "corpus run", inputs, json };
    let code = if all { exit::OK } else { exit::NO };
    r.finish(code, if all { "pass" } else { "fail" }, text, Some(json!(reports)))
}
