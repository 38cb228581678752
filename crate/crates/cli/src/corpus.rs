//! The fixture corpus and the checks `rll corpus run` performs on it.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rll_core::automaton::{apa_accepts, build_apa, default_coloring};
use rll_core::calculus::{Rule, Sequent};
use rll_core::decide::{decide, saturate, DecideError, Decision};
use rll_core::expr::{fl_closure, parse, Alphabet, Expr};
use rll_core::proof::{check, CheckError, ProofGraph};
use rll_core::semantics::{member, member_with, Evaluator, Solver, UPWord};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sample;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Manifest { path: PathBuf, source: toml::de::Error },
    #[error("{what}: {msg}")]
    Entry { what: String, msg: String },
    #[error("unknown filter `{0}` (expected one of {1})")]
    UnknownFilter(String, String),
}

fn entry_err(what: impl Into<String>, msg: impl ToString) -> CorpusError {
    CorpusError::Entry { what: what.into(), msg: msg.to_string() }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    alphabet: String,
    #[serde(default)]
    expression: Vec<ExprEntry>,
    #[serde(default)]
    sequent: Vec<SequentEntry>,
    #[serde(default)]
    proof: Vec<ProofEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExprEntry {
    name: String,
    text: String,
    alphabet: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SequentEntry {
    text: String,
    alphabet: Option<String>,
    expect: Verdict,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProofEntry {
    group: ProofGroup,
    file: String,
    expect: ProofVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Proved,
    Refuted,
    Unguarded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofGroup {
    /// Proofs of the worked examples.
    Worked,
    /// Single-node loops on `μX.X` and `νX.X`.
    Loops,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofVerdict {
    Accepted,
    Rejected,
}

#[derive(Clone, Debug)]
pub struct NamedExpr {
    pub name: String,
    pub alphabet: Alphabet,
    pub expr: Expr,
}

#[derive(Clone, Debug)]
pub struct SequentFixture {
    pub text: String,
    pub alphabet: Alphabet,
    pub sequent: Sequent,
    pub expect: Verdict,
}

#[derive(Clone, Debug)]
pub struct ProofFixture {
    pub file: String,
    pub group: ProofGroup,
    pub graph: ProofGraph,
    pub expect: ProofVerdict,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub expressions: Vec<NamedExpr>,
    pub sequents: Vec<SequentFixture>,
    pub proofs: Vec<ProofFixture>,
}

fn read(path: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_owned(), source })
}

impl Corpus {
    /// The manifest shipped with the crate.
    pub fn default_path() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join("corpus.toml")
    }

    /// Loads a manifest; proof files are resolved relative to it. Every
    /// proof must prove one of the listed sequents.
    pub fn load(path: &Path) -> Result<Corpus, CorpusError> {
        let text = read(path)?;
        let m: Manifest =
            toml::from_str(&text).map_err(|source| CorpusError::Manifest { path: path.to_owned(), source })?;
        let alphabet = |over: &Option<String>, what: &str| -> Result<Alphabet, CorpusError> {
            Alphabet::new(over.as_deref().unwrap_or(&m.alphabet)).map_err(|e| entry_err(what, e))
        };
        let mut expressions = vec![];
        for e in &m.expression {
            let what = format!("expression {}", e.name);
            let a = alphabet(&e.alphabet, &what)?;
            let expr = parse(&e.text, &a).map_err(|err| entry_err(&what, err))?;
            if !expr.is_closed() {
                return Err(entry_err(what, "expression is open"));
            }
            expressions.push(NamedExpr { name: e.name.clone(), alphabet: a, expr });
        }
        let mut sequents = vec![];
        for s in &m.sequent {
            let what = format!("sequent `{}`", s.text);
            let a = alphabet(&s.alphabet, &what)?;
            let sequent = Sequent::parse(&s.text, &a).map_err(|err| entry_err(&what, err))?;
            sequents.push(SequentFixture { text: s.text.clone(), alphabet: a, sequent, expect: s.expect });
        }
        let dir = path.parent().unwrap_or(Path::new("."));
        let mut proofs = vec![];
        for p in &m.proof {
            let graph = ProofGraph::parse(&read(&dir.join(&p.file))?).map_err(|err| entry_err(&p.file, err))?;
            let known = sequents.iter().any(|s| s.alphabet == graph.alphabet && &s.sequent == graph.root_sequent());
            if !known {
                return Err(entry_err(
                    &p.file,
                    format!("root sequent `{}` is not a corpus sequent", graph.root_sequent()),
                ));
            }
            proofs.push(ProofFixture { file: p.file.clone(), group: p.group, graph, expect: p.expect });
        }
        Ok(Corpus { expressions, sequents, proofs })
    }

    pub fn guarded_sequents(&self) -> impl Iterator<Item = &SequentFixture> {
        self.sequents.iter().filter(|s| s.expect != Verdict::Unguarded)
    }

    pub fn guarded_expressions(&self) -> impl Iterator<Item = &NamedExpr> {
        self.expressions.iter().filter(|e| e.expr.is_guarded().unwrap_or(false))
    }
}

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    /// Counts of what was checked.
    pub detail: String,
    pub failures: Vec<String>,
}

impl CriterionReport {
    fn new(id: u8, name: &str, checked: usize, failures: Vec<String>) -> Self {
        let passed = failures.is_empty() && checked > 0;
        let detail = format!("{}/{checked}", checked - failures.len().min(checked));
        CriterionReport { id, name: name.into(), passed, detail, failures }
    }

    /// One table line, e.g. `PASS  3 decision dichotomy  20/20`.
    pub fn line(&self) -> String {
        format!("{} {:>2} {:<28} {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

/// Filter names accepted by [`run`] and the criteria they select.
pub const FILTERS: [(&str, &[u8]); 6] = [
    ("proofs", &[1, 2]),
    ("decide", &[3]),
    ("complement", &[4]),
    ("membership", &[5]),
    ("soundness", &[6]),
    ("structure", &[7]),
];

fn rng_for(seed: u64, criterion: u8) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(criterion as u64);
    rng
}

/// Runs the selected criteria in order.
pub fn run(corpus: &Corpus, seed: u64, filter: Option<&str>) -> Result<Vec<CriterionReport>, CorpusError> {
    let ids: Vec<u8> = match filter {
        None => (1..=7).collect(),
        Some(f) => {
            let by_name = FILTERS.iter().find(|(name, _)| *name == f).map(|(_, ids)| ids.to_vec());
            let by_number = f.parse::<u8>().ok().filter(|n| (1..=7).contains(n)).map(|n| vec![n]);
            by_name.or(by_number).ok_or_else(|| {
                let names: Vec<&str> = FILTERS.iter().map(|(n, _)| *n).collect();
                CorpusError::UnknownFilter(f.into(), format!("{} or 1-7", names.join(", ")))
            })?
        }
    };
    Ok(ids
        .into_iter()
        .map(|id| match id {
            1 => worked_proofs(corpus),
            2 => loop_proofs(corpus),
            3 => dichotomy(corpus),
            4 => complement_adequacy(corpus),
            5 => membership(&mut rng_for(seed, 5)),
            6 => local_soundness(corpus, &mut rng_for(seed, 6)),
            _ => structure(corpus),
        })
        .collect())
}

fn check_fixture(p: &ProofFixture) -> Option<String> {
    let verdict = check(&p.graph);
    match (p.expect, verdict) {
        (ProofVerdict::Accepted, Ok(())) => None,
        (ProofVerdict::Rejected, Err(CheckError::Progress(l))) if l.is_branch_of(&p.graph) => None,
        (ProofVerdict::Accepted, Err(CheckError::Progress(l))) => {
            Some(format!("{}: no progress on {}", p.file, l.describe(&p.graph)))
        }
        (_, Err(CheckError::Local(v))) => Some(format!("{}: {}", p.file, v[0])),
        (ProofVerdict::Rejected, _) => Some(format!("{}: expected a counter-branch", p.file)),
    }
}

/// Criterion 1: the worked cyclic proofs check.
pub fn worked_proofs(c: &Corpus) -> CriterionReport {
    let fixtures: Vec<&ProofFixture> = c.proofs.iter().filter(|p| p.group == ProofGroup::Worked).collect();
    let mut failures: Vec<String> = fixtures.iter().filter_map(|p| check_fixture(p)).collect();
    failures.extend(
        fixtures.iter().filter(|p| p.expect != ProofVerdict::Accepted).map(|p| format!("{}: must be a proof", p.file)),
    );
    CriterionReport::new(1, "worked proofs accepted", fixtures.len(), failures)
}

/// Criterion 2: `μX.X → νX.X` loops are proofs, `νX.X → μX.X` loops are not.
pub fn loop_proofs(c: &Corpus) -> CriterionReport {
    let fixtures: Vec<&ProofFixture> = c.proofs.iter().filter(|p| p.group == ProofGroup::Loops).collect();
    let failures = fixtures.iter().filter_map(|p| check_fixture(p)).collect();
    CriterionReport::new(2, "non-proofs rejected", fixtures.len(), failures)
}

/// Does `w` satisfy all left and no right formulas, each checked on its own?
fn refutes_each(w: &UPWord, s: &Sequent) -> Result<bool, String> {
    let holds = |e: &Expr| member(w, e).map_err(|err| err.to_string());
    for e in &s.lhs {
        if !holds(e)? {
            return Ok(false);
        }
    }
    for e in &s.rhs {
        if holds(e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn decide_fixture(s: &SequentFixture) -> Option<String> {
    let text = &s.text;
    match (s.expect, decide(&s.sequent, &s.alphabet)) {
        (Verdict::Unguarded, Err(DecideError::Unguarded { .. })) => None,
        (_, Err(e)) => Some(format!("{text}: {e}")),
        (Verdict::Proved, Ok(Decision::Proved(p))) => {
            check(&p).err().map(|e| format!("{text}: emitted proof fails: {e}"))
        }
        (Verdict::Refuted, Ok(Decision::Refuted(w))) => match refutes_each(&w, &s.sequent) {
            Ok(true) => None,
            Ok(false) => Some(format!("{text}: {w} is not a countermodel")),
            Err(e) => Some(format!("{text}: {e}")),
        },
        (expect, Ok(d)) => Some(format!("{text}: expected {expect:?}, got {}", verdict_name(&d))),
    }
}

fn verdict_name(d: &Decision) -> &'static str {
    match d {
        Decision::Proved(_) => "proved",
        Decision::Refuted(_) => "refuted",
    }
}

/// Criterion 3: decide the corpus; proofs re-check, countermodels verify.
pub fn dichotomy(c: &Corpus) -> CriterionReport {
    let failures = c.sequents.iter().filter_map(decide_fixture).collect();
    CriterionReport::new(3, "decision dichotomy", c.sequents.len(), failures)
}

/// Criterion 4: `→ e, e^c` and `e, e^c →` are provable.
pub fn complement_adequacy(c: &Corpus) -> CriterionReport {
    let mut failures = vec![];
    let mut checked = 0;
    for e in c.guarded_expressions() {
        let comp = e.expr.complement(&e.alphabet);
        let pair = [e.expr.clone(), comp];
        for s in [Sequent::new([], pair.clone()), Sequent::new(pair.clone(), [])] {
            checked += 1;
            match decide(&s, &e.alphabet) {
                Ok(Decision::Proved(p)) if check(&p).is_ok() => {}
                Ok(d) => failures.push(format!("{}: {s} {}", e.name, verdict_name(&d))),
                Err(err) => failures.push(format!("{}: {s}: {err}", e.name)),
            }
        }
    }
    CriterionReport::new(4, "complement adequacy", checked, failures)
}

/// Number of random instances in criterion 5.
pub const MEMBERSHIP_INSTANCES: usize = 1000;
/// Largest random expression (AST nodes) in criterion 5.
pub const MEMBERSHIP_MAX_SIZE: usize = 12;
/// Sampled words per closed-form language in criterion 5.
pub const CLOSED_FORM_WORDS: usize = 50;

fn three_way(w: &UPWord, e: &Expr) -> Result<bool, String> {
    let z = member_with(w, e, Solver::Zielonka).map_err(|err| err.to_string())?;
    let s = member_with(w, e, Solver::ProgressMeasures).map_err(|err| err.to_string())?;
    let a = apa_accepts(&build_apa(e).map_err(|err| err.to_string())?, w);
    if z == s && s == a {
        Ok(z)
    } else {
        Err(format!("{w} in {e}: zielonka {z}, progress measures {s}, automaton {a}"))
    }
}

/// Criterion 5: the two game solvers and the automaton agree, and the
/// closed-form examples hold.
pub fn membership(rng: &mut ChaCha8Rng) -> CriterionReport {
    let ab = Alphabet::new("ab").expect("valid alphabet");
    let mut failures = vec![];
    let mut checked = 0;
    for _ in 0..MEMBERSHIP_INSTANCES {
        let e = sample::expr(rng, &ab, MEMBERSHIP_MAX_SIZE);
        let w = sample::word(rng, &ab, 3, 3);
        checked += 1;
        if let Err(msg) = three_way(&w, &e) {
            failures.push(msg);
        }
    }
    let fixed =
        [("(a)^w", "nu X. a X", true), ("(b)^w", "i_a", false), ("(ba)^w", "i_a & i_b", true), ("a(b)^w", "f_a", true)];
    for (w, e, expected) in fixed {
        let (w, e) = (UPWord::parse(w, &ab).expect("word"), parse(e, &ab).expect("expression"));
        checked += 1;
        match three_way(&w, &e) {
            Ok(v) if v == expected => {}
            Ok(v) => failures.push(format!("{w} in {e}: got {v}")),
            Err(msg) => failures.push(msg),
        }
    }
    let (universal, empty) = (parse("nu X. X", &ab).expect("nu X. X"), parse("mu X. X", &ab).expect("mu X. X"));
    for _ in 0..CLOSED_FORM_WORDS {
        let w = sample::word(rng, &ab, 3, 3);
        for (e, expected) in [(&universal, true), (&empty, false)] {
            checked += 1;
            match three_way(&w, e) {
                Ok(v) if v == expected => {}
                Ok(v) => failures.push(format!("{w} in {e}: got {v}")),
                Err(msg) => failures.push(msg),
            }
        }
    }
    CriterionReport::new(5, "membership cross-validation", checked, failures)
}

/// Sampled words per saturation in criterion 6.
pub const SOUNDNESS_WORDS: usize = 200;

/// Criterion 6: every rule instance of every corpus saturation is sound
/// on sampled words, and the invertible rules are invertible.
pub fn local_soundness(c: &Corpus, rng: &mut ChaCha8Rng) -> CriterionReport {
    let mut failures = vec![];
    let mut checked = 0;
    for s in c.guarded_sequents() {
        let p = match saturate(&s.sequent, &s.alphabet) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("{}: {e}", s.text));
                continue;
            }
        };
        let formulas: BTreeSet<&Expr> = p.nodes.iter().flat_map(|n| n.sequent.formulas().map(|(_, e)| e)).collect();
        for _ in 0..SOUNDNESS_WORDS {
            let w = sample::word(rng, &s.alphabet, 3, 3);
            let eval = match Evaluator::new(&w, formulas.iter().copied()) {
                Ok(eval) => eval,
                Err(e) => {
                    failures.push(format!("{}: {e}", s.text));
                    break;
                }
            };
            let refuted = |offset: usize, q: &Sequent| {
                let holds = |e: &Expr| eval.holds_at(offset, e).expect("formula evaluated");
                q.lhs.iter().all(holds) && !q.rhs.iter().any(holds)
            };
            let next = w.next_offset(0);
            for n in 0..p.nodes.len() {
                let r = p.instance(n);
                let premiss_refuted = r.premisses.iter().enumerate().any(|(i, q)| match r.rule {
                    Rule::H(a) => w.letter_at(0) == a && refuted(next, q),
                    Rule::RightPartition => w.letter_at(0) == s.alphabet.letters()[i] && refuted(next, q),
                    _ => refuted(0, q),
                });
                let conclusion_refuted = refuted(0, &r.conclusion);
                let invertible = r.rule.is_logical() || matches!(r.rule, Rule::LetterPartition | Rule::RightPartition);
                checked += 1;
                if conclusion_refuted && !premiss_refuted {
                    failures.push(format!("{}: {} unsound at {} on {w}", s.text, r.rule, r.conclusion));
                } else if invertible && premiss_refuted && !conclusion_refuted {
                    failures.push(format!("{}: {} not invertible at {} on {w}", s.text, r.rule, r.conclusion));
                }
            }
        }
    }
    CriterionReport::new(6, "local soundness sampling", checked, failures)
}

/// Criterion 7: closures are no larger than their root and the default
/// colouring is valid on each.
pub fn structure(c: &Corpus) -> CriterionReport {
    let mut exprs: BTreeSet<(String, Expr)> = BTreeSet::new();
    for e in &c.expressions {
        exprs.insert((e.name.clone(), e.expr.clone()));
        exprs.insert((format!("{}^c", e.name), e.expr.complement(&e.alphabet)));
    }
    for s in &c.sequents {
        for (_, e) in s.sequent.formulas() {
            exprs.insert((e.to_string(), e.clone()));
        }
    }
    let mut failures = vec![];
    for (name, e) in &exprs {
        match fl_closure(e) {
            Ok(fl) => {
                if fl.len() > e.size() {
                    failures.push(format!("{name}: |FL| = {} > size {}", fl.len(), e.size()));
                }
                if let Err(msg) = default_coloring(&fl).validate() {
                    failures.push(format!("{name}: colouring: {msg}"));
                }
            }
            Err(err) => failures.push(format!("{name}: {err}")),
        }
    }
    CriterionReport::new(7, "structural bounds", exprs.len(), failures)
}
