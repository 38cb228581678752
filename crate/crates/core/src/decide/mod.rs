//! Decision procedure for guarded sequents: saturate the canonical
//! proof-search strategy into a regular preproof, then either accept it
//! or read a countermodel off a branch without progress.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::calculus::{Rule, RuleInstance, RuleViolation, Sequent, Side};
use crate::expr::{Alphabet, Expr, Letter};
use crate::proof::{check_progress, Lasso, Progress, ProofGraph, ProofNode};
use crate::semantics::{Evaluator, SemanticsError, UPWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("`{formula}` is not guarded; the decision procedure is complete for guarded expressions only")]
    Unguarded { formula: String },
    #[error("`{formula}` is not closed")]
    Open { formula: String },
    #[error("letter `{letter}` is not in the alphabet {alphabet}")]
    ForeignLetter { letter: Letter, alphabet: Alphabet },
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<RuleViolation> for DecideError {
    fn from(e: RuleViolation) -> Self {
        DecideError::Internal(format!("strategy produced an invalid step: {e}"))
    }
}

impl From<SemanticsError> for DecideError {
    fn from(e: SemanticsError) -> Self {
        DecideError::Internal(format!("countermodel verification failed: {e}"))
    }
}

#[derive(Clone, Debug)]
pub enum Decision {
    Proved(ProofGraph),
    Refuted(UPWord),
}

fn require_guarded(s: &Sequent, alphabet: &Alphabet) -> Result<(), DecideError> {
    for (_, e) in s.formulas() {
        if !e.is_closed() {
            return Err(DecideError::Open { formula: e.to_string() });
        }
        if !e.is_guarded().unwrap_or(false) {
            return Err(DecideError::Unguarded { formula: e.to_string() });
        }
        if let Some(&letter) = e.letters().iter().find(|a| !alphabet.contains(**a)) {
            return Err(DecideError::ForeignLetter { letter, alphabet: alphabet.clone() });
        }
    }
    Ok(())
}

fn weaken(s: &Sequent, side: Side, e: &Expr, alphabet: &Alphabet) -> Result<RuleInstance, DecideError> {
    let rule = if side == Side::Left { Rule::WeakenL } else { Rule::WeakenR };
    Ok(RuleInstance::apply(rule, s, Some(e), alphabet)?)
}

/// The step the canonical strategy takes at `s`. Logical rules come
/// first, on the least principal formula. Once every formula is
/// letter-headed: two distinct left heads are isolated by weakening and
/// closed by `l-p`; a left side headed by a single letter `a` has the
/// right formulas not headed by `a` weakened away, then `h_a`; an empty
/// left side gets `r-p`.
pub fn strategy_step(s: &Sequent, alphabet: &Alphabet) -> Result<RuleInstance, DecideError> {
    for (side, e) in s.formulas() {
        if let Some(rule) = Rule::logical_for(side, e) {
            return Ok(RuleInstance::apply(rule, s, Some(e), alphabet)?);
        }
    }
    let head = |e: &Expr| e.head_letter().map(|(a, _)| a).expect("letter-headed after the logical phase");
    let Some(first) = s.lhs.iter().next() else {
        return Ok(RuleInstance::apply(Rule::RightPartition, s, None, alphabet)?);
    };
    let a = head(first);
    if let Some(second) = s.lhs.iter().find(|e| head(e) != a) {
        if let Some(e) = s.lhs.iter().find(|e| *e != first && *e != second) {
            return weaken(s, Side::Left, e, alphabet);
        }
        if let Some(e) = s.rhs.iter().next() {
            return weaken(s, Side::Right, e, alphabet);
        }
        return Ok(RuleInstance::apply(Rule::LetterPartition, s, None, alphabet)?);
    }
    if let Some(e) = s.rhs.iter().find(|e| head(e) != a) {
        return weaken(s, Side::Right, e, alphabet);
    }
    Ok(RuleInstance::apply(Rule::H(a), s, None, alphabet)?)
}

/// Applies [`strategy_step`] at every open leaf, breadth-first, turning
/// repeated sequents into back-edges. Node `n{k}` is the `k`-th distinct
/// sequent discovered.
pub fn saturate(s: &Sequent, alphabet: &Alphabet) -> Result<ProofGraph, DecideError> {
    require_guarded(s, alphabet)?;
    let mut memo: HashMap<Sequent, usize> = HashMap::new();
    let mut nodes: Vec<ProofNode> = vec![];
    let mut queue = VecDeque::new();
    let mut intern = |seq: &Sequent, nodes: &mut Vec<ProofNode>, queue: &mut VecDeque<usize>| -> usize {
        if let Some(&i) = memo.get(seq) {
            return i;
        }
        let i = nodes.len();
        memo.insert(seq.clone(), i);
        nodes.push(ProofNode {
            id: format!("n{i}"),
            sequent: seq.clone(),
            rule: Rule::WeakenL,
            principal: None,
            children: vec![],
        });
        queue.push_back(i);
        i
    };
    intern(s, &mut nodes, &mut queue);
    while let Some(i) = queue.pop_front() {
        let step = strategy_step(&nodes[i].sequent, alphabet)?;
        let children = step.premisses.iter().map(|p| intern(p, &mut nodes, &mut queue)).collect();
        let node = &mut nodes[i];
        node.rule = step.rule;
        node.principal = step.principal;
        node.children = children;
    }
    Ok(ProofGraph { alphabet: alphabet.clone(), nodes, root: 0 })
}

/// The word spelled by the letter steps of a branch: `h_a` reads `a`,
/// the `i`-th premiss of `r-p` reads the `i`-th letter.
pub fn extract_countermodel(p: &ProofGraph, l: &Lasso) -> Result<UPWord, DecideError> {
    let read = |steps: &[crate::proof::Step]| -> Vec<Letter> {
        steps
            .iter()
            .filter_map(|s| match p.nodes[s.node].rule {
                Rule::H(a) => Some(a),
                Rule::RightPartition => Some(p.alphabet.letters()[s.child]),
                _ => None,
            })
            .collect()
    };
    let stem = read(&l.stem);
    let cycle = read(&l.cycle);
    if cycle.is_empty() {
        return Err(DecideError::Internal(format!("cycle {} reads no letter", l.describe(p))));
    }
    Ok(UPWord::new(stem, cycle, &p.alphabet)?)
}

/// Does `w` satisfy every left formula and no right formula of `s`?
pub fn refutes(w: &UPWord, s: &Sequent) -> Result<bool, SemanticsError> {
    let eval = Evaluator::new(w, s.formulas().map(|(_, e)| e))?;
    let holds = |e: &Expr| eval.holds(e).expect("formula was evaluated");
    Ok(s.lhs.iter().all(holds) && !s.rhs.iter().any(holds))
}

/// Decides `s`, returning a proof or a verified countermodel.
pub fn decide(s: &Sequent, alphabet: &Alphabet) -> Result<Decision, DecideError> {
    let p = saturate(s, alphabet)?;
    match check_progress(&p) {
        Progress::Progressing => Ok(Decision::Proved(p)),
        Progress::Counter(l) => {
            let w = extract_countermodel(&p, &l)?;
            if !refutes(&w, s)? {
                return Err(DecideError::Internal(format!("extracted word {w} does not refute {s}")));
            }
            Ok(Decision::Refuted(w))
        }
    }
}
