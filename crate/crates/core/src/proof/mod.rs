//! Cyclic preproofs as finite graphs: local checking and the global
//! progress condition.

mod buchi;
mod format;
mod progress;
mod trace;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::calculus::{validate_instance, Rule, RuleInstance, RuleViolation, Sequent};
use crate::expr::{Alphabet, Expr, FlClosure};

pub use buchi::{complement_buchi, Buchi};
pub use format::ProofParseError;
pub use progress::{check_progress, check_progress_by_complement, Progress};
pub use trace::{build_trace_automaton, TraceAutomaton, TraceState};

/// A node of a proof graph: a sequent, the rule concluding it, and its
/// premisses as child node indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub id: String,
    pub sequent: Sequent,
    pub rule: Rule,
    pub principal: Option<Expr>,
    pub children: Vec<usize>,
}

/// A regular preproof. Back edges are ordinary child references.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofGraph {
    pub alphabet: Alphabet,
    pub nodes: Vec<ProofNode>,
    pub root: usize,
}

/// One edge of a proof graph: `node` to its premiss number `child`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub node: usize,
    pub child: usize,
}

/// The infinite branch `stem · cycle^ω`, as edges. The stem starts at
/// the root and the cycle returns to its own start.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub stem: Vec<Step>,
    pub cycle: Vec<Step>,
}

impl ProofGraph {
    pub fn instance(&self, n: usize) -> RuleInstance {
        let node = &self.nodes[n];
        RuleInstance {
            rule: node.rule,
            conclusion: node.sequent.clone(),
            principal: node.principal.clone(),
            premisses: node.children.iter().map(|&c| self.nodes[c].sequent.clone()).collect(),
        }
    }

    pub fn target(&self, s: Step) -> usize {
        self.nodes[s.node].children[s.child]
    }

    pub fn root_sequent(&self) -> &Sequent {
        &self.nodes[self.root].sequent
    }

    pub fn node_by_id(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().map(|n| n.children.len()).sum()
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        seen[self.root] = true;
        while let Some(n) = stack.pop() {
            for &c in &self.nodes[n].children {
                if !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        seen
    }

    /// Do all formulas of the graph lie in the closure of the root
    /// sequent?
    pub fn within_root_closure(&self) -> bool {
        let Ok(fl) = FlClosure::of_many(self.root_sequent().formulas().map(|(_, e)| e)) else {
            return false;
        };
        self.nodes.iter().all(|n| n.sequent.formulas().all(|(_, e)| fl.contains(e)))
    }
}

impl Lasso {
    /// Is this a branch of `p`?
    pub fn is_branch_of(&self, p: &ProofGraph) -> bool {
        if self.cycle.is_empty() {
            return false;
        }
        let mut at = p.root;
        for s in self.stem.iter().chain(&self.cycle) {
            if s.node != at || s.child >= p.nodes[at].children.len() {
                return false;
            }
            at = p.target(*s);
        }
        at == self.cycle[0].node
    }

    /// Node ids along the lasso, e.g. `n0 n1 [n2 n3]`.
    pub fn describe(&self, p: &ProofGraph) -> String {
        let ids = |steps: &[Step]| steps.iter().map(|s| p.nodes[s.node].id.clone()).collect::<Vec<_>>().join(" ");
        let stem = ids(&self.stem);
        if stem.is_empty() {
            format!("[{}]", ids(&self.cycle))
        } else {
            format!("{stem} [{}]", ids(&self.cycle))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalViolation {
    #[error("node {node}: {source}")]
    Rule { node: String, source: RuleViolation },
    #[error("node {node}: formula {formula} is open")]
    Open { node: String, formula: String },
    #[error("node {node}: unreachable from the root")]
    Unreachable { node: String },
}

/// Checks every node against its rule schema.
pub fn check_local(p: &ProofGraph) -> Result<(), Vec<LocalViolation>> {
    let mut out = vec![];
    let reachable = p.reachable();
    for (n, node) in p.nodes.iter().enumerate() {
        if !reachable[n] {
            out.push(LocalViolation::Unreachable { node: node.id.clone() });
        }
        let open: BTreeSet<String> =
            node.sequent.formulas().filter(|(_, e)| !e.is_closed()).map(|(_, e)| e.to_string()).collect();
        for formula in open {
            out.push(LocalViolation::Open { node: node.id.clone(), formula });
        }
        if let Err(source) = validate_instance(&p.instance(n), &p.alphabet) {
            out.push(LocalViolation::Rule { node: node.id.clone(), source });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("{} local violation(s), first: {}", .0.len(), .0[0])]
    Local(Vec<LocalViolation>),
    #[error("not progressing")]
    Progress(Lasso),
}

/// A proof is a locally correct, progressing preproof.
pub fn check(p: &ProofGraph) -> Result<(), CheckError> {
    check_local(p).map_err(CheckError::Local)?;
    match check_progress(p) {
        Progress::Progressing => Ok(()),
        Progress::Counter(l) => Err(CheckError::Progress(l)),
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.node, self.child)
    }
}
