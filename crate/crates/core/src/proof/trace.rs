use std::collections::{HashMap, VecDeque};

use crate::calculus::{immediate_ancestry, Side};
use crate::expr::Expr;

use super::buchi::Buchi;
use super::{ProofGraph, Step};

/// A state of the trace automaton at some proof node: either still
/// waiting for a trace to start, or following a trace on one side whose
/// critical formula has been fixed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TraceState {
    Wait { node: usize },
    Track { node: usize, side: Side, formula: Expr, critical: Expr },
}

impl TraceState {
    pub fn node(&self) -> usize {
        match self {
            TraceState::Wait { node } | TraceState::Track { node, .. } => *node,
        }
    }
}

/// Büchi automaton over the edges of a proof graph accepting exactly the
/// branches that carry a progressing trace.
#[derive(Clone, Debug)]
pub struct TraceAutomaton {
    pub buchi: Buchi,
    pub states: Vec<TraceState>,
    /// Letter `i` is the proof edge `letters[i]`.
    pub letters: Vec<Step>,
    letter_base: Vec<usize>,
}

impl TraceAutomaton {
    pub fn letter(&self, s: Step) -> usize {
        self.letter_base[s.node] + s.child
    }
}

fn can_progress(side: Side, e: &Expr) -> bool {
    matches!((side, e), (Side::Left, Expr::Mu(_)) | (Side::Right, Expr::Nu(_)))
}

/// Builds the trace automaton. A run commits to a critical formula `c`
/// (a μ-formula on the left or a ν-formula on the right) when the trace
/// reaches it, dies when a proper subformula of `c` is principal on the
/// trace, and accepts whenever `c` itself is principal.
pub fn build_trace_automaton(p: &ProofGraph) -> TraceAutomaton {
    let mut letters = vec![];
    let mut letter_base = vec![];
    for (n, node) in p.nodes.iter().enumerate() {
        letter_base.push(letters.len());
        letters.extend((0..node.children.len()).map(|child| Step { node: n, child }));
    }
    // (premiss, side, conclusion formula) -> premiss formulas, per node
    let ancestry: Vec<HashMap<(usize, Side, Expr), Vec<Expr>>> = (0..p.nodes.len())
        .map(|n| {
            let mut m: HashMap<(usize, Side, Expr), Vec<Expr>> = HashMap::new();
            for e in immediate_ancestry(&p.instance(n), &p.alphabet) {
                m.entry((e.premiss, e.side, e.conclusion_formula)).or_default().push(e.premiss_formula);
            }
            m
        })
        .collect();
    let principal = |n: usize| -> Option<(Side, &Expr)> {
        let node = &p.nodes[n];
        Some((node.rule.principal_side()?, node.principal.as_ref()?))
    };
    let starts = |n: usize| -> Vec<TraceState> {
        p.nodes[n]
            .sequent
            .formulas()
            .filter(|(side, e)| can_progress(*side, e))
            .map(|(side, e)| TraceState::Track { node: n, side, formula: e.clone(), critical: e.clone() })
            .collect()
    };

    let mut buchi = Buchi::new(letters.len());
    let mut states: Vec<TraceState> = vec![];
    let mut index: HashMap<TraceState, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |s: TraceState, buchi: &mut Buchi, states: &mut Vec<TraceState>, queue: &mut VecDeque<usize>| {
        if let Some(&id) = index.get(&s) {
            return id;
        }
        let accepting = match &s {
            TraceState::Track { node, side, formula, critical } => {
                formula == critical && principal(*node) == Some((*side, critical))
            }
            TraceState::Wait { .. } => false,
        };
        let id = buchi.add_state(accepting);
        index.insert(s.clone(), id);
        states.push(s);
        queue.push_back(id);
        id
    };
    let mut initial = vec![TraceState::Wait { node: p.root }];
    initial.extend(starts(p.root));
    for s in initial {
        let id = intern(s, &mut buchi, &mut states, &mut queue);
        buchi.initial.push(id);
    }
    while let Some(id) = queue.pop_front() {
        let s = states[id].clone();
        let n = s.node();
        for (child, &m) in p.nodes[n].children.iter().enumerate() {
            let letter = letter_base[n] + child;
            let targets: Vec<TraceState> = match &s {
                TraceState::Wait { .. } => {
                    let mut ts = vec![TraceState::Wait { node: m }];
                    ts.extend(starts(m));
                    ts
                }
                TraceState::Track { side, formula, critical, .. } => {
                    if principal(n) == Some((*side, formula))
                        && formula != critical
                        && formula.is_subformula_of(critical)
                    {
                        vec![]
                    } else {
                        ancestry[n]
                            .get(&(child, *side, formula.clone()))
                            .into_iter()
                            .flatten()
                            .map(|g| TraceState::Track {
                                node: m,
                                side: *side,
                                formula: g.clone(),
                                critical: critical.clone(),
                            })
                            .collect()
                    }
                }
            };
            for t in targets {
                let tid = intern(t, &mut buchi, &mut states, &mut queue);
                buchi.add_transition(id, letter, tid);
            }
        }
    }
    TraceAutomaton { buchi, states, letters, letter_base }
}
