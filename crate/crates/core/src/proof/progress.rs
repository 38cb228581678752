use std::collections::{HashMap, VecDeque};

use super::buchi::complement_buchi;
use super::buchi::Buchi;
use super::trace::{build_trace_automaton, TraceAutomaton};
use super::{Lasso, ProofGraph, Step};

/// Outcome of the global progress check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Progress {
    Progressing,
    /// A branch without a progressing trace.
    Counter(Lasso),
}

/// A relation between the trace states of two proof nodes, summarising a
/// finite path: `reach` holds when a run connects the two states, `acc`
/// when some such run passes an accepting state (counting every position
/// of the path except the last).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Matrix {
    rows: usize,
    words: usize,
    reach: Vec<u64>,
    acc: Vec<u64>,
}

impl Matrix {
    fn empty(rows: usize, cols: usize) -> Matrix {
        let words = cols.div_ceil(64).max(1);
        Matrix { rows, words, reach: vec![0; rows * words], acc: vec![0; rows * words] }
    }

    fn set(&mut self, r: usize, c: usize, acc: bool) {
        let (w, b) = (r * self.words + c / 64, 1u64 << (c % 64));
        self.reach[w] |= b;
        if acc {
            self.acc[w] |= b;
        }
    }

    fn reach(&self, r: usize, c: usize) -> bool {
        self.reach[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    fn acc(&self, r: usize, c: usize) -> bool {
        self.acc[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    fn compose(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix {
            rows: self.rows,
            words: other.words,
            reach: vec![0; self.rows * other.words],
            acc: vec![0; self.rows * other.words],
        };
        let mid = other.rows;
        for r in 0..self.rows {
            let dst = r * other.words;
            for s in 0..mid {
                if !self.reach(r, s) {
                    continue;
                }
                let src = s * other.words;
                let via_acc = self.acc(r, s);
                for k in 0..other.words {
                    out.reach[dst + k] |= other.reach[src + k];
                    out.acc[dst + k] |= if via_acc { other.reach[src + k] } else { other.acc[src + k] };
                }
            }
        }
        out
    }
}

/// Summaries of paths from one source, per target node, with parent
/// pointers for witness reconstruction.
struct Closure {
    boxes: Vec<Vec<Matrix>>,
    index: Vec<HashMap<Matrix, usize>>,
    parent: Vec<Vec<Option<(usize, usize, usize)>>>,
}

impl Closure {
    fn new(nodes: usize) -> Closure {
        Closure { boxes: vec![vec![]; nodes], index: vec![HashMap::new(); nodes], parent: vec![vec![]; nodes] }
    }

    fn insert(&mut self, node: usize, m: Matrix, parent: Option<(usize, usize, usize)>) -> Option<usize> {
        if self.index[node].contains_key(&m) {
            return None;
        }
        let i = self.boxes[node].len();
        self.index[node].insert(m.clone(), i);
        self.boxes[node].push(m);
        self.parent[node].push(parent);
        Some(i)
    }

    /// Steps of the path that produced box `i` at `node`.
    fn path(&self, p: &ProofGraph, mut node: usize, mut i: usize) -> Vec<Step> {
        let mut steps = vec![];
        while let Some((pn, pi, child)) = self.parent[node][i] {
            steps.push(Step { node: pn, child });
            debug_assert_eq!(p.nodes[pn].children[child], node);
            node = pn;
            i = pi;
        }
        steps.reverse();
        steps
    }
}

struct Layout {
    local: Vec<usize>,
    per_node: Vec<usize>,
}

fn layout(p: &ProofGraph, ta: &TraceAutomaton) -> Layout {
    let mut per_node = vec![0; p.nodes.len()];
    let mut local = vec![0; ta.states.len()];
    for (q, s) in ta.states.iter().enumerate() {
        local[q] = per_node[s.node()];
        per_node[s.node()] += 1;
    }
    Layout { local, per_node }
}

fn edge_matrix(p: &ProofGraph, ta: &TraceAutomaton, lay: &Layout, s: Step) -> Matrix {
    let m = p.target(s);
    let mut out = Matrix::empty(lay.per_node[s.node], lay.per_node[m]);
    let letter = ta.letter(s);
    for (q, st) in ta.states.iter().enumerate() {
        if st.node() != s.node {
            continue;
        }
        for t in ta.buchi.successors(q, letter) {
            out.set(lay.local[q], lay.local[t], ta.buchi.accepting[q]);
        }
    }
    out
}

/// Strongly connected component id per node (Tarjan, iterative).
fn sccs(p: &ProofGraph) -> Vec<usize> {
    let n = p.nodes.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = vec![];
    let mut next = 0;
    let mut ncomp = 0;
    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(start, 0)];
        index[start] = next;
        low[start] = next;
        next += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(&mut (v, ref mut k)) = call.last_mut() {
            if *k < p.nodes[v].children.len() {
                let w = p.nodes[v].children[*k];
                *k += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("scc stack");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

/// Decides whether every infinite branch of `p` carries a progressing
/// trace, by a Ramsey-style closure over path summaries of the trace
/// automaton. A branch `u·v^ω` with summaries `g` of `u` and idempotent
/// `h` of `v` satisfying `g·h = g` has a progressing trace iff some
/// initial state reaches through `g` a state looping through `h` with an
/// accepting visit; any failing pair yields the counter-branch.
pub fn check_progress(p: &ProofGraph) -> Progress {
    let ta = build_trace_automaton(p);
    let lay = layout(p, &ta);
    let n = p.nodes.len();
    let edge: Vec<Vec<Matrix>> = (0..n)
        .map(|v| {
            (0..p.nodes[v].children.len()).map(|c| edge_matrix(p, &ta, &lay, Step { node: v, child: c })).collect()
        })
        .collect();

    // summaries of stems, rows restricted to initial states
    let mut stems = Closure::new(n);
    let mut start = Matrix::empty(ta.buchi.initial.len(), lay.per_node[p.root]);
    for (r, &q) in ta.buchi.initial.iter().enumerate() {
        start.set(r, lay.local[q], false);
    }
    stems.insert(p.root, start, None);
    let mut queue = VecDeque::from([(p.root, 0usize)]);
    while let Some((v, i)) = queue.pop_front() {
        for (c, &w) in p.nodes[v].children.iter().enumerate() {
            let m = stems.boxes[v][i].compose(&edge[v][c]);
            if let Some(j) = stems.insert(w, m, Some((v, i, c))) {
                queue.push_back((w, j));
            }
        }
    }

    let comp = sccs(p);
    for v in 0..n {
        if stems.boxes[v].is_empty() {
            continue;
        }
        // summaries of nonempty paths from v staying in its component
        let mut loops = Closure::new(n);
        let mut queue = VecDeque::new();
        for (c, &w) in p.nodes[v].children.iter().enumerate() {
            if comp[w] == comp[v] {
                if let Some(j) = loops.insert(w, edge[v][c].clone(), Some((v, usize::MAX, c))) {
                    queue.push_back((w, j));
                }
            }
        }
        while let Some((x, i)) = queue.pop_front() {
            for (c, &w) in p.nodes[x].children.iter().enumerate() {
                if comp[w] != comp[v] {
                    continue;
                }
                let m = loops.boxes[x][i].compose(&edge[x][c]);
                if let Some(j) = loops.insert(w, m, Some((x, i, c))) {
                    queue.push_back((w, j));
                }
            }
        }
        for (hi, h) in loops.boxes[v].iter().enumerate() {
            if h.compose(h) != *h {
                continue;
            }
            for (gi, g) in stems.boxes[v].iter().enumerate() {
                if g.compose(h) != *g {
                    continue;
                }
                let accepted = (0..g.rows).any(|r| (0..lay.per_node[v]).any(|q| g.reach(r, q) && h.acc(q, q)));
                if !accepted {
                    let stem = stems.path(p, v, gi);
                    let cycle = loop_path(p, &loops, v, hi);
                    return Progress::Counter(Lasso { stem, cycle });
                }
            }
        }
    }
    Progress::Progressing
}

fn loop_path(p: &ProofGraph, loops: &Closure, v: usize, i: usize) -> Vec<Step> {
    let mut steps = vec![];
    let (mut node, mut idx) = (v, i);
    loop {
        let (pn, pi, child) = loops.parent[node][idx].expect("loop parent");
        steps.push(Step { node: pn, child });
        debug_assert_eq!(p.nodes[pn].children[child], node);
        if pi == usize::MAX {
            break;
        }
        node = pn;
        idx = pi;
    }
    steps.reverse();
    steps
}

/// The same decision through explicit complementation: the branch
/// automaton of `p` intersected with the rank-based complement of the
/// trace automaton is empty iff `p` is progressing. Exponential; meant
/// for small proofs.
pub fn check_progress_by_complement(p: &ProofGraph) -> Progress {
    let ta = build_trace_automaton(p);
    let mut branches = Buchi::new(ta.letters.len());
    for _ in &p.nodes {
        branches.add_state(true);
    }
    branches.initial.push(p.root);
    for (l, s) in ta.letters.iter().enumerate() {
        branches.add_transition(s.node, l, p.target(*s));
    }
    let product = branches.product_right_acceptance(&complement_buchi(&ta.buchi));
    match product.find_accepting_lasso() {
        None => Progress::Progressing,
        Some((stem, cycle)) => Progress::Counter(Lasso {
            stem: stem.into_iter().map(|l| ta.letters[l]).collect(),
            cycle: cycle.into_iter().map(|l| ta.letters[l]).collect(),
        }),
    }
}
