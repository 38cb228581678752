use std::collections::{BTreeSet, HashMap, VecDeque};

/// A nondeterministic Büchi automaton over letters `0..num_letters`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Buchi {
    pub num_letters: usize,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
    /// Outgoing `(letter, target)` pairs per state.
    pub delta: Vec<Vec<(usize, usize)>>,
}

impl Buchi {
    pub fn new(num_letters: usize) -> Self {
        Buchi { num_letters, ..Default::default() }
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.delta.push(vec![]);
        self.accepting.len() - 1
    }

    pub fn add_transition(&mut self, from: usize, letter: usize, to: usize) {
        self.delta[from].push((letter, to));
    }

    pub fn len(&self) -> usize {
        self.accepting.len()
    }

    pub fn is_empty(&self) -> bool {
        self.accepting.is_empty()
    }

    pub fn successors(&self, q: usize, letter: usize) -> impl Iterator<Item = usize> + '_ {
        self.delta[q].iter().filter(move |&&(l, _)| l == letter).map(|&(_, t)| t)
    }

    /// Does the automaton accept `stem · cycle^ω`? `cycle` must be
    /// nonempty.
    pub fn accepts_lasso(&self, stem: &[usize], cycle: &[usize]) -> bool {
        assert!(!cycle.is_empty(), "empty cycle");
        // nodes: (state, position) with positions stem.len() + k wrapping
        let word_len = stem.len() + cycle.len();
        let next_pos = |i: usize| if i + 1 < word_len { i + 1 } else { stem.len() };
        let letter = |i: usize| if i < stem.len() { stem[i] } else { cycle[i - stem.len()] };
        let id = |q: usize, i: usize| q * word_len + i;
        let n = self.len() * word_len;
        let mut succ = vec![vec![]; n];
        for q in 0..self.len() {
            for i in 0..word_len {
                for t in self.successors(q, letter(i)) {
                    succ[id(q, i)].push(id(t, next_pos(i)));
                }
            }
        }
        let mut reach = vec![false; n];
        let mut stack: Vec<usize> = self.initial.iter().map(|&q| id(q, 0)).collect();
        for &v in &stack {
            reach[v] = true;
        }
        while let Some(v) = stack.pop() {
            for &w in &succ[v] {
                if !reach[w] {
                    reach[w] = true;
                    stack.push(w);
                }
            }
        }
        // an accepting reachable node lying on a cycle
        (0..n).any(|v| reach[v] && self.accepting[v / word_len] && on_cycle(&succ, v))
    }

    /// A reachable accepting lasso as `(stem letters, cycle letters)`, or
    /// `None` when the language is empty.
    pub fn find_accepting_lasso(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let (parent, order) = self.bfs_tree(&self.initial);
        for &q in &order {
            if !self.accepting[q] {
                continue;
            }
            if let Some(cycle) = self.cycle_through(q) {
                let mut stem = vec![];
                let mut v = q;
                while let Some((p, l)) = parent[v] {
                    stem.push(l);
                    v = p;
                }
                stem.reverse();
                return Some((stem, cycle));
            }
        }
        None
    }

    fn bfs_tree(&self, from: &[usize]) -> (Vec<Option<(usize, usize)>>, Vec<usize>) {
        let mut parent = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        let mut order = vec![];
        let mut queue = VecDeque::new();
        for &q in from {
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &(l, t) in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, l));
                    queue.push_back(t);
                }
            }
        }
        (parent, order)
    }

    /// Letters of a shortest nonempty path from `q` back to `q`.
    fn cycle_through(&self, q: usize) -> Option<Vec<usize>> {
        let mut parent: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut queue = VecDeque::new();
        for &(l, t) in &self.delta[q] {
            if t == q {
                return Some(vec![l]);
            }
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t) {
                e.insert((q, l));
                queue.push_back(t);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &(l, t) in &self.delta[v] {
                if t == q {
                    let mut letters = vec![l];
                    let mut x = v;
                    while x != q {
                        let (p, pl) = parent[&x];
                        letters.push(pl);
                        x = p;
                    }
                    letters.reverse();
                    return Some(letters);
                }
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t) {
                    e.insert((v, l));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Synchronous product; a product state accepts iff its right
    /// component does, which is enough when every state of `self`
    /// accepts.
    pub fn product_right_acceptance(&self, other: &Buchi) -> Buchi {
        assert_eq!(self.num_letters, other.num_letters);
        let mut out = Buchi::new(self.num_letters);
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut pairs = vec![];
        for &p in &self.initial {
            for &q in &other.initial {
                let id = out.add_state(other.accepting[q]);
                index.insert((p, q), id);
                pairs.push((p, q));
                out.initial.push(id);
                queue.push_back(id);
            }
        }
        while let Some(id) = queue.pop_front() {
            let (p, q) = pairs[id];
            for &(l, p2) in &self.delta[p] {
                for q2 in other.successors(q, l).collect::<Vec<_>>() {
                    let t = match index.get(&(p2, q2)) {
                        Some(&t) => t,
                        None => {
                            let t = out.add_state(other.accepting[q2]);
                            index.insert((p2, q2), t);
                            pairs.push((p2, q2));
                            queue.push_back(t);
                            t
                        }
                    };
                    out.add_transition(id, l, t);
                }
            }
        }
        out
    }
}

fn on_cycle(succ: &[Vec<usize>], v: usize) -> bool {
    let mut seen = vec![false; succ.len()];
    let mut stack = succ[v].clone();
    while let Some(w) = stack.pop() {
        if w == v {
            return true;
        }
        if !seen[w] {
            seen[w] = true;
            stack.extend(succ[w].iter().copied());
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum CState {
    /// Subset phase: the set of reachable states.
    Subset(BTreeSet<usize>),
    /// Ranking phase: a tight level ranking (rank per state, `None` off
    /// the current set), the states still owing a visit to an odd rank,
    /// and the fixed maximal odd rank.
    Ranked { f: Vec<Option<u32>>, owing: BTreeSet<usize>, max_odd: u32 },
}

/// Rank-based complement: a subset phase followed by a guessed switch to
/// tight level rankings (rank bound `2n - 1`) with a breakpoint set.
pub fn complement_buchi(b: &Buchi) -> Buchi {
    let n = b.len();
    let mut out = Buchi::new(b.num_letters);
    let mut index: HashMap<CState, usize> = HashMap::new();
    let mut states: Vec<CState> = vec![];
    let mut queue = VecDeque::new();
    let accepting = |s: &CState| matches!(s, CState::Ranked { owing, .. } if owing.is_empty());
    let mut intern = |s: CState, out: &mut Buchi, queue: &mut VecDeque<usize>, states: &mut Vec<CState>| -> usize {
        if let Some(&id) = index.get(&s) {
            return id;
        }
        let id = out.add_state(accepting(&s));
        index.insert(s.clone(), id);
        states.push(s);
        queue.push_back(id);
        id
    };
    let init = CState::Subset(b.initial.iter().copied().collect());
    let id0 = intern(init, &mut out, &mut queue, &mut states);
    out.initial.push(id0);
    while let Some(id) = queue.pop_front() {
        let s = states[id].clone();
        for l in 0..b.num_letters {
            let targets: Vec<CState> = match &s {
                CState::Subset(set) => {
                    let next: BTreeSet<usize> = set.iter().flat_map(|&q| b.successors(q, l)).collect();
                    let mut ts = vec![CState::Subset(next.clone())];
                    for (f, max_odd) in tight_rankings(b, &next, None, 2 * n as u32) {
                        ts.push(CState::Ranked { f, owing: BTreeSet::new(), max_odd });
                    }
                    ts
                }
                CState::Ranked { f, owing, max_odd } => {
                    let mut bound: Vec<Option<u32>> = vec![None; n];
                    for (q, rank) in f.iter().enumerate() {
                        if let Some(r) = *rank {
                            for t in b.successors(q, l) {
                                bound[t] = Some(bound[t].map_or(r, |x: u32| x.min(r)));
                            }
                        }
                    }
                    let next: BTreeSet<usize> = (0..n).filter(|&q| bound[q].is_some()).collect();
                    let owing_next: BTreeSet<usize> = if owing.is_empty() {
                        next.clone()
                    } else {
                        owing.iter().flat_map(|&q| b.successors(q, l)).collect()
                    };
                    tight_rankings(b, &next, Some((&bound, *max_odd)), 2 * n as u32)
                        .into_iter()
                        .map(|(f2, m)| {
                            let o = owing_next.iter().copied().filter(|&q| f2[q].is_some_and(|r| r % 2 == 0)).collect();
                            CState::Ranked { f: f2, owing: o, max_odd: m }
                        })
                        .collect()
                }
            };
            for t in targets {
                let tid = intern(t, &mut out, &mut queue, &mut states);
                out.add_transition(id, l, tid);
            }
        }
    }
    out
}

/// All tight rankings of `set`: accepting states get even ranks, the
/// largest rank is odd and every odd rank below it is used. With
/// `constraint = (bound, r)` ranks are capped per state and the maximal
/// odd rank must equal `r`; otherwise ranks stay below `limit`. The empty
/// set has the single empty ranking with maximal rank 0.
fn tight_rankings(
    b: &Buchi,
    set: &BTreeSet<usize>,
    constraint: Option<(&[Option<u32>], u32)>,
    limit: u32,
) -> Vec<(Vec<Option<u32>>, u32)> {
    let n = b.len();
    let members: Vec<usize> = set.iter().copied().collect();
    if members.is_empty() {
        return match constraint {
            Some((_, r)) if r != 0 => vec![],
            _ => vec![(vec![None; n], 0)],
        };
    }
    let cap = |q: usize| -> u32 {
        match constraint {
            Some((bound, r)) => bound[q].unwrap_or(0).min(r),
            None => (limit - 1).min(2 * members.len() as u32 - 1),
        }
    };
    let mut out = vec![];
    let mut f = vec![None; n];
    fn go(
        b: &Buchi,
        members: &[usize],
        k: usize,
        f: &mut Vec<Option<u32>>,
        cap: &dyn Fn(usize) -> u32,
        fixed: Option<u32>,
        out: &mut Vec<(Vec<Option<u32>>, u32)>,
    ) {
        if k == members.len() {
            let max = f.iter().flatten().copied().max().unwrap_or(0);
            if max % 2 == 0 || fixed.is_some_and(|r| r != max) {
                return;
            }
            let used: BTreeSet<u32> = f.iter().flatten().copied().collect();
            if (1..=max).step_by(2).all(|r| used.contains(&r)) {
                out.push((f.clone(), max));
            }
            return;
        }
        let q = members[k];
        for r in 0..=cap(q) {
            if b.accepting[q] && r % 2 == 1 {
                continue;
            }
            f[q] = Some(r);
            go(b, members, k + 1, f, cap, fixed, out);
        }
        f[q] = None;
    }
    go(b, &members, 0, &mut f, &cap, constraint.map(|(_, r)| r), &mut out);
    out
}
