use std::path::PathBuf;

use rll_core::proof::{
    build_trace_automaton, check, check_local, check_progress, check_progress_by_complement, CheckError, Progress,
    ProofGraph,
};

fn fixture(name: &str) -> ProofGraph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/corpus/proofs").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    ProofGraph::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

const ACCEPTED: [&str; 7] = [
    "nu_a_implies_i_a.prf",
    "f_a_cap_nu_a.prf",
    "f_a_implies_i_b.prf",
    "f_a_or_i_a.prf",
    "f_a_cap_f_b.prf",
    "mu_xx_nu_xx_mu_l.prf",
    "mu_xx_nu_xx_nu_r.prf",
];

const REJECTED: [&str; 2] = ["nu_xx_mu_xx_nu_l.prf", "nu_xx_mu_xx_mu_r.prf"];

#[test]
fn fixtures_are_proofs() {
    for name in ACCEPTED {
        let p = fixture(name);
        if let Err(e) = check(&p) {
            match e {
                CheckError::Local(v) => panic!("{name}: {v:#?}"),
                CheckError::Progress(l) => panic!("{name}: no progress on {}", l.describe(&p)),
            }
        }
        assert!(p.within_root_closure(), "{name}");
    }
}

#[test]
fn nu_xx_mu_xx_has_counter_branch() {
    for name in REJECTED {
        let p = fixture(name);
        check_local(&p).unwrap();
        let Progress::Counter(lasso) = check_progress(&p) else { panic!("expected a counter-branch") };
        assert!(lasso.is_branch_of(&p));
        let t = build_trace_automaton(&p);
        let stem: Vec<usize> = lasso.stem.iter().map(|s| t.letter(*s)).collect();
        let cycle: Vec<usize> = lasso.cycle.iter().map(|s| t.letter(*s)).collect();
        assert!(!t.buchi.accepts_lasso(&stem, &cycle));
        assert!(matches!(check(&p), Err(CheckError::Progress(_))));
    }
}

#[test]
fn complement_route_agrees() {
    for name in ACCEPTED.iter().chain(&REJECTED) {
        let p = fixture(name);
        if p.edge_count() > 12 {
            continue;
        }
        let ramsey = matches!(check_progress(&p), Progress::Progressing);
        let by_complement = check_progress_by_complement(&p);
        assert_eq!(ramsey, matches!(by_complement, Progress::Progressing), "{name}");
        if let Progress::Counter(l) = by_complement {
            assert!(l.is_branch_of(&p));
        }
    }
}

#[test]
fn text_round_trip() {
    for name in ACCEPTED.iter().chain(&REJECTED) {
        let p = fixture(name);
        let q = ProofGraph::parse(&p.to_text()).unwrap();
        assert_eq!(p.to_text(), q.to_text(), "{name}");
        assert_eq!(p.nodes.len(), q.nodes.len());
        assert_eq!(check(&p).is_ok(), check(&q).is_ok());
    }
}

/// Doubles the graph and routes every back-edge into the copy, so each
/// cycle is traversed twice before returning to the original.
fn unroll(p: &ProofGraph) -> ProofGraph {
    let n = p.nodes.len();
    let mut q = p.clone();
    for node in &p.nodes {
        let mut c = node.clone();
        c.id = format!("{}'", node.id);
        q.nodes.push(c);
    }
    for i in 0..n {
        for k in 0..p.nodes[i].children.len() {
            let j = p.nodes[i].children[k];
            if j <= i {
                q.nodes[i].children[k] = j + n;
                q.nodes[i + n].children[k] = j;
            } else {
                q.nodes[i + n].children[k] = j + n;
            }
        }
    }
    let reach = q.reachable();
    let keep: Vec<usize> = (0..q.nodes.len()).filter(|&i| reach[i]).collect();
    let mut map = vec![usize::MAX; q.nodes.len()];
    for (new, &old) in keep.iter().enumerate() {
        map[old] = new;
    }
    let nodes = keep
        .iter()
        .map(|&old| {
            let mut node = q.nodes[old].clone();
            node.children = node.children.iter().map(|&c| map[c]).collect();
            node
        })
        .collect();
    ProofGraph { alphabet: q.alphabet, nodes, root: map[q.root] }
}

#[test]
fn unrolling_preserves_verdict() {
    for name in ACCEPTED.iter().chain(&REJECTED) {
        let p = fixture(name);
        let q = unroll(&p);
        assert!(q.nodes.len() > p.nodes.len() || p.nodes.iter().all(|x| x.children.is_empty()));
        check_local(&q).unwrap();
        assert_eq!(
            matches!(check_progress(&p), Progress::Progressing),
            matches!(check_progress(&q), Progress::Progressing),
            "{name}"
        );
    }
}

#[test]
fn broken_rule_is_reported() {
    let text = "alphabet: ab\nroot n0\nnode n0: a T |- b T ; rule h_a ; children n1\nnode n1: T |- T ; rule T-r\n";
    let p = ProofGraph::parse(text).unwrap();
    assert!(matches!(check(&p), Err(CheckError::Local(_))));
}

#[test]
fn nu_a_mu_a_loop_is_rejected() {
    let text = "alphabet: ab\nlet g_a = nu X. a X\nlet m_a = mu X. a X\nroot n0\n\
        node n0: g_a |- m_a ; rule nu-l principal g_a ; children n1\n\
        node n1: a g_a |- m_a ; rule mu-r principal m_a ; children n2\n\
        node n2: a g_a |- a m_a ; rule h_a ; children n0\n";
    let p = ProofGraph::parse(text).unwrap();
    check_local(&p).unwrap();
    assert!(matches!(check_progress(&p), Progress::Counter(_)));
    assert!(matches!(check_progress_by_complement(&p), Progress::Counter(_)));
}
