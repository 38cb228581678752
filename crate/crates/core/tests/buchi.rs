mod common;

use common::rng;
use rand::Rng;
use rll_core::proof::{complement_buchi, Buchi};

/// Lasso acceptance through the summary relation of one loop iteration:
/// `(reach, acc)` over state pairs, closed transitively.
fn oracle_accepts(b: &Buchi, stem: &[usize], cycle: &[usize]) -> bool {
    let n = b.len();
    let step = |from: &[bool], letter: usize| -> Vec<bool> {
        let mut out = vec![false; n];
        for q in (0..n).filter(|&q| from[q]) {
            for t in b.successors(q, letter) {
                out[t] = true;
            }
        }
        out
    };
    let mut cur = vec![false; n];
    for &q in &b.initial {
        cur[q] = true;
    }
    for &a in stem {
        cur = step(&cur, a);
    }
    // summary of one pass through the cycle: reach[p][q], acc[p][q]
    let mut reach = vec![vec![false; n]; n];
    let mut acc = vec![vec![false; n]; n];
    for p in 0..n {
        // (state, visited accepting) frontier
        let mut front: Vec<(usize, bool)> = vec![(p, b.accepting[p])];
        for &a in cycle {
            let mut next = vec![];
            for &(q, seen) in &front {
                for t in b.successors(q, a) {
                    let item = (t, seen || b.accepting[t]);
                    if !next.contains(&item) {
                        next.push(item);
                    }
                }
            }
            front = next;
        }
        for (q, seen) in front {
            reach[p][q] = true;
            acc[p][q] |= seen;
        }
    }
    // closure: plus-iterations of the summary
    let (mut r, mut c) = (reach.clone(), acc.clone());
    loop {
        let mut changed = false;
        for p in 0..n {
            for m in 0..n {
                if !r[p][m] {
                    continue;
                }
                for q in 0..n {
                    if reach[m][q] {
                        let a = c[p][m] || acc[m][q];
                        if !r[p][q] || (a && !c[p][q]) {
                            r[p][q] = true;
                            c[p][q] |= a;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut at_loop = cur.clone();
    for p in 0..n {
        if cur[p] {
            for q in 0..n {
                at_loop[q] |= r[p][q];
            }
        }
    }
    (0..n).any(|q| at_loop[q] && c[q][q])
}

fn random_nba(r: &mut rand_chacha::ChaCha8Rng, states: usize, letters: usize) -> Buchi {
    let mut b = Buchi::new(letters);
    for _ in 0..states {
        b.add_state(r.gen_bool(0.3));
    }
    b.initial.push(0);
    for q in 0..states {
        for a in 0..letters {
            for t in 0..states {
                if r.gen_bool(0.3) {
                    b.add_transition(q, a, t);
                }
            }
        }
    }
    b
}

fn words(len: usize, letters: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..letters).map(move |a| [w.clone(), vec![a]].concat())).collect();
    }
    out
}

#[test]
fn lasso_acceptance_matches_oracle() {
    let mut r = rng(41);
    for _ in 0..40 {
        let b = random_nba(&mut r, 4, 2);
        for s in 0..=2 {
            for c in 1..=4 {
                for stem in words(s, 2) {
                    for cycle in words(c, 2) {
                        assert_eq!(b.accepts_lasso(&stem, &cycle), oracle_accepts(&b, &stem, &cycle));
                    }
                }
            }
        }
    }
}

#[test]
fn complement_on_random_automata() {
    let mut r = rng(42);
    let mut lassos = vec![];
    for s in 0..=2 {
        for c in 1..=6 {
            for stem in words(s, 2) {
                for cycle in words(c, 2) {
                    lassos.push((stem.clone(), cycle));
                }
            }
        }
    }
    for k in 0..25 {
        let b = random_nba(&mut r, if k < 10 { 3 } else { 4 }, 2);
        let c = complement_buchi(&b);
        for (stem, cycle) in &lassos {
            assert_ne!(
                oracle_accepts(&b, stem, cycle),
                c.accepts_lasso(stem, cycle),
                "automaton {k}: {stem:?} {cycle:?}"
            );
        }
    }
}

#[test]
fn emptiness_witness_is_accepted() {
    let mut r = rng(43);
    for _ in 0..100 {
        let b = random_nba(&mut r, 5, 2);
        match b.find_accepting_lasso() {
            Some((stem, cycle)) => assert!(oracle_accepts(&b, &stem, &cycle)),
            None => {
                for cycle in (1..=4).flat_map(|c| words(c, 2)) {
                    assert!(!oracle_accepts(&b, &[], &cycle));
                }
            }
        }
    }
}
