#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rll_core::expr::{Alphabet, Expr, Letter, Var};
use rll_core::semantics::UPWord;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ab() -> Alphabet {
    Alphabet::new("ab").unwrap()
}

/// A random closed expression. With `guarded`, each variable occurrence
/// sits under a letter inside its binder's scope.
pub fn gen_expr(rng: &mut ChaCha8Rng, alphabet: &Alphabet, depth: u32, guarded: bool) -> Expr {
    fn go(rng: &mut ChaCha8Rng, alphabet: &Alphabet, depth: u32, guarded: bool, avail: &mut Vec<bool>) -> Expr {
        let vars: Vec<u32> =
            (0..avail.len()).filter(|&i| !guarded || avail[i]).map(|i| (avail.len() - 1 - i) as u32).collect();
        if depth == 0 {
            return match rng.gen_range(0..4) {
                0 if !vars.is_empty() => Expr::Var(Var::Bound(*vars.choose(rng).unwrap())),
                1 | 0 => Expr::Top,
                _ => Expr::Zero,
            };
        }
        match rng.gen_range(0..10) {
            0 if !vars.is_empty() => Expr::Var(Var::Bound(*vars.choose(rng).unwrap())),
            0..=3 => {
                let a = *alphabet.letters().choose(rng).unwrap();
                Expr::Letter(a, Arc::new(go_letter(rng, alphabet, depth - 1, guarded, avail)))
            }
            4 | 5 => Expr::Plus(
                Arc::new(go(rng, alphabet, depth - 1, guarded, avail)),
                Arc::new(go(rng, alphabet, depth - 1, guarded, avail)),
            ),
            6 => Expr::Cap(
                Arc::new(go(rng, alphabet, depth - 1, guarded, avail)),
                Arc::new(go(rng, alphabet, depth - 1, guarded, avail)),
            ),
            k => {
                avail.push(false);
                let body = go(rng, alphabet, depth - 1, guarded, avail);
                avail.pop();
                if k < 9 {
                    Expr::Mu(Arc::new(body))
                } else {
                    Expr::Nu(Arc::new(body))
                }
            }
        }
    }
    fn go_letter(rng: &mut ChaCha8Rng, alphabet: &Alphabet, depth: u32, guarded: bool, avail: &mut Vec<bool>) -> Expr {
        let saved = avail.clone();
        avail.iter_mut().for_each(|x| *x = true);
        let e = go(rng, alphabet, depth, guarded, avail);
        *avail = saved;
        e
    }
    go(rng, alphabet, depth, guarded, &mut vec![])
}

pub fn gen_word(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_stem: usize, max_loop: usize) -> UPWord {
    let stem = {
        let n = rng_len(rng, 0, max_stem);
        (0..n).map(|_| *alphabet.letters().choose(rng).unwrap()).collect()
    };
    let cycle = {
        let n = rng_len(rng, 1, max_loop);
        (0..n).map(|_| *alphabet.letters().choose(rng).unwrap()).collect()
    };
    UPWord::new(stem, cycle, alphabet).unwrap()
}

fn rng_len(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo..=hi)
}

/// Membership by direct fixpoint iteration over the finitely many
/// suffixes of `w`: the denotation of an expression is the set of
/// offsets whose suffix it accepts.
pub fn oracle_member(w: &UPWord, e: &Expr) -> bool {
    let stem = w.stem();
    let cycle = w.cycle();
    let n = stem.len() + cycle.len();
    let letter = |i: usize| if i < stem.len() { stem[i] } else { cycle[i - stem.len()] };
    let next = |i: usize| if i + 1 < n { i + 1 } else { stem.len() };
    fn den(
        e: &Expr,
        n: usize,
        letter: &dyn Fn(usize) -> Letter,
        next: &dyn Fn(usize) -> usize,
        env: &mut Vec<Vec<bool>>,
    ) -> Vec<bool> {
        match e {
            Expr::Zero => vec![false; n],
            Expr::Top => vec![true; n],
            Expr::Var(Var::Bound(k)) => env[env.len() - 1 - *k as usize].clone(),
            Expr::Var(Var::Free(x)) => panic!("free variable {x}"),
            Expr::Letter(a, body) => {
                let b = den(body, n, letter, next, env);
                (0..n).map(|i| letter(i) == *a && b[next(i)]).collect()
            }
            Expr::Plus(l, r) => {
                let (l, r) = (den(l, n, letter, next, env), den(r, n, letter, next, env));
                l.iter().zip(&r).map(|(x, y)| *x || *y).collect()
            }
            Expr::Cap(l, r) => {
                let (l, r) = (den(l, n, letter, next, env), den(r, n, letter, next, env));
                l.iter().zip(&r).map(|(x, y)| *x && *y).collect()
            }
            Expr::Mu(body) | Expr::Nu(body) => {
                let mut cur = vec![matches!(e, Expr::Nu(_)); n];
                loop {
                    env.push(cur.clone());
                    let nxt = den(body, n, letter, next, env);
                    env.pop();
                    if nxt == cur {
                        return cur;
                    }
                    cur = nxt;
                }
            }
        }
    }
    den(e, n, &letter, &next, &mut vec![])[0]
}
