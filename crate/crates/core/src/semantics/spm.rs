use std::collections::VecDeque;

use super::game::{ParityGame, Player};

/// A progress measure: one counter per odd priority, most significant
/// first, or `None` for the top element.
type Measure = Option<Vec<u32>>;

/// Solves a min-parity game by small progress measures and returns
/// Eloise's winning region.
///
/// Eloise deadlocks are lifted to the top element at once; Abelard
/// deadlocks keep the least measure and are won by Eloise.
pub fn solve_spm(g: &ParityGame) -> Vec<bool> {
    let n = g.len();
    let d = g.max_priority() as usize / 2 + 1;
    let mut bound = vec![0u32; d];
    for v in 0..n {
        let p = g.priority(v);
        if p % 2 == 1 {
            bound[p as usize / 2] += 1;
        }
    }
    let mut rho: Vec<Measure> = vec![Some(vec![0; d]); n];
    let preds = g.predecessors();
    let mut queue: VecDeque<usize> = (0..n).collect();
    let mut queued = vec![true; n];
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        let new = lift(g, &rho, &bound, v);
        if new != rho[v] && less(&rho[v], &new) {
            rho[v] = new;
            for &u in &preds[v] {
                if !queued[u] {
                    queued[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    rho.iter().map(|m| m.is_some()).collect()
}

fn less(a: &Measure, b: &Measure) -> bool {
    match (a, b) {
        (_, None) => a.is_some(),
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x < y,
    }
}

fn lift(g: &ParityGame, rho: &[Measure], bound: &[u32], v: usize) -> Measure {
    let p = g.priority(v);
    let succ = g.moves(v).iter().map(|&w| prog(&rho[w], p, bound));
    let best = match g.owner(v) {
        Player::Eloise => succ.reduce(|a, b| if less(&b, &a) { b } else { a }),
        Player::Abelard => succ.reduce(|a, b| if less(&a, &b) { b } else { a }),
    };
    match best {
        Some(m) => {
            // measures only grow
            if less(&m, &rho[v]) {
                rho[v].clone()
            } else {
                m
            }
        }
        None if g.owner(v) == Player::Eloise => None,
        None => rho[v].clone(),
    }
}

/// The least measure that is ≥ `m` on the components up to `p`, and
/// strictly greater when `p` is odd.
fn prog(m: &Measure, p: u32, bound: &[u32]) -> Measure {
    let m = m.as_ref()?;
    let last = p as usize / 2;
    let mut out = vec![0; m.len()];
    // components for odd priorities below `p`, and `p` itself if odd
    let keep = if p % 2 == 1 { last + 1 } else { last };
    out[..keep].copy_from_slice(&m[..keep]);
    if p.is_multiple_of(2) {
        return Some(out);
    }
    for k in (0..=last).rev() {
        if out[k] < bound[k] {
            out[k] += 1;
            return Some(out);
        }
        out[k] = 0;
    }
    None
}
