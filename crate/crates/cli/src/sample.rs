//! Seeded random expressions and words for the corpus harness.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rll_core::expr::{Alphabet, Expr, Letter, Var};
use rll_core::semantics::UPWord;

/// A random closed expression with at most `max_size` AST nodes.
pub fn expr(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_size: usize) -> Expr {
    let size = rng.gen_range(1..=max_size);
    sized(rng, alphabet, size, 0)
}

fn sized(rng: &mut ChaCha8Rng, alphabet: &Alphabet, size: usize, binders: u32) -> Expr {
    let letter = |rng: &mut ChaCha8Rng| *alphabet.letters().choose(rng).expect("nonempty alphabet");
    if size == 1 {
        return match rng.gen_range(0..3) {
            0 if binders > 0 => Expr::Var(Var::Bound(rng.gen_range(0..binders))),
            0 | 1 => Expr::Top,
            _ => Expr::Zero,
        };
    }
    match rng.gen_range(0..6) {
        0 | 1 => Expr::Letter(letter(rng), Arc::new(sized(rng, alphabet, size - 1, binders))),
        2 | 3 if size >= 3 => {
            let left = rng.gen_range(1..size - 1);
            let l = Arc::new(sized(rng, alphabet, left, binders));
            let r = Arc::new(sized(rng, alphabet, size - 1 - left, binders));
            if rng.gen_bool(0.6) {
                Expr::Plus(l, r)
            } else {
                Expr::Cap(l, r)
            }
        }
        4 => Expr::Mu(Arc::new(sized(rng, alphabet, size - 1, binders + 1))),
        5 => Expr::Nu(Arc::new(sized(rng, alphabet, size - 1, binders + 1))),
        _ => Expr::Letter(letter(rng), Arc::new(sized(rng, alphabet, size - 1, binders))),
    }
}

/// A random word with `|stem| ≤ max_stem` and `1 ≤ |loop| ≤ max_loop`.
pub fn word(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_stem: usize, max_loop: usize) -> UPWord {
    let stem_len = rng.gen_range(0..=max_stem);
    let loop_len = rng.gen_range(1..=max_loop);
    let mut letters = |n: usize| -> Vec<Letter> {
        (0..n).map(|_| *alphabet.letters().choose(rng).expect("nonempty alphabet")).collect()
    };
    let stem = letters(stem_len);
    let cycle = letters(loop_len);
    UPWord::new(stem, cycle, alphabet).expect("letters drawn from the alphabet")
}
