use crate::automaton::{default_coloring, Coloring};
use crate::expr::{Expr, FlClosure};

use super::game::{ParityGame, Player};
use super::spm::solve_spm;
use super::word::UPWord;
use super::zielonka::solve_zielonka;
use super::SemanticsError;

/// A position `(w[offset..], formula)` of the evaluation game, with the
/// formula given by its index in the closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvalPosition {
    pub offset: usize,
    pub formula: usize,
}

/// The evaluation game of a word against a closure. Position ids are
/// `offset * |closure| + formula`.
#[derive(Clone, Debug)]
pub struct EvalGame {
    game: ParityGame,
    closure: FlClosure,
    coloring: Coloring,
    offsets: usize,
}

impl EvalGame {
    /// Arena over every offset and every member of `closure`.
    pub fn over(w: &UPWord, closure: FlClosure) -> EvalGame {
        let coloring = default_coloring(&closure);
        let m = closure.len();
        let n = w.offsets();
        let mut game = ParityGame::new();
        for _offset in 0..n {
            for f in 0..m {
                let owner = match closure.member(f) {
                    Expr::Top | Expr::Cap(..) => Player::Abelard,
                    _ => Player::Eloise,
                };
                game.add_position(owner, coloring.colour_at(f));
            }
        }
        for offset in 0..n {
            for f in 0..m {
                let v = offset * m + f;
                match closure.member(f) {
                    Expr::Letter(a, _) => {
                        if w.letter_at(offset) == *a {
                            let body = closure.successors(f)[0].1;
                            game.add_move(v, w.next_offset(offset) * m + body);
                        }
                    }
                    _ => {
                        for &(_, g) in closure.successors(f) {
                            game.add_move(v, offset * m + g);
                        }
                    }
                }
            }
        }
        EvalGame { game, closure, coloring, offsets: n }
    }

    pub fn game(&self) -> &ParityGame {
        &self.game
    }

    pub fn closure(&self) -> &FlClosure {
        &self.closure
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn offsets(&self) -> usize {
        self.offsets
    }

    pub fn id(&self, p: EvalPosition) -> usize {
        p.offset * self.closure.len() + p.formula
    }

    pub fn position(&self, id: usize) -> EvalPosition {
        EvalPosition { offset: id / self.closure.len(), formula: id % self.closure.len() }
    }

    /// The position `(w, e)` for the root of the closure.
    pub fn initial(&self) -> usize {
        0
    }
}

/// The evaluation game for `w` and the closed expression `e`.
pub fn build_eval_game(w: &UPWord, e: &Expr) -> Result<EvalGame, SemanticsError> {
    Ok(EvalGame::over(w, FlClosure::of_many([e])?))
}

/// Which parity game solver decides membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    Zielonka,
    ProgressMeasures,
}

/// Does `w` belong to the language of `e`?
pub fn member(w: &UPWord, e: &Expr) -> Result<bool, SemanticsError> {
    member_with(w, e, Solver::Zielonka)
}

pub fn member_with(w: &UPWord, e: &Expr, solver: Solver) -> Result<bool, SemanticsError> {
    let g = build_eval_game(w, e)?;
    let v = g.initial();
    Ok(match solver {
        Solver::Zielonka => solve_zielonka(g.game()).winner[v] == Player::Eloise,
        Solver::ProgressMeasures => solve_spm(g.game())[v],
    })
}

/// Membership of every suffix of one word in every formula of a closure,
/// from a single game solve.
#[derive(Clone, Debug)]
pub struct Evaluator {
    word: UPWord,
    game: EvalGame,
    eloise: Vec<bool>,
}

impl Evaluator {
    pub fn new<'a, I: IntoIterator<Item = &'a Expr>>(w: &UPWord, formulas: I) -> Result<Self, SemanticsError> {
        let game = EvalGame::over(w, FlClosure::of_many(formulas)?);
        let sol = solve_zielonka(game.game());
        let eloise = sol.winner.iter().map(|p| *p == Player::Eloise).collect();
        Ok(Evaluator { word: w.clone(), game, eloise })
    }

    pub fn word(&self) -> &UPWord {
        &self.word
    }

    /// Does the suffix at `offset` (reduced) satisfy `e`? `None` when `e`
    /// is outside the closure.
    pub fn holds_at(&self, offset: usize, e: &Expr) -> Option<bool> {
        let f = self.game.closure().index_of(e)?;
        Some(self.eloise[self.game.id(EvalPosition { offset, formula: f })])
    }

    pub fn holds(&self, e: &Expr) -> Option<bool> {
        self.holds_at(0, e)
    }
}
