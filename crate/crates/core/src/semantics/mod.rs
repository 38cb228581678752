//! Membership of ultimately periodic words, decided through the
//! evaluation game as a finite min-parity game.

mod eval;
mod game;
mod spm;
mod word;
mod zielonka;

use thiserror::Error;

use crate::expr::ExprError;

pub use eval::{build_eval_game, member, member_with, EvalGame, EvalPosition, Evaluator, Solver};
pub use game::{ParityGame, Player, Solution};
pub use spm::solve_spm;
pub use word::UPWord;
pub use zielonka::solve_zielonka;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("bad word: {0}")]
    BadWord(String),
}
