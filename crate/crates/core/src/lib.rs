//! Right-linear lattice expressions over ω-words.
//!
//! The crate covers expression syntax ([`expr`]), membership of
//! ultimately periodic words via parity games ([`semantics`]), the
//! associated alternating parity automata ([`automaton`]), the cyclic
//! sequent calculus ([`calculus`]), proof checking ([`proof`]) and the
//! inclusion decision procedure ([`decide`]).

pub mod automaton;
pub mod calculus;
pub mod decide;
pub mod expr;
pub mod proof;
pub mod semantics;
