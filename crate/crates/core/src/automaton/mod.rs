//! Alternating parity automata built from expressions.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use crate::expr::{Expr, ExprError, FlClosure, Letter};
use crate::semantics::{solve_zielonka, ParityGame, Player, UPWord};

/// A colouring of the members of one closure.
#[derive(Clone, Debug)]
pub struct Coloring {
    members: Vec<Expr>,
    index: HashMap<Expr, usize>,
    colours: Vec<u32>,
}

impl Coloring {
    pub fn colour(&self, e: &Expr) -> Option<u32> {
        self.index.get(e).map(|&i| self.colours[i])
    }

    pub fn colour_at(&self, i: usize) -> u32 {
        self.colours[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Expr, u32)> {
        self.members.iter().zip(self.colours.iter().copied())
    }

    /// Checks monotonicity in the subformula order and the parity of
    /// fixed points, returning the first offending pair or formula.
    pub fn validate(&self) -> Result<(), String> {
        for (f, cf) in self.iter() {
            match f {
                Expr::Mu(_) if cf % 2 == 0 => return Err(format!("μ-formula {f} has even colour {cf}")),
                Expr::Nu(_) if cf % 2 == 1 => return Err(format!("ν-formula {f} has odd colour {cf}")),
                _ => {}
            }
            for (g, cg) in self.iter() {
                if f != g && f.is_subformula_of(g) && cf > cg {
                    return Err(format!("{f} ⊑ {g} but colour {cf} > {cg}"));
                }
            }
        }
        Ok(())
    }
}

/// The canonical colouring: fixed points in order of size (so subformulas
/// come first) take the least colour of the right parity that is at least
/// the previous one; other members take the largest colour among their
/// fixed-point subformulas, or 0.
pub fn default_coloring(fl: &FlClosure) -> Coloring {
    let members = fl.members().to_vec();
    let mut fixpoints: Vec<(usize, usize)> =
        (0..members.len()).filter(|&i| members[i].is_fixpoint()).map(|i| (members[i].size(), i)).collect();
    fixpoints.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| members[a.1].cmp(&members[b.1])));
    let mut colours = vec![0u32; members.len()];
    let mut prev = 0u32;
    for &(_, i) in &fixpoints {
        let want = if matches!(members[i], Expr::Mu(_)) { 1 } else { 0 };
        let c = if prev % 2 == want { prev } else { prev + 1 };
        colours[i] = c;
        prev = c;
    }
    for i in 0..members.len() {
        if !members[i].is_fixpoint() {
            colours[i] = fixpoints
                .iter()
                .filter(|&&(_, j)| members[j].is_subformula_of(&members[i]))
                .map(|&(_, j)| colours[j])
                .max()
                .unwrap_or(0);
        }
    }
    let index = members.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    Coloring { members, index, colours }
}

/// An alternating parity automaton whose states are the members of a
/// closure. Transitions without a letter are ε-moves.
#[derive(Clone, Debug)]
pub struct Apa {
    pub states: Vec<Expr>,
    pub existential: BTreeSet<usize>,
    pub universal: BTreeSet<usize>,
    pub transitions: Vec<(usize, Option<Letter>, usize)>,
    pub initial: usize,
    pub colour: Vec<u32>,
}

pub fn build_apa(e: &Expr) -> Result<Apa, ExprError> {
    let fl = FlClosure::of_many([e])?;
    let coloring = default_coloring(&fl);
    let states = fl.members().to_vec();
    let mut existential = BTreeSet::new();
    let mut universal = BTreeSet::new();
    let mut transitions = vec![];
    for (i, s) in states.iter().enumerate() {
        match s {
            Expr::Top | Expr::Cap(..) => universal.insert(i),
            _ => existential.insert(i),
        };
        let letter = s.head_letter().map(|(a, _)| a);
        for &(_, j) in fl.successors(i) {
            transitions.push((i, letter, j));
        }
    }
    let colour = (0..states.len()).map(|i| coloring.colour_at(i)).collect();
    Ok(Apa { states, existential, universal, transitions, initial: 0, colour })
}

/// Acceptance of `w` by `apa`, decided by the acceptance game: from
/// `(offset, state)` the owner of the state picks a transition, letter
/// transitions must match the current letter and advance the offset.
pub fn apa_accepts(apa: &Apa, w: &UPWord) -> bool {
    let m = apa.states.len();
    let n = w.offsets();
    let mut game = ParityGame::new();
    for _ in 0..n {
        for s in 0..m {
            let owner = if apa.universal.contains(&s) { Player::Abelard } else { Player::Eloise };
            game.add_position(owner, apa.colour[s]);
        }
    }
    for offset in 0..n {
        for &(s, letter, t) in &apa.transitions {
            match letter {
                None => game.add_move(offset * m + s, offset * m + t),
                Some(a) if a == w.letter_at(offset) => game.add_move(offset * m + s, w.next_offset(offset) * m + t),
                Some(_) => {}
            }
        }
    }
    solve_zielonka(&game).winner[apa.initial] == Player::Eloise
}

/// Graphviz rendering. Existential states are ellipses, universal states
/// boxes, the initial state has a double border.
pub fn export_dot(apa: &Apa) -> String {
    let mut out = String::from("digraph apa {\n  rankdir=LR;\n");
    for (i, s) in apa.states.iter().enumerate() {
        let shape = if apa.universal.contains(&i) { "box" } else { "ellipse" };
        let border = if i == apa.initial { ", peripheries=2" } else { "" };
        let label = s.to_string().replace('\\', "\\\\").replace('"', "\\\"");
        let _ = writeln!(out, "  q{i} [label=\"{label}\\ncolour {}\", shape={shape}{border}];", apa.colour[i]);
    }
    for &(s, letter, t) in &apa.transitions {
        let label = letter.map(|a| a.to_string()).unwrap_or_else(|| "ε".into());
        let _ = writeln!(out, "  q{s} -> q{t} [label=\"{label}\"];");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{fl_closure, parse, Alphabet};

    fn p(s: &str) -> Expr {
        parse(s, &Alphabet::new("ab").unwrap()).unwrap()
    }

    #[test]
    fn colouring_examples() {
        let e = p("nu X. a X");
        let c = default_coloring(&fl_closure(&e).unwrap());
        assert_eq!(c.colour(&e), Some(0));
        assert_eq!(c.colour(&Expr::letter('a', e.clone())), Some(0));

        let e = p("mu X. X");
        assert_eq!(default_coloring(&fl_closure(&e).unwrap()).colour(&e), Some(1));

        let c = default_coloring(&fl_closure(&p("i_a")).unwrap());
        assert_eq!(c.colour(&p("i_a")), Some(0));
        assert_eq!(c.colour(&p("i_a'")), Some(1));
        c.validate().unwrap();

        let c = default_coloring(&fl_closure(&p("f_a")).unwrap());
        assert_eq!(c.colour(&p("nu Y. b Y")), Some(0));
        assert_eq!(c.colour(&p("f_a")), Some(1));
        c.validate().unwrap();
    }

    #[test]
    fn apa_examples() {
        let a = build_apa(&p("mu X. X")).unwrap();
        assert_eq!(a.states.len(), 1);
        assert_eq!(a.transitions, vec![(0, None, 0)]);
        assert_eq!(a.colour, vec![1]);

        let a = build_apa(&p("nu X. a X")).unwrap();
        assert_eq!(a.states.len(), 2);
        assert_eq!(a.colour, vec![0, 0]);
        assert_eq!(a.transitions, vec![(0, None, 1), (1, Some(Letter('a')), 0)]);

        let i_a = p("i_a");
        assert!(build_apa(&i_a).unwrap().states.len() <= i_a.size());
    }

    #[test]
    fn acceptance_examples() {
        let ab = Alphabet::new("ab").unwrap();
        let a_omega = UPWord::parse("(a)^w", &ab).unwrap();
        assert!(apa_accepts(&build_apa(&p("nu X. a X")).unwrap(), &a_omega));
        assert!(!apa_accepts(&build_apa(&p("mu X. X")).unwrap(), &a_omega));
        assert!(!apa_accepts(&build_apa(&p("nu X. a X")).unwrap(), &UPWord::parse("a(b)^w", &ab).unwrap()));
    }

    #[test]
    fn dot_export() {
        let a = build_apa(&p("mu X. X")).unwrap();
        let dot = export_dot(&a);
        assert_eq!(dot, export_dot(&a));
        assert!(dot.contains("q0 -> q0 [label=\"ε\"]"));
        assert!(dot.contains("colour 1"));
        assert_eq!(dot.matches("shape=").count(), a.states.len());
    }
}
