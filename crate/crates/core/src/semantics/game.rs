use std::collections::BTreeSet;

/// The two players of a parity game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Eloise,
    Abelard,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eloise => Player::Abelard,
            Player::Abelard => Player::Eloise,
        }
    }

    /// The player favoured by a priority under the min-parity condition.
    pub fn of_priority(p: u32) -> Player {
        if p.is_multiple_of(2) {
            Player::Eloise
        } else {
            Player::Abelard
        }
    }
}

/// A finite min-parity game. Eloise wins an infinite play iff the least
/// priority seen infinitely often is even; a player who cannot move loses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    priority: Vec<u32>,
    moves: Vec<Vec<usize>>,
}

impl ParityGame {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_position(&mut self, owner: Player, priority: u32) -> usize {
        self.owner.push(owner);
        self.priority.push(priority);
        self.moves.push(vec![]);
        self.owner.len() - 1
    }

    pub fn add_move(&mut self, from: usize, to: usize) {
        assert!(to < self.len(), "move target {to} out of range");
        self.moves[from].push(to);
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn priority(&self, v: usize) -> u32 {
        self.priority[v]
    }

    pub fn moves(&self, v: usize) -> &[usize] {
        &self.moves[v]
    }

    pub fn max_priority(&self) -> u32 {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    pub(crate) fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut preds = vec![vec![]; self.len()];
        for (v, ms) in self.moves.iter().enumerate() {
            for &w in ms {
                preds[w].push(v);
            }
        }
        preds
    }
}

/// Winning regions with positional strategies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Winner of every position.
    pub winner: Vec<Player>,
    /// For each position with at least one move, the chosen move of its
    /// owner. The choice is winning whenever the owner wins the position.
    pub strategy: Vec<Option<usize>>,
}

impl Solution {
    pub fn region(&self, p: Player) -> BTreeSet<usize> {
        (0..self.winner.len()).filter(|&v| self.winner[v] == p).collect()
    }

    pub fn wins(&self, v: usize) -> Player {
        self.winner[v]
    }
}
