use super::game::{ParityGame, Player, Solution};

struct Arena<'a> {
    g: &'a ParityGame,
    moves: Vec<Vec<usize>>,
    preds: Vec<Vec<usize>>,
    owner: Vec<Player>,
    priority: Vec<u32>,
    strategy: Vec<Option<usize>>,
}

/// Solves a min-parity game with Zielonka's recursive algorithm.
///
/// Deadlocks are handled by redirecting them to two fresh sinks, one
/// winning for each player.
pub fn solve_zielonka(g: &ParityGame) -> Solution {
    let n = g.len();
    let sink_e = n;
    let sink_a = n + 1;
    let mut moves: Vec<Vec<usize>> = (0..n).map(|v| g.moves(v).to_vec()).collect();
    let mut owner: Vec<Player> = (0..n).map(|v| g.owner(v)).collect();
    let mut priority: Vec<u32> = (0..n).map(|v| g.priority(v)).collect();
    for v in 0..n {
        if moves[v].is_empty() {
            moves[v].push(if owner[v] == Player::Eloise { sink_a } else { sink_e });
        }
    }
    moves.push(vec![sink_e]);
    moves.push(vec![sink_a]);
    owner.extend([Player::Eloise, Player::Eloise]);
    priority.extend([0, 1]);
    let mut preds = vec![vec![]; n + 2];
    for (v, ms) in moves.iter().enumerate() {
        for &w in ms {
            preds[w].push(v);
        }
    }
    let mut arena = Arena { g, moves, preds, owner, priority, strategy: vec![None; n + 2] };
    let all = vec![true; n + 2];
    let win_e = arena.solve(&all);
    let winner = (0..n).map(|v| if win_e[v] { Player::Eloise } else { Player::Abelard }).collect();
    let strategy = (0..n).map(|v| arena.g.moves(v).first().map(|&first| arena.strategy[v].unwrap_or(first))).collect();
    Solution { winner, strategy }
}

impl Arena<'_> {
    /// Attractor of `target` for `p` inside `sub`, recording attractor
    /// moves for `p`.
    fn attractor(&mut self, sub: &[bool], target: &[bool], p: Player) -> Vec<bool> {
        let n = sub.len();
        let mut attr = target.to_vec();
        let mut count: Vec<usize> =
            (0..n).map(|v| if sub[v] { self.moves[v].iter().filter(|&&w| sub[w]).count() } else { 0 }).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| attr[v]).collect();
        while let Some(w) = stack.pop() {
            for i in 0..self.preds[w].len() {
                let v = self.preds[w][i];
                if !sub[v] || attr[v] {
                    continue;
                }
                if self.owner[v] == p {
                    attr[v] = true;
                    self.strategy[v] = Some(w);
                    stack.push(v);
                } else {
                    count[v] -= 1;
                    if count[v] == 0 {
                        attr[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        attr
    }

    /// Returns Eloise's winning region within `sub`; `sub` must be a
    /// subgame (every position keeps a move inside it).
    fn solve(&mut self, sub: &[bool]) -> Vec<bool> {
        let n = sub.len();
        let Some(p) = (0..n).filter(|&v| sub[v]).map(|v| self.priority[v]).min() else {
            return vec![false; n];
        };
        let alpha = Player::of_priority(p);
        let top: Vec<bool> = (0..n).map(|v| sub[v] && self.priority[v] == p).collect();
        for v in (0..n).filter(|&v| top[v] && self.owner[v] == alpha) {
            self.strategy[v] = self.moves[v].iter().copied().find(|&w| sub[w]);
        }
        let a = self.attractor(sub, &top, alpha);
        let rest: Vec<bool> = (0..n).map(|v| sub[v] && !a[v]).collect();
        let win_e = self.solve(&rest);
        let opp_region: Vec<bool> =
            (0..n).map(|v| rest[v] && (win_e[v] == (alpha.opponent() == Player::Eloise))).collect();
        if !opp_region.iter().any(|&b| b) {
            return (0..n).map(|v| sub[v] && alpha == Player::Eloise).collect();
        }
        let b = self.attractor(sub, &opp_region, alpha.opponent());
        let rest2: Vec<bool> = (0..n).map(|v| sub[v] && !b[v]).collect();
        let win_e2 = self.solve(&rest2);
        (0..n).map(|v| if b[v] { alpha.opponent() == Player::Eloise } else { rest2[v] && win_e2[v] }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deadlocked_eloise_loses() {
        let mut g = ParityGame::new();
        g.add_position(Player::Eloise, 0);
        assert_eq!(solve_zielonka(&g).winner, vec![Player::Abelard]);
    }

    #[test]
    fn deadlocked_abelard_loses() {
        let mut g = ParityGame::new();
        g.add_position(Player::Abelard, 1);
        assert_eq!(solve_zielonka(&g).winner, vec![Player::Eloise]);
    }

    #[test]
    fn even_self_loop_is_eloise() {
        let mut g = ParityGame::new();
        let v = g.add_position(Player::Abelard, 2);
        g.add_move(v, v);
        assert_eq!(solve_zielonka(&g).winner, vec![Player::Eloise]);
    }

    #[test]
    fn eloise_picks_the_even_cycle() {
        let mut g = ParityGame::new();
        let v = g.add_position(Player::Eloise, 3);
        let odd = g.add_position(Player::Eloise, 1);
        let even = g.add_position(Player::Eloise, 0);
        g.add_move(v, odd);
        g.add_move(v, even);
        g.add_move(odd, odd);
        g.add_move(even, v);
        let s = solve_zielonka(&g);
        assert_eq!(s.winner[v], Player::Eloise);
        assert_eq!(s.strategy[v], Some(even));
        assert_eq!(s.winner[odd], Player::Abelard);
    }
}
