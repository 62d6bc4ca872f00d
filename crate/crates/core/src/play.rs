//! Plays induced by situations and their effective costs.

use std::fmt;

use crate::cost::ExtCost;
use crate::error::{Error, Result};
use crate::game::{SpGame, TerminalGame};
use crate::graph::{GameGraph, Player, Situation, Vertex};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Terminal(Vertex),
    /// The cycle entered, listed from its first occurrence on the walk.
    Cycle(Vec<Vertex>),
}

/// The unique walk of a situation from a start vertex.
///
/// `prefix` runs from the start up to the last non-terminal vertex before the
/// terminal, or up to and including the first vertex that re-occurs (the
/// cycle entry). So `s -> a -> s` has prefix `[s]` and cycle `[s, a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Play {
    pub prefix: Vec<Vertex>,
    pub outcome: Outcome,
}

impl Play {
    pub fn is_terminal(&self) -> bool {
        matches!(self.outcome, Outcome::Terminal(_))
    }

    pub fn terminal(&self) -> Option<Vertex> {
        match self.outcome {
            Outcome::Terminal(w) => Some(w),
            Outcome::Cycle(_) => None,
        }
    }

    pub fn cycle(&self) -> Option<&[Vertex]> {
        match &self.outcome {
            Outcome::Cycle(c) => Some(c),
            Outcome::Terminal(_) => None,
        }
    }

    /// Moves before the cycle, or the whole terminal path including the final move.
    pub fn path_moves(&self) -> Vec<(Vertex, Vertex)> {
        let mut moves: Vec<_> = self.prefix.windows(2).map(|w| (w[0], w[1])).collect();
        if let (Outcome::Terminal(t), Some(&last)) = (&self.outcome, self.prefix.last()) {
            moves.push((last, *t));
        }
        moves
    }

    pub fn cycle_moves(&self) -> Vec<(Vertex, Vertex)> {
        match &self.outcome {
            Outcome::Cycle(c) => (0..c.len()).map(|k| (c[k], c[(k + 1) % c.len()])).collect(),
            Outcome::Terminal(_) => Vec::new(),
        }
    }

    pub fn display<'a>(&'a self, g: &'a GameGraph) -> PlayDisplay<'a> {
        PlayDisplay { play: self, graph: g }
    }
}

pub struct PlayDisplay<'a> {
    play: &'a Play,
    graph: &'a GameGraph,
}

impl fmt::Display for PlayDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.play.prefix.iter().map(|&v| self.graph.name(v)).collect();
        match &self.play.outcome {
            Outcome::Terminal(t) => {
                for n in &names {
                    write!(f, "{n} -> ")?;
                }
                write!(f, "{}", self.graph.name(*t))
            }
            Outcome::Cycle(c) => {
                let body: Vec<&str> = c.iter().map(|&v| self.graph.name(v)).collect();
                let lead = &names[..names.len().saturating_sub(1)];
                for n in lead {
                    write!(f, "{n} -> ")?;
                }
                write!(f, "({} -> {})*", body.join(" -> "), body[0])
            }
        }
    }
}

/// Follows `sigma` from `start` until a terminal or the first repeated vertex.
pub fn trace(g: &GameGraph, sigma: &Situation, start: Vertex) -> Play {
    let mut walk: Vec<Vertex> = Vec::new();
    let mut v = start;
    loop {
        if g.is_terminal(v) {
            return Play { prefix: walk, outcome: Outcome::Terminal(v) };
        }
        if let Some(i) = walk.iter().position(|&u| u == v) {
            let cycle = walk[i..].to_vec();
            walk.truncate(i + 1);
            return Play { prefix: walk, outcome: Outcome::Cycle(cycle) };
        }
        walk.push(v);
        v = sigma.next(v);
    }
}

fn move_cost(g: &SpGame, (u, v): (Vertex, Vertex), p: Player) -> Rational {
    let e = g.graph.edge_id(u, v).expect("play moves are edges of the graph");
    g.cost(e, p)
}

/// Total cost of a play for player `p` in a shortest-path game.
///
/// A cycle with positive (negative) total gives `+inf` (`-inf`); a cycle whose
/// edges all cost zero gives the cost of the moves leading into it. A
/// zero-total cycle with non-zero edges has no agreed value and is an error.
pub fn sp_cost(g: &SpGame, play: &Play, p: Player) -> Result<ExtCost> {
    let path: Rational = play.path_moves().into_iter().map(|m| move_cost(g, m, p)).sum();
    let Some(cycle) = play.cycle() else {
        return Ok(ExtCost::Finite(path));
    };
    let costs: Vec<Rational> = play.cycle_moves().into_iter().map(|m| move_cost(g, m, p)).collect();
    let total: Rational = costs.iter().sum();
    if total.is_positive() {
        Ok(ExtCost::PlusInf)
    } else if total.is_negative() {
        Ok(ExtCost::MinusInf)
    } else if costs.iter().all(Rational::is_zero) {
        Ok(ExtCost::Finite(path))
    } else {
        Err(Error::ZeroSumMixedCycle { player: p, cycle: cycle.to_vec() })
    }
}

/// Cost of a play in a terminal game: the terminal's cost, or the
/// infinite-play cost for a cycle.
pub fn terminal_cost(g: &TerminalGame, play: &Play, p: Player) -> Rational {
    match play.outcome {
        Outcome::Terminal(w) => g.terminal_cost(w, p),
        Outcome::Cycle(_) => g.infinite_cost(p),
    }
}
