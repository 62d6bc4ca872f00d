use crate::error::{Error, Result};
use crate::game::{SpGame, TerminalGame};
use crate::graph::{Player, Vertex};
use crate::rational::{common_denominator, Rational};

/// A terminal game recast as a positive shortest-path game on the same graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalReduction {
    pub game: SpGame,
    /// Terminal costs are shifted by `-infinite[p]` and multiplied by `scale`,
    /// which makes them negative integers.
    pub scale: Rational,
    pub big_m: Rational,
    /// Cost of every move into a non-terminal: `1 / (2 |E|)`.
    pub step: Rational,
    normalized: Vec<Vec<Rational>>,
}

impl TerminalReduction {
    /// Normalized (negative integer) terminal cost used by the reduction.
    pub fn normalized_cost(&self, w: Vertex, p: Player) -> Rational {
        self.normalized[w][p]
    }
}

/// Requires infinite play to be strictly worse than every terminal for every
/// player. Moves into non-terminals cost `1/(2|E|)`; a move into terminal
/// `w` costs `M + L(w)` with `L` normalized to negative integers and
/// `M = 1 + max |L|`.
pub fn terminal_to_sp(g: &TerminalGame) -> Result<TerminalReduction> {
    let offending = g.ciw_offenders();
    if !offending.is_empty() {
        return Err(Error::CiwViolated { offending });
    }
    let n = g.players();
    let graph = &g.graph;
    let mut shifted: Vec<Vec<Rational>> = vec![Vec::new(); graph.num_vertices()];
    for w in graph.terminals() {
        shifted[w] = (0..n).map(|p| g.terminal_cost(w, p) - g.infinite_cost(p)).collect();
    }
    let scale = Rational::from_integer(common_denominator(shifted.iter().flatten()));
    let normalized: Vec<Vec<Rational>> = shifted.iter().map(|row| row.iter().map(|&x| x * scale).collect()).collect();
    let max_abs = normalized.iter().flatten().map(Rational::abs).max().unwrap_or_default();
    let big_m = max_abs + Rational::one();
    let step = Rational::new(1, 2 * graph.num_edges().max(1) as i128);
    let costs = graph
        .edges()
        .iter()
        .map(
            |&(_, v)| {
                if graph.is_terminal(v) {
                    normalized[v].iter().map(|&l| big_m + l).collect()
                } else {
                    vec![step; n]
                }
            },
        )
        .collect();
    Ok(TerminalReduction { game: SpGame { graph: graph.clone(), costs }, scale, big_m, step, normalized })
}
