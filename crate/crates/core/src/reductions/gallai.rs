use crate::error::{Error, Result};
use crate::game::SpGame;
use crate::graph::{Player, Vertex};
use crate::paths::{bellman_ford_potentials, min_cycle_mean, non_positive_cycle};
use crate::rational::Rational;

/// Per-player vertex potentials `pi[p][v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    pub values: Vec<Vec<Rational>>,
}

impl Potential {
    pub fn get(&self, p: Player, v: Vertex) -> Rational {
        self.values[p][v]
    }

    /// `l(u,v) + pi(u) - pi(v)`.
    pub fn reduced_cost(&self, p: Player, u: Vertex, v: Vertex, cost: Rational) -> Rational {
        cost + self.values[p][u] - self.values[p][v]
    }
}

/// Reweights every player's costs by a vertex potential so that all edges
/// become strictly positive.
///
/// Needs every directed cycle to have positive total for every player. All
/// terminals get the same potential, so every path from a fixed start to any
/// terminal changes by the same constant `pi(start) - pi(terminal)`.
pub fn gallai_transform(g: &SpGame) -> Result<(SpGame, Potential)> {
    let n = g.graph.num_vertices();
    let mut values = Vec::with_capacity(g.players());
    for p in 0..g.players() {
        let edges = g.weighted_edges(p);
        if let Some(cycle) = non_positive_cycle(n, &edges) {
            return Err(Error::NonPositiveCycle { player: p, cycle });
        }
        if edges.iter().all(|e| e.2.is_positive()) {
            values.push(vec![Rational::zero(); n]);
            continue;
        }
        // Half the minimum cycle mean keeps every cycle strictly positive
        // after the shift; any margin works when there is no cycle.
        let eps = min_cycle_mean(n, &edges).map_or(Rational::one(), |m| m / Rational::from(2));
        let shifted: Vec<_> = edges.iter().map(|&(u, v, w)| (u, v, w - eps)).collect();
        let mut pi = bellman_ford_potentials(n, &shifted).expect("shifted cycles stay positive");
        let terminal_level =
            edges.iter().filter(|&&(_, v, _)| g.graph.is_terminal(v)).map(|&(u, _, w)| w + pi[u] - eps).min();
        if let Some(level) = terminal_level {
            for t in g.graph.terminals() {
                pi[t] = level;
            }
        }
        values.push(pi);
    }
    let pot = Potential { values };
    let costs = g
        .graph
        .edges()
        .iter()
        .zip(&g.costs)
        .map(|(&(u, v), c)| (0..g.players()).map(|p| pot.reduced_cost(p, u, v, c[p])).collect())
        .collect();
    let out = SpGame { graph: g.graph.clone(), costs };
    debug_assert!(out.costs.iter().flatten().all(Rational::is_positive));
    Ok((out, pot))
}
