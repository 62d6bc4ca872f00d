//! Seeded random games for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{SpGame, TerminalGame};
use crate::graph::{GameGraph, Owner, Vertex};
use crate::rational::Rational;

/// Shape of a random game. Vertices `0..non_terminals` are owned by players
/// chosen uniformly; the rest are terminals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Shape {
    pub players: usize,
    pub non_terminals: usize,
    pub terminals: usize,
    /// Probability of each unordered pair of non-terminals being linked both ways.
    pub link: f64,
    /// Probability of each non-terminal to terminal move.
    pub exit: f64,
    pub self_loops: bool,
    /// Largest allowed out-degree; extra moves are dropped.
    pub max_degree: usize,
}

impl Shape {
    /// A shape with at most `max_vertices` vertices and `max_players` players.
    pub fn random(rng: &mut impl Rng, max_vertices: usize, max_players: usize) -> Self {
        let total = rng.gen_range(2..=max_vertices.max(2));
        let terminals = rng.gen_range(1..=(total / 3).max(1));
        Shape {
            players: rng.gen_range(1..=max_players.max(1)),
            non_terminals: total - terminals,
            terminals,
            link: rng.gen_range(0.2..0.6),
            exit: rng.gen_range(0.15..0.5),
            self_loops: false,
            max_degree: 4,
        }
    }

    /// Two-player shape with several terminals and sparse moves, where the
    /// first situation with all plays finite is often not yet uniform.
    pub fn two_player(rng: &mut impl Rng, max_vertices: usize) -> Self {
        let total = rng.gen_range(6.min(max_vertices)..=max_vertices.max(2));
        let terminals = rng.gen_range(2..=3).min(total - 1);
        Shape {
            players: 2,
            non_terminals: total - terminals,
            terminals,
            link: 0.6,
            exit: 0.3,
            self_loops: false,
            max_degree: 3,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An edge-symmetric graph with the given shape, initial vertex 0.
pub fn symmetric_graph(rng: &mut impl Rng, shape: &Shape) -> GameGraph {
    let n = shape.non_terminals;
    let total = n + shape.terminals;
    let mut owners: Vec<Owner> = (0..n).map(|_| Owner::Player(rng.gen_range(0..shape.players))).collect();
    owners.extend((0..shape.terminals).map(|_| Owner::Terminal));

    let mut adj = vec![vec![false; total]; total];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(shape.link) {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
        if shape.self_loops && rng.gen_bool(0.15) {
            adj[u][u] = true;
        }
        for w in n..total {
            if rng.gen_bool(shape.exit) {
                adj[u][w] = true;
            }
        }
    }
    // Thin out high degrees, keeping symmetry.
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    for &u in &order {
        let mut out: Vec<Vertex> = (0..total).filter(|&v| adj[u][v]).collect();
        out.shuffle(rng);
        while out.len() > shape.max_degree.max(1) {
            let v = out.pop().expect("non-empty");
            adj[u][v] = false;
            if v < n {
                adj[v][u] = false;
            }
        }
    }
    for u in 0..n {
        if !adj[u].iter().any(|&b| b) {
            let w = rng.gen_range(n..total);
            adj[u][w] = true;
        }
    }
    let edges = (0..total).flat_map(|u| (0..total).map(move |v| (u, v))).filter(|&(u, v)| adj[u][v]).collect();
    GameGraph::new(shape.players, owners, edges).expect("generated graph is valid").with_initial(Some(0))
}

/// Rational in `(0, 10]` with denominator dividing 4.
fn positive_cost(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(1..=40), 4)
}

/// Edge-symmetric shortest-path game with costs in `(0, 10]`.
pub fn positive_sp_game(rng: &mut impl Rng, shape: &Shape) -> SpGame {
    let graph = symmetric_graph(rng, &Shape { self_loops: false, ..*shape });
    let costs = (0..graph.num_edges()).map(|_| (0..shape.players).map(|_| positive_cost(rng)).collect()).collect();
    SpGame::new(graph, costs).expect("arity matches")
}

/// Shortest-path game whose cycles are all positive although some edges are
/// not: positive costs reweighted by a random potential.
pub fn positive_cycle_sp_game(rng: &mut impl Rng, shape: &Shape) -> SpGame {
    let graph = symmetric_graph(rng, &Shape { self_loops: false, ..*shape });
    let pi: Vec<Vec<Rational>> =
        (0..shape.players).map(|_| graph.vertices().map(|_| Rational::from(rng.gen_range(-8..=8))).collect()).collect();
    let costs = graph
        .edges()
        .iter()
        .map(|&(u, v)| (0..shape.players).map(|p| positive_cost(rng) - pi[p][u] + pi[p][v]).collect())
        .collect();
    SpGame::new(graph, costs).expect("arity matches")
}

/// Edge-symmetric terminal game with arbitrary terminal and infinite-play costs.
pub fn terminal_game(rng: &mut impl Rng, shape: &Shape) -> TerminalGame {
    let graph = symmetric_graph(rng, shape);
    let n = shape.players;
    let costs: Vec<(Vertex, Vec<Rational>)> =
        graph.terminals().map(|w| (w, (0..n).map(|_| Rational::new(rng.gen_range(-8..=8), 2)).collect())).collect();
    let infinite = (0..n).map(|_| Rational::new(rng.gen_range(-8..=8), 2)).collect();
    TerminalGame::new(graph, costs, Some(infinite)).expect("every terminal has costs")
}

/// Edge-symmetric terminal game where every terminal beats infinite play
/// (negative terminal costs, infinite play 0).
pub fn ciw_game(rng: &mut impl Rng, shape: &Shape) -> TerminalGame {
    let graph = symmetric_graph(rng, shape);
    let n = shape.players;
    let costs: Vec<(Vertex, Vec<Rational>)> =
        graph.terminals().map(|w| (w, (0..n).map(|_| Rational::new(-rng.gen_range(1..=12), 3)).collect())).collect();
    TerminalGame::new(graph, costs, None).expect("every terminal has costs")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{is_edge_symmetric, is_positive, Game};

    #[test]
    fn generated_games_are_valid_and_symmetric() {
        let mut r = rng(7);
        for _ in 0..50 {
            let shape = Shape::random(&mut r, 9, 3);
            let g = positive_sp_game(&mut r, &shape);
            assert!(g.validate().is_empty());
            assert!(is_edge_symmetric(&g.graph));
            let h = positive_cycle_sp_game(&mut r, &shape);
            assert!(is_positive(&h).cycles_positive);
            let t = ciw_game(&mut r, &Shape { self_loops: true, ..shape });
            assert!(t.validate().is_empty());
            assert!(t.satisfies_ciw());
        }
    }

    #[test]
    fn same_seed_same_game() {
        let shape = Shape::random(&mut rng(1), 9, 3);
        assert_eq!(terminal_game(&mut rng(3), &shape), terminal_game(&mut rng(3), &shape));
    }
}
