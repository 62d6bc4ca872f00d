//! Best responses in terminal games, computed on the one-player graph
//! instead of by enumerating strategies.

use std::collections::VecDeque;

use crate::game::TerminalGame;
use crate::graph::{GameGraph, Player, Situation, Vertex};
use crate::oracle::{Deviation, Verdict};
use crate::play::{terminal_cost, trace};
use crate::rational::Rational;
use crate::scc::tarjan;

/// Moves available to player `p` when everyone else is held to `sigma`:
/// all out-edges at `p`'s vertices, the chosen edge elsewhere.
pub fn one_player_graph(g: &GameGraph, sigma: &Situation, p: Player) -> Vec<Vec<Vertex>> {
    g.vertices()
        .map(|v| match g.controller(v) {
            None => Vec::new(),
            Some(q) if q == p => g.successors(v).collect(),
            Some(_) => vec![sigma.next(v)],
        })
        .collect()
}

/// Vertices lying on some cycle of `adj`.
pub fn cyclic_vertices(adj: &[Vec<Vertex>]) -> Vec<bool> {
    let comp = tarjan(adj);
    let mut size = vec![0usize; adj.len()];
    for &c in &comp {
        size[c] += 1;
    }
    (0..adj.len()).map(|v| size[comp[v]] >= 2 || adj[v].contains(&v)).collect()
}

/// Lowest cost player `p` can secure from each vertex against the fixed
/// moves of `sigma`: the cheapest reachable terminal, or infinite play when
/// a cycle is reachable and cheaper.
pub fn best_values(g: &TerminalGame, sigma: &Situation, p: Player) -> Vec<Rational> {
    let graph = &g.graph;
    let adj = one_player_graph(graph, sigma, p);
    let comp = tarjan(&adj);
    let k = comp.iter().max().map_or(0, |m| m + 1);
    let cyclic = cyclic_vertices(&adj);
    let mut best: Vec<Option<Rational>> = vec![None; k];
    let mut members = vec![Vec::new(); k];
    for v in graph.vertices() {
        members[comp[v]].push(v);
        let here = if graph.is_terminal(v) {
            Some(g.terminal_cost(v, p))
        } else if cyclic[v] {
            Some(g.infinite_cost(p))
        } else {
            None
        };
        best[comp[v]] = min_opt(best[comp[v]], here);
    }
    // Components come out sinks first, so successors are already final.
    for c in 0..k {
        for &v in &members[c] {
            for &w in &adj[v] {
                if comp[w] != c {
                    best[c] = min_opt(best[c], best[comp[w]]);
                }
            }
        }
    }
    graph.vertices().map(|v| best[comp[v]].expect("every walk ends in a terminal or a cycle")).collect()
}

fn min_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Cost for player `p` of the play from each vertex under `sigma`.
pub fn current_values(g: &TerminalGame, sigma: &Situation, p: Player) -> Vec<Rational> {
    g.graph.vertices().map(|v| terminal_cost(g, &trace(&g.graph, sigma, v), p)).collect()
}

/// A change of `p`'s strategy that reaches `target` from `start`, where
/// `target` is a reachable value of the one-player graph.
fn realize(g: &TerminalGame, sigma: &Situation, p: Player, start: Vertex, target: Rational) -> Situation {
    let graph = &g.graph;
    let adj = one_player_graph(graph, sigma, p);
    let cyclic = cyclic_vertices(&adj);
    let wanted = |v: Vertex| {
        if graph.is_terminal(v) {
            g.terminal_cost(v, p) == target
        } else {
            cyclic[v] && g.infinite_cost(p) == target
        }
    };
    let mut parent = vec![None; graph.num_vertices()];
    let mut seen = vec![false; graph.num_vertices()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut hit = None;
    while let Some(v) = queue.pop_front() {
        if wanted(v) {
            hit = Some(v);
            break;
        }
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    let x = hit.expect("target value is reachable");
    let mut alt = sigma.clone();
    let mut v = x;
    while let Some(u) = parent[v] {
        alt.set(u, v);
        v = u;
    }
    if !graph.is_terminal(x) {
        // Close a cycle through x inside its strongly connected piece.
        let comp = tarjan(&adj);
        let mut back = vec![None; graph.num_vertices()];
        let mut seen = vec![false; graph.num_vertices()];
        let mut queue = VecDeque::new();
        for &w in &adj[x] {
            if comp[w] == comp[x] && !seen[w] {
                seen[w] = true;
                back[w] = Some(x);
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            if v == x {
                break;
            }
            for &w in &adj[v] {
                if comp[w] == comp[x] && !seen[w] {
                    seen[w] = true;
                    back[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        let mut v = x;
        loop {
            let u = back[v].expect("x lies on a cycle");
            alt.set(u, v);
            v = u;
            if v == x {
                break;
            }
        }
    }
    alt
}

/// The first improving deviation from `start`, players in order.
pub fn check_ne(g: &TerminalGame, sigma: &Situation, start: Vertex) -> Verdict<Rational> {
    let play = trace(&g.graph, sigma, start);
    for p in 0..g.players() {
        let before = terminal_cost(g, &play, p);
        let best = best_values(g, sigma, p)[start];
        if best < before {
            return Some(witness(g, sigma, p, start, before, best));
        }
    }
    None
}

/// Like [`check_ne`] for every non-terminal start, ascending.
pub fn check_une(g: &TerminalGame, sigma: &Situation) -> Verdict<Rational> {
    let players: Vec<(Vec<Rational>, Vec<Rational>)> =
        (0..g.players()).map(|p| (current_values(g, sigma, p), best_values(g, sigma, p))).collect();
    for v in g.graph.non_terminals() {
        for (p, (cur, best)) in players.iter().enumerate() {
            if best[v] < cur[v] {
                return Some(witness(g, sigma, p, v, cur[v], best[v]));
            }
        }
    }
    None
}

fn witness(
    g: &TerminalGame,
    sigma: &Situation,
    p: Player,
    start: Vertex,
    before: Rational,
    after: Rational,
) -> Deviation<Rational> {
    let situation = realize(g, sigma, p, start, after);
    debug_assert_eq!(terminal_cost(g, &trace(&g.graph, &situation, start), p), after);
    Deviation { player: p, start, situation, before, after }
}
