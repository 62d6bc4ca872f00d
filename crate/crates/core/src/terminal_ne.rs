//! Nash equilibria of edge-symmetric terminal games.

use crate::error::{Error, Result};
use crate::game::{is_edge_symmetric, TerminalGame};
use crate::graph::{Situation, Vertex};
use crate::play::{terminal_cost, trace};
use crate::reductions::contract_small_game;
use crate::response::check_ne;

/// Which construction produced the equilibrium on the small game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Unreachable,
    /// Two-cycle lock between `v0` and a neighbour without terminal moves.
    Lock,
    /// Path `v0 -> v1 -> t(v1)`.
    Path,
    /// Two-cycle lock where `v1`'s owner likes infinite play at least as much.
    PreferredLock,
    /// Terminal moves of `v0` removed; the equilibrium of the rest is kept.
    KeepRest,
    /// Terminal moves of `v0` removed; `v0` then takes its best terminal.
    TakeTerminal,
}

#[derive(Clone, Debug)]
pub struct TerminalNe {
    pub situation: Situation,
    pub construction: Construction,
}

/// Builds a NE from `v0` on the small game, lifts it back and checks it.
pub fn terminal_equilibrium(g: &TerminalGame, v0: Vertex) -> Result<Situation> {
    solve_terminal_ne(g, v0).map(|s| s.situation)
}

pub fn solve_terminal_ne(g: &TerminalGame, v0: Vertex) -> Result<TerminalNe> {
    if g.graph.is_terminal(v0) {
        return Err(Error::TerminalStart(v0));
    }
    if !is_edge_symmetric(&g.graph) {
        return Err(Error::NotSymmetric);
    }
    let (small, map) = contract_small_game(g);
    let (small_sigma, construction) = construct(&small, map.comp[v0], true);
    let situation = map.lift(&small_sigma);
    if let Some(d) = check_ne(g, &situation, v0) {
        return Err(Error::VerificationFailed(format!(
            "player {} improves from {} to {} starting at {}",
            d.player + 1,
            d.before,
            d.after,
            g.graph.name(v0)
        )));
    }
    Ok(TerminalNe { situation, construction })
}

fn construct(g: &TerminalGame, v0: Vertex, top: bool) -> (Situation, Construction) {
    let graph = &g.graph;
    let mut sigma = Situation::lowest_id(graph);
    let reach = graph.reachable_from(v0);
    if !graph.terminals().any(|t| reach[t]) {
        return (sigma, Construction::Unreachable);
    }
    let n0: Vec<Vertex> = graph.successors(v0).collect();
    let has_terminal = |v: Vertex| graph.successors(v).any(|w| graph.is_terminal(w));
    let t = |v: Vertex| g.best_terminal(v).expect("vertex has a terminal move");
    let i0 = graph.controller(v0).expect("start is not terminal");

    if has_terminal(v0) {
        debug_assert!(top, "terminal moves of v0 are gone after one deletion");
        let tv0 = t(v0);
        let drop: Vec<_> =
            graph.out_edges(v0).iter().filter(|&&(w, _)| graph.is_terminal(w)).map(|&(_, e)| e).collect();
        if drop.len() == graph.out_degree(v0) {
            sigma.set(v0, tv0);
            return (sigma, Construction::TakeTerminal);
        }
        let rest = g.without_edges(&drop);
        let (inner, _) = construct(&rest, v0, false);
        let outcome = terminal_cost(&rest, &trace(&rest.graph, &inner, v0), i0);
        if outcome <= g.terminal_cost(tv0, i0) {
            return (inner, Construction::KeepRest);
        }
        let mut sigma = inner;
        sigma.set(v0, tv0);
        return (sigma, Construction::TakeTerminal);
    }

    if let Some(v1) = n0.iter().copied().find(|&v| !has_terminal(v)) {
        for &x in &n0 {
            sigma.set(x, v0);
        }
        sigma.set(v0, v1);
        for y in graph.successors(v1) {
            if y != v0 && !n0.contains(&y) {
                sigma.set(y, v1);
            }
        }
        return (sigma, Construction::Lock);
    }

    let v1 = n0.iter().copied().min_by_key(|&v| (g.terminal_cost(t(v), i0), v)).expect("v0 has moves");
    let i1 = graph.controller(v1).expect("v1 has a terminal move");
    let n1: Vec<Vertex> = graph.successors(v1).collect();
    if g.terminal_cost(t(v1), i1) < g.infinite_cost(i1) {
        for &x in &n1 {
            if !graph.is_terminal(x) && x != v1 {
                sigma.set(x, v1);
            }
        }
        for &v in &n0 {
            if !n1.contains(&v) {
                sigma.set(v, t(v));
            }
        }
        sigma.set(v0, v1);
        sigma.set(v1, t(v1));
        (sigma, Construction::Path)
    } else {
        for &x in &n0 {
            sigma.set(x, v0);
        }
        for &y in &n1 {
            if !graph.is_terminal(y) && y != v0 && !n0.contains(&y) {
                sigma.set(y, v1);
            }
        }
        sigma.set(v0, v1);
        (sigma, Construction::PreferredLock)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{GameGraph, Owner};
    use crate::oracle::{find_all_ne, EnumConfig};

    #[test]
    fn fixtures_from_every_start() {
        for g in [fixtures::g2(), fixtures::g3s(), fixtures::chain()] {
            for v in g.graph.non_terminals() {
                let s = terminal_equilibrium(&g, v).unwrap();
                let all = find_all_ne(&g, v, EnumConfig::default()).unwrap();
                assert!(all.contains(&s), "start {v}");
            }
        }
    }

    #[test]
    fn g6_is_rejected() {
        assert!(matches!(terminal_equilibrium(&fixtures::g6(), 0), Err(Error::NotSymmetric)));
    }

    #[test]
    fn single_terminal_move() {
        let graph = GameGraph::new(1, vec![Owner::Player(0), Owner::Terminal], vec![(0, 1)]).unwrap();
        let g = TerminalGame::new(graph, [(1, vec![(-1).into()])], None).unwrap();
        let ne = solve_terminal_ne(&g, 0).unwrap();
        assert_eq!(ne.situation.get(0), Some(1));
        assert_eq!(ne.construction, Construction::TakeTerminal);
    }

    #[test]
    fn random_games_against_enumeration() {
        use crate::generate::{rng, terminal_game, Shape};
        use crate::oracle::verify_ne;
        let mut r = rng(11);
        for _ in 0..300 {
            let shape = Shape { self_loops: true, ..Shape::random(&mut r, 9, 3) };
            let g = terminal_game(&mut r, &shape);
            for v in g.graph.non_terminals() {
                let s = terminal_equilibrium(&g, v).unwrap();
                assert!(verify_ne(&g, &s, v, EnumConfig::default()).unwrap().is_none());
            }
        }
    }
}
