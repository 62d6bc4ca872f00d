//! Nash equilibria of edge-symmetric positive shortest-path games.
//!
//! The equilibrium play is a path to the (merged) terminal that crosses as
//! few player components as possible and that no single player can shorten
//! using only their own moves. Vertices off the path steer back towards it.

use std::cmp::Ordering;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::game::{is_edge_symmetric, merge_terminals, SpGame};
use crate::graph::{Player, Situation, Vertex};
use crate::oracle::{verify_ne_sp, EnumConfig};
use crate::paths::{dijkstra, zero_one_bfs, Adjacency};
use crate::rational::Rational;
use crate::scc::Decomposition;

/// A path from the start to the terminal with its block structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPath {
    pub vertices: Vec<Vertex>,
    /// Index ranges into `vertices` of the maximal runs inside one component.
    pub blocks: Vec<Range<usize>>,
    /// Improvement steps taken to make the path special.
    pub iterations: usize,
}

impl SpecialPath {
    fn new(dec: &Decomposition, vertices: Vec<Vertex>, iterations: usize) -> Self {
        let blocks = blocks_of(dec, &vertices);
        SpecialPath { vertices, blocks, iterations }
    }

    /// Number of blocks.
    pub fn q(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_vertices(&self, j: usize) -> &[Vertex] {
        &self.vertices[self.blocks[j].clone()]
    }

    /// Cost of each block's outgoing moves for the block's owner. One entry
    /// per block except the terminal one.
    pub fn r_vector(&self, g: &SpGame, dec: &Decomposition) -> Vec<Rational> {
        r_vector(g, dec, &self.vertices, &self.blocks)
    }
}

fn blocks_of(dec: &Decomposition, path: &[Vertex]) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=path.len() {
        if k == path.len() || !dec.same(path[k - 1], path[k]) {
            out.push(start..k);
            start = k;
        }
    }
    out
}

fn r_vector(g: &SpGame, dec: &Decomposition, path: &[Vertex], blocks: &[Range<usize>]) -> Vec<Rational> {
    blocks[..blocks.len().saturating_sub(1)]
        .iter()
        .map(|b| {
            let p = dec.player(dec.of(path[b.start])).expect("only the last block is terminal");
            b.clone().map(|k| edge_cost(g, path[k], path[k + 1], p)).sum()
        })
        .collect()
}

/// Compares from the last entry backwards.
fn reverse_lex(a: &[Rational], b: &[Rational]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

fn edge_cost(g: &SpGame, u: Vertex, v: Vertex, p: Player) -> Rational {
    g.edge_cost(u, v, p).expect("path moves are edges")
}

fn path_cost(g: &SpGame, path: &[Vertex], p: Player) -> Rational {
    path.windows(2).map(|w| edge_cost(g, w[0], w[1], p)).sum()
}

/// A path from `v0` to `vt` crossing the fewest component boundaries,
/// found by 0/1 breadth-first search.
pub fn lambda_shortest(g: &SpGame, dec: &Decomposition, v0: Vertex, vt: Vertex) -> Result<Vec<Vertex>> {
    let graph = &g.graph;
    let adj: Vec<Vec<(usize, u8)>> =
        graph.vertices().map(|u| graph.successors(u).map(|v| (v, u8::from(!dec.same(u, v)))).collect()).collect();
    let (dist, pred) = zero_one_bfs(&adj, v0);
    if dist[vt].is_none() {
        return Err(Error::Unreachable(v0));
    }
    let mut path = vec![vt];
    let mut v = vt;
    while let Some(u) = pred[v] {
        path.push(u);
        v = u;
    }
    path.reverse();
    Ok(path)
}

/// Shortest distances from `source` inside its component, measured with the
/// owner's costs.
pub fn component_distances(g: &SpGame, dec: &Decomposition, source: Vertex) -> Vec<Option<Rational>> {
    let q = dec.of(source);
    let Some(p) = dec.player(q) else {
        let mut d = vec![None; g.graph.num_vertices()];
        d[source] = Some(Rational::zero());
        return d;
    };
    let adj: Adjacency = g
        .graph
        .vertices()
        .map(|u| {
            if dec.of(u) != q {
                return Vec::new();
            }
            g.graph.out_edges(u).iter().filter(|&&(v, _)| dec.of(v) == q).map(|&(v, e)| (v, g.cost(e, p))).collect()
        })
        .collect();
    dijkstra(&adj, source).dist
}

/// `d(u, v)` inside the common component of `u` and `v`.
pub fn intra_component_distance(g: &SpGame, dec: &Decomposition, u: Vertex, v: Vertex) -> Rational {
    assert!(dec.same(u, v), "vertices must share a component");
    component_distances(g, dec, u)[v].expect("components are strongly connected")
}

/// Cost for `p` of the best path `p` can make from the start when every
/// other vertex must follow `path`.
fn best_own_detour(g: &SpGame, path: &[Vertex], p: Player) -> Option<Rational> {
    let graph = &g.graph;
    let mut adj: Adjacency = vec![Vec::new(); graph.num_vertices()];
    for u in graph.vertices() {
        if graph.controller(u) == Some(p) {
            adj[u] = graph.out_edges(u).iter().map(|&(v, e)| (v, g.cost(e, p))).collect();
        }
    }
    for w in path.windows(2) {
        if graph.controller(w[0]) != Some(p) {
            adj[w[0]].push((w[1], edge_cost(g, w[0], w[1], p)));
        }
    }
    dijkstra(&adj, path[0]).dist[*path.last().expect("non-empty")]
}

/// Whether `path` is a shortest path for `p` among the paths `p` can make
/// alone from it.
pub fn is_special_for(g: &SpGame, path: &[Vertex], p: Player) -> bool {
    best_own_detour(g, path, p) == Some(path_cost(g, path, p))
}

/// No vertex of block `j` has a move into block `k >= j + 2`.
fn holds_d(g: &SpGame, dec: &Decomposition, path: &[Vertex], blocks: &[Range<usize>]) -> bool {
    let comps: Vec<usize> = blocks.iter().map(|b| dec.of(path[b.start])).collect();
    comps.iter().enumerate().all(|(j, &qj)| {
        dec.members[qj]
            .iter()
            .all(|&v| g.graph.successors(v).all(|w| comps.iter().skip(j + 2).all(|&qk| dec.of(w) != qk)))
    })
}

/// Repeatedly shortens `path` for a player who can improve on it, until every
/// player finds it shortest. Each step strictly decreases the reverse
/// lexicographic order of the block costs.
pub fn make_special(g: &SpGame, dec: &Decomposition, path: Vec<Vertex>) -> Result<SpecialPath> {
    let mut cur = SpecialPath::new(dec, path, 0);
    let q = cur.q();
    loop {
        debug_assert!(holds_d(g, dec, &cur.vertices, &cur.blocks));
        let Some(p) = (0..g.players()).find(|&p| !is_special_for(g, &cur.vertices, p)) else {
            return Ok(cur);
        };
        let next = improve(g, dec, &cur, p).ok_or(Error::MeasureNotDecreased)?;
        if next.q() != q || reverse_lex(&next.r_vector(g, dec), &cur.r_vector(g, dec)) != Ordering::Less {
            return Err(Error::MeasureNotDecreased);
        }
        if !holds_d(g, dec, &next.vertices, &next.blocks) {
            return Err(Error::MeasureNotDecreased);
        }
        cur = next;
    }
}

/// Splices in a cheaper route for `p` through one of `p`'s blocks, rejoining
/// the path within the next block.
fn improve(g: &SpGame, dec: &Decomposition, cur: &SpecialPath, p: Player) -> Option<SpecialPath> {
    let graph = &g.graph;
    let path = &cur.vertices;
    for j in 0..cur.q() - 1 {
        let block = &cur.blocks[j];
        let qj = dec.of(path[block.start]);
        if dec.player(qj) != Some(p) {
            continue;
        }
        let next = &cur.blocks[j + 1];
        let in_next = |v: Vertex| path[next.clone()].contains(&v);
        let mut adj: Adjacency = vec![Vec::new(); graph.num_vertices()];
        for &u in &dec.members[qj] {
            adj[u] = graph
                .out_edges(u)
                .iter()
                .filter(|&&(v, _)| dec.of(v) == qj || in_next(v))
                .map(|&(v, e)| (v, g.cost(e, p)))
                .collect();
        }
        for k in next.start..next.end - 1 {
            adj[path[k]].push((path[k + 1], edge_cost(g, path[k], path[k + 1], p)));
        }
        let (from, to) = (block.start, next.end - 1);
        let sp = dijkstra(&adj, path[from]);
        let d = sp.dist[path[to]].expect("the path itself is a candidate");
        if d < path_cost(g, &path[from..=to], p) {
            let detour = sp.path_to(path[to]).expect("reachable");
            let mut vertices = path[..from].to_vec();
            vertices.extend(detour);
            vertices.extend_from_slice(&path[to + 1..]);
            return Some(SpecialPath::new(dec, vertices, cur.iterations + 1));
        }
    }
    None
}

/// Situation following `path`; other vertices move to the earliest block
/// they can reach, entering it where its owner is closest from the block's
/// first vertex, and fall back to their lowest-id move.
pub fn extend_to_situation(g: &SpGame, dec: &Decomposition, path: &SpecialPath) -> Situation {
    let graph = &g.graph;
    let mut sigma = Situation::lowest_id(graph);
    let mut on_path = vec![false; graph.num_vertices()];
    for w in path.vertices.windows(2) {
        sigma.set(w[0], w[1]);
        on_path[w[0]] = true;
    }
    let heads: Vec<Vertex> = path.blocks.iter().map(|b| path.vertices[b.start]).collect();
    let mut first_block = vec![None; dec.len()];
    for (k, &u) in heads.iter().enumerate().rev() {
        first_block[dec.of(u)] = Some(k);
    }
    let mut dist: Vec<Option<Vec<Option<Rational>>>> = vec![None; heads.len()];
    for v in graph.non_terminals() {
        if on_path[v] {
            continue;
        }
        let Some(k) = graph.successors(v).filter_map(|w| first_block[dec.of(w)]).min() else {
            continue;
        };
        let d = dist[k].get_or_insert_with(|| component_distances(g, dec, heads[k]));
        let qk = dec.of(heads[k]);
        let u = graph
            .successors(v)
            .filter(|&w| dec.of(w) == qk)
            .min_by_key(|&w| (d[w].expect("components are strongly connected"), w))
            .expect("v has a move into block k");
        sigma.set(v, u);
    }
    sigma
}

/// Result of the shortest-path equilibrium construction.
#[derive(Clone, Debug)]
pub struct SpNe {
    pub situation: Situation,
    /// Special path in the game with merged terminals; `None` when no
    /// terminal is reachable.
    pub path: Option<SpecialPath>,
}

pub fn sp_equilibrium(g: &SpGame, v0: Vertex) -> Result<Situation> {
    solve_sp_ne(g, v0).map(|s| s.situation)
}

pub fn solve_sp_ne(g: &SpGame, v0: Vertex) -> Result<SpNe> {
    let graph = &g.graph;
    if graph.is_terminal(v0) {
        return Err(Error::TerminalStart(v0));
    }
    if !is_edge_symmetric(graph) {
        return Err(Error::NotSymmetric);
    }
    if !g.costs.iter().flatten().all(Rational::is_positive) {
        return Err(Error::NotPositive);
    }
    let (merged, merge) = merge_terminals(g);
    let m0 = merge.to_merged[v0];
    let reachable = merge.terminal.filter(|&t| merged.graph.reachable_from(m0)[t]);
    let (situation, path) = match reachable {
        None => (Situation::lowest_id(graph), None),
        Some(vt) => {
            let dec = Decomposition::new(&merged.graph);
            let start = lambda_shortest(&merged, &dec, m0, vt)?;
            let q = blocks_of(&dec, &start).len();
            let special = make_special(&merged, &dec, start)?;
            debug_assert_eq!(special.q(), q);
            let sigma = extend_to_situation(&merged, &dec, &special);
            (merge.lift(&sigma), Some(special))
        }
    };
    if let Some(d) = verify_ne_sp(g, &situation, v0, EnumConfig::default())? {
        return Err(Error::VerificationFailed(format!(
            "player {} improves from {} to {}",
            d.player + 1,
            d.before,
            d.after
        )));
    }
    Ok(SpNe { situation, path })
}
