//! Exact shortest-path routines over small weighted digraphs.
//!
//! Graphs are plain adjacency lists `adj[u] = [(v, w), ...]`; callers build
//! them from a game for one player's costs or a restricted edge set.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::rational::{common_denominator, Rational};

pub type Adjacency = Vec<Vec<(usize, Rational)>>;

/// Single-source shortest paths for non-negative weights.
///
/// Vertices are settled in `(distance, id)` order and predecessors change
/// only on strict improvement, so the result is deterministic.
#[derive(Debug, Clone)]
pub struct ShortestPaths {
    pub dist: Vec<Option<Rational>>,
    pub pred: Vec<Option<usize>>,
}

impl ShortestPaths {
    /// Vertex sequence from the source to `target`, if reachable.
    pub fn path_to(&self, target: usize) -> Option<Vec<usize>> {
        self.dist[target]?;
        let mut path = vec![target];
        let mut v = target;
        while let Some(p) = self.pred[v] {
            path.push(p);
            v = p;
        }
        path.reverse();
        Some(path)
    }
}

pub fn dijkstra(adj: &Adjacency, source: usize) -> ShortestPaths {
    let n = adj.len();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(Rational::zero());
    heap.push(Reverse((Rational::zero(), source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &(v, w) in &adj[u] {
            debug_assert!(!w.is_negative(), "dijkstra needs non-negative weights");
            let nd = d + w;
            if dist[v].is_none_or(|old| nd < old) && !done[v] {
                dist[v] = Some(nd);
                pred[v] = Some(u);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    ShortestPaths { dist, pred }
}

/// Breadth-first search for 0/1 weights using a double-ended queue.
pub fn zero_one_bfs(adj: &[Vec<(usize, u8)>], source: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let n = adj.len();
    let mut dist: Vec<Option<usize>> = vec![None; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut deque = VecDeque::new();
    dist[source] = Some(0);
    deque.push_back(source);
    while let Some(u) = deque.pop_front() {
        if done[u] {
            continue;
        }
        done[u] = true;
        let du = dist[u].expect("queued vertices have a distance");
        for &(v, w) in &adj[u] {
            let nd = du + w as usize;
            if !done[v] && dist[v].is_none_or(|old| nd < old) {
                dist[v] = Some(nd);
                pred[v] = Some(u);
                if w == 0 {
                    deque.push_front(v);
                } else {
                    deque.push_back(v);
                }
            }
        }
    }
    (dist, pred)
}

/// Bellman-Ford from a virtual source joined to every vertex by a zero edge.
///
/// Returns the potentials `π(v) = min(0, shortest distance)` or, if some
/// cycle has negative total weight, one such cycle in forward order.
pub fn bellman_ford_potentials(n: usize, edges: &[(usize, usize, Rational)]) -> Result<Vec<Rational>, Vec<usize>> {
    let mut dist = vec![Rational::zero(); n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last_relaxed = None;
    for _ in 0..=n {
        last_relaxed = None;
        for &(u, v, w) in edges {
            let nd = dist[u] + w;
            if nd < dist[v] {
                dist[v] = nd;
                pred[v] = Some(u);
                last_relaxed = Some(v);
            }
        }
        if last_relaxed.is_none() {
            return Ok(dist);
        }
    }
    // Walking back n steps from a vertex relaxed in round n+1 lands on a cycle.
    let mut v = last_relaxed.expect("relaxation in final round");
    for _ in 0..n {
        v = pred[v].expect("relaxed vertices have predecessors");
    }
    let start = v;
    let mut cycle = vec![start];
    let mut u = pred[start].expect("cycle vertex has predecessor");
    while u != start {
        cycle.push(u);
        u = pred[u].expect("cycle vertex has predecessor");
    }
    cycle.reverse();
    Err(cycle)
}

/// Some directed cycle whose total weight is `<= 0`, if one exists.
///
/// Weights are shifted down by `1 / (D (n + 1))`, `D` the common denominator,
/// which turns exactly the non-positive cycles into negative ones.
pub fn non_positive_cycle(n: usize, edges: &[(usize, usize, Rational)]) -> Option<Vec<usize>> {
    let d = common_denominator(edges.iter().map(|(_, _, w)| w));
    let delta = Rational::new(1, d * (n as i128 + 1));
    let shifted: Vec<_> = edges.iter().map(|&(u, v, w)| (u, v, w - delta)).collect();
    bellman_ford_potentials(n, &shifted).err()
}

/// Minimum mean weight over all directed cycles (Karp), `None` if acyclic.
pub fn min_cycle_mean(n: usize, edges: &[(usize, usize, Rational)]) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    // table[k][v]: least weight of a walk with exactly k edges ending at v.
    let mut table: Vec<Vec<Option<Rational>>> = vec![vec![Some(Rational::zero()); n]];
    for k in 1..=n {
        let mut row: Vec<Option<Rational>> = vec![None; n];
        for &(u, v, w) in edges {
            if let Some(du) = table[k - 1][u] {
                let nd = du + w;
                if row[v].is_none_or(|old| nd < old) {
                    row[v] = Some(nd);
                }
            }
        }
        table.push(row);
    }
    let mut best: Option<Rational> = None;
    for v in 0..n {
        let Some(dn) = table[n][v] else { continue };
        let worst =
            (0..n).filter_map(|k| table[k][v].map(|dk| (dn - dk) / Rational::from_integer((n - k) as i128))).max();
        if let Some(m) = worst {
            if best.is_none_or(|b| m < b) {
                best = Some(m);
            }
        }
    }
    best
}
