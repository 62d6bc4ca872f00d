//! Brute-force ground truth: enumerate situations, tabulate normal forms,
//! list every NE and UNE, and check candidate equilibria.

use std::fmt::{self, Write as _};

use rayon::prelude::*;

use crate::cost::ExtCost;
use crate::error::{Error, Result};
use crate::game::{Game, SpGame};
use crate::graph::{GameGraph, Player, Situation, Vertex};
use crate::paths::{dijkstra, Adjacency};
use crate::play::trace;

pub const DEFAULT_CAP: u128 = 1_000_000;
pub const CAP_VAR: &str = "PATHGAMES_ENUM_CAP";

/// Limit on how many situations (or strategies) the oracle will enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub cap: u128,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { cap: DEFAULT_CAP }
    }
}

impl EnumConfig {
    /// The default cap, overridden by `PATHGAMES_ENUM_CAP` when set and numeric.
    pub fn from_env() -> Self {
        std::env::var(CAP_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(|cap| EnumConfig { cap })
            .unwrap_or_default()
    }

    fn check(&self, count: u128) -> Result<()> {
        if count > self.cap {
            Err(Error::TooLarge { count, cap: self.cap })
        } else {
            Ok(())
        }
    }
}

/// Mixed-radix counter over the moves of a list of vertices; the first
/// vertex is the most significant digit.
#[derive(Clone, Debug)]
struct Radix {
    vertices: Vec<Vertex>,
    moves: Vec<Vec<Vertex>>,
    count: u128,
}

impl Radix {
    fn new(g: &GameGraph, vertices: Vec<Vertex>) -> Self {
        let moves: Vec<Vec<Vertex>> = vertices.iter().map(|&v| g.successors(v).collect()).collect();
        let count = moves.iter().fold(1u128, |acc, m| acc.saturating_mul(m.len() as u128));
        Radix { vertices, moves, count }
    }

    fn write(&self, mut index: u128, sigma: &mut Situation) {
        for (k, &v) in self.vertices.iter().enumerate().rev() {
            let r = self.moves[k].len() as u128;
            sigma.set(v, self.moves[k][(index % r) as usize]);
            index /= r;
        }
    }

    fn moves_at(&self, mut index: u128) -> Vec<(Vertex, Vertex)> {
        let mut out = vec![(0, 0); self.vertices.len()];
        for (k, &v) in self.vertices.iter().enumerate().rev() {
            let r = self.moves[k].len() as u128;
            out[k] = (v, self.moves[k][(index % r) as usize]);
            index /= r;
        }
        out
    }
}

/// Number of situations: the product of non-terminal out-degrees.
pub fn situation_count(g: &GameGraph) -> u128 {
    Radix::new(g, g.non_terminals().collect()).count
}

/// Number of strategies of one player.
pub fn strategy_count(g: &GameGraph, p: Player) -> u128 {
    Radix::new(g, g.vertices_of(p).collect()).count
}

/// Iterator over all situations in lexicographic order (by vertex id, then
/// by out-neighbour id).
pub struct Situations {
    radix: Radix,
    base: Situation,
    next: u128,
}

impl Iterator for Situations {
    type Item = Situation;

    fn next(&mut self) -> Option<Situation> {
        if self.next >= self.radix.count {
            return None;
        }
        let mut s = self.base.clone();
        self.radix.write(self.next, &mut s);
        self.next += 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.radix.count - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Situations {}

pub fn enumerate_situations(g: &GameGraph, cfg: EnumConfig) -> Result<Situations> {
    let radix = Radix::new(g, g.non_terminals().collect());
    cfg.check(radix.count)?;
    Ok(Situations { radix, base: Situation::lowest_id(g), next: 0 })
}

/// All strategies of player `p`, each as its list of moves, in lexicographic order.
pub fn strategies(g: &GameGraph, p: Player, cfg: EnumConfig) -> Result<Vec<Vec<(Vertex, Vertex)>>> {
    let radix = Radix::new(g, g.vertices_of(p).collect());
    cfg.check(radix.count)?;
    Ok((0..radix.count).map(|i| radix.moves_at(i)).collect())
}

/// The game tabulated from one start vertex: one axis of strategies per
/// player, one cost vector per strategy profile.
#[derive(Clone, Debug)]
pub struct NormalForm<C> {
    pub start: Vertex,
    pub axes: Vec<Vec<Vec<(Vertex, Vertex)>>>,
    /// Indexed by profile, player 1's strategy most significant.
    pub cells: Vec<Vec<C>>,
    /// `minimal[cell][p]`: player `p` cannot do better by changing only their strategy.
    pub minimal: Vec<Vec<bool>>,
    base: Situation,
}

impl<C: Ord + Copy> NormalForm<C> {
    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.axes.len()];
        for p in (0..self.axes.len().saturating_sub(1)).rev() {
            strides[p] = strides[p + 1] * self.axes[p + 1].len();
        }
        strides
    }

    pub fn index(&self, profile: &[usize]) -> usize {
        self.strides().iter().zip(profile).map(|(s, k)| s * k).sum()
    }

    pub fn profile(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.axes.len()];
        for p in (0..self.axes.len()).rev() {
            let r = self.axes[p].len();
            out[p] = index % r;
            index /= r;
        }
        out
    }

    pub fn situation(&self, profile: &[usize]) -> Situation {
        let mut s = self.base.clone();
        for (p, &k) in profile.iter().enumerate() {
            for &(v, w) in &self.axes[p][k] {
                s.set(v, w);
            }
        }
        s
    }

    pub fn cell(&self, profile: &[usize]) -> &[C] {
        &self.cells[self.index(profile)]
    }

    pub fn is_ne(&self, index: usize) -> bool {
        self.minimal[index].iter().all(|&m| m)
    }

    /// Profiles that are NE, in ascending situation order.
    pub fn equilibria(&self) -> Vec<Situation> {
        let mut out: Vec<Situation> =
            (0..self.cells.len()).filter(|&i| self.is_ne(i)).map(|i| self.situation(&self.profile(i))).collect();
        out.sort();
        out
    }
}

impl<C: Ord + Copy + fmt::Display> NormalForm<C> {
    /// CSV with one row per profile: strategies, costs, and the NE flag.
    pub fn to_csv(&self, g: &GameGraph) -> String {
        let n = self.axes.len();
        let mut out = String::new();
        let head: Vec<String> = (1..=n)
            .map(|p| format!("strategy{p}"))
            .chain((1..=n).map(|p| format!("cost{p}")))
            .chain(["ne".to_string()])
            .collect();
        out.push_str(&head.join(","));
        out.push('\n');
        for (i, cell) in self.cells.iter().enumerate() {
            let prof = self.profile(i);
            let mut row: Vec<String> =
                prof.iter().enumerate().map(|(p, &k)| strategy_label(g, &self.axes[p][k])).collect();
            row.extend(cell.iter().map(|c| c.to_string()));
            row.push(self.is_ne(i).to_string());
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Plain-text table. With two players, columns are player 1's strategies
    /// and rows player 2's; a cost is written `_x_` when its player cannot
    /// improve on it by deviating alone.
    pub fn to_text(&self, g: &GameGraph) -> String {
        let mark = |i: usize, p: usize| {
            let c = self.cells[i][p];
            if self.minimal[i][p] {
                format!("_{c}_")
            } else {
                c.to_string()
            }
        };
        let mut out = String::new();
        if self.axes.len() != 2 {
            for i in 0..self.cells.len() {
                let prof = self.profile(i);
                let strat: Vec<String> =
                    prof.iter().enumerate().map(|(p, &k)| strategy_label(g, &self.axes[p][k])).collect();
                let costs: Vec<String> = (0..self.axes.len()).map(|p| mark(i, p)).collect();
                let _ = writeln!(out, "{} | {}", strat.join(" | "), costs.join(" / "));
            }
            return out;
        }
        let cols: Vec<String> = self.axes[0].iter().map(|s| strategy_label(g, s)).collect();
        let rows: Vec<String> = self.axes[1].iter().map(|s| strategy_label(g, s)).collect();
        let grid: Vec<Vec<String>> = (0..rows.len())
            .map(|r| {
                (0..cols.len())
                    .map(|c| {
                        let i = self.index(&[c, r]);
                        format!("{} / {}", mark(i, 0), mark(i, 1))
                    })
                    .collect()
            })
            .collect();
        let w0 = rows.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols.len())
            .map(|c| grid.iter().map(|row| row[c].len()).chain([cols[c].len()]).max().unwrap_or(0))
            .collect();
        let _ = write!(out, "{:w0$}", "");
        for (c, h) in cols.iter().enumerate() {
            let _ = write!(out, " | {:w$}", h, w = widths[c]);
        }
        out.push('\n');
        for (r, row) in grid.iter().enumerate() {
            let _ = write!(out, "{:w0$}", rows[r]);
            for (c, cell) in row.iter().enumerate() {
                let _ = write!(out, " | {:w$}", cell, w = widths[c]);
            }
            out.push('\n');
        }
        out
    }
}

fn strategy_label(g: &GameGraph, moves: &[(Vertex, Vertex)]) -> String {
    if moves.is_empty() {
        return "-".into();
    }
    moves.iter().map(|&(v, w)| format!("{}->{}", g.name(v), g.name(w))).collect::<Vec<_>>().join(" ")
}

pub fn normal_form<G: Game>(g: &G, start: Vertex, cfg: EnumConfig) -> Result<NormalForm<G::Cost>> {
    let graph = g.graph();
    if graph.is_terminal(start) {
        return Err(Error::TerminalStart(start));
    }
    cfg.check(situation_count(graph))?;
    let axes: Vec<Vec<Vec<(Vertex, Vertex)>>> =
        (0..graph.players()).map(|p| strategies(graph, p, cfg)).collect::<Result<_>>()?;
    let mut nf = NormalForm { start, axes, cells: Vec::new(), minimal: Vec::new(), base: Situation::lowest_id(graph) };
    let total: usize = nf.axes.iter().map(Vec::len).product();
    let cells: Vec<Result<Vec<G::Cost>>> =
        (0..total).into_par_iter().map(|i| g.outcome_costs(&nf.situation(&nf.profile(i)), start)).collect();
    nf.cells = cells.into_iter().collect::<Result<_>>()?;

    let strides = nf.strides();
    let mut minimal = vec![vec![false; graph.players()]; total];
    for p in 0..graph.players() {
        let radix = nf.axes[p].len();
        // Fiber base: the same profile with player p's strategy set to 0.
        let mut best: Vec<Option<G::Cost>> = vec![None; total];
        for (i, cell) in nf.cells.iter().enumerate() {
            let base = i - ((i / strides[p]) % radix) * strides[p];
            if best[base].is_none_or(|b| cell[p] < b) {
                best[base] = Some(cell[p]);
            }
        }
        for (i, cell) in nf.cells.iter().enumerate() {
            let base = i - ((i / strides[p]) % radix) * strides[p];
            minimal[i][p] = best[base] == Some(cell[p]);
        }
    }
    nf.minimal = minimal;
    Ok(nf)
}

/// Every NE for plays starting at `start`, in ascending situation order.
pub fn find_all_ne<G: Game>(g: &G, start: Vertex, cfg: EnumConfig) -> Result<Vec<Situation>> {
    Ok(normal_form(g, start, cfg)?.equilibria())
}

/// Situations that are NE from every non-terminal start.
pub fn find_all_une<G: Game>(g: &G, cfg: EnumConfig) -> Result<Vec<Situation>> {
    let graph = g.graph();
    let mut starts = graph.non_terminals();
    let Some(first) = starts.next() else {
        return Ok(enumerate_situations(graph, cfg)?.collect());
    };
    let mut keep = find_all_ne(g, first, cfg)?;
    for v in starts {
        if keep.is_empty() {
            break;
        }
        let ne = find_all_ne(g, v, cfg)?;
        keep.retain(|s| ne.binary_search(s).is_ok());
    }
    Ok(keep)
}

/// A unilateral change of strategy that strictly helps its player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deviation<C> {
    pub player: Player,
    pub start: Vertex,
    pub situation: Situation,
    pub before: C,
    pub after: C,
}

/// Result of an equilibrium check: `None` means no player can improve.
pub type Verdict<C> = Option<Deviation<C>>;

/// Exhaustive check over every strategy of every player from `start`.
pub fn verify_ne<G: Game>(g: &G, sigma: &Situation, start: Vertex, cfg: EnumConfig) -> Result<Verdict<G::Cost>> {
    let graph = g.graph();
    let current = g.outcome_costs(sigma, start)?;
    for p in 0..graph.players() {
        let radix = Radix::new(graph, graph.vertices_of(p).collect());
        cfg.check(radix.count)?;
        for i in 0..radix.count {
            let mut alt = sigma.clone();
            radix.write(i, &mut alt);
            let play = trace(graph, &alt, start);
            let c = g.play_cost(&play, p)?;
            if c < current[p] {
                return Ok(Some(Deviation { player: p, start, situation: alt, before: current[p], after: c }));
            }
        }
    }
    Ok(None)
}

pub fn verify_ne_terminal(
    g: &crate::game::TerminalGame,
    sigma: &Situation,
    start: Vertex,
    cfg: EnumConfig,
) -> Result<Verdict<crate::rational::Rational>> {
    verify_ne(g, sigma, start, cfg)
}

/// NE check for shortest-path games. With all edge costs positive each
/// player's best deviation is a shortest path to a terminal in the graph
/// where the other players' moves are fixed; otherwise falls back to
/// exhaustive enumeration.
pub fn verify_ne_sp(g: &SpGame, sigma: &Situation, start: Vertex, cfg: EnumConfig) -> Result<Verdict<ExtCost>> {
    if !g.costs.iter().flatten().all(|c| c.is_positive()) {
        return verify_ne(g, sigma, start, cfg);
    }
    let graph = &g.graph;
    let current = g.outcome_costs(sigma, start)?;
    for p in 0..graph.players() {
        let adj: Adjacency = graph
            .vertices()
            .map(|u| match graph.controller(u) {
                None => Vec::new(),
                Some(q) if q == p => graph.out_edges(u).iter().map(|&(w, e)| (w, g.cost(e, p))).collect(),
                Some(_) => {
                    let w = sigma.next(u);
                    vec![(w, g.edge_cost(u, w, p).expect("situation uses edges"))]
                }
            })
            .collect();
        let sp = dijkstra(&adj, start);
        let best = graph.terminals().filter_map(|t| sp.dist[t].map(|d| (d, t))).min();
        let Some((d, t)) = best else { continue };
        if ExtCost::Finite(d) < current[p] {
            let path = sp.path_to(t).expect("reachable");
            let mut alt = sigma.clone();
            for w in path.windows(2) {
                if graph.controller(w[0]) == Some(p) {
                    alt.set(w[0], w[1]);
                }
            }
            let after = g.outcome_costs(&alt, start)?[p];
            debug_assert_eq!(after, ExtCost::Finite(d));
            return Ok(Some(Deviation { player: p, start, situation: alt, before: current[p], after }));
        }
    }
    Ok(None)
}

/// UNE check: a NE from every non-terminal start.
pub fn verify_une<G: Game>(g: &G, sigma: &Situation, cfg: EnumConfig) -> Result<Verdict<G::Cost>> {
    for v in g.graph().non_terminals() {
        if let Some(d) = verify_ne(g, sigma, v, cfg)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
