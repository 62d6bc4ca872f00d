//! Uniform Nash equilibria of two-player edge-symmetric terminal games in
//! which every terminal beats infinite play.
//!
//! Players alternate uniform best improvements from a situation where every
//! play ends at a terminal. The sum of all vertex values for their owners
//! strictly decreases, so the loop stops at a uniform equilibrium.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Condition, Error, Result};
use crate::game::{is_edge_symmetric, TerminalGame};
use crate::graph::{Player, Situation, Vertex};
use crate::rational::Rational;
use crate::reductions::{une_preprocess, UnePreprocess};
use crate::response::{best_values, check_une, current_values, one_player_graph};
use crate::scc::tarjan;

/// Per-vertex value of a situation for one player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueTable {
    pub player: Player,
    pub values: Vec<Rational>,
}

impl ValueTable {
    pub fn of(g: &TerminalGame, sigma: &Situation, player: Player) -> Self {
        ValueTable { player, values: current_values(g, sigma, player) }
    }

    pub fn get(&self, v: Vertex) -> Rational {
        self.values[v]
    }
}

/// Outcome of asking a player for a uniform best improvement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Improvement {
    /// The player's strategy already answers best from every vertex.
    NoImprovement,
    Improved {
        situation: Situation,
        values: ValueTable,
    },
}

/// A strategy for `p` that secures the best value at every vertex at once,
/// keeping the moves of `keep` vertices.
///
/// Value classes are handled in increasing order. Within a class, vertices
/// are attached layer by layer backwards from the places where the value is
/// realized, so following the strategy always moves one layer closer.
fn layered_response(g: &TerminalGame, sigma: &Situation, p: Player, keep: &[bool]) -> (Situation, Vec<Rational>) {
    let graph = &g.graph;
    let n = graph.num_vertices();
    let adj = one_player_graph(graph, sigma, p);
    let val = best_values(g, sigma, p);
    let mut out = sigma.clone();
    let mut done: Vec<bool> = (0..n).map(|v| graph.is_terminal(v) || keep[v]).collect();

    let classes: BTreeSet<Rational> = val.iter().copied().collect();
    for x in classes {
        let in_class: Vec<bool> = (0..n).map(|v| val[v] == x).collect();
        if x == g.infinite_cost(p) {
            // Cycles among the open vertices of this class realize it directly.
            let sub: Vec<Vec<Vertex>> = (0..n)
                .map(|v| {
                    if done[v] || !in_class[v] {
                        return Vec::new();
                    }
                    adj[v].iter().copied().filter(|&w| !done[w] && in_class[w]).collect()
                })
                .collect();
            let comp = tarjan(&sub);
            let mut size = vec![0usize; n];
            for v in 0..n {
                if !done[v] && in_class[v] {
                    size[comp[v]] += 1;
                }
            }
            let cyclic: Vec<bool> =
                (0..n).map(|v| !done[v] && in_class[v] && (size[comp[v]] >= 2 || sub[v].contains(&v))).collect();
            for v in 0..n {
                if cyclic[v] && graph.controller(v) == Some(p) {
                    let w = sub[v]
                        .iter()
                        .copied()
                        .find(|&w| comp[w] == comp[v])
                        .expect("a cyclic vertex has a successor in its component");
                    out.set(v, w);
                }
            }
            for v in 0..n {
                if cyclic[v] {
                    done[v] = true;
                }
            }
        }
        loop {
            let mut layer = Vec::new();
            for v in graph.non_terminals() {
                if done[v] || !in_class[v] {
                    continue;
                }
                let ready = |w: &Vertex| done[*w] && in_class[*w];
                if graph.controller(v) == Some(p) {
                    let incumbent = sigma.next(v);
                    let w = if adj[v].contains(&incumbent) && ready(&incumbent) {
                        Some(incumbent)
                    } else {
                        adj[v].iter().copied().find(ready)
                    };
                    if let Some(w) = w {
                        layer.push((v, Some(w)));
                    }
                } else if ready(&sigma.next(v)) {
                    layer.push((v, None));
                }
            }
            if layer.is_empty() {
                break;
            }
            for (v, w) in layer {
                if let Some(w) = w {
                    out.set(v, w);
                }
                done[v] = true;
            }
        }
    }
    debug_assert!(done.iter().all(|&d| d), "every vertex reaches its best outcome");
    (out, val)
}

/// A uniform best response of `p` to the other player's moves in `sigma`,
/// with the values it secures. Current moves are kept where they already
/// lead one layer closer.
pub fn uniform_best_response(g: &TerminalGame, sigma: &Situation, p: Player) -> Result<(Situation, ValueTable)> {
    let keep = vec![false; g.graph.num_vertices()];
    let (out, val) = layered_response(g, sigma, p, &keep);
    let values = ValueTable::of(g, &out, p);
    if values.values != val {
        return Err(Error::VerificationFailed(format!("best response of player {} misses a value", p + 1)));
    }
    Ok((out, values))
}

/// A uniform best response that changes a move only where it strictly
/// improves the value, or `NoImprovement` when none is possible.
pub fn uniform_best_improvement(g: &TerminalGame, sigma: &Situation, p: Player) -> Result<Improvement> {
    let graph = &g.graph;
    let cur = current_values(g, sigma, p);
    let best = best_values(g, sigma, p);
    if cur == best {
        return Ok(Improvement::NoImprovement);
    }
    // Vertices already at their best keep everything; their set is closed
    // under the current moves.
    let keep: Vec<bool> = (0..graph.num_vertices()).map(|v| cur[v] == best[v]).collect();
    let (out, _) = layered_response(g, sigma, p, &keep);
    let values = ValueTable::of(g, &out, p);
    if values.values != best {
        return Err(Error::VerificationFailed(format!("improvement of player {} misses a value", p + 1)));
    }
    if &out == sigma {
        return Err(Error::VerificationFailed(format!("improvement of player {} changes nothing", p + 1)));
    }
    for v in graph.vertices_of(p) {
        if out.get(v) != sigma.get(v) && values.get(v) >= cur[v] {
            return Err(Error::VerificationFailed(format!("player {} changes {} without gain", p + 1, graph.name(v))));
        }
    }
    Ok(Improvement::Improved { situation: out, values })
}

/// Every vertex with a terminal move takes it; the others are attached in
/// rounds to the lowest-id successor already attached.
pub fn initial_basic_situation(g: &TerminalGame) -> Situation {
    let graph = &g.graph;
    let mut sigma = Situation::lowest_id(graph);
    let mut blue: Vec<bool> = graph.vertices().map(|v| graph.is_terminal(v)).collect();
    for v in graph.non_terminals() {
        if let Some(t) = g.best_terminal(v) {
            sigma.set(v, t);
            blue[v] = true;
        }
    }
    loop {
        let round: Vec<(Vertex, Vertex)> = graph
            .non_terminals()
            .filter(|&v| !blue[v])
            .filter_map(|v| graph.successors(v).find(|&w| blue[w]).map(|w| (v, w)))
            .collect();
        if round.is_empty() {
            break;
        }
        for (v, w) in round {
            sigma.set(v, w);
            blue[v] = true;
        }
    }
    sigma
}

/// Terminal costs replaced by their rank per player: the best terminal gets
/// `-m`, the worst `-1`, infinite play `0`. Preferences are unchanged.
pub fn normalize(g: &TerminalGame) -> TerminalGame {
    let n = g.players();
    let mut out = g.clone();
    for p in 0..n {
        let c = g.infinite_cost(p);
        let levels: BTreeSet<Rational> = g.graph.terminals().map(|w| g.terminal_cost(w, p) - c).collect();
        let m = levels.len() as i64;
        for w in g.graph.terminals() {
            let rank = levels.range(..(g.terminal_cost(w, p) - c)).count() as i64;
            out.terminal_costs[w][p] = Rational::from(rank - m);
        }
        out.infinite[p] = Rational::zero();
    }
    out
}

/// One uniform best improvement of the main loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub index: usize,
    pub player: Player,
    /// Sum over all vertices of their owner's value, after the step.
    pub nu: Rational,
    pub changed: Vec<Vertex>,
    pub situation: Situation,
}

#[derive(Clone, Debug)]
pub struct UneRun {
    pub situation: Situation,
    pub pre: UnePreprocess,
    /// The preprocessed game with normalized costs the loop ran on.
    pub game: TerminalGame,
    pub initial: Situation,
    /// Potential of the initial situation.
    pub initial_nu: Rational,
    pub steps: Vec<Step>,
}

impl UneRun {
    pub fn improvements(&self) -> usize {
        self.steps.len()
    }

    /// `|V| * |V_T|` of the game the loop ran on.
    pub fn bound(&self) -> usize {
        self.game.graph.num_vertices() * self.game.graph.terminals().count()
    }

    pub fn trace_lines(&self) -> Vec<String> {
        let mut out = vec![format!("step 0 nu {}", self.initial_nu)];
        out.extend(self.steps.iter().map(|s| s.display(&self.game).to_string()));
        out
    }
}

impl Step {
    pub fn display<'a>(&'a self, g: &'a TerminalGame) -> impl fmt::Display + 'a {
        StepDisplay { step: self, g }
    }
}

struct StepDisplay<'a> {
    step: &'a Step,
    g: &'a TerminalGame,
}

impl fmt::Display for StepDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.step.changed.iter().map(|&v| self.g.graph.name(v)).collect();
        write!(
            f,
            "step {} player {} nu {} changed {}",
            self.step.index,
            self.step.player + 1,
            self.step.nu,
            names.join(",")
        )
    }
}

/// Sum over non-terminal vertices of the owner's value.
pub fn potential(g: &TerminalGame, sigma: &Situation) -> Rational {
    let tables: Vec<Vec<Rational>> = (0..g.players()).map(|p| current_values(g, sigma, p)).collect();
    g.graph.non_terminals().map(|v| tables[g.graph.controller(v).expect("non-terminal")][v]).sum()
}

fn owner_values(g: &TerminalGame, sigma: &Situation) -> Vec<Option<Rational>> {
    let tables: Vec<Vec<Rational>> = (0..g.players()).map(|p| current_values(g, sigma, p)).collect();
    g.graph.vertices().map(|v| g.graph.controller(v).map(|p| tables[p][v])).collect()
}

pub fn check_conditions(g: &TerminalGame) -> Result<()> {
    if g.players() != 2 {
        return Err(Error::ConditionViolated(Condition::Two));
    }
    if !is_edge_symmetric(&g.graph) {
        return Err(Error::ConditionViolated(Condition::Sym));
    }
    if !g.satisfies_ciw() {
        return Err(Error::ConditionViolated(Condition::Ciw));
    }
    Ok(())
}

pub fn uniform_equilibrium(g: &TerminalGame) -> Result<Situation> {
    solve_une(g).map(|r| r.situation)
}

pub fn solve_une(g: &TerminalGame) -> Result<UneRun> {
    check_conditions(g)?;
    let pre = une_preprocess(g);
    let game = normalize(&pre.game);
    let initial = initial_basic_situation(&game);
    let initial_nu = potential(&game, &initial);
    let mut sigma = initial.clone();
    let mut nu = initial_nu;
    let mut values = owner_values(&game, &sigma);
    let mut steps: Vec<Step> = Vec::new();
    let limit = game.graph.num_vertices() * game.graph.terminals().count().max(1) + 2;
    let mut player = 0;
    let mut idle = 0;
    while idle < 2 {
        match uniform_best_improvement(&game, &sigma, player)? {
            Improvement::NoImprovement => idle += 1,
            Improvement::Improved { situation, .. } => {
                idle = 0;
                let index = steps.len() + 1;
                if index > limit {
                    return Err(Error::PotentialNotDecreased { step: index });
                }
                let next_nu = potential(&game, &situation);
                let next_values = owner_values(&game, &situation);
                // Both facts hold from the second improvement on.
                if index >= 2 {
                    if next_nu >= nu {
                        return Err(Error::PotentialNotDecreased { step: index });
                    }
                    if next_values.iter().zip(&values).any(|(a, b)| a > b) {
                        return Err(Error::PotentialNotDecreased { step: index });
                    }
                }
                let changed = game.graph.non_terminals().filter(|&v| situation.get(v) != sigma.get(v)).collect();
                steps.push(Step { index, player, nu: next_nu, changed, situation: situation.clone() });
                sigma = situation;
                nu = next_nu;
                values = next_values;
            }
        }
        player = 1 - player;
    }
    for p in 0..2 {
        let (_, table) = uniform_best_response(&game, &sigma, p)?;
        if table.values != current_values(&game, &sigma, p) {
            return Err(Error::VerificationFailed(format!("player {} still improves", p + 1)));
        }
    }
    let situation = pre.lift(&sigma);
    if let Some(d) = check_une(g, &situation) {
        return Err(Error::VerificationFailed(format!(
            "player {} improves from {} to {} starting at {}",
            d.player + 1,
            d.before,
            d.after,
            g.graph.name(d.start)
        )));
    }
    Ok(UneRun { situation, pre, game, initial, initial_nu, steps })
}
