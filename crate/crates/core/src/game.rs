//! Shortest-path games and terminal games over a [`GameGraph`].

use std::fmt;

use crate::cost::ExtCost;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, GameGraph, Owner, Player, Situation, Vertex};
use crate::paths::non_positive_cycle;
use crate::play::{self, Play};
use crate::rational::Rational;

/// A game whose situations can be evaluated from any start vertex.
pub trait Game: Sync {
    type Cost: Ord + Copy + fmt::Display + fmt::Debug + Send + Sync;

    fn graph(&self) -> &GameGraph;

    fn play_cost(&self, play: &Play, p: Player) -> Result<Self::Cost>;

    /// Structural rule violations; empty iff the game is well formed.
    fn validate(&self) -> Vec<Violation>;

    fn outcome_costs(&self, sigma: &Situation, start: Vertex) -> Result<Vec<Self::Cost>> {
        let play = play::trace(self.graph(), sigma, start);
        (0..self.graph().players()).map(|p| self.play_cost(&play, p)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    TerminalOutEdge,
    NonTerminalSink,
    ParallelEdge,
    SelfLoop,
    InitialIsTerminal,
    CostArity,
    MissingTerminalCost,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::TerminalOutEdge => "terminal-out-edge",
            Rule::NonTerminalSink => "non-terminal-sink",
            Rule::ParallelEdge => "parallel-edge",
            Rule::SelfLoop => "self-loop",
            Rule::InitialIsTerminal => "initial-is-terminal",
            Rule::CostArity => "cost-arity",
            Rule::MissingTerminalCost => "missing-terminal-cost",
        })
    }
}

/// One broken structural rule, located at a vertex or an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub vertex: Option<Vertex>,
    pub edge: Option<(Vertex, Vertex)>,
}

impl Violation {
    fn at_vertex(rule: Rule, v: Vertex) -> Self {
        Violation { rule, vertex: Some(v), edge: None }
    }

    fn at_edge(rule: Rule, e: (Vertex, Vertex)) -> Self {
        Violation { rule, vertex: None, edge: Some(e) }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule)?;
        if let Some(v) = self.vertex {
            write!(f, " at vertex {v}")?;
        }
        if let Some((u, v)) = self.edge {
            write!(f, " at edge ({u},{v})")?;
        }
        Ok(())
    }
}

fn graph_violations(g: &GameGraph, allow_self_loops: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let succ = g.out_edges(v);
        if g.is_terminal(v) {
            for &(w, _) in succ {
                out.push(Violation::at_edge(Rule::TerminalOutEdge, (v, w)));
            }
            continue;
        }
        if succ.is_empty() {
            out.push(Violation::at_vertex(Rule::NonTerminalSink, v));
        }
        for pair in succ.windows(2) {
            if pair[0].0 == pair[1].0 {
                out.push(Violation::at_edge(Rule::ParallelEdge, (v, pair[0].0)));
            }
        }
        if !allow_self_loops && succ.iter().any(|&(w, _)| w == v) {
            out.push(Violation::at_edge(Rule::SelfLoop, (v, v)));
        }
    }
    if let Some(v0) = g.initial() {
        if g.is_terminal(v0) {
            out.push(Violation::at_vertex(Rule::InitialIsTerminal, v0));
        }
    }
    out
}

/// `true` iff every move `(u, v)` into a non-terminal `v` has its reverse `(v, u)`.
pub fn is_edge_symmetric(g: &GameGraph) -> bool {
    g.edges().iter().all(|&(u, v)| g.is_terminal(v) || g.has_edge(v, u))
}

/// Shortest-path game: player `p` pays `costs[e][p]` for each traversal of edge `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpGame {
    pub graph: GameGraph,
    pub costs: Vec<Vec<Rational>>,
}

impl SpGame {
    pub fn new(graph: GameGraph, costs: Vec<Vec<Rational>>) -> Result<Self> {
        if costs.len() != graph.num_edges() {
            return Err(Error::Structure(format!("{} cost vectors for {} edges", costs.len(), graph.num_edges())));
        }
        Ok(SpGame { graph, costs })
    }

    pub fn players(&self) -> usize {
        self.graph.players()
    }

    pub fn cost(&self, e: EdgeId, p: Player) -> Rational {
        self.costs[e][p]
    }

    pub fn edge_cost(&self, u: Vertex, v: Vertex, p: Player) -> Option<Rational> {
        self.graph.edge_id(u, v).map(|e| self.costs[e][p])
    }

    /// All edges weighted by player `p`'s costs, as `(from, to, cost)`.
    pub fn weighted_edges(&self, p: Player) -> Vec<(Vertex, Vertex, Rational)> {
        self.graph.edges().iter().zip(&self.costs).map(|(&(u, v), c)| (u, v, c[p])).collect()
    }

    pub fn min_edge_cost(&self) -> Option<Rational> {
        self.costs.iter().flatten().copied().min()
    }
}

impl Game for SpGame {
    type Cost = ExtCost;

    fn graph(&self) -> &GameGraph {
        &self.graph
    }

    fn play_cost(&self, play: &Play, p: Player) -> Result<ExtCost> {
        play::sp_cost(self, play, p)
    }

    fn validate(&self) -> Vec<Violation> {
        let mut out = graph_violations(&self.graph, false);
        let n = self.players();
        for (e, c) in self.costs.iter().enumerate() {
            if c.len() != n {
                out.push(Violation::at_edge(Rule::CostArity, self.graph.edge(e)));
            }
        }
        out
    }
}

/// Outcome of the positivity checks on a shortest-path game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    /// Every edge costs strictly more than zero for every player.
    pub edges_positive: bool,
    /// Every directed cycle has strictly positive total for every player.
    pub cycles_positive: bool,
    /// A player and one of their cycles with total `<= 0`.
    pub witness: Option<(Player, Vec<Vertex>)>,
}

pub fn is_positive(g: &SpGame) -> PositivityReport {
    let edges_positive = g.costs.iter().flatten().all(Rational::is_positive);
    let n = g.graph.num_vertices();
    let witness = (0..g.players()).find_map(|p| non_positive_cycle(n, &g.weighted_edges(p)).map(|c| (p, c)));
    PositivityReport { edges_positive, cycles_positive: witness.is_none(), witness }
}

/// Terminal game: only the reached terminal matters, with `infinite[p]`
/// charged for plays that never stop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalGame {
    pub graph: GameGraph,
    /// Indexed by vertex; empty for non-terminals.
    pub terminal_costs: Vec<Vec<Rational>>,
    pub infinite: Vec<Rational>,
}

impl TerminalGame {
    /// `terminal_costs` lists `(terminal, costs)`; infinite-play costs default to zero.
    pub fn new(
        graph: GameGraph,
        terminal_costs: impl IntoIterator<Item = (Vertex, Vec<Rational>)>,
        infinite: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let n = graph.players();
        let mut table = vec![Vec::new(); graph.num_vertices()];
        for (w, c) in terminal_costs {
            if w >= graph.num_vertices() || !graph.is_terminal(w) {
                return Err(Error::Structure(format!("terminal costs given for non-terminal {w}")));
            }
            table[w] = c;
        }
        let infinite = infinite.unwrap_or_else(|| vec![Rational::zero(); n]);
        if infinite.len() != n {
            return Err(Error::Structure(format!("{} infinite-play costs for {n} players", infinite.len())));
        }
        Ok(TerminalGame { graph, terminal_costs: table, infinite })
    }

    pub fn players(&self) -> usize {
        self.graph.players()
    }

    pub fn terminal_cost(&self, w: Vertex, p: Player) -> Rational {
        self.terminal_costs[w][p]
    }

    pub fn infinite_cost(&self, p: Player) -> Rational {
        self.infinite[p]
    }

    /// The terminal successor of `v` its controller likes best, lowest id on ties.
    pub fn best_terminal(&self, v: Vertex) -> Option<Vertex> {
        let p = self.graph.controller(v)?;
        self.graph.successors(v).filter(|&w| self.graph.is_terminal(w)).min_by_key(|&w| (self.terminal_cost(w, p), w))
    }

    /// Pairs `(player, terminal)` where the terminal is not strictly better
    /// than infinite play. Empty iff infinite plays are worst for everyone.
    pub fn ciw_offenders(&self) -> Vec<(Player, Vertex)> {
        let mut out = Vec::new();
        for w in self.graph.terminals() {
            for p in 0..self.players() {
                if self.terminal_cost(w, p) >= self.infinite_cost(p) {
                    out.push((p, w));
                }
            }
        }
        out
    }

    pub fn satisfies_ciw(&self) -> bool {
        self.ciw_offenders().is_empty()
    }

    /// Same game without the listed edges.
    pub fn without_edges(&self, drop: &[EdgeId]) -> TerminalGame {
        TerminalGame {
            graph: self.graph.without_edges(drop),
            terminal_costs: self.terminal_costs.clone(),
            infinite: self.infinite.clone(),
        }
    }
}

impl Game for TerminalGame {
    type Cost = Rational;

    fn graph(&self) -> &GameGraph {
        &self.graph
    }

    fn play_cost(&self, play: &Play, p: Player) -> Result<Rational> {
        Ok(play::terminal_cost(self, play, p))
    }

    fn validate(&self) -> Vec<Violation> {
        let mut out = graph_violations(&self.graph, true);
        let n = self.players();
        for w in self.graph.terminals() {
            if self.terminal_costs[w].len() != n {
                out.push(Violation::at_vertex(Rule::MissingTerminalCost, w));
            }
        }
        out
    }
}

/// Correspondence between a game and its single-terminal version.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalMerge {
    /// Original vertex to merged vertex; every terminal maps to the merged terminal.
    pub to_merged: Vec<Vertex>,
    /// Merged vertex to original vertex (the merged terminal maps to the lowest-id terminal).
    pub to_original: Vec<Vertex>,
    /// For each original vertex, the terminal its kept terminal move used to enter.
    pub chosen_terminal: Vec<Option<Vertex>>,
    pub terminal: Option<Vertex>,
}

impl TerminalMerge {
    /// Situation of the original game taking the kept terminal moves.
    pub fn lift(&self, merged: &Situation) -> Situation {
        let choice = self
            .to_merged
            .iter()
            .enumerate()
            .map(|(v, &m)| {
                let w = merged.get(m)?;
                if Some(w) == self.terminal {
                    self.chosen_terminal[v]
                } else {
                    Some(self.to_original[w])
                }
            })
            .collect();
        Situation::from_choices(choice)
    }

    /// Merged-game image of an original situation.
    pub fn project(&self, sigma: &Situation) -> Situation {
        let mut choice = vec![None; self.to_original.len()];
        for (m, &v) in self.to_original.iter().enumerate() {
            choice[m] = sigma.get(v).map(|w| self.to_merged[w]);
        }
        Situation::from_choices(choice)
    }
}

/// Collapses all terminals into the lowest-id one.
///
/// A vertex with several terminal moves keeps only the one cheapest for its
/// controller, ties going to the lower terminal id.
pub fn merge_terminals(g: &SpGame) -> (SpGame, TerminalMerge) {
    let graph = &g.graph;
    let n = graph.num_vertices();
    let terminal = graph.terminals().next();
    let mut to_merged = vec![0; n];
    let mut to_original = Vec::new();
    for v in graph.vertices() {
        if graph.is_terminal(v) && Some(v) != terminal {
            continue;
        }
        to_merged[v] = to_original.len();
        to_original.push(v);
    }
    if let Some(t) = terminal {
        for w in graph.terminals() {
            to_merged[w] = to_merged[t];
        }
    }

    let mut chosen_terminal = vec![None; n];
    let mut edges = Vec::new();
    let mut costs = Vec::new();
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        if graph.is_terminal(v) {
            let p = graph.controller(u).unwrap_or(0);
            let best = graph
                .out_edges(u)
                .iter()
                .filter(|&&(w, _)| graph.is_terminal(w))
                .min_by_key(|&&(w, f)| (g.cost(f, p), w))
                .map(|&(w, _)| w);
            if best != Some(v) {
                continue;
            }
            chosen_terminal[u] = Some(v);
        }
        edges.push((to_merged[u], to_merged[v]));
        costs.push(g.costs[e].clone());
    }
    let owners: Vec<Owner> = to_original.iter().map(|&v| graph.owner(v)).collect();
    let names: Vec<String> = to_original.iter().map(|&v| graph.name(v).to_string()).collect();
    let mut merged_graph = GameGraph::new(graph.players(), owners, edges)
        .expect("ids come from a valid graph")
        .with_names(names)
        .with_initial(graph.initial().map(|v| to_merged[v]));
    for (m, &v) in to_original.iter().enumerate() {
        merged_graph.set_labels(m, graph.labels(v).to_vec());
    }
    let merged = SpGame { graph: merged_graph, costs };
    let terminal = terminal.map(|t| to_merged[t]);
    (merged, TerminalMerge { to_merged, to_original, chosen_terminal, terminal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_are_valid() {
        assert!(fixtures::fig1_pm().validate().is_empty());
        assert!(fixtures::fig1_p().validate().is_empty());
        assert!(fixtures::g6s().validate().is_empty());
        assert!(fixtures::g2().validate().is_empty());
        assert!(fixtures::g3s().validate().is_empty());
        assert!(fixtures::g6().validate().is_empty());
    }

    #[test]
    fn terminal_out_edge_and_sink_are_reported() {
        use Owner::*;
        let g = GameGraph::new(1, vec![Player(0), Terminal], vec![(0, 1), (1, 0)]).unwrap();
        let sp = SpGame::new(g, vec![vec![1.into()], vec![1.into()]]).unwrap();
        let v = sp.validate();
        assert_eq!(v, vec![Violation::at_edge(Rule::TerminalOutEdge, (1, 0))]);

        let g = GameGraph::new(1, vec![Player(0), Player(0), Terminal], vec![(0, 2)]).unwrap();
        let sp = SpGame::new(g, vec![vec![1.into()]]).unwrap();
        assert_eq!(sp.validate(), vec![Violation::at_vertex(Rule::NonTerminalSink, 1)]);
    }

    #[test]
    fn parallel_edges_and_self_loops() {
        use Owner::*;
        let g = GameGraph::new(1, vec![Player(0), Terminal], vec![(0, 1), (0, 1), (0, 0)]).unwrap();
        let sp = SpGame::new(g.clone(), vec![vec![1.into()]; 3]).unwrap();
        let rules: Vec<Rule> = sp.validate().into_iter().map(|v| v.rule).collect();
        assert_eq!(rules, vec![Rule::ParallelEdge, Rule::SelfLoop]);
        let tg = TerminalGame::new(g, [(1, vec![(-1).into()])], None).unwrap();
        let rules: Vec<Rule> = tg.validate().into_iter().map(|v| v.rule).collect();
        assert_eq!(rules, vec![Rule::ParallelEdge]);
    }

    #[test]
    fn symmetry_examples() {
        assert!(is_edge_symmetric(&fixtures::fig1_pm().graph));
        assert!(!is_edge_symmetric(&fixtures::g6().graph));
        assert!(is_edge_symmetric(&fixtures::g6s().graph));
        let g = GameGraph::new(1, vec![Owner::Player(0), Owner::Terminal], vec![(0, 1)]).unwrap();
        assert!(is_edge_symmetric(&g));
    }

    #[test]
    fn positivity_examples() {
        let r = is_positive(&fixtures::g6s());
        assert!(r.edges_positive && r.cycles_positive);
        let r = is_positive(&fixtures::fig1_pm());
        assert!(!r.edges_positive && !r.cycles_positive);
        let r = is_positive(&fixtures::fig1_p());
        assert!(!r.edges_positive && !r.cycles_positive);
        let (p, cycle) = r.witness.unwrap();
        let g = fixtures::fig1_p();
        let total: Rational =
            (0..cycle.len()).map(|k| g.edge_cost(cycle[k], cycle[(k + 1) % cycle.len()], p).unwrap()).sum();
        assert!(total.is_zero());
    }

    #[test]
    fn merge_single_terminal_is_identity() {
        let g = fixtures::fig1_pm();
        let (m, map) = merge_terminals(&g);
        assert_eq!(m, g);
        assert_eq!(map.to_original, vec![0, 1, 2, 3]);
        let s = Situation::lowest_id(&m.graph);
        assert_eq!(map.lift(&s), s);
    }

    #[test]
    fn merge_six_terminals() {
        let g = fixtures::g6s();
        let (m, map) = merge_terminals(&g);
        assert_eq!(m.graph.terminals().count(), 1);
        assert_eq!(m.graph.num_vertices(), 7);
        let t = map.terminal.unwrap();
        let into_t = m.graph.edges().iter().filter(|&&(_, v)| v == t).count();
        assert_eq!(into_t, 6);
        assert_eq!(map.chosen_terminal.iter().flatten().count(), 6);
    }

    #[test]
    fn merge_keeps_cheaper_terminal_edge() {
        use Owner::*;
        let g = GameGraph::new(1, vec![Player(0), Terminal, Terminal], vec![(0, 1), (0, 2)]).unwrap();
        let sp = SpGame::new(g, vec![vec![5.into()], vec![3.into()]]).unwrap();
        let (m, map) = merge_terminals(&sp);
        assert_eq!(m.graph.num_edges(), 1);
        assert_eq!(m.costs[0][0], Rational::from(3));
        assert_eq!(map.chosen_terminal[0], Some(2));
        let lifted = map.lift(&Situation::lowest_id(&m.graph));
        assert_eq!(lifted.get(0), Some(2));
    }
}
