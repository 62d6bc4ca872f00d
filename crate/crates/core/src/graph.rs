//! Directed game graphs with a vertex-ownership partition, and situations.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Dense vertex id, `0..num_vertices`.
pub type Vertex = usize;
/// Zero-based player index; player `p` is shown to users as `p + 1`.
pub type Player = usize;
/// Index into [`GameGraph::edges`].
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    Player(Player),
    Terminal,
}

/// A finite digraph whose vertices are partitioned among players and terminals.
///
/// Edges keep their insertion order (this is the order of cost vectors in
/// the file format); out-neighbourhoods are kept sorted by target id so that
/// "lowest-id out-neighbour" is always `successors(v).next()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameGraph {
    players: usize,
    owners: Vec<Owner>,
    names: Vec<String>,
    labels: Vec<Vec<String>>,
    edges: Vec<(Vertex, Vertex)>,
    out: Vec<Vec<(Vertex, EdgeId)>>,
    initial: Option<Vertex>,
}

impl GameGraph {
    /// Builds a graph, checking only that ids are in range. Structural rules
    /// (terminal sinks, no parallel edges, ...) are reported by `validate`.
    pub fn new(players: usize, owners: Vec<Owner>, edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let n = owners.len();
        for (v, o) in owners.iter().enumerate() {
            if let Owner::Player(p) = o {
                if *p >= players {
                    return Err(Error::Structure(format!(
                        "vertex {v} owned by player {} but the game has {players} players",
                        p + 1
                    )));
                }
            }
        }
        let mut out = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Structure(format!("edge ({u},{v}) refers to a missing vertex")));
            }
            out[u].push((v, id));
        }
        for list in &mut out {
            list.sort();
        }
        Ok(GameGraph {
            players,
            names: (0..n).map(|v| v.to_string()).collect(),
            labels: vec![Vec::new(); n],
            owners,
            edges,
            out,
            initial: None,
        })
    }

    pub fn with_names<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        for (slot, name) in self.names.iter_mut().zip(names) {
            *slot = name.into();
        }
        self
    }

    pub fn with_initial(mut self, initial: Option<Vertex>) -> Self {
        self.initial = initial;
        self
    }

    pub(crate) fn set_labels(&mut self, v: Vertex, labels: Vec<String>) {
        self.labels[v] = labels;
    }

    pub fn num_vertices(&self) -> usize {
        self.owners.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn owner(&self, v: Vertex) -> Owner {
        self.owners[v]
    }

    pub fn owners(&self) -> &[Owner] {
        &self.owners
    }

    pub fn controller(&self, v: Vertex) -> Option<Player> {
        match self.owners[v] {
            Owner::Player(p) => Some(p),
            Owner::Terminal => None,
        }
    }

    pub fn is_terminal(&self, v: Vertex) -> bool {
        self.owners[v] == Owner::Terminal
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.owners.len()
    }

    pub fn terminals(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(|&v| self.is_terminal(v))
    }

    pub fn non_terminals(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(|&v| !self.is_terminal(v))
    }

    pub fn vertices_of(&self, p: Player) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(move |&v| self.owners[v] == Owner::Player(p))
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// Out-edges of `v` as `(target, edge id)`, sorted by target.
    pub fn out_edges(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.out[v]
    }

    pub fn successors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out[v].iter().map(|&(w, _)| w)
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let list = &self.out[u];
        list.binary_search_by(|&(w, _)| w.cmp(&v)).ok().map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn initial(&self) -> Option<Vertex> {
        self.initial
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn labels(&self, v: Vertex) -> &[String] {
        &self.labels[v]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name)
    }

    /// Resolves a user-supplied vertex reference: a display name, else a numeric id.
    pub fn resolve(&self, key: &str) -> Option<Vertex> {
        self.vertex_by_name(key).or_else(|| key.parse::<usize>().ok().filter(|&v| v < self.num_vertices()))
    }

    /// Vertices from which some vertex of `targets` is reachable.
    pub fn can_reach(&self, targets: impl IntoIterator<Item = Vertex>) -> Vec<bool> {
        let n = self.num_vertices();
        let mut rev = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            rev[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for t in targets {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &u in &rev[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Vertices reachable from `start` (including `start`).
    pub fn reachable_from(&self, start: Vertex) -> Vec<bool> {
        let mut seen = vec![false; self.num_vertices()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in self.successors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Copy of the graph without the listed edges; edge ids are renumbered
    /// in the original order.
    pub fn without_edges(&self, drop: &[EdgeId]) -> GameGraph {
        let mut keep = vec![true; self.edges.len()];
        for &e in drop {
            keep[e] = false;
        }
        let edges: Vec<_> = self.edges.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
        let mut g = GameGraph::new(self.players, self.owners.clone(), edges).expect("ids already checked");
        g.names = self.names.clone();
        g.labels = self.labels.clone();
        g.initial = self.initial;
        g
    }
}

/// One chosen out-neighbour for every non-terminal vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Situation {
    choice: Vec<Option<Vertex>>,
}

impl Situation {
    pub fn from_choices(choice: Vec<Option<Vertex>>) -> Self {
        Situation { choice }
    }

    /// Every non-terminal vertex takes its lowest-id out-neighbour.
    pub fn lowest_id(g: &GameGraph) -> Self {
        Situation { choice: g.vertices().map(|v| g.successors(v).next()).collect() }
    }

    pub fn get(&self, v: Vertex) -> Option<Vertex> {
        self.choice[v]
    }

    /// The chosen successor of a non-terminal vertex.
    pub fn next(&self, v: Vertex) -> Vertex {
        self.choice[v].expect("terminal vertices have no choice")
    }

    pub fn set(&mut self, v: Vertex, to: Vertex) {
        self.choice[v] = Some(to);
    }

    pub fn choices(&self) -> &[Option<Vertex>] {
        &self.choice
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }

    /// `true` iff the situation is total on non-terminals and uses existing edges only.
    pub fn is_valid_for(&self, g: &GameGraph) -> bool {
        self.choice.len() == g.num_vertices()
            && g.vertices().all(|v| match (g.is_terminal(v), self.choice[v]) {
                (true, None) => true,
                (false, Some(w)) => g.has_edge(v, w),
                _ => false,
            })
    }

    /// Chosen edges `(v, σ(v))` in vertex order.
    pub fn moves(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.choice.iter().enumerate().filter_map(|(v, c)| c.map(|w| (v, w)))
    }

    pub fn display<'a>(&'a self, g: &'a GameGraph) -> SituationDisplay<'a> {
        SituationDisplay { sigma: self, graph: g }
    }
}

pub struct SituationDisplay<'a> {
    sigma: &'a Situation,
    graph: &'a GameGraph,
}

impl fmt::Display for SituationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, w) in self.sigma.moves() {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{}->{}", self.graph.name(v), self.graph.name(w))?;
        }
        Ok(())
    }
}
