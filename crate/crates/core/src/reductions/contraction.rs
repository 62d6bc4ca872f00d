use std::collections::{BTreeMap, VecDeque};

use crate::game::TerminalGame;
use crate::graph::{GameGraph, Situation, Vertex};
use crate::scc::Decomposition;

/// How a game relates to its small version.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    /// Small-game vertex of each original vertex.
    pub comp: Vec<Vertex>,
    /// Original vertices of each small-game vertex, ascending.
    pub members: Vec<Vec<Vertex>>,
    /// For each small-game edge between distinct vertices (or a singleton
    /// self-loop), the lexicographically lowest original edge it stands for.
    pub rep_edge: BTreeMap<(Vertex, Vertex), (Vertex, Vertex)>,
    original: GameGraph,
}

impl ContractionMap {
    pub fn original(&self) -> &GameGraph {
        &self.original
    }

    pub fn is_identity(&self) -> bool {
        self.members.iter().all(|m| m.len() == 1)
    }

    /// In-tree of component `q` towards `root`: `parent[v]` is the next
    /// vertex from `v`, `None` for the root and for vertices outside `q`.
    /// Built by backward breadth-first search, lowest ids first.
    pub fn tree(&self, q: Vertex, root: Vertex) -> Vec<Option<Vertex>> {
        let g = &self.original;
        let members = &self.members[q];
        let mut parent = vec![None; g.num_vertices()];
        let mut seen = vec![false; g.num_vertices()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in members {
                if !seen[y] && g.has_edge(y, x) {
                    seen[y] = true;
                    parent[y] = Some(x);
                    queue.push_back(y);
                }
            }
        }
        debug_assert!(members.iter().all(|&v| seen[v]), "components are strongly connected");
        parent
    }

    /// Situation of the original game that realizes `small` from every start.
    pub fn lift(&self, small: &Situation) -> Situation {
        let g = &self.original;
        let mut sigma = Situation::lowest_id(g);
        for (q, members) in self.members.iter().enumerate() {
            let Some(x) = small.get(q) else { continue };
            let (root, exit) = if x != q {
                self.rep_edge[&(q, x)]
            } else if members.len() == 1 {
                (members[0], members[0])
            } else {
                let root = members[0];
                let partner = g
                    .successors(root)
                    .find(|&w| w != root && self.comp[w] == q)
                    .expect("a component of size two or more has an inner edge");
                (root, partner)
            };
            let parent = self.tree(q, root);
            for &v in members {
                sigma.set(v, parent[v].unwrap_or(exit));
            }
        }
        sigma
    }
}

/// Merges every strongly connected component of each player's subgraph into
/// one vertex. Components of two or more vertices get a self-loop; a
/// singleton keeps a self-loop only if it had one.
pub fn contract_small_game(g: &TerminalGame) -> (TerminalGame, ContractionMap) {
    let graph = &g.graph;
    let dec = Decomposition::new(graph);
    let k = dec.len();
    let mut sorted_edges: Vec<(Vertex, Vertex)> = graph.edges().to_vec();
    sorted_edges.sort();
    let mut rep_edge = BTreeMap::new();
    for &(u, v) in &sorted_edges {
        let (a, b) = (dec.comp[u], dec.comp[v]);
        if a != b || (u == v && dec.members[a].len() == 1) {
            rep_edge.entry((a, b)).or_insert((u, v));
        }
    }
    let mut edges: Vec<(Vertex, Vertex)> = rep_edge.keys().copied().collect();
    for (q, m) in dec.members.iter().enumerate() {
        if m.len() >= 2 {
            edges.push((q, q));
        }
    }
    edges.sort();
    let names: Vec<String> =
        dec.members.iter().map(|m| m.iter().map(|&v| graph.name(v)).collect::<Vec<_>>().join("+")).collect();
    let small_graph = GameGraph::new(graph.players(), dec.owner.clone(), edges)
        .expect("component ids are in range")
        .with_names(names)
        .with_initial(graph.initial().map(|v| dec.comp[v]));
    let mut terminal_costs = vec![Vec::new(); k];
    for w in graph.terminals() {
        terminal_costs[dec.comp[w]] = g.terminal_costs[w].clone();
    }
    let small = TerminalGame { graph: small_graph, terminal_costs, infinite: g.infinite.clone() };
    let map = ContractionMap { comp: dec.comp, members: dec.members, rep_edge, original: graph.clone() };
    (small, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::Game;
    use crate::graph::Owner;
    use crate::oracle::{enumerate_situations, EnumConfig};

    #[test]
    fn alternating_games_are_unchanged() {
        for g in [fixtures::g6(), fixtures::g3s(), fixtures::g2()] {
            let (small, map) = contract_small_game(&g);
            assert!(map.is_identity());
            assert_eq!(small.graph.edges().len(), g.graph.num_edges());
            let s = Situation::lowest_id(&small.graph);
            assert_eq!(map.lift(&s), s);
        }
    }

    fn pair_game() -> TerminalGame {
        use Owner::*;
        // Player 1 owns 0 and 1 (linked both ways); player 2 owns 2.
        let graph = GameGraph::new(
            2,
            vec![Player(0), Player(0), Player(1), Terminal, Terminal],
            vec![(0, 1), (1, 0), (1, 2), (2, 1), (0, 3), (2, 4)],
        )
        .unwrap();
        TerminalGame::new(graph, [(3, vec![(-1).into(), (-2).into()]), (4, vec![(-2).into(), (-1).into()])], None)
            .unwrap()
    }

    #[test]
    fn linked_pair_becomes_a_loop() {
        let g = pair_game();
        let (small, map) = contract_small_game(&g);
        assert_eq!(small.graph.num_vertices(), 4);
        assert_eq!(map.members[0], vec![0, 1]);
        assert!(small.graph.has_edge(0, 0));
        assert!(!small.graph.has_edge(1, 1));
        assert_eq!(small.graph.name(0), "0+1");
    }

    #[test]
    fn lifting_preserves_costs_from_every_start() {
        let g = pair_game();
        let (small, map) = contract_small_game(&g);
        for s in enumerate_situations(&small.graph, EnumConfig::default()).unwrap() {
            let lifted = map.lift(&s);
            assert!(lifted.is_valid_for(&g.graph));
            for v in g.graph.non_terminals() {
                let a = g.outcome_costs(&lifted, v).unwrap();
                let b = small.outcome_costs(&s, map.comp[v]).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn trees_point_to_root() {
        let g = pair_game();
        let (_, map) = contract_small_game(&g);
        let parent = map.tree(0, 1);
        assert_eq!(parent[0], Some(1));
        assert_eq!(parent[1], None);
    }
}
