use crate::game::TerminalGame;
use crate::graph::{EdgeId, GameGraph, Situation, Vertex};

use super::contraction::{contract_small_game, ContractionMap};

/// A terminal game brought into the shape the uniform-equilibrium solver
/// works on, with the maps needed to carry a situation back.
#[derive(Clone, Debug)]
pub struct UnePreprocess {
    /// Contracted game, with only the best terminal move kept at each vertex,
    /// restricted to the vertices that can reach a terminal.
    pub game: TerminalGame,
    pub contraction: ContractionMap,
    /// The contracted game before terminal moves were pruned.
    pub small: TerminalGame,
    /// Terminal moves of `small` that were dropped as dominated.
    pub dropped: Vec<(Vertex, Vertex)>,
    /// Vertices of `small` that cannot reach any terminal.
    pub unreachable: Vec<bool>,
    /// `kept[v]`: the `small` vertex behind vertex `v` of `game`.
    pub kept: Vec<Vertex>,
}

impl UnePreprocess {
    /// Situation of the original game. Vertices that cannot reach a terminal
    /// take their lowest-id move.
    pub fn lift(&self, sigma: &Situation) -> Situation {
        let mut small_sigma = Situation::lowest_id(&self.small.graph);
        for (v, &s) in self.kept.iter().enumerate() {
            if let Some(w) = sigma.get(v) {
                small_sigma.set(s, self.kept[w]);
            }
        }
        self.contraction.lift(&small_sigma)
    }

    /// Image in `game` of a situation of the contracted game.
    pub fn restrict(&self, small_sigma: &Situation) -> Situation {
        let mut index = vec![None; self.small.graph.num_vertices()];
        for (v, &s) in self.kept.iter().enumerate() {
            index[s] = Some(v);
        }
        let choice = self.kept.iter().map(|&s| small_sigma.get(s).and_then(|w| index[w])).collect();
        Situation::from_choices(choice)
    }
}

/// Contracts player components, keeps one terminal move per vertex (the
/// controller's favourite, lowest id on ties) and sets aside the vertices
/// from which no terminal can be reached.
pub fn une_preprocess(g: &TerminalGame) -> UnePreprocess {
    let (small, contraction) = contract_small_game(g);
    let sg = &small.graph;

    let mut drop_ids: Vec<EdgeId> = Vec::new();
    let mut dropped = Vec::new();
    for v in sg.non_terminals() {
        let best = small.best_terminal(v);
        for &(w, e) in sg.out_edges(v) {
            if sg.is_terminal(w) && Some(w) != best {
                drop_ids.push(e);
                dropped.push((v, w));
            }
        }
    }
    let pruned = small.without_edges(&drop_ids);
    let reach = pruned.graph.can_reach(pruned.graph.terminals().collect::<Vec<_>>());
    let unreachable: Vec<bool> = reach.iter().map(|&r| !r).collect();

    let kept: Vec<Vertex> = pruned.graph.vertices().filter(|&v| reach[v]).collect();
    let mut index = vec![usize::MAX; pruned.graph.num_vertices()];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let edges: Vec<(Vertex, Vertex)> = pruned
        .graph
        .edges()
        .iter()
        .filter(|&&(u, v)| reach[u] && reach[v])
        .map(|&(u, v)| (index[u], index[v]))
        .collect();
    let mut graph =
        GameGraph::new(pruned.graph.players(), kept.iter().map(|&v| pruned.graph.owner(v)).collect(), edges)
            .expect("ids are compacted")
            .with_names(kept.iter().map(|&v| pruned.graph.name(v).to_string()));
    if let Some(v0) = pruned.graph.initial().filter(|&v| reach[v]) {
        graph = graph.with_initial(Some(index[v0]));
    }
    let game = TerminalGame {
        graph,
        terminal_costs: kept.iter().map(|&v| pruned.terminal_costs[v].clone()).collect(),
        infinite: pruned.infinite.clone(),
    };
    UnePreprocess { game, contraction, small, dropped, unreachable, kept }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::Owner;

    #[test]
    fn g6_shape_is_only_marked() {
        let g = fixtures::g6();
        let pre = une_preprocess(&g);
        assert!(pre.dropped.is_empty());
        assert!(pre.unreachable.iter().all(|&u| !u));
        assert_eq!(pre.game.graph.num_edges(), g.graph.num_edges());
    }

    #[test]
    fn dominated_terminal_move_is_dropped() {
        use Owner::*;
        let graph = GameGraph::new(1, vec![Player(0), Terminal, Terminal], vec![(0, 1), (0, 2)]).unwrap();
        let g = TerminalGame::new(graph, [(1, vec![(-1).into()]), (2, vec![(-3).into()])], None).unwrap();
        let pre = une_preprocess(&g);
        assert_eq!(pre.dropped, vec![(0, 1)]);
        assert_eq!(pre.game.graph.successors(0).collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn isolated_two_cycle_is_unreachable() {
        use Owner::*;
        let graph = GameGraph::new(
            2,
            vec![Player(0), Player(1), Player(0), Player(1), Terminal],
            vec![(0, 1), (1, 0), (2, 3), (3, 2), (3, 4)],
        )
        .unwrap();
        let g = TerminalGame::new(graph, [(4, vec![(-1).into(), (-1).into()])], None).unwrap();
        let pre = une_preprocess(&g);
        assert_eq!(pre.unreachable, vec![true, true, false, false, false]);
        assert_eq!(pre.game.graph.num_vertices(), 3);
        let lifted = pre.lift(&Situation::lowest_id(&pre.game.graph));
        assert_eq!(lifted.get(0), Some(1));
        assert_eq!(lifted.get(1), Some(0));
        assert_eq!(lifted.get(3), Some(2));
    }
}
