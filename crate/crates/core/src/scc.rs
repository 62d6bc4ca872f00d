//! Strongly connected components of player-induced subgraphs.

use crate::graph::{GameGraph, Owner, Player, Vertex};

/// Tarjan's algorithm without recursion. Returns a component index per vertex;
/// indices come out in reverse topological order of the condensation.
pub fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // (vertex, position in its adjacency list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, pos)) = call.last() {
            if pos == 0 && index[v] == UNSEEN {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(pos) {
                call.last_mut().expect("non-empty").1 += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("component root is on the stack");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Partition of the vertices into components `Q`: strongly connected pieces
/// of the subgraph spanned by one player's vertices and the moves between
/// them. Each terminal is its own component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Component of each vertex. Components are numbered by their lowest vertex.
    pub comp: Vec<usize>,
    pub members: Vec<Vec<Vertex>>,
    pub owner: Vec<Owner>,
}

impl Decomposition {
    pub fn new(g: &GameGraph) -> Self {
        let adj = same_owner_adjacency(g);
        let raw = tarjan(&adj);
        let mut renumber = vec![usize::MAX; g.num_vertices()];
        let mut comp = vec![0; g.num_vertices()];
        let mut members: Vec<Vec<Vertex>> = Vec::new();
        let mut owner = Vec::new();
        for v in g.vertices() {
            if renumber[raw[v]] == usize::MAX {
                renumber[raw[v]] = members.len();
                members.push(Vec::new());
                owner.push(g.owner(v));
            }
            comp[v] = renumber[raw[v]];
            members[comp[v]].push(v);
        }
        let dec = Decomposition { comp, members, owner };
        debug_assert!(g.num_vertices() > 64 || dec.agrees_with_reachability(g, &adj));
        dec
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn of(&self, v: Vertex) -> usize {
        self.comp[v]
    }

    pub fn player(&self, q: usize) -> Option<Player> {
        match self.owner[q] {
            Owner::Player(p) => Some(p),
            Owner::Terminal => None,
        }
    }

    pub fn same(&self, u: Vertex, v: Vertex) -> bool {
        self.comp[u] == self.comp[v]
    }

    /// Independent check: two vertices share a component iff each reaches the other.
    fn agrees_with_reachability(&self, g: &GameGraph, adj: &[Vec<usize>]) -> bool {
        let n = g.num_vertices();
        let reach: Vec<Vec<bool>> = (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                seen[s] = true;
                let mut todo = vec![s];
                while let Some(v) = todo.pop() {
                    for &w in &adj[v] {
                        if !seen[w] {
                            seen[w] = true;
                            todo.push(w);
                        }
                    }
                }
                seen
            })
            .collect();
        (0..n).all(|u| (0..n).all(|v| (reach[u][v] && reach[v][u]) == self.same(u, v)))
    }
}

/// Moves between two vertices of the same player.
pub fn same_owner_adjacency(g: &GameGraph) -> Vec<Vec<usize>> {
    g.vertices()
        .map(|u| match g.owner(u) {
            Owner::Terminal => Vec::new(),
            o => g.successors(u).filter(|&w| g.owner(w) == o).collect(),
        })
        .collect()
}
