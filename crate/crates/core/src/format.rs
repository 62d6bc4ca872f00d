//! JSON game files.
//!
//! ```json
//! {"players": 2,
//!  "vertices": [{"id": 0, "name": "s", "owner": 1}, {"id": 1, "name": "t", "owner": "T"}],
//!  "edges": [{"from": "s", "to": "t", "costs": ["1", "1/2"]}],
//!  "initial": 0}
//! ```
//!
//! Terminal games omit edge costs and give `terminal_costs` (keyed by
//! terminal name or id) plus optional `infinite_costs`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{SpGame, TerminalGame};
use crate::graph::{GameGraph, Owner, Vertex};
use crate::rational::Rational;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
enum OwnerTag {
    Player(usize),
    Tag(String),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
enum VertexRef {
    Id(usize),
    Name(String),
}

#[derive(Serialize, Deserialize, Debug)]
struct VertexRecord {
    id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    owner: OwnerTag,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug)]
struct EdgeRecord {
    from: VertexRef,
    to: VertexRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    costs: Option<Vec<Rational>>,
}

#[derive(Serialize, Deserialize, Debug)]
struct GameFile {
    players: usize,
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terminal_costs: Option<BTreeMap<String, Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    infinite_costs: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    initial: Option<VertexRef>,
}

/// A game read from a file: either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGame {
    Sp(SpGame),
    Terminal(TerminalGame),
}

impl AnyGame {
    pub fn graph(&self) -> &GameGraph {
        match self {
            AnyGame::Sp(g) => &g.graph,
            AnyGame::Terminal(g) => &g.graph,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyGame::Sp(_) => "shortest-path",
            AnyGame::Terminal(_) => "terminal",
        }
    }

    pub fn into_sp(self) -> Result<SpGame> {
        match self {
            AnyGame::Sp(g) => Ok(g),
            AnyGame::Terminal(_) => Err(Error::Parse("expected a shortest-path game (edge costs)".into())),
        }
    }

    pub fn into_terminal(self) -> Result<TerminalGame> {
        match self {
            AnyGame::Terminal(g) => Ok(g),
            AnyGame::Sp(_) => Err(Error::Parse("expected a terminal game (terminal_costs)".into())),
        }
    }
}

fn resolve(r: &VertexRef, names: &[String]) -> Result<Vertex> {
    match r {
        VertexRef::Id(v) if *v < names.len() => Ok(*v),
        VertexRef::Id(v) => Err(Error::Parse(format!("unknown vertex id {v}"))),
        VertexRef::Name(s) => names
            .iter()
            .position(|n| n == s)
            .or_else(|| s.parse::<usize>().ok().filter(|&v| v < names.len()))
            .ok_or_else(|| Error::Parse(format!("unknown vertex {s:?}"))),
    }
}

pub fn parse_game(text: &str) -> Result<AnyGame> {
    let file: GameFile = serde_json::from_str(text)?;
    let n = file.vertices.len();
    let mut slots: Vec<Option<&VertexRecord>> = vec![None; n];
    for rec in &file.vertices {
        if rec.id >= n || slots[rec.id].is_some() {
            return Err(Error::Parse(format!("vertex ids must be 0..{n} without repeats (got {})", rec.id)));
        }
        slots[rec.id] = Some(rec);
    }
    let records: Vec<&VertexRecord> = slots.into_iter().map(|r| r.expect("ids form a permutation")).collect();
    let mut owners = Vec::with_capacity(n);
    for rec in &records {
        owners.push(match &rec.owner {
            OwnerTag::Player(k) if (1..=file.players).contains(k) => Owner::Player(k - 1),
            OwnerTag::Tag(t) if t == "T" => Owner::Terminal,
            other => return Err(Error::Parse(format!("vertex {}: bad owner {other:?}", rec.id))),
        });
    }
    let names: Vec<String> = records.iter().map(|r| r.name.clone().unwrap_or_else(|| r.id.to_string())).collect();
    let mut edges = Vec::with_capacity(file.edges.len());
    for e in &file.edges {
        edges.push((resolve(&e.from, &names)?, resolve(&e.to, &names)?));
    }
    let initial = file.initial.as_ref().map(|r| resolve(r, &names)).transpose()?;
    let mut graph = GameGraph::new(file.players, owners, edges)?.with_names(names.clone()).with_initial(initial);
    for (v, rec) in records.iter().enumerate() {
        if !rec.labels.is_empty() {
            graph.set_labels(v, rec.labels.clone());
        }
    }

    let arity = |what: &str, c: &[Rational]| -> Result<()> {
        if c.len() == file.players {
            Ok(())
        } else {
            Err(Error::Parse(format!("{what}: {} costs for {} players", c.len(), file.players)))
        }
    };

    match &file.terminal_costs {
        Some(table) => {
            if file.edges.iter().any(|e| e.costs.is_some()) {
                return Err(Error::Parse("edge costs given in a terminal game".into()));
            }
            let mut tc = Vec::new();
            for (key, costs) in table {
                let w = resolve(&VertexRef::Name(key.clone()), &names)?;
                arity(&format!("terminal {key}"), costs)?;
                tc.push((w, costs.clone()));
            }
            if let Some(inf) = &file.infinite_costs {
                arity("infinite_costs", inf)?;
            }
            for w in graph.terminals() {
                if !tc.iter().any(|&(t, _)| t == w) {
                    return Err(Error::Parse(format!("terminal {} has no costs", names[w])));
                }
            }
            Ok(AnyGame::Terminal(TerminalGame::new(graph, tc, file.infinite_costs.clone())?))
        }
        None => {
            let mut costs = Vec::with_capacity(file.edges.len());
            for e in &file.edges {
                let c = e
                    .costs
                    .clone()
                    .ok_or_else(|| Error::Parse(format!("edge {:?}->{:?} has no costs", e.from, e.to)))?;
                arity("edge", &c)?;
                costs.push(c);
            }
            Ok(AnyGame::Sp(SpGame::new(graph, costs)?))
        }
    }
}

pub fn load_game(path: impl AsRef<Path>) -> Result<AnyGame> {
    parse_game(&fs::read_to_string(path)?)
}

fn owner_tag(o: Owner) -> OwnerTag {
    match o {
        Owner::Player(p) => OwnerTag::Player(p + 1),
        Owner::Terminal => OwnerTag::Tag("T".into()),
    }
}

fn skeleton(g: &GameGraph) -> GameFile {
    let names = g.names();
    GameFile {
        players: g.players(),
        vertices: g
            .vertices()
            .map(|v| VertexRecord {
                id: v,
                name: Some(names[v].clone()),
                owner: owner_tag(g.owner(v)),
                labels: g.labels(v).to_vec(),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|&(u, v)| EdgeRecord {
                from: VertexRef::Name(names[u].clone()),
                to: VertexRef::Name(names[v].clone()),
                costs: None,
            })
            .collect(),
        terminal_costs: None,
        infinite_costs: None,
        initial: g.initial().map(VertexRef::Id),
    }
}

pub fn to_json(game: &AnyGame) -> String {
    let mut file = skeleton(game.graph());
    match game {
        AnyGame::Sp(g) => {
            for (rec, c) in file.edges.iter_mut().zip(&g.costs) {
                rec.costs = Some(c.clone());
            }
        }
        AnyGame::Terminal(g) => {
            let names = g.graph.names();
            file.terminal_costs =
                Some(g.graph.terminals().map(|w| (names[w].clone(), g.terminal_costs[w].clone())).collect());
            file.infinite_costs = Some(g.infinite.clone());
        }
    }
    let mut s = serde_json::to_string_pretty(&file).expect("game files always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_numbers_and_strings() {
        let text = r#"{"players": 1,
            "vertices": [{"id": 1, "owner": "T"}, {"id": 0, "name": "s", "owner": 1}],
            "edges": [{"from": "s", "to": 1, "costs": [0.5]}],
            "initial": "s"}"#;
        let g = parse_game(text).unwrap().into_sp().unwrap();
        assert_eq!(g.costs[0][0], Rational::new(1, 2));
        assert_eq!(g.graph.initial(), Some(0));
        assert_eq!(g.graph.name(1), "1");
    }

    #[test]
    fn rejects_bad_owner_and_arity() {
        let bad_owner = r#"{"players": 1, "vertices": [{"id": 0, "owner": 2}], "edges": []}"#;
        assert!(matches!(parse_game(bad_owner), Err(Error::Parse(_))));
        let bad_arity = r#"{"players": 2, "vertices": [{"id": 0, "owner": 1}, {"id": 1, "owner": "T"}],
            "edges": [{"from": 0, "to": 1, "costs": ["1"]}]}"#;
        assert!(matches!(parse_game(bad_arity), Err(Error::Parse(_))));
        assert!(matches!(parse_game("{"), Err(Error::Json(_))));
    }

    #[test]
    fn terminal_round_trip() {
        let text = r#"{"players": 1,
            "vertices": [{"id": 0, "name": "v", "owner": 1}, {"id": 1, "name": "w", "owner": "T"}],
            "edges": [{"from": "v", "to": "w"}, {"from": "v", "to": "v"}],
            "terminal_costs": {"w": ["-3/2"]}}"#;
        let g = parse_game(text).unwrap();
        let again = parse_game(&to_json(&g)).unwrap();
        assert_eq!(g, again);
        let t = again.into_terminal().unwrap();
        assert_eq!(t.infinite, vec![Rational::zero()]);
    }
}
