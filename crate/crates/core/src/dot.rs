//! Graphviz export.

use std::fmt::Write;

use crate::format::AnyGame;
use crate::graph::{Owner, Situation};
use crate::rational::Rational;

const PALETTE: [&str; 6] = ["#e06666", "#6fa8dc", "#93c47d", "#f6b26b", "#8e7cc3", "#ffd966"];

fn join(costs: &[Rational]) -> String {
    costs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text for the game. Player vertices are filled with one colour per
/// player, terminals are double circles labelled with their costs, and the
/// moves of `situation` are drawn bold.
pub fn to_dot(game: &AnyGame, situation: Option<&Situation>) -> String {
    let g = game.graph();
    let mut out = String::from("digraph game {\n  rankdir=LR;\n  node [style=filled, fontname=\"Helvetica\"];\n");
    for v in g.vertices() {
        let name = quote(g.name(v));
        let attrs = match (g.owner(v), game) {
            (Owner::Player(p), _) => {
                let mut label = g.name(v).to_string();
                if g.initial() == Some(v) {
                    label.push_str(" (start)");
                }
                format!("label={}, shape=circle, fillcolor=\"{}\"", quote(&label), PALETTE[p % PALETTE.len()])
            }
            (Owner::Terminal, AnyGame::Terminal(t)) => format!(
                "label={}, shape=doublecircle, fillcolor=\"#eeeeee\"",
                quote(&format!("{}\\n({})", g.name(v), join(&t.terminal_costs[v])))
            ),
            (Owner::Terminal, AnyGame::Sp(_)) => "shape=doublecircle, fillcolor=\"#eeeeee\"".to_string(),
        };
        writeln!(out, "  {name} [{attrs}];").expect("writing to a string");
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mut attrs = Vec::new();
        if let AnyGame::Sp(sp) = game {
            attrs.push(format!("label={}", quote(&format!("({})", join(&sp.costs[e])))));
        }
        if situation.and_then(|s| s.get(u)) == Some(v) {
            attrs.push("style=bold, penwidth=2.5".to_string());
        } else {
            attrs.push("color=\"#888888\"".to_string());
        }
        writeln!(out, "  {} -> {} [{}];", quote(g.name(u)), quote(g.name(v)), attrs.join(", "))
            .expect("writing to a string");
    }
    if let AnyGame::Terminal(t) = game {
        writeln!(out, "  label={};", quote(&format!("infinite play: ({})", join(&t.infinite))))
            .expect("writing to a string");
    }
    out.push_str("}\n");
    out
}
