//! Bundled example games.
//!
//! | name      | kind          | notes                                              |
//! |-----------|---------------|----------------------------------------------------|
//! | `fig1-pm` | shortest path | mixed-sign costs, two players, no NE               |
//! | `fig1-p`  | shortest path | non-negative costs with zeros, no NE               |
//! | `g2`      | terminal      | two players, symmetric, infinite play preferred    |
//! | `g3s`     | terminal      | three players, symmetric, has NE but no UNE        |
//! | `g6`      | terminal      | two players, one-way 6-cycle, no UNE               |
//! | `g6s`     | shortest path | positive symmetric version of `g6`, no UNE         |
//! | `chain`   | terminal      | two-vertex chain to a single terminal              |

use crate::format::{parse_game, AnyGame};
use crate::game::{SpGame, TerminalGame};

const SOURCES: &[(&str, &str)] = &[
    ("fig1-pm", include_str!("../fixtures/fig1-pm.json")),
    ("fig1-p", include_str!("../fixtures/fig1-p.json")),
    ("g2", include_str!("../fixtures/g2.json")),
    ("g3s", include_str!("../fixtures/g3s.json")),
    ("g6", include_str!("../fixtures/g6.json")),
    ("g6s", include_str!("../fixtures/g6s.json")),
    ("chain", include_str!("../fixtures/chain.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|&(n, _)| n)
}

/// Raw JSON text of a bundled game.
pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|&&(n, _)| n == name).map(|&(_, s)| s)
}

pub fn load(name: &str) -> Option<AnyGame> {
    source(name).map(|s| parse_game(s).expect("bundled fixtures parse"))
}

fn sp(name: &str) -> SpGame {
    load(name).and_then(|g| g.into_sp().ok()).expect("bundled shortest-path game")
}

fn terminal(name: &str) -> TerminalGame {
    load(name).and_then(|g| g.into_terminal().ok()).expect("bundled terminal game")
}

/// Two-player game on `s, a, b, t` with negative and positive costs.
pub fn fig1_pm() -> SpGame {
    sp("fig1-pm")
}

/// Same graph as [`fig1_pm`] with non-negative costs, some zero.
pub fn fig1_p() -> SpGame {
    sp("fig1-p")
}

pub fn g2() -> TerminalGame {
    terminal("g2")
}

pub fn g3s() -> TerminalGame {
    terminal("g3s")
}

pub fn g6() -> TerminalGame {
    terminal("g6")
}

pub fn g6s() -> SpGame {
    sp("g6s")
}

pub fn chain() -> TerminalGame {
    terminal("chain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::to_json;

    #[test]
    fn every_fixture_round_trips() {
        for name in names() {
            let g = load(name).unwrap();
            assert_eq!(parse_game(&to_json(&g)).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(g6s().graph.num_edges(), 18);
        assert_eq!(g3s().graph.num_edges(), 9);
        assert_eq!(g6().graph.num_edges(), 12);
        assert_eq!(fig1_pm().graph.num_edges(), 7);
    }
}
