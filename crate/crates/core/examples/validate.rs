//! Structural checks and positivity of the bundled games, plus a broken one.
//!
//! ```text
//! cargo run --example validate
//! ```

use pathgames::fixtures;
use pathgames::format::{parse_game, AnyGame};
use pathgames::game::{is_edge_symmetric, is_positive, Game};

const BROKEN: &str = r#"{
    "players": 1,
    "vertices": [{"id": 0, "name": "x", "owner": 1}, {"id": 1, "name": "y", "owner": 1},
                 {"id": 2, "name": "t", "owner": "T"}],
    "edges": [{"from": "x", "to": "t"}, {"from": "t", "to": "x"}],
    "terminal_costs": {"t": ["-1"]}
}"#;

fn main() -> pathgames::error::Result<()> {
    for name in fixtures::names() {
        let game = fixtures::load(name).expect("bundled");
        let g = game.graph();
        print!("{name:8} symmetric={:5}", is_edge_symmetric(g));
        match &game {
            AnyGame::Sp(sp) => {
                let r = is_positive(sp);
                print!(" positive edges={:5} positive cycles={:5}", r.edges_positive, r.cycles_positive);
                if let Some((p, cycle)) = r.witness {
                    let names: Vec<&str> = cycle.iter().map(|&v| g.name(v)).collect();
                    print!(" witness: player {} on {}", p + 1, names.join("->"));
                }
            }
            AnyGame::Terminal(t) => print!(" infinite play worst={}", t.satisfies_ciw()),
        }
        println!();
    }

    // Parsing succeeds; the rule violations are reported as data.
    let broken = parse_game(BROKEN)?.into_terminal()?;
    for v in broken.validate() {
        println!("broken: {v}");
    }
    Ok(())
}
