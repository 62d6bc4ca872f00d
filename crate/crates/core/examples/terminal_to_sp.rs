//! Recasting a terminal game as a positive shortest-path game and solving it
//! there.
//!
//! ```text
//! cargo run --example terminal_to_sp
//! ```

use pathgames::game::Game;
use pathgames::generate::{self, Shape};
use pathgames::oracle::{verify_ne, EnumConfig};
use pathgames::reductions::terminal_to_sp;
use pathgames::sp_ne::sp_equilibrium;

fn main() -> pathgames::error::Result<()> {
    let mut rng = generate::rng(5);
    let shape = Shape::random(&mut rng, 8, 3);
    let g = generate::ciw_game(&mut rng, &shape);
    let red = terminal_to_sp(&g)?;
    println!("scale {}, M = {}, inner step {}", red.scale, red.big_m, red.step);
    for w in g.graph.terminals() {
        let costs: Vec<String> = (0..g.players())
            .map(|p| format!("{} -> {}", g.terminal_cost(w, p), red.big_m + red.normalized_cost(w, p)))
            .collect();
        println!("terminal {}: {}", g.graph.name(w), costs.join(", "));
    }
    let sigma = sp_equilibrium(&red.game, 0)?;
    let costs: Vec<String> = g.outcome_costs(&sigma, 0)?.iter().map(ToString::to_string).collect();
    println!("terminal-game costs of the NE: ({})", costs.join(", "));
    println!("verified in the terminal game: {}", verify_ne(&g, &sigma, 0, EnumConfig::default())?.is_none());
    Ok(())
}
