//! Alternating uniform best improvements on a random two-player game where
//! every terminal beats infinite play.
//!
//! ```text
//! cargo run --example une_dynamics [seed]
//! ```

use pathgames::generate::{self, Shape};
use pathgames::oracle::{verify_une, EnumConfig};
use pathgames::une::solve_une;

fn main() -> pathgames::error::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(11);
    let mut rng = generate::rng(seed);
    // Keep drawing until a run needs at least two improvements.
    let (g, run) = loop {
        let shape = Shape::two_player(&mut rng, 10);
        let g = generate::ciw_game(&mut rng, &shape);
        let run = solve_une(&g)?;
        if run.improvements() >= 2 {
            break (g, run);
        }
    };
    for (w, costs) in g.terminal_costs.iter().enumerate().filter(|(w, _)| g.graph.is_terminal(*w)) {
        println!("terminal {}: ({}, {})", g.graph.name(w), costs[0], costs[1]);
    }
    for line in run.trace_lines() {
        println!("{line}");
    }
    println!("UNE: {}", run.situation.display(&g.graph));
    println!("{} improvements, bound {}", run.improvements(), run.bound());
    assert!(verify_une(&g, &run.situation, EnumConfig::default())?.is_none());
    Ok(())
}
