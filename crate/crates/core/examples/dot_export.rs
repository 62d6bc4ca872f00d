//! Graphviz output with a solver's situation drawn bold.
//!
//! ```text
//! cargo run --example dot_export > g2.dot && dot -Tsvg g2.dot -o g2.svg
//! ```

use pathgames::dot::to_dot;
use pathgames::fixtures;
use pathgames::terminal_ne::terminal_equilibrium;

fn main() -> pathgames::error::Result<()> {
    let game = fixtures::load("g2").expect("bundled");
    let g = game.clone().into_terminal()?;
    let sigma = terminal_equilibrium(&g, g.graph.initial().unwrap_or(0))?;
    print!("{}", to_dot(&game, Some(&sigma)));
    Ok(())
}
