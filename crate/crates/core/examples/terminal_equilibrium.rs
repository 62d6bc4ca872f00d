//! NE of edge-symmetric terminal games with arbitrary terminal costs.
//!
//! ```text
//! cargo run --example terminal_equilibrium
//! ```

use pathgames::fixtures;
use pathgames::game::Game;
use pathgames::oracle::{find_all_ne, EnumConfig};
use pathgames::play::trace;
use pathgames::terminal_ne::solve_terminal_ne;

fn main() -> pathgames::error::Result<()> {
    for (name, g) in [("g2", fixtures::g2()), ("g3s", fixtures::g3s())] {
        for v0 in g.graph.non_terminals() {
            let ne = solve_terminal_ne(&g, v0)?;
            let all = find_all_ne(&g, v0, EnumConfig::default())?;
            let costs: Vec<String> = g.outcome_costs(&ne.situation, v0)?.iter().map(ToString::to_string).collect();
            println!(
                "{name} from {}: {:?}, play {}, costs ({}), one of {} NE",
                g.graph.name(v0),
                ne.construction,
                trace(&g.graph, &ne.situation, v0).display(&g.graph),
                costs.join(", "),
                all.len()
            );
        }
    }
    Ok(())
}
