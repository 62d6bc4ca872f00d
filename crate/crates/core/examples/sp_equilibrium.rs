//! NE of a positive edge-symmetric shortest-path game, from every start.
//!
//! ```text
//! cargo run --example sp_equilibrium
//! ```

use pathgames::fixtures;
use pathgames::game::Game;
use pathgames::oracle::{verify_ne_sp, EnumConfig};
use pathgames::play::trace;
use pathgames::sp_ne::solve_sp_ne;

fn main() -> pathgames::error::Result<()> {
    let g = fixtures::g6s();
    for v0 in g.graph.non_terminals() {
        let ne = solve_sp_ne(&g, v0)?;
        let sigma = &ne.situation;
        let path = ne.path.as_ref().expect("a terminal is reachable");
        let costs: Vec<String> = g.outcome_costs(sigma, v0)?.iter().map(ToString::to_string).collect();
        println!(
            "from {}: play {}  costs ({})  blocks {}  improvements {}",
            g.graph.name(v0),
            trace(&g.graph, sigma, v0).display(&g.graph),
            costs.join(", "),
            path.q(),
            path.iterations
        );
        // The solver already checked this; shown for completeness.
        assert!(verify_ne_sp(&g, sigma, v0, EnumConfig::default())?.is_none());
    }
    Ok(())
}
