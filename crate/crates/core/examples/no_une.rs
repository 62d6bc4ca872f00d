//! Games with NE from every start but no uniform NE.
//!
//! ```text
//! cargo run --example no_une
//! ```

use pathgames::fixtures;
use pathgames::game::Game;
use pathgames::oracle::{find_all_ne, find_all_une, situation_count, EnumConfig};

fn report<G: Game>(name: &str, g: &G) -> pathgames::error::Result<()> {
    let cfg = EnumConfig::default();
    let graph = g.graph();
    let per_start: Vec<String> = graph
        .non_terminals()
        .map(|v| find_all_ne(g, v, cfg).map(|ne| format!("{}:{}", graph.name(v), ne.len())))
        .collect::<Result<_, _>>()?;
    println!(
        "{name}: {} situations, NE per start [{}], {} UNE",
        situation_count(graph),
        per_start.join(" "),
        find_all_une(g, cfg)?.len()
    );
    Ok(())
}

fn main() -> pathgames::error::Result<()> {
    report("g2", &fixtures::g2())?;
    report("g3s", &fixtures::g3s())?;
    report("g6", &fixtures::g6())?;
    report("g6s", &fixtures::g6s())
}
