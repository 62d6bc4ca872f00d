//! Tabulates the bundled four-vertex games and shows that neither has a NE.
//!
//! ```text
//! cargo run --example normal_form
//! ```

use pathgames::fixtures;
use pathgames::oracle::{find_all_ne, normal_form, EnumConfig};

fn main() -> pathgames::error::Result<()> {
    let cfg = EnumConfig::default();
    for (name, game) in [("fig1-pm", fixtures::fig1_pm()), ("fig1-p", fixtures::fig1_p())] {
        let start = game.graph.initial().unwrap_or(0);
        let nf = normal_form(&game, start, cfg)?;
        println!("{name}: columns are player 1, rows player 2, _x_ marks a unilateral minimum");
        print!("{}", nf.to_text(&game.graph));
        println!("{} NE found\n", find_all_ne(&game, start, cfg)?.len());
    }
    Ok(())
}
