//! Vertex-potential reweighting: negative edges, positive cycles, and the
//! same equilibria afterwards.
//!
//! ```text
//! cargo run --example gallai
//! ```

use pathgames::game::is_positive;
use pathgames::generate::{self, Shape};
use pathgames::oracle::{verify_ne_sp, EnumConfig};
use pathgames::reductions::gallai_transform;
use pathgames::sp_ne::sp_equilibrium;

fn main() -> pathgames::error::Result<()> {
    let mut rng = generate::rng(3);
    let shape = Shape { players: 2, ..Shape::random(&mut rng, 7, 2) };
    let g = generate::positive_cycle_sp_game(&mut rng, &shape);
    let (h, pi) = gallai_transform(&g)?;
    let r = is_positive(&g);
    println!("before: positive edges {}, positive cycles {}", r.edges_positive, r.cycles_positive);
    println!("after:  smallest edge cost {}", h.min_edge_cost().expect("has edges"));
    for (e, &(u, v)) in g.graph.edges().iter().enumerate() {
        println!(
            "{:>3} -> {:<3} ({}, {})  =>  ({}, {})",
            g.graph.name(u),
            g.graph.name(v),
            g.cost(e, 0),
            g.cost(e, 1),
            h.cost(e, 0),
            h.cost(e, 1)
        );
    }
    for p in 0..2 {
        let pi: Vec<String> = g.graph.vertices().map(|v| pi.get(p, v).to_string()).collect();
        println!("potential of player {}: [{}]", p + 1, pi.join(", "));
    }

    let sigma = sp_equilibrium(&h, 0)?;
    let verdict = verify_ne_sp(&g, &sigma, 0, EnumConfig::default())?;
    println!("NE of the reweighted game is NE of the original: {}", verdict.is_none());
    Ok(())
}
