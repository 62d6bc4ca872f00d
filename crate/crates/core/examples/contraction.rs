//! Merging each player's strongly connected regions and lifting a situation
//! of the small game back.
//!
//! ```text
//! cargo run --example contraction
//! ```

use pathgames::game::TerminalGame;
use pathgames::graph::{GameGraph, Owner, Situation};
use pathgames::play::trace;
use pathgames::rational::Rational;
use pathgames::reductions::contract_small_game;

fn main() -> pathgames::error::Result<()> {
    // Player 1 owns a, b, c (a triangle); player 2 owns d; two terminals.
    let owners =
        vec![Owner::Player(0), Owner::Player(0), Owner::Player(0), Owner::Player(1), Owner::Terminal, Owner::Terminal];
    let edges = vec![(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1), (2, 3), (3, 2), (3, 4), (0, 5)];
    let graph = GameGraph::new(2, owners, edges)?.with_names(["a", "b", "c", "d", "t1", "t2"]);
    let costs = [(4, vec![Rational::from(-1), Rational::from(-3)]), (5, vec![Rational::from(-2), Rational::from(-1)])];
    let g = TerminalGame::new(graph, costs, None)?;

    let (small, map) = contract_small_game(&g);
    for (q, members) in map.members.iter().enumerate() {
        let names: Vec<&str> = members.iter().map(|&v| g.graph.name(v)).collect();
        println!("small vertex {q}: {{{}}}", names.join(", "));
    }
    println!("small game moves: {:?}", small.graph.edges());

    // Player 1's region leaves through its representative move to d, and d
    // goes to t1.
    let mut sigma = Situation::lowest_id(&small.graph);
    sigma.set(map.comp[0], map.comp[3]);
    sigma.set(map.comp[3], map.comp[4]);
    let lifted = map.lift(&sigma);
    println!("lifted: {}", lifted.display(&g.graph));
    for v in g.graph.non_terminals() {
        println!("  from {}: {}", g.graph.name(v), trace(&g.graph, &lifted, v).display(&g.graph));
    }
    Ok(())
}
