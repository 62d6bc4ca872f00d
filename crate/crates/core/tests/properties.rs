use std::collections::HashSet;

use proptest::prelude::*;

use pathgames::cost::ExtCost;
use pathgames::game::{is_edge_symmetric, is_positive, merge_terminals, SpGame, TerminalGame};
use pathgames::generate::{self, Shape};
use pathgames::graph::{GameGraph, Owner, Situation, Vertex};
use pathgames::oracle::{enumerate_situations, find_all_ne, normal_form, strategy_count, verify_ne, EnumConfig};
use pathgames::play::{sp_cost, terminal_cost, trace, Play};
use pathgames::rational::Rational;
use pathgames::reductions::{contract_small_game, gallai_transform, terminal_to_sp};
use pathgames::response::current_values;
use pathgames::sp_ne::sp_equilibrium;
use pathgames::terminal_ne::terminal_equilibrium;
use pathgames::une::uniform_best_response;

/// Raw material for a random graph: vertex count, players, owner picks, edge
/// flags and a pool of small integer costs.
#[derive(Clone, Debug)]
struct Raw {
    total: usize,
    players: usize,
    owners: Vec<usize>,
    flags: Vec<bool>,
    costs: Vec<i8>,
}

fn raw(max_vertices: usize, cost_range: std::ops::RangeInclusive<i8>) -> impl Strategy<Value = Raw> {
    let m = max_vertices;
    (
        3..=m,
        1..=3usize,
        prop::collection::vec(0..3usize, m),
        prop::collection::vec(prop::bool::weighted(0.35), m * m),
        prop::collection::vec(cost_range, m * m * 3),
    )
        .prop_map(|(total, players, owners, flags, costs)| Raw { total, players, owners, flags, costs })
}

impl Raw {
    /// Graph whose last quarter of vertices are terminals; every
    /// non-terminal gets at least one move.
    fn graph(&self) -> GameGraph {
        let t = self.total.div_ceil(4);
        let n = self.total - t;
        let m = (self.flags.len() as f64).sqrt() as usize;
        let owners = (0..self.total)
            .map(|v| if v < n { Owner::Player(self.owners[v] % self.players) } else { Owner::Terminal })
            .collect();
        let mut edges = Vec::new();
        for u in 0..n {
            let before = edges.len();
            for v in 0..self.total {
                if u != v && self.flags[u * m + v] {
                    edges.push((u, v));
                }
            }
            if edges.len() == before {
                edges.push((u, n));
            }
        }
        GameGraph::new(self.players, owners, edges).unwrap().with_initial(Some(0))
    }

    fn sp(&self) -> SpGame {
        let graph = self.graph();
        let costs = (0..graph.num_edges())
            .map(|e| (0..self.players).map(|p| Rational::from_integer(self.costs[e * 3 + p] as i128)).collect())
            .collect();
        SpGame::new(graph, costs).unwrap()
    }

    fn terminal(&self) -> TerminalGame {
        let graph = self.graph();
        let costs: Vec<(Vertex, Vec<Rational>)> = graph
            .terminals()
            .map(|w| (w, (0..self.players).map(|p| Rational::from_integer(self.costs[w * 3 + p] as i128)).collect()))
            .collect();
        TerminalGame::new(graph, costs, None).unwrap()
    }
}

/// All simple directed cycles, each listed once from its lowest vertex.
fn simple_cycles(g: &GameGraph) -> Vec<Vec<Vertex>> {
    fn go(g: &GameGraph, root: Vertex, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let v = *path.last().unwrap();
        for w in g.successors(v).collect::<Vec<_>>() {
            if w == root {
                out.push(path.clone());
            } else if w > root && !path.contains(&w) {
                path.push(w);
                go(g, root, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for root in g.vertices() {
        go(g, root, &mut vec![root], &mut out);
    }
    out
}

fn edge_sum(g: &SpGame, vertices: &[Vertex], p: usize, closed: bool) -> Rational {
    let mut sum: Rational = vertices.windows(2).map(|e| g.edge_cost(e[0], e[1], p).unwrap()).sum();
    if closed {
        sum += g.edge_cost(*vertices.last().unwrap(), vertices[0], p).unwrap();
    }
    sum
}

/// Vertices of a terminal play, terminal included.
fn full_path(play: &Play) -> Vec<Vertex> {
    let mut out = play.prefix.clone();
    out.extend(play.terminal());
    out
}

fn cfg() -> EnumConfig {
    EnumConfig { cap: 20_000 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_closure_is_idempotent(r in raw(8, 0..=1)) {
        let g = r.graph();
        let close = |g: &GameGraph| {
            let mut edges: HashSet<(Vertex, Vertex)> = g.edges().iter().copied().collect();
            for &(u, v) in g.edges() {
                if !g.is_terminal(v) {
                    edges.insert((v, u));
                }
            }
            let mut edges: Vec<_> = edges.into_iter().collect();
            edges.sort();
            GameGraph::new(g.players(), g.owners().to_vec(), edges).unwrap()
        };
        let once = close(&g);
        prop_assert!(is_edge_symmetric(&once));
        let twice = close(&once);
        prop_assert_eq!(twice.edges(), once.edges());
        prop_assert_eq!(is_edge_symmetric(&g), once.num_edges() == g.num_edges());
    }

    #[test]
    fn positivity_matches_cycle_enumeration(r in raw(8, -2..=4)) {
        let g = r.sp();
        let cycles = simple_cycles(&g.graph);
        let brute = cycles.iter().all(|c| (0..g.players()).all(|p| edge_sum(&g, c, p, true).is_positive()));
        let report = is_positive(&g);
        prop_assert_eq!(report.cycles_positive, brute);
        if let Some((p, cycle)) = report.witness {
            prop_assert!(!edge_sum(&g, &cycle, p, true).is_positive());
        }
    }

    #[test]
    fn merging_terminals_keeps_terminal_play_costs(r in raw(7, -2..=4)) {
        let g = r.sp();
        let (merged, map) = merge_terminals(&g);
        prop_assert_eq!(merged.graph.terminals().count(), 1);
        for sigma in enumerate_situations(&merged.graph, cfg()).unwrap() {
            let lifted = map.lift(&sigma);
            for v in merged.graph.non_terminals() {
                let play = trace(&merged.graph, &sigma, v);
                if !play.is_terminal() {
                    continue;
                }
                let orig = trace(&g.graph, &lifted, map.to_original[v]);
                prop_assert!(orig.is_terminal());
                for p in 0..g.players() {
                    prop_assert_eq!(sp_cost(&merged, &play, p).unwrap(), sp_cost(&g, &orig, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn plays_are_short_and_follow_the_situation(r in raw(9, 1..=3), picks in prop::collection::vec(0..4usize, 9)) {
        let g = r.graph();
        let choice = g.vertices().map(|v| {
            let out: Vec<Vertex> = g.successors(v).collect();
            (!out.is_empty()).then(|| out[picks[v] % out.len()])
        }).collect();
        let sigma = Situation::from_choices(choice);
        for v in g.non_terminals() {
            let play = trace(&g, &sigma, v);
            // Distinct vertices visited: the cycle entry appears in both parts.
            let distinct = play.prefix.len() + play.cycle().map_or(1, |c| c.len() - 1);
            prop_assert!(distinct <= g.num_vertices());
            for (a, b) in play.path_moves().into_iter().chain(play.cycle_moves()) {
                prop_assert_eq!(sigma.get(a), Some(b));
            }
        }
    }

    #[test]
    fn terminal_play_cost_is_the_edge_sum(r in raw(8, -3..=5), picks in prop::collection::vec(0..4usize, 8)) {
        let g = r.sp();
        let choice = g.graph.vertices().map(|v| {
            let out: Vec<Vertex> = g.graph.successors(v).collect();
            (!out.is_empty()).then(|| out[picks[v] % out.len()])
        }).collect();
        let sigma = Situation::from_choices(choice);
        for v in g.graph.non_terminals() {
            let play = trace(&g.graph, &sigma, v);
            if play.is_terminal() {
                for p in 0..g.players() {
                    let want = ExtCost::Finite(edge_sum(&g, &full_path(&play), p, false));
                    prop_assert_eq!(sp_cost(&g, &play, p).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn positive_games_price_every_cycle_at_plus_infinity(r in raw(8, 1..=5)) {
        let g = r.sp();
        for sigma in enumerate_situations(&g.graph, cfg()).unwrap() {
            for v in g.graph.non_terminals() {
                let play = trace(&g.graph, &sigma, v);
                if !play.is_terminal() {
                    for p in 0..g.players() {
                        prop_assert_eq!(sp_cost(&g, &play, p).unwrap(), ExtCost::PlusInf);
                    }
                }
            }
        }
    }

    #[test]
    fn reweighting_shifts_all_paths_equally(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let shape = Shape::random(&mut rng, 7, 3);
        let g = generate::positive_cycle_sp_game(&mut rng, &shape);
        let (h, pi) = gallai_transform(&g).unwrap();
        prop_assert!(h.min_edge_cost().unwrap().is_positive());
        // Reweighting any play moves its cost by the potential difference of its ends.
        for sigma in enumerate_situations(&g.graph, cfg()).unwrap().take(200) {
            let play = trace(&g.graph, &sigma, 0);
            if let Some(t) = play.terminal() {
                for p in 0..g.players() {
                    let d = edge_sum(&h, &full_path(&play), p, false) - edge_sum(&g, &full_path(&play), p, false);
                    prop_assert_eq!(d, pi.get(p, 0) - pi.get(p, t));
                }
            }
        }
    }

    #[test]
    fn reduction_sandwich(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let shape = Shape::random(&mut rng, 7, 3);
        let g = generate::ciw_game(&mut rng, &shape);
        let red = terminal_to_sp(&g).unwrap();
        let half = Rational::new(1, 2);
        for sigma in enumerate_situations(&g.graph, cfg()).unwrap() {
            for v in g.graph.non_terminals() {
                let play = trace(&g.graph, &sigma, v);
                let Some(w) = play.terminal() else { continue };
                for p in 0..g.players() {
                    let len = edge_sum(&red.game, &full_path(&play), p, false);
                    let low = red.big_m + red.normalized_cost(w, p);
                    prop_assert!(low <= len && len < low + half);
                }
            }
        }
    }

    #[test]
    fn contraction_lift_keeps_costs(r in raw(7, -4..=4), loops in any::<bool>()) {
        let g = r.terminal();
        let g = if loops {
            let mut edges = g.graph.edges().to_vec();
            edges.extend(g.graph.non_terminals().filter(|v| v % 2 == 0).map(|v| (v, v)));
            edges.sort();
            let graph = GameGraph::new(g.players(), g.graph.owners().to_vec(), edges).unwrap();
            TerminalGame::new(graph, g.graph.terminals().map(|w| (w, g.terminal_costs[w].clone())), None).unwrap()
        } else {
            g
        };
        let (small, map) = contract_small_game(&g);
        for sigma in enumerate_situations(&small.graph, cfg()).unwrap() {
            let lifted = map.lift(&sigma);
            for v in g.graph.non_terminals() {
                let q = map.comp[v];
                for p in 0..g.players() {
                    prop_assert_eq!(
                        terminal_cost(&g, &trace(&g.graph, &lifted, v), p),
                        terminal_cost(&small, &trace(&small.graph, &sigma, q), p)
                    );
                }
            }
        }
    }

    #[test]
    fn best_response_values_do_not_rise_along_edges(seed in any::<u64>(), p in 0..2usize) {
        let mut rng = generate::rng(seed);
        let shape = Shape { self_loops: seed % 2 == 0, ..Shape::two_player(&mut rng, 9) };
        let g = generate::ciw_game(&mut rng, &shape);
        let sigma = pathgames::une::initial_basic_situation(&g);
        let (best, _) = uniform_best_response(&g, &sigma, p).unwrap();
        let values = current_values(&g, &best, p);
        for v in g.graph.vertices_of(p) {
            for u in g.graph.successors(v) {
                prop_assert!(values[v] <= values[u], "{} > {}", values[v], values[u]);
            }
        }
    }

    #[test]
    fn enumerated_ne_agree_with_deviation_checks(r in raw(6, -2..=4)) {
        let g = r.terminal();
        let ne: HashSet<Situation> = find_all_ne(&g, 0, cfg()).unwrap().into_iter().collect();
        let nf = normal_form(&g, 0, cfg()).unwrap();
        let product: u128 = (0..g.players()).map(|p| strategy_count(&g.graph, p)).product();
        prop_assert_eq!(nf.cells.len() as u128, product);
        for i in 0..nf.cells.len() {
            let sigma = nf.situation(&nf.profile(i));
            let verdict = verify_ne(&g, &sigma, 0, cfg()).unwrap();
            prop_assert_eq!(verdict.is_none(), ne.contains(&sigma));
        }
    }

    #[test]
    fn both_terminal_routes_give_equilibria(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let shape = Shape::random(&mut rng, 8, 3);
        let g = generate::ciw_game(&mut rng, &shape);
        let direct = terminal_equilibrium(&g, 0).unwrap();
        prop_assert!(verify_ne(&g, &direct, 0, cfg()).unwrap().is_none());
        let red = terminal_to_sp(&g).unwrap();
        let via_sp = sp_equilibrium(&red.game, 0).unwrap();
        prop_assert!(verify_ne(&g, &via_sp, 0, cfg()).unwrap().is_none());
    }

    #[test]
    fn rationals_are_canonical(a in -1000i128..1000, b in 1i128..1000, k in 1i128..50) {
        let x = Rational::new(a, b);
        prop_assert_eq!(x, Rational::new(a * k, b * k));
        prop_assert_eq!(x, Rational::new(-a, -b));
        prop_assert!(x.denom() > 0);
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        prop_assert!(ExtCost::MinusInf < ExtCost::Finite(x) && ExtCost::Finite(x) < ExtCost::PlusInf);
        prop_assert_eq!(ExtCost::Finite(x) < ExtCost::Finite(Rational::new(a + 1, b)), true);
    }
}
