//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use pathgames::cost::ExtCost;
use pathgames::fixtures;
use pathgames::game::{is_positive, Game, SpGame, TerminalGame};
use pathgames::generate::{self, Shape};
use pathgames::graph::{GameGraph, Situation, Vertex};
use pathgames::oracle::{
    enumerate_situations, find_all_ne, find_all_une, normal_form, situation_count, verify_ne, verify_ne_sp, verify_une,
    EnumConfig,
};
use pathgames::rational::Rational;
use pathgames::reductions::{gallai_transform, terminal_to_sp};
use pathgames::sp_ne::sp_equilibrium;
use pathgames::terminal_ne::terminal_equilibrium;
use pathgames::une::solve_une;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cfg() -> EnumConfig {
    EnumConfig::default()
}

/// Where following `sigma` from `v` ends: a terminal, or `None` for a cycle.
/// Also returns the visited moves.
fn walk(g: &GameGraph, sigma: &Situation, mut v: Vertex) -> (Option<Vertex>, Vec<(Vertex, Vertex)>) {
    let mut seen = HashSet::new();
    let mut moves = Vec::new();
    while !g.is_terminal(v) {
        if !seen.insert(v) {
            return (None, moves);
        }
        let w = sigma.get(v).expect("total situation");
        moves.push((v, w));
        v = w;
    }
    (Some(v), moves)
}

fn ext(s: &str) -> ExtCost {
    match s {
        "+inf" => ExtCost::PlusInf,
        "-inf" => ExtCost::MinusInf,
        q => ExtCost::Finite(q.parse().expect("rational literal")),
    }
}

fn with_moves(g: &GameGraph, moves: &str) -> Situation {
    let mut sigma = Situation::lowest_id(g);
    for m in moves.split_whitespace() {
        let (a, b) = m.split_once("->").expect("u->v");
        sigma.set(g.vertex_by_name(a).expect("vertex"), g.vertex_by_name(b).expect("vertex"));
    }
    sigma
}

/// Compares the whole normal form against a published grid given as
/// (second player's strategy, first player's move, cost 1, cost 2).
fn grid(g: &SpGame, published: &[(&str, &str, &str, &str)]) -> Outcome {
    let start = g.graph.initial().expect("initial vertex");
    let nf = normal_form(g, start, cfg()).map_err(|e| e.to_string())?;
    ensure!(nf.cells.len() == published.len(), "{} cells, expected {}", nf.cells.len(), published.len());
    let mut matched = HashSet::new();
    for &(blue, red, c1, c2) in published {
        let sigma = with_moves(&g.graph, &format!("{blue} {red}"));
        let i = (0..nf.cells.len())
            .find(|&i| nf.situation(&nf.profile(i)) == sigma)
            .ok_or_else(|| format!("no cell for {blue} {red}"))?;
        ensure!(matched.insert(i), "cell {blue} {red} listed twice");
        let want = [ext(c1), ext(c2)];
        ensure!(nf.cells[i] == want, "{blue} {red}: got {:?}, expected {want:?}", nf.cells[i]);
    }
    let ne = find_all_ne(g, start, cfg()).map_err(|e| e.to_string())?;
    ensure!(ne.is_empty(), "{} NE found", ne.len());
    Ok(format!("{} cells exact, no NE", published.len()))
}

// The reference grids call vertex `b` `u` and vertex `a` `v`.
fn criterion_1() -> Outcome {
    grid(
        &fixtures::fig1_pm(),
        &[
            ("b->a a->s", "s->b", "+inf", "-inf"),
            ("b->a a->s", "s->a", "-inf", "+inf"),
            ("b->a a->b", "s->b", "+inf", "+inf"),
            ("b->a a->b", "s->a", "+inf", "+inf"),
            ("b->t a->s", "s->b", "1", "0"),
            ("b->t a->s", "s->a", "-inf", "+inf"),
            ("b->t a->b", "s->b", "1", "0"),
            ("b->t a->b", "s->a", "2", "4"),
            ("b->s a->s", "s->b", "+inf", "+inf"),
            ("b->s a->s", "s->a", "-inf", "+inf"),
            ("b->s a->b", "s->b", "+inf", "+inf"),
            ("b->s a->b", "s->a", "+inf", "+inf"),
        ],
    )
}

fn criterion_2() -> Outcome {
    grid(
        &fixtures::fig1_p(),
        &[
            ("b->s a->s", "s->b", "+inf", "+inf"),
            ("b->s a->s", "s->a", "0", "+inf"),
            ("b->s a->b", "s->b", "+inf", "+inf"),
            ("b->s a->b", "s->a", "+inf", "+inf"),
            ("b->a a->s", "s->b", "+inf", "0"),
            ("b->a a->s", "s->a", "0", "+inf"),
            ("b->a a->b", "s->b", "+inf", "+inf"),
            ("b->a a->b", "s->a", "+inf", "+inf"),
            ("b->t a->s", "s->b", "1", "1"),
            ("b->t a->s", "s->a", "0", "+inf"),
            ("b->t a->b", "s->b", "1", "1"),
            ("b->t a->b", "s->a", "2", "3"),
        ],
    )
}

fn criterion_3() -> Outcome {
    fn none<G: Game>(name: &str, g: &G, out: &mut Vec<String>) -> Result<(), String> {
        let found = find_all_une(g, cfg()).map_err(|e| e.to_string())?;
        ensure!(found.is_empty(), "{name}: {} UNE found", found.len());
        out.push(format!("{name} {}", situation_count(g.graph())));
        Ok(())
    }
    let mut out = Vec::new();
    none("g2", &fixtures::g2(), &mut out)?;
    none("g3s", &fixtures::g3s(), &mut out)?;
    none("g6", &fixtures::g6(), &mut out)?;
    none("g6s", &fixtures::g6s(), &mut out)?;
    Ok(format!("no UNE among all situations ({})", out.join(", ")))
}

fn criterion_4() -> Outcome {
    let mut r = generate::rng(4);
    let mut enumerated = 0;
    for k in 0..200 {
        let shape = Shape::random(&mut r, 9, 3);
        let g = generate::positive_sp_game(&mut r, &shape);
        let sigma = sp_equilibrium(&g, 0).map_err(|e| format!("game {k}: {e}"))?;
        let verdict = verify_ne_sp(&g, &sigma, 0, cfg()).map_err(|e| format!("game {k}: {e}"))?;
        ensure!(verdict.is_none(), "game {k}: deviation {verdict:?}");
        if let Ok(all) = find_all_ne(&g, 0, cfg()) {
            ensure!(all.contains(&sigma), "game {k}: returned situation not among enumerated NE");
            enumerated += 1;
        }
    }
    Ok(format!("200 games verified, {enumerated} also enumerated"))
}

fn criterion_5() -> Outcome {
    let mut r = generate::rng(5);
    for k in 0..200 {
        let loops = r.gen_bool(0.5);
        let shape = Shape { self_loops: loops, ..Shape::random(&mut r, 9, 3) };
        let g = generate::terminal_game(&mut r, &shape);
        let sigma = terminal_equilibrium(&g, 0).map_err(|e| format!("game {k}: {e}"))?;
        let verdict = verify_ne(&g, &sigma, 0, cfg()).map_err(|e| format!("game {k}: {e}"))?;
        ensure!(verdict.is_none(), "game {k}: deviation {verdict:?}");
    }
    Ok("200 games verified exhaustively".into())
}

/// Owner's cost at every vertex, computed by walking the situation.
fn owner_costs(g: &TerminalGame, sigma: &Situation) -> Vec<Option<Rational>> {
    g.graph
        .vertices()
        .map(|v| {
            let p = g.graph.controller(v)?;
            Some(match walk(&g.graph, sigma, v).0 {
                Some(w) => g.terminal_cost(w, p),
                None => g.infinite_cost(p),
            })
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let mut r = generate::rng(6);
    let (mut steps, mut most, mut flat_first) = (0, 0, 0);
    for k in 0..200 {
        let loops = r.gen_bool(0.5);
        let shape = Shape { self_loops: loops, ..Shape::two_player(&mut r, 10) };
        let g = generate::ciw_game(&mut r, &shape);
        let run = solve_une(&g).map_err(|e| format!("game {k}: {e}"))?;
        let verdict = verify_une(&g, &run.situation, cfg()).map_err(|e| format!("game {k}: {e}"))?;
        ensure!(verdict.is_none(), "game {k}: not uniform, {verdict:?}");

        let h = &run.game;
        let mut prev = owner_costs(h, &run.initial);
        let mut prev_nu: Rational = prev.iter().flatten().copied().sum();
        ensure!(prev_nu == run.initial_nu, "game {k}: initial potential {} vs {prev_nu}", run.initial_nu);
        for s in std::iter::once(&run.initial).chain(run.steps.iter().map(|s| &s.situation)) {
            let finite = h.graph.non_terminals().all(|v| walk(&h.graph, s, v).0.is_some());
            ensure!(finite, "game {k}: a play became infinite");
        }
        for step in &run.steps {
            let now = owner_costs(h, &step.situation);
            let nu: Rational = now.iter().flatten().copied().sum();
            ensure!(nu == step.nu, "game {k} step {}: reported potential {} vs {nu}", step.index, step.nu);
            // The first improvement starts from the constructed situation and
            // only lowers the improving player's own sum.
            if step.index == 1 && nu >= prev_nu {
                flat_first += 1;
            }
            if step.index >= 2 {
                ensure!(nu < prev_nu, "game {k} step {}: potential {prev_nu} -> {nu}", step.index);
                let worse = now.iter().zip(&prev).any(|(a, b)| a > b);
                ensure!(!worse, "game {k} step {}: some vertex got worse", step.index);
            }
            prev = now;
            prev_nu = nu;
        }
        let bound = h.graph.num_vertices() * h.graph.terminals().count();
        ensure!(run.improvements() <= bound, "game {k}: {} improvements > {bound}", run.improvements());
        steps += run.improvements();
        most = most.max(run.improvements());
    }
    Ok(format!(
        "200 runs, {steps} improvements in total, at most {most} in one run; \
         potential fell at every later step, first step left it flat or higher in {flat_first} of 200 runs"
    ))
}

fn criterion_7() -> Outcome {
    let mut r = generate::rng(7);
    let (mut checked, mut transferred) = (0usize, 0usize);
    let half = Rational::new(1, 2);
    for k in 0..100 {
        let shape = Shape::random(&mut r, 8, 3);
        let g = generate::ciw_game(&mut r, &shape);
        let red = terminal_to_sp(&g).map_err(|e| format!("game {k}: {e}"))?;
        let sp = &red.game;
        let sits = enumerate_situations(&g.graph, cfg()).map_err(|e| format!("game {k}: {e}"))?;
        for sigma in sits {
            for v in g.graph.non_terminals() {
                let (end, moves) = walk(&g.graph, &sigma, v);
                let Some(w) = end else { continue };
                for p in 0..g.players() {
                    let len: Rational = moves.iter().map(|&(a, b)| sp.edge_cost(a, b, p).expect("edge")).sum();
                    let low = red.big_m + red.normalized_cost(w, p);
                    ensure!(low <= len && len < low + half, "game {k}: {len} outside [{low}, {low} + 1/2)");
                    checked += 1;
                }
            }
        }
        for sigma in find_all_ne(sp, 0, cfg()).map_err(|e| format!("game {k}: {e}"))? {
            let verdict = verify_ne(&g, &sigma, 0, cfg()).map_err(|e| format!("game {k}: {e}"))?;
            ensure!(verdict.is_none(), "game {k}: image NE is not a source NE");
            transferred += 1;
        }
    }
    Ok(format!("{checked} inequalities, {transferred} NE transferred"))
}

/// Every simple path from `from` to a terminal, as vertex lists.
fn simple_paths(g: &GameGraph, from: Vertex) -> Vec<Vec<Vertex>> {
    fn go(g: &GameGraph, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let v = *path.last().expect("non-empty");
        if g.is_terminal(v) {
            out.push(path.clone());
            return;
        }
        for w in g.successors(v).collect::<Vec<_>>() {
            if !path.contains(&w) {
                path.push(w);
                go(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, &mut vec![from], &mut out);
    out
}

fn criterion_8() -> Outcome {
    let mut r = generate::rng(8);
    let (mut paths, mut negative) = (0usize, 0usize);
    for k in 0..100 {
        let shape = Shape::random(&mut r, 8, 3);
        let g = generate::positive_cycle_sp_game(&mut r, &shape);
        ensure!(is_positive(&g).cycles_positive, "game {k}: generator produced a non-positive cycle");
        if g.min_edge_cost().is_some_and(|c| !c.is_positive()) {
            negative += 1;
        }
        let (h, _) = gallai_transform(&g).map_err(|e| format!("game {k}: {e}"))?;
        let min = h.min_edge_cost().expect("edges");
        ensure!(min.is_positive(), "game {k}: transformed edge cost {min}");
        let all = simple_paths(&g.graph, 0);
        for p in 0..g.players() {
            let mut shift: Option<(Vertex, Rational)> = None;
            for path in &all {
                let cost = |game: &SpGame| -> Rational {
                    path.windows(2).map(|e| game.edge_cost(e[0], e[1], p).expect("edge")).sum()
                };
                let d = cost(&h) - cost(&g);
                let t = *path.last().expect("non-empty");
                match shift {
                    None => shift = Some((t, d)),
                    Some((_, s)) => ensure!(s == d, "game {k} player {}: shifts {s} and {d}", p + 1),
                }
                paths += 1;
            }
        }
    }
    Ok(format!("{paths} paths shifted by one constant, {negative} games had non-positive edges"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("normal form of the mixed-sign game", criterion_1, Duration::from_secs(1)),
        ("normal form of the non-negative game", criterion_2, Duration::from_secs(1)),
        ("games without uniform equilibria", criterion_3, Duration::from_secs(10)),
        ("shortest-path NE on 200 random games", criterion_4, Duration::from_secs(60)),
        ("terminal NE on 200 random games", criterion_5, Duration::from_secs(60)),
        ("uniform improvement dynamics on 200 games", criterion_6, Duration::from_secs(120)),
        ("terminal to shortest-path reduction", criterion_7, Duration::from_secs(60)),
        ("potential reweighting", criterion_8, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= limit {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS criterion {}: {name}: {msg} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {msg} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
