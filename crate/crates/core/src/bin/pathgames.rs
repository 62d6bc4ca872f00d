use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pathgames::dot::to_dot;
use pathgames::error::{Error, Result};
use pathgames::fixtures;
use pathgames::format::{load_game, to_json, AnyGame};
use pathgames::game::{is_edge_symmetric, is_positive, Game, SpGame, TerminalGame};
use pathgames::graph::{GameGraph, Situation, Vertex};
use pathgames::oracle::{self, verify_ne_sp, EnumConfig};
use pathgames::play::trace;
use pathgames::reductions::gallai_transform;
use pathgames::sp_ne::solve_sp_ne;
use pathgames::terminal_ne::solve_terminal_ne;
use pathgames::une::solve_une;

#[derive(Parser)]
#[command(name = "pathgames", version, about = "Equilibria of shortest-path and terminal games on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a game file against the structural rules.
    Validate { file: PathBuf },
    /// Construct an equilibrium.
    #[command(subcommand)]
    Solve(Solve),
    /// Brute-force normal forms and equilibria.
    Oracle {
        #[arg(value_enum)]
        what: OracleKind,
        file: PathBuf,
        #[command(flatten)]
        start: Start,
        /// Also write the normal form as CSV.
        #[arg(long, value_name = "OUT")]
        csv: Option<PathBuf>,
    },
    /// Write a bundled game.
    Examples {
        name: Option<String>,
        #[arg(short, long, value_name = "OUT")]
        output: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
    /// Graphviz rendering of a game.
    ExportDot {
        file: PathBuf,
        /// Moves to draw bold, e.g. "s->b,a->s"; other vertices take their lowest-id move.
        #[arg(long, conflicts_with = "solve")]
        situation: Option<String>,
        /// Draw the situation found by a solver.
        #[arg(long, value_enum)]
        solve: Option<SolverKind>,
        #[arg(short, long, value_name = "OUT")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Solve {
    /// Shortest-path game NE.
    SpNe {
        file: PathBuf,
        #[command(flatten)]
        start: Start,
        /// Reweight by vertex potentials first so that all costs are positive.
        #[arg(long)]
        transform: bool,
    },
    /// Terminal game NE.
    TerminalNe {
        file: PathBuf,
        #[command(flatten)]
        start: Start,
    },
    /// Uniform NE of a two-player terminal game.
    Une {
        file: PathBuf,
        /// Print every improvement step.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Args)]
struct Start {
    /// Start vertex (name or id); defaults to the game's initial vertex.
    #[arg(long)]
    start: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    NormalForm,
    Ne,
    Une,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverKind {
    SpNe,
    TerminalNe,
    Une,
}

fn start_vertex(g: &GameGraph, start: &Start) -> Result<Vertex> {
    let v = match &start.start {
        Some(key) => g.resolve(key).ok_or_else(|| Error::Parse(format!("unknown vertex {key:?}")))?,
        None => g.initial().ok_or(Error::NoInitial)?,
    };
    if g.is_terminal(v) {
        return Err(Error::TerminalStart(v));
    }
    Ok(v)
}

fn load_valid(path: &Path) -> Result<AnyGame> {
    let game = load_game(path)?;
    let violations = match &game {
        AnyGame::Sp(g) => g.validate(),
        AnyGame::Terminal(g) => g.validate(),
    };
    if violations.is_empty() {
        Ok(game)
    } else {
        Err(Error::Invalid(violations))
    }
}

fn costs_line<C: std::fmt::Display>(costs: &[C]) -> String {
    costs.iter().enumerate().map(|(p, c)| format!("player {}: {c}", p + 1)).collect::<Vec<_>>().join(", ")
}

fn report<G: Game>(g: &G, sigma: &Situation, start: Vertex) -> Result<()> {
    let graph = g.graph();
    println!("situation: {}", sigma.display(graph));
    println!("play: {}", trace(graph, sigma, start).display(graph));
    println!("costs: {}", costs_line(&g.outcome_costs(sigma, start)?));
    Ok(())
}

fn validate(file: &Path) -> Result<bool> {
    let game = load_game(file)?;
    let g = game.graph();
    let violations = match &game {
        AnyGame::Sp(sp) => sp.validate(),
        AnyGame::Terminal(t) => t.validate(),
    };
    println!("{} game, {} players, {} vertices, {} moves", game.kind(), g.players(), g.num_vertices(), g.num_edges());
    for v in &violations {
        println!("violation: {v}");
    }
    if !violations.is_empty() {
        return Ok(false);
    }
    println!("edge-symmetric: {}", yes_no(is_edge_symmetric(g)));
    match &game {
        AnyGame::Sp(sp) => {
            let r = is_positive(sp);
            println!("positive edges: {}", yes_no(r.edges_positive));
            println!("positive cycles: {}", yes_no(r.cycles_positive));
            if let Some((p, cycle)) = r.witness {
                let names: Vec<&str> = cycle.iter().map(|&v| g.name(v)).collect();
                println!("non-positive cycle for player {}: {}", p + 1, names.join(" -> "));
            }
        }
        AnyGame::Terminal(t) => println!("infinite play worst: {}", yes_no(t.satisfies_ciw())),
    }
    println!("ok");
    Ok(true)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn solve_sp(g: &SpGame, start: Vertex, transform: bool) -> Result<Situation> {
    if !transform {
        let ne = solve_sp_ne(g, start)?;
        if let Some(path) = &ne.path {
            println!("special path: q = {}, improvement steps = {}", path.q(), path.iterations);
        }
        return Ok(ne.situation);
    }
    let (h, _) = gallai_transform(g)?;
    let sigma = solve_sp_ne(&h, start)?.situation;
    if let Some(d) = verify_ne_sp(g, &sigma, start, EnumConfig::from_env())? {
        return Err(Error::VerificationFailed(format!("player {} improves in the original game", d.player + 1)));
    }
    Ok(sigma)
}

fn solve_terminal(g: &TerminalGame, start: Vertex) -> Result<Situation> {
    let ne = solve_terminal_ne(g, start)?;
    println!("construction: {:?}", ne.construction);
    Ok(ne.situation)
}

fn run_solve(cmd: Solve) -> Result<()> {
    match cmd {
        Solve::SpNe { file, start, transform } => {
            let g = load_valid(&file)?.into_sp()?;
            let v0 = start_vertex(&g.graph, &start)?;
            let sigma = solve_sp(&g, v0, transform)?;
            report(&g, &sigma, v0)
        }
        Solve::TerminalNe { file, start } => {
            let g = load_valid(&file)?.into_terminal()?;
            let v0 = start_vertex(&g.graph, &start)?;
            let sigma = solve_terminal(&g, v0)?;
            report(&g, &sigma, v0)
        }
        Solve::Une { file, trace } => {
            let g = load_valid(&file)?.into_terminal()?;
            let run = solve_une(&g)?;
            if trace {
                for line in run.trace_lines() {
                    println!("{line}");
                }
            }
            println!("UNE: {}", run.situation.display(&g.graph));
            println!("improvements: {} (bound {})", run.improvements(), run.bound());
            for v in g.graph.non_terminals() {
                let costs = g.outcome_costs(&run.situation, v)?;
                println!("from {}: {}", g.graph.name(v), costs_line(&costs));
            }
            Ok(())
        }
    }
}

fn oracle_run<G: Game>(g: &G, what: OracleKind, start: &Start, csv: Option<&Path>) -> Result<()> {
    let cfg = EnumConfig::from_env();
    let graph = g.graph();
    match what {
        OracleKind::NormalForm => {
            let v0 = start_vertex(graph, start)?;
            let nf = oracle::normal_form(g, v0, cfg)?;
            print!("{}", nf.to_text(graph));
            if let Some(path) = csv {
                fs::write(path, nf.to_csv(graph))?;
            }
            println!("{} NE found", nf.equilibria().len());
        }
        OracleKind::Ne => {
            let v0 = start_vertex(graph, start)?;
            let nf = oracle::normal_form(g, v0, cfg)?;
            if let Some(path) = csv {
                fs::write(path, nf.to_csv(graph))?;
            }
            let all = nf.equilibria();
            for s in &all {
                println!("{}", s.display(graph));
            }
            println!("{} NE found", all.len());
        }
        OracleKind::Une => {
            let all = oracle::find_all_une(g, cfg)?;
            for s in &all {
                println!("{}", s.display(graph));
            }
            println!("{} UNE found", all.len());
        }
    }
    Ok(())
}

fn parse_moves(g: &GameGraph, text: &str) -> Result<Situation> {
    let mut sigma = Situation::lowest_id(g);
    for item in text.split([',', ' ']).filter(|s| !s.is_empty()) {
        let (a, b) = item.split_once("->").ok_or_else(|| Error::Parse(format!("bad move {item:?}")))?;
        let u = g.resolve(a.trim()).ok_or_else(|| Error::Parse(format!("unknown vertex {a:?}")))?;
        let v = g.resolve(b.trim()).ok_or_else(|| Error::Parse(format!("unknown vertex {b:?}")))?;
        if !g.has_edge(u, v) {
            return Err(Error::Parse(format!("{item:?} is not a move")));
        }
        sigma.set(u, v);
    }
    Ok(sigma)
}

fn write_or_print(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Validate { file } => return validate(&file),
        Command::Solve(cmd) => run_solve(cmd)?,
        Command::Oracle { what, file, start, csv } => match load_valid(&file)? {
            AnyGame::Sp(g) => oracle_run(&g, what, &start, csv.as_deref())?,
            AnyGame::Terminal(g) => oracle_run(&g, what, &start, csv.as_deref())?,
        },
        Command::Examples { name, output, list } => {
            if list || name.is_none() {
                for n in fixtures::names() {
                    println!("{n}");
                }
                return Ok(true);
            }
            let name = name.expect("checked above");
            let game = fixtures::load(&name).ok_or_else(|| Error::Parse(format!("no bundled game {name:?}")))?;
            write_or_print(output.as_deref(), &to_json(&game))?;
        }
        Command::ExportDot { file, situation, solve, output } => {
            let game = load_valid(&file)?;
            let g = game.graph();
            let sigma = match (situation, solve) {
                (Some(text), _) => Some(parse_moves(g, &text)?),
                (None, Some(kind)) => Some(match (kind, &game) {
                    (SolverKind::SpNe, AnyGame::Sp(sp)) => {
                        solve_sp_ne(sp, start_vertex(g, &Start { start: None })?)?.situation
                    }
                    (SolverKind::TerminalNe, AnyGame::Terminal(t)) => {
                        solve_terminal_ne(t, start_vertex(g, &Start { start: None })?)?.situation
                    }
                    (SolverKind::Une, AnyGame::Terminal(t)) => solve_une(t)?.situation,
                    _ => return Err(Error::Parse("solver does not match the game kind".into())),
                }),
                (None, None) => None,
            };
            write_or_print(output.as_deref(), &to_dot(&game, sigma.as_ref()))?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Invalid(vs) = &e {
                for v in vs {
                    eprintln!("  {v}");
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
