use thiserror::Error;

use crate::game::Violation;
use crate::graph::{Player, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Preconditions named by the uniform-equilibrium solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Exactly two players.
    Two,
    /// Edge-symmetric graph.
    Sym,
    /// Infinite plays worse than every terminal for every player.
    Ciw,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Condition::Two => "TWO",
            Condition::Sym => "SYM",
            Condition::Ciw => "CIW",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed game: {0}")]
    Structure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("game violates {} structural rule(s)", .0.len())]
    Invalid(Vec<Violation>),
    #[error("no initial vertex given")]
    NoInitial,
    #[error("vertex {0} must be a non-terminal vertex")]
    TerminalStart(Vertex),
    #[error("the graph is not edge-symmetric")]
    NotSymmetric,
    #[error("edge costs are not all positive")]
    NotPositive,
    #[error("condition {0} violated")]
    ConditionViolated(Condition),
    #[error("player {} has a cycle of non-positive total cost: {cycle:?}", .player + 1)]
    NonPositiveCycle { player: Player, cycle: Vec<Vertex> },
    #[error("infinite play is not worse than terminal(s) {offending:?} (player, terminal)")]
    CiwViolated { offending: Vec<(Player, Vertex)> },
    #[error("cycle {cycle:?} sums to zero for player {} but has non-zero edges", .player + 1)]
    ZeroSumMixedCycle { player: Player, cycle: Vec<Vertex> },
    #[error("no terminal is reachable from vertex {0}")]
    Unreachable(Vertex),
    #[error("{count} situations exceed the enumeration cap {cap}")]
    TooLarge { count: u128, cap: u128 },

    #[error("internal: special-path measure did not decrease")]
    MeasureNotDecreased,
    #[error("internal: potential did not decrease at improvement step {step}")]
    PotentialNotDecreased { step: usize },
    #[error("internal: verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Structure(_) | Error::Parse(_) | Error::Json(_) | Error::Io(_) => 2,
            Error::TooLarge { .. } => 4,
            Error::MeasureNotDecreased | Error::PotentialNotDecreased { .. } | Error::VerificationFailed(_) => 5,
            _ => 3,
        }
    }
}
