//! Pure stationary equilibria of deterministic multi-player games on
//! directed graphs: shortest-path games, where every move has a cost per
//! player, and terminal games, where only the terminal reached matters.
//!
//! Start with [`fixtures`] for bundled games, [`format`](mod@format) for the JSON file
//! format, and the solvers in [`sp_ne`], [`terminal_ne`] and [`une`].
//! [`oracle`] enumerates small games exhaustively and serves as ground truth.

#![allow(clippy::needless_range_loop)]

pub mod cost;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod game;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod paths;
pub mod play;
pub mod rational;
pub mod reductions;
pub mod response;
pub mod scc;
pub mod sp_ne;
pub mod terminal_ne;
pub mod une;
