//! Transformations that preserve equilibria.

mod contraction;
mod gallai;
mod terminal_to_sp;
mod une_preprocess;

pub use contraction::{contract_small_game, ContractionMap};
pub use gallai::{gallai_transform, Potential};
pub use terminal_to_sp::{terminal_to_sp, TerminalReduction};
pub use une_preprocess::{une_preprocess, UnePreprocess};
