use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// A rational extended by both infinities.
///
/// Variant order gives the total order `MinusInf < Finite(_) < PlusInf`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExtCost {
    MinusInf,
    Finite(Rational),
    PlusInf,
}

impl ExtCost {
    pub fn finite(&self) -> Option<Rational> {
        match self {
            ExtCost::Finite(q) => Some(*q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtCost::Finite(_))
    }
}

impl From<Rational> for ExtCost {
    fn from(q: Rational) -> Self {
        ExtCost::Finite(q)
    }
}

impl fmt::Display for ExtCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtCost::MinusInf => f.write_str("-inf"),
            ExtCost::Finite(q) => write!(f, "{q}"),
            ExtCost::PlusInf => f.write_str("+inf"),
        }
    }
}

impl fmt::Debug for ExtCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
