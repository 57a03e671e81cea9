//! Word length in Thompson's group F over the consecutive generating sets
//! `X_n = {x_0, ..., x_n}`, computed from reduced tree pair diagrams.

pub mod elements;
pub mod error;
pub mod experiments;
pub mod length;
pub mod penalty;
pub mod random;
pub mod trees;

pub use elements::{Letter, NormalForm, TreePair, Word};
pub use error::{Error, Result};
pub use length::{l_infinity, length, word_length, LengthReport};
pub use penalty::{minimize_penalty, PenaltyTree, SearchLimits};
pub use trees::{Shape, Tree};
