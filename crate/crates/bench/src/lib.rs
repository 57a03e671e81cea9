//! Inputs shared by the benchmarks.

use fgroup_core::random::random_elements;
use fgroup_core::{TreePair, Word};

pub const WORKED_EXAMPLE: &str =
    "x0 x1^2 x4 x5^2 x8 x9^2 x12 x13^2 x14^-1 x12^-2 x10^-1 x8^-2 x6^-1 x4^-2 x2^-1 x0^-2";

pub fn worked_example() -> TreePair {
    Word::parse(WORKED_EXAMPLE).expect("fixed word parses").evaluate()
}

/// A fixed batch of random elements with at most `max_carets` carets.
pub fn batch(max_carets: usize) -> Vec<TreePair> {
    random_elements(42, 64, max_carets)
}
