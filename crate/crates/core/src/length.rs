//! Word length over `X_n` and a breadth-first oracle for it.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::elements::{Letter, TreePair};
use crate::error::{Error, Result};
use crate::penalty::{minimize_penalty_with, PenaltyTree, SearchLimits};

/// Word length with respect to the infinite generating set: the number of
/// carets, over both trees, that are not right carets.
pub fn l_infinity(g: &TreePair) -> usize {
    [g.negative(), g.positive()]
        .iter()
        .map(|t| t.kinds().into_iter().filter(|k| !k.is_right()).count())
        .sum()
}

/// `l_n(g) = l_∞(g) + 2 p_n(g)` with the witness realizing `p_n(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthReport {
    pub l_infty: usize,
    pub p_n: usize,
    pub l_n: usize,
    pub n: usize,
    #[serde(with = "witness_pairs")]
    pub witness: PenaltyTree,
}

mod witness_pairs {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::penalty::PenaltyTree;

    pub fn serialize<S: Serializer>(t: &PenaltyTree, s: S) -> Result<S::Ok, S::Error> {
        t.edges().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<PenaltyTree, D::Error> {
        let edges = Vec::<(usize, usize)>::deserialize(d)?;
        PenaltyTree::from_edges(edges).map_err(serde::de::Error::custom)
    }
}

/// Exact word length of `g` over `X_n`.
pub fn length(g: &TreePair, n: usize) -> Result<LengthReport> {
    length_with(g, n, SearchLimits::default())
}

pub fn length_with(g: &TreePair, n: usize, limits: SearchLimits) -> Result<LengthReport> {
    if !g.is_reduced() {
        return Err(Error::Unreduced);
    }
    let l_infty = l_infinity(g);
    let min = minimize_penalty_with(g, n, None, limits)?;
    Ok(LengthReport { l_infty, p_n: min.weight, l_n: l_infty + 2 * min.weight, n, witness: min.witness })
}

/// Just `l_n(g)`.
pub fn word_length(g: &TreePair, n: usize) -> Result<usize> {
    length(g, n).map(|r| r.l_n)
}

/// Every element within `radius` of the identity in the Cayley graph of
/// `(F, X_n)`, with its distance.
#[derive(Clone, Debug)]
pub struct Ball {
    pub n: usize,
    pub radius: usize,
    /// Elements in discovery order; distances are non-decreasing.
    pub elements: Vec<(TreePair, usize)>,
    pub distances: HashMap<String, usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn distance(&self, g: &TreePair) -> Option<usize> {
        self.distances.get(&g.canonical_key()).copied()
    }

    /// Number of elements at each distance `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius + 1];
        for &(_, d) in &self.elements {
            sizes[d] += 1;
        }
        sizes
    }
}

/// Breadth-first search from the identity, multiplying on the right by the
/// letters of `X_n^{±1}` in the order `x_0, x_0^-1, x_1, ...`.
pub fn bfs_ball(n: usize, radius: usize) -> Result<Ball> {
    bfs_ball_with(n, radius, 5_000_000)
}

pub fn bfs_ball_with(n: usize, radius: usize, max_elements: usize) -> Result<Ball> {
    let letters: Vec<TreePair> = Letter::alphabet(n).into_iter().map(TreePair::letter).collect();
    let identity = TreePair::identity();
    let mut distances = HashMap::new();
    distances.insert(identity.canonical_key(), 0);
    let mut elements = vec![(identity, 0)];
    let mut frontier_start = 0;
    for d in 1..=radius {
        let frontier_end = elements.len();
        for i in frontier_start..frontier_end {
            for letter in &letters {
                let h = elements[i].0.multiply(letter);
                let key = h.canonical_key();
                if let std::collections::hash_map::Entry::Vacant(e) = distances.entry(key) {
                    if elements.len() >= max_elements {
                        return Err(Error::Budget(format!("ball exceeds {max_elements} elements")));
                    }
                    e.insert(d);
                    elements.push((h, d));
                }
            }
        }
        frontier_start = frontier_end;
    }
    Ok(Ball { n, radius, elements, distances })
}

/// Distance from the identity to `g` by breadth-first search, or `None` if it
/// exceeds `max_radius`.
pub fn oracle_length(g: &TreePair, n: usize, max_radius: usize) -> Result<Option<usize>> {
    let g = g.reduce();
    let target = g.canonical_key();
    let letters: Vec<TreePair> = Letter::alphabet(n).into_iter().map(TreePair::letter).collect();
    let mut seen = std::collections::HashSet::new();
    seen.insert(TreePair::identity().canonical_key());
    if g.is_identity() {
        return Ok(Some(0));
    }
    let mut frontier = vec![TreePair::identity()];
    for d in 1..=max_radius {
        let mut next = Vec::new();
        for h in &frontier {
            for letter in &letters {
                let k = h.multiply(letter);
                let key = k.canonical_key();
                if key == target {
                    return Ok(Some(d));
                }
                if seen.insert(key) {
                    if seen.len() > 5_000_000 {
                        return Err(Error::Budget("oracle search exceeds 5000000 elements".into()));
                    }
                    next.push(k);
                }
            }
        }
        frontier = next;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::Word;

    fn word(s: &str) -> TreePair {
        Word::parse(s).unwrap().evaluate()
    }

    #[test]
    fn l_infinity_examples() {
        assert_eq!(l_infinity(&TreePair::identity()), 0);
        assert_eq!(l_infinity(&TreePair::generator(0, false)), 1);
        assert_eq!(l_infinity(&word("x1 x2 x5 x6 x3^-2 x2^-1")), 7);
    }

    #[test]
    fn generators_have_length_one() {
        for n in 1..=4 {
            for i in 0..=n {
                for inv in [false, true] {
                    assert_eq!(word_length(&TreePair::generator(i, inv), n).unwrap(), 1, "x{i} n={n}");
                }
            }
        }
    }

    #[test]
    fn x2_over_x1() {
        let x2 = TreePair::generator(2, false);
        assert_eq!(word_length(&x2, 1).unwrap(), 3);
        assert_eq!(oracle_length(&x2, 1, 4).unwrap(), Some(3));
        assert_eq!(oracle_length(&x2, 2, 4).unwrap(), Some(1));
        assert_eq!(oracle_length(&x2, 1, 2).unwrap(), None);
        assert_eq!(oracle_length(&TreePair::identity(), 1, 0).unwrap(), Some(0));
    }

    #[test]
    fn small_balls() {
        let b0 = bfs_ball(1, 0).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0.distance(&TreePair::identity()), Some(0));
        let b1 = bfs_ball(1, 1).unwrap();
        assert_eq!(b1.len(), 5);
        assert_eq!(b1.sphere_sizes(), vec![1, 4]);
    }

    #[test]
    fn report_invariants() {
        let r = length(&word("x1 x2 x5 x6 x3^-2 x2^-1"), 3).unwrap();
        assert_eq!((r.l_infty, r.p_n, r.l_n), (7, 0, 7));
        assert_eq!(r.l_n % 2, r.l_infty % 2);
        let json = serde_json::to_string(&r).unwrap();
        let back: LengthReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn worked_example_over_x2() {
        let g = word("x0 x1^2 x4 x5^2 x8 x9^2 x12 x13^2 x14^-1 x12^-2 x10^-1 x8^-2 x6^-1 x4^-2 x2^-1 x0^-2");
        assert_eq!(
            crate::penalty::penalty_carets(&g),
            vec![1, 2, 4, 5, 6, 8, 9, 10, 12, 13, 14]
        );
        let r = length(&g, 2).unwrap();
        assert_eq!((r.l_infty, r.p_n, r.l_n), (24, 2, 28));
        assert_eq!(r.witness.weighted(2), vec![8, 12]);
    }

    #[test]
    fn unreduced_input_is_rejected() {
        let g = TreePair::parse_pair("100;100").unwrap();
        assert_eq!(length(&g, 1), Err(Error::Unreduced));
    }
}
