//! Penalty carets, caret adjacency and penalty trees.
//!
//! Vertex `0` always denotes the dummy caret `v_0`; every other vertex is a
//! caret of the pair, named by its infix number.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::elements::TreePair;
use crate::error::{Error, Result};
use crate::trees::Tree;

/// Which tree of a pair to read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairSide {
    Negative,
    Positive,
}

impl PairSide {
    pub fn tree(self, g: &TreePair) -> &Tree {
        match self {
            PairSide::Negative => g.negative(),
            PairSide::Positive => g.positive(),
        }
    }
}

/// Adjacencies `p ≺ q` within a single tree, `v_0` excluded.
///
/// `p ≺ q` when `p` lies on the right spine of `q`'s left subtree, or `q` on
/// the left spine of `p`'s right subtree: the edges between them bound both
/// caret regions.
pub fn tree_adjacencies(tree: &Tree) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for c in 1..=tree.caret_count() {
        let (left, right) = tree.spines(c).expect("caret in range");
        out.extend(left.into_iter().map(|p| (p, c)));
        out.extend(right.into_iter().map(|q| (c, q)));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The relation `≺` on `{0, 1, ..., m}` for a tree pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    preds: Vec<Vec<usize>>,
}

impl Adjacency {
    pub fn new(g: &TreePair) -> Adjacency {
        let m = g.caret_count();
        let mut preds = vec![Vec::new(); m + 1];
        for tree in [g.negative(), g.positive()] {
            for (p, q) in tree_adjacencies(tree) {
                preds[q].push(p);
            }
            for (i, kind) in tree.kinds().into_iter().enumerate() {
                if kind.on_left_side() {
                    preds[i + 1].push(0);
                }
            }
        }
        for list in &mut preds {
            list.sort_unstable();
            list.dedup();
        }
        Adjacency { preds }
    }

    pub fn caret_count(&self) -> usize {
        self.preds.len() - 1
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        q < self.preds.len() && self.preds[q].binary_search(&p).is_ok()
    }

    /// All `p` with `p ≺ q`, ascending; includes 0 when `v_0 ≺ q`.
    pub fn predecessors(&self, q: usize) -> &[usize] {
        &self.preds[q]
    }

    pub fn successors(&self, p: usize) -> Vec<usize> {
        (p + 1..self.preds.len()).filter(|&q| self.contains(p, q)).collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.preds
            .iter()
            .enumerate()
            .flat_map(|(q, ps)| ps.iter().map(move |&p| (p, q)))
            .collect()
    }
}

/// Carets that are type N in either tree, or right in both trees and not final.
pub fn penalty_carets(g: &TreePair) -> Vec<usize> {
    let m = g.caret_count();
    let (neg, pos) = (g.negative(), g.positive());
    let (nk, pk) = (neg.kinds(), pos.kinds());
    (1..=m)
        .filter(|&p| {
            let type_n = neg.is_type_n(p).unwrap_or(false) || pos.is_type_n(p).unwrap_or(false);
            let right_both = nk[p - 1].is_right() && pk[p - 1].is_right() && p != m;
            type_n || right_both
        })
        .collect()
}

/// An arborescence rooted at `v_0`, stored as a child → parent map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PenaltyTree {
    parent: BTreeMap<usize, usize>,
}

impl PenaltyTree {
    /// The tree consisting of `v_0` alone.
    pub fn trivial() -> PenaltyTree {
        PenaltyTree::default()
    }

    /// Builds a tree from `(parent, child)` edges. Every vertex must be
    /// reachable from 0 and have at most one parent.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(edges: I) -> Result<PenaltyTree> {
        let mut parent = BTreeMap::new();
        for (p, q) in edges {
            if q == 0 {
                return Err(Error::InvalidPenaltyTree("v_0 cannot have a parent".into()));
            }
            if parent.insert(q, p).is_some() {
                return Err(Error::InvalidPenaltyTree(format!("vertex {q} has two parents")));
            }
        }
        for (&q, &p) in &parent {
            if p != 0 && !parent.contains_key(&p) {
                return Err(Error::InvalidPenaltyTree(format!("parent {p} of {q} is not a vertex")));
            }
        }
        let tree = PenaltyTree { parent };
        for &v in tree.parent.keys() {
            let mut cur = v;
            let mut steps = 0;
            while cur != 0 {
                cur = tree.parent[&cur];
                steps += 1;
                if steps > tree.parent.len() {
                    return Err(Error::InvalidPenaltyTree(format!("vertex {v} lies on a cycle")));
                }
            }
        }
        Ok(tree)
    }

    pub(crate) fn from_parent_map(parent: BTreeMap<usize, usize>) -> PenaltyTree {
        PenaltyTree { parent }
    }

    pub fn is_trivial(&self) -> bool {
        self.parent.is_empty()
    }

    /// Vertices in increasing order, starting with 0.
    pub fn vertices(&self) -> Vec<usize> {
        std::iter::once(0).chain(self.parent.keys().copied()).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        v == 0 || self.parent.contains_key(&v)
    }

    pub fn parent_of(&self, v: usize) -> Option<usize> {
        self.parent.get(&v).copied()
    }

    /// `(parent, child)` pairs ordered by child.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parent.iter().map(|(&q, &p)| (p, q)).collect()
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        self.parent.iter().filter(|&(_, &p)| p == v).map(|(&q, _)| q).collect()
    }

    pub fn leaves(&self) -> Vec<usize> {
        if self.is_trivial() {
            return vec![0];
        }
        let internal: std::collections::BTreeSet<usize> = self.parent.values().copied().collect();
        self.parent.keys().copied().filter(|v| !internal.contains(v)).collect()
    }

    /// Distance from `v_0`.
    pub fn depth(&self, v: usize) -> usize {
        let mut d = 0;
        let mut cur = v;
        while let Some(&p) = self.parent.get(&cur) {
            cur = p;
            d += 1;
        }
        d
    }

    /// Longest downward distance from each vertex to a leaf below it.
    pub fn heights(&self) -> BTreeMap<usize, usize> {
        let mut heights: BTreeMap<usize, usize> = self.vertices().into_iter().map(|v| (v, 0)).collect();
        // deepest vertices first, so children are final before their parents
        let mut order: Vec<(usize, usize)> = self.parent.keys().map(|&v| (self.depth(v), v)).collect();
        order.sort_unstable_by(|a, b| b.cmp(a));
        for (_, v) in order {
            let p = self.parent[&v];
            let h = heights[&v] + 1;
            let entry = heights.get_mut(&p).expect("parent is a vertex");
            *entry = (*entry).max(h);
        }
        heights
    }

    /// Vertices at depth at least 2 with a leaf at distance at least `n - 1` below.
    pub fn weighted(&self, n: usize) -> Vec<usize> {
        let need = n.saturating_sub(1);
        let heights = self.heights();
        self.parent
            .keys()
            .copied()
            .filter(|&v| self.depth(v) >= 2 && heights[&v] >= need)
            .collect()
    }

    /// The n-penalty weight of this tree.
    pub fn weight(&self, n: usize) -> usize {
        self.weighted(n).len()
    }
}

impl fmt::Display for PenaltyTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, q) in self.edges() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{p}->{q}")?;
        }
        Ok(())
    }
}

impl FromStr for PenaltyTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<PenaltyTree> {
        let mut edges = Vec::new();
        for token in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let (p, q) = token
                .split_once("->")
                .ok_or_else(|| Error::InvalidPenaltyTree(format!("expected `parent->child`, got {token:?}")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPenaltyTree(format!("bad vertex in {token:?}")))
            };
            edges.push((parse(p)?, parse(q)?));
        }
        PenaltyTree::from_edges(edges)
    }
}

/// A broken penalty-tree rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Vertex is not a caret of the pair.
    UnknownVertex(usize),
    /// Edge `parent -> child` with `parent ⊀ child`.
    NotAdjacent { parent: usize, child: usize },
    /// Penalty caret missing from the tree.
    MissingPenaltyCaret(usize),
    /// Leaf that is not a penalty caret.
    NonPenaltyLeaf(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownVertex(v) => write!(f, "vertex {v} is not a caret of the pair"),
            Violation::NotAdjacent { parent, child } => write!(f, "edge {parent}->{child} is not an adjacency"),
            Violation::MissingPenaltyCaret(c) => write!(f, "penalty caret {c} is missing"),
            Violation::NonPenaltyLeaf(v) => write!(f, "leaf {v} is not a penalty caret"),
        }
    }
}

/// Everything about a pair that penalty-tree questions depend on.
#[derive(Clone, Debug)]
pub struct PenaltyProblem {
    m: usize,
    penalty: Vec<bool>,
    adjacency: Adjacency,
}

impl PenaltyProblem {
    pub fn new(g: &TreePair) -> PenaltyProblem {
        let m = g.caret_count();
        let mut penalty = vec![false; m + 1];
        for c in penalty_carets(g) {
            penalty[c] = true;
        }
        PenaltyProblem { m, penalty, adjacency: Adjacency::new(g) }
    }

    pub fn caret_count(&self) -> usize {
        self.m
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn is_penalty(&self, c: usize) -> bool {
        self.penalty.get(c).copied().unwrap_or(false)
    }

    pub fn penalty_carets(&self) -> Vec<usize> {
        (1..=self.m).filter(|&c| self.penalty[c]).collect()
    }

    /// `v_0 ≺ c`: `c` is a left caret or the root in one of the trees.
    pub fn root_adjacent(&self, c: usize) -> bool {
        self.adjacency.contains(0, c)
    }

    pub fn violations(&self, t: &PenaltyTree) -> Vec<Violation> {
        let mut out = Vec::new();
        for (p, q) in t.edges() {
            if q > self.m {
                out.push(Violation::UnknownVertex(q));
            } else if !self.adjacency.contains(p, q) {
                out.push(Violation::NotAdjacent { parent: p, child: q });
            }
        }
        for c in self.penalty_carets() {
            if !t.contains(c) {
                out.push(Violation::MissingPenaltyCaret(c));
            }
        }
        if !t.is_trivial() {
            for leaf in t.leaves() {
                if !self.is_penalty(leaf) {
                    out.push(Violation::NonPenaltyLeaf(leaf));
                }
            }
        }
        out
    }
}

/// Checks the penalty-tree rules for `g`; an empty list means valid.
pub fn validate_penalty_tree(g: &TreePair, t: &PenaltyTree) -> Vec<Violation> {
    PenaltyProblem::new(g).violations(t)
}

/// The n-penalty weight of a tree that must be valid for `g`.
pub fn penalty_weight(g: &TreePair, t: &PenaltyTree, n: usize) -> Result<usize> {
    let violations = validate_penalty_tree(g, t);
    if let Some(v) = violations.first() {
        return Err(Error::InvalidPenaltyTree(v.to_string()));
    }
    Ok(t.weight(n))
}

/// Resource limits for exact minimization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_carets: usize,
    pub max_states: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_carets: 40, max_states: 4_000_000 }
    }
}

/// A minimal penalty tree and its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PenaltyMinimum {
    pub weight: usize,
    pub witness: PenaltyTree,
}

/// `p_n(g)` with a minimizing witness, using default limits.
pub fn minimize_penalty(g: &TreePair, n: usize) -> Result<PenaltyMinimum> {
    minimize_penalty_with(g, n, None, SearchLimits::default())
}

/// Exact minimization of the n-penalty weight.
///
/// `allowed`, when given, restricts which carets may appear as vertices.
pub fn minimize_penalty_with(
    g: &TreePair,
    n: usize,
    allowed: Option<&[usize]>,
    limits: SearchLimits,
) -> Result<PenaltyMinimum> {
    if n == 0 {
        return Err(Error::Parameter("generating set X_n needs n >= 1".into()));
    }
    let m = g.caret_count();
    if m > limits.max_carets {
        return Err(Error::SearchBound { carets: m, bound: limits.max_carets });
    }
    let problem = PenaltyProblem::new(g);
    let mut allowed_mask = vec![allowed.is_none(); m + 1];
    if let Some(list) = allowed {
        for &c in list {
            if (1..=m).contains(&c) {
                allowed_mask[c] = true;
            }
        }
    }
    let mut solver = FrontierSolver::new(&problem, n, allowed_mask, limits.max_states);
    let weight = solver.solve(m, &[])?;
    if weight >= INFEASIBLE {
        return Err(Error::InvalidPenaltyTree("no penalty tree uses only the allowed carets".into()));
    }
    let witness = solver.witness()?;
    debug_assert!(problem.violations(&witness).is_empty());
    debug_assert_eq!(witness.weight(n), weight as usize);
    Ok(PenaltyMinimum { weight: weight as usize, witness })
}

const INFEASIBLE: u32 = u32::MAX / 4;

/// A vertex already placed whose parent is still to be chosen, with its
/// height capped at `n - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Open {
    vertex: u32,
    height: u32,
}

struct Choice {
    included: bool,
    adopted: Vec<u32>,
    cost: u32,
    open: Vec<Open>,
}

/// Dynamic program over carets in decreasing infix order.
///
/// Every edge of a penalty tree goes from a smaller to a larger infix number,
/// so when caret `q` is processed all of its potential children are known.
/// The state is the set of placed vertices still waiting for a parent
/// together with their capped heights; `q` decides which of them it adopts.
/// A vertex adjacent to `v_0` always hangs from `v_0`: that never raises any
/// height and leaves it unweighted. Non-penalty carets are placed only when
/// they adopt something, so no penalty tree is lost and none is invalid.
struct FrontierSolver<'a> {
    problem: &'a PenaltyProblem,
    height_cap: u32,
    allowed: Vec<bool>,
    /// Non-`v_0` predecessors of each caret that are allowed vertices.
    preds: Vec<Vec<usize>>,
    memo: HashMap<Vec<u32>, u32>,
    max_states: usize,
}

impl<'a> FrontierSolver<'a> {
    fn new(problem: &'a PenaltyProblem, n: usize, allowed: Vec<bool>, max_states: usize) -> Self {
        let m = problem.caret_count();
        let preds = (0..=m)
            .map(|q| {
                problem
                    .adjacency
                    .predecessors(q)
                    .iter()
                    .copied()
                    .filter(|&p| p != 0 && allowed[p])
                    .collect()
            })
            .collect();
        FrontierSolver {
            problem,
            height_cap: (n - 1) as u32,
            allowed,
            preds,
            memo: HashMap::new(),
            max_states,
        }
    }

    fn key(q: usize, open: &[Open]) -> Vec<u32> {
        let mut key = Vec::with_capacity(1 + 2 * open.len());
        key.push(q as u32);
        for o in open {
            key.push(o.vertex);
            key.push(o.height);
        }
        key
    }

    fn choices(&self, q: usize, open: &[Open]) -> Result<Vec<Choice>> {
        let mut forced = Vec::new();
        let mut optional = Vec::new();
        for (i, o) in open.iter().enumerate() {
            let preds = &self.preds[o.vertex as usize];
            if preds.binary_search(&q).is_ok() {
                if preds[0] == q {
                    forced.push(i);
                } else {
                    optional.push(i);
                }
            }
        }
        let penalty = self.problem.is_penalty(q);
        let mut out = Vec::new();
        if !penalty && forced.is_empty() {
            out.push(Choice { included: false, adopted: Vec::new(), cost: 0, open: open.to_vec() });
        }
        if !self.allowed[q] {
            if penalty {
                out.clear();
            }
            return Ok(out);
        }
        if optional.len() > 20 {
            return Err(Error::Budget(format!("caret {q} has {} optional children", optional.len())));
        }
        let root_adjacent = self.problem.root_adjacent(q);
        if !root_adjacent && self.preds[q].is_empty() {
            // q could never get a parent
            if penalty {
                out.clear();
            }
            return Ok(out);
        }
        for mask in 0u32..(1 << optional.len()) {
            let mut adopted_idx = forced.clone();
            adopted_idx.extend(optional.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i));
            if adopted_idx.is_empty() && !penalty {
                continue;
            }
            adopted_idx.sort_unstable();
            let mut cost = 0;
            let mut height = 0;
            for &i in &adopted_idx {
                let h = open[i].height;
                if h >= self.height_cap {
                    cost += 1;
                }
                height = height.max((h + 1).min(self.height_cap));
            }
            let mut next = Vec::with_capacity(open.len() + 1);
            if !root_adjacent {
                next.push(Open { vertex: q as u32, height });
            }
            let mut it = adopted_idx.iter().peekable();
            for (i, o) in open.iter().enumerate() {
                if it.peek() == Some(&&i) {
                    it.next();
                } else {
                    next.push(*o);
                }
            }
            out.push(Choice {
                included: true,
                adopted: adopted_idx.iter().map(|&i| open[i].vertex).collect(),
                cost,
                open: next,
            });
        }
        Ok(out)
    }

    fn solve(&mut self, q: usize, open: &[Open]) -> Result<u32> {
        if q == 0 {
            return Ok(if open.is_empty() { 0 } else { INFEASIBLE });
        }
        let key = Self::key(q, open);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let mut best = INFEASIBLE;
        for choice in self.choices(q, open)? {
            let rest = self.solve(q - 1, &choice.open)?;
            if rest < INFEASIBLE {
                best = best.min(choice.cost + rest);
            }
        }
        if self.memo.len() >= self.max_states {
            return Err(Error::Budget(format!("more than {} search states", self.max_states)));
        }
        self.memo.insert(key, best);
        Ok(best)
    }

    /// Replays the first optimal choice at every step.
    fn witness(&mut self) -> Result<PenaltyTree> {
        let mut parent = BTreeMap::new();
        let mut open: Vec<Open> = Vec::new();
        for q in (1..=self.problem.caret_count()).rev() {
            let target = self.solve(q, &open)?;
            let mut chosen = None;
            for choice in self.choices(q, &open)? {
                let rest = self.solve(q - 1, &choice.open)?;
                if rest < INFEASIBLE && choice.cost + rest == target {
                    chosen = Some(choice);
                    break;
                }
            }
            let choice = chosen.expect("an optimal choice exists");
            for &child in &choice.adopted {
                parent.insert(child as usize, q);
            }
            if choice.included && self.problem.root_adjacent(q) {
                parent.insert(q, 0);
            }
            open = choice.open;
        }
        Ok(PenaltyTree::from_parent_map(parent))
    }
}

/// `p_1(g)`: the number of penalty carets not adjacent to `v_0`.
pub fn p1_fast(g: &TreePair) -> usize {
    let problem = PenaltyProblem::new(g);
    problem.penalty_carets().into_iter().filter(|&c| !problem.root_adjacent(c)).count()
}

/// The chain `v_0 ≺ 1 ≺ 2 ≺ ...` cut after the last penalty caret.
pub fn chain_tree(g: &TreePair) -> PenaltyTree {
    let last = penalty_carets(g).last().copied().unwrap_or(0);
    PenaltyTree::from_parent_map((1..=last).map(|q| (q, q - 1)).collect())
}

/// Joins every penalty caret to `v_0` through actual left edges of one tree.
pub fn greedy_tree(g: &TreePair, side: PairSide) -> PenaltyTree {
    let tree = side.tree(g);
    let mut parent = BTreeMap::new();
    for c in penalty_carets(g) {
        let mut cur = c;
        while cur != 0 && !parent.contains_key(&cur) {
            let up = tree.left_edge_neighbor(cur).expect("caret in range").unwrap_or(0);
            parent.insert(cur, up);
            cur = up;
        }
    }
    PenaltyTree::from_parent_map(parent)
}
