#![allow(dead_code)]

use fgroup_core::penalty::{Adjacency, PenaltyProblem};
use fgroup_core::TreePair;

/// Minimum weight over every valid penalty tree, found by listing them all.
/// Weights are computed here from scratch rather than through the library.
pub fn naive_minimum(g: &TreePair, n: usize) -> usize {
    let problem = PenaltyProblem::new(g);
    let adj = Adjacency::new(g);
    let m = g.caret_count();
    let penalty: Vec<bool> = (0..=m).map(|c| c > 0 && problem.is_penalty(c)).collect();
    let mut parent = vec![None; m + 1];
    let mut best = usize::MAX;
    go(1, m, n, &adj, &penalty, &mut parent, &mut best);
    best
}

fn go(
    q: usize,
    m: usize,
    n: usize,
    adj: &Adjacency,
    penalty: &[bool],
    parent: &mut Vec<Option<usize>>,
    best: &mut usize,
) {
    if q > m {
        if let Some(w) = weigh(m, n, penalty, parent) {
            *best = (*best).min(w);
        }
        return;
    }
    if !penalty[q] {
        parent[q] = None;
        go(q + 1, m, n, adj, penalty, parent, best);
    }
    for p in 0..q {
        let present = p == 0 || parent[p].is_some();
        if present && adj.contains(p, q) {
            parent[q] = Some(p);
            go(q + 1, m, n, adj, penalty, parent, best);
        }
    }
    parent[q] = None;
}

fn weigh(m: usize, n: usize, penalty: &[bool], parent: &[Option<usize>]) -> Option<usize> {
    let mut has_child = vec![false; m + 1];
    for q in 1..=m {
        if let Some(p) = parent[q] {
            has_child[p] = true;
        }
    }
    for q in 1..=m {
        if parent[q].is_some() && !has_child[q] && !penalty[q] {
            return None;
        }
    }
    // Parents precede children, so one backwards sweep settles heights.
    let mut height = vec![0usize; m + 1];
    for q in (1..=m).rev() {
        if let Some(p) = parent[q] {
            height[p] = height[p].max(height[q] + 1);
        }
    }
    let mut depth = vec![0usize; m + 1];
    let mut weight = 0;
    for q in 1..=m {
        if let Some(p) = parent[q] {
            depth[q] = depth[p] + 1;
            if depth[q] >= 2 && height[q] + 1 >= n {
                weight += 1;
            }
        }
    }
    Some(weight)
}
