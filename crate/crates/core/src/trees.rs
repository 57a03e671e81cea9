//! Finite rooted binary trees of carets.
//!
//! A [`Tree`] is stored as a table of carets in infix order, so a caret's
//! public name is its infix number `1..=m`. Trees are immutable values; every
//! editing operation goes through the recursive [`Shape`] form and builds a
//! fresh table.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Recursive tree form used to build and edit trees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Leaf,
    Caret(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn caret(left: Shape, right: Shape) -> Shape {
        Shape::Caret(Box::new(left), Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Shape::Leaf)
    }

    pub fn carets(&self) -> usize {
        match self {
            Shape::Leaf => 0,
            Shape::Caret(l, r) => 1 + l.carets() + r.carets(),
        }
    }

    /// Perfect binary tree with `levels` levels of carets (zero levels is a leaf).
    pub fn complete(levels: usize) -> Shape {
        if levels == 0 {
            Shape::Leaf
        } else {
            Shape::caret(Shape::complete(levels - 1), Shape::complete(levels - 1))
        }
    }

    /// `m` carets, each the right child of the previous one.
    pub fn right_string(m: usize) -> Shape {
        Self::right_spine((0..m).map(|_| Shape::Leaf))
    }

    /// `m` carets, each the left child of the previous one.
    pub fn left_string(m: usize) -> Shape {
        (0..m).fold(Shape::Leaf, |acc, _| Shape::caret(acc, Shape::Leaf))
    }

    /// A right side whose carets carry the given left subtrees, top to bottom.
    pub fn right_spine<I>(left_subtrees: I) -> Shape
    where
        I: IntoIterator<Item = Shape>,
        I::IntoIter: DoubleEndedIterator,
    {
        left_subtrees
            .into_iter()
            .rev()
            .fold(Shape::Leaf, |acc, left| Shape::caret(left, acc))
    }

    /// The smallest tree of which both `self` and `other` are rooted subtrees.
    pub fn union(&self, other: &Shape) -> Shape {
        match (self, other) {
            (Shape::Leaf, t) | (t, Shape::Leaf) => t.clone(),
            (Shape::Caret(al, ar), Shape::Caret(bl, br)) => {
                Shape::caret(al.union(bl), ar.union(br))
            }
        }
    }

    /// True if `other` is a rooted subtree of `self`, i.e. `self` expands `other`.
    pub fn contains(&self, other: &Shape) -> bool {
        match (self, other) {
            (_, Shape::Leaf) => true,
            (Shape::Leaf, Shape::Caret(..)) => false,
            (Shape::Caret(al, ar), Shape::Caret(bl, br)) => al.contains(bl) && ar.contains(br),
        }
    }

    /// For each leaf of `self`, left to right, the subtree of `expansion`
    /// hanging at that leaf's position. `expansion` must contain `self`.
    pub fn subtrees_at_leaves(&self, expansion: &Shape) -> Vec<Shape> {
        let mut out = Vec::with_capacity(self.carets() + 1);
        self.collect_subtrees(expansion, &mut out);
        out
    }

    fn collect_subtrees(&self, expansion: &Shape, out: &mut Vec<Shape>) {
        match (self, expansion) {
            (Shape::Leaf, e) => out.push(e.clone()),
            (Shape::Caret(l, r), Shape::Caret(el, er)) => {
                l.collect_subtrees(el, out);
                r.collect_subtrees(er, out);
            }
            (Shape::Caret(..), Shape::Leaf) => panic!("expansion does not contain the tree"),
        }
    }

    /// Replaces leaf `k` by `subtrees[k]`.
    pub fn graft(&self, subtrees: Vec<Shape>) -> Shape {
        let mut iter = subtrees.into_iter();
        let out = self.graft_from(&mut iter);
        debug_assert!(iter.next().is_none(), "too many subtrees for graft");
        out
    }

    fn graft_from(&self, iter: &mut impl Iterator<Item = Shape>) -> Shape {
        match self {
            Shape::Leaf => iter.next().expect("too few subtrees for graft"),
            Shape::Caret(l, r) => {
                let l = l.graft_from(iter);
                let r = r.graft_from(iter);
                Shape::caret(l, r)
            }
        }
    }

    /// Every shape with exactly `m` carets, in a fixed order.
    pub fn all(m: usize) -> Vec<Shape> {
        let mut table: Vec<Vec<Shape>> = vec![vec![Shape::Leaf]];
        for size in 1..=m {
            let mut level = Vec::new();
            for left in 0..size {
                let right = size - 1 - left;
                for l in &table[left] {
                    for r in &table[right] {
                        level.push(Shape::caret(l.clone(), r.clone()));
                    }
                }
            }
            table.push(level);
        }
        table.swap_remove(m)
    }

    /// Tree whose leaf exponents start with `exponents` (missing entries read
    /// as zero), using the fewest carets possible.
    ///
    /// Leaf exponents of a tree are the concatenation of the full left-chain
    /// counts of the left subtrees of its right carets, followed by the final 0.
    /// Each such block is decoded greedily.
    pub fn from_leaf_exponents(exponents: &[u32]) -> Shape {
        fn block(seq: &[u32], pos: &mut usize, first: Option<u32>) -> Shape {
            let v = first.unwrap_or_else(|| seq.get(*pos).copied().unwrap_or(0));
            if v == 0 {
                *pos += 1;
                Shape::Leaf
            } else {
                let left = block(seq, pos, Some(v - 1));
                let right = block(seq, pos, None);
                Shape::caret(left, right)
            }
        }

        let mut pos = 0;
        let mut blocks = Vec::new();
        while pos < exponents.len() {
            blocks.push(block(exponents, &mut pos, None));
        }
        Shape::right_spine(blocks)
    }

    /// Appends `extra` right carets at the bottom of the right side.
    pub fn extend_right(&self, extra: usize) -> Shape {
        match self {
            Shape::Leaf => Shape::right_string(extra),
            Shape::Caret(l, r) => Shape::caret((**l).clone(), r.extend_right(extra)),
        }
    }
}

/// Which side of the tree a caret touches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Interior,
    Right,
}

/// Classification of a caret. The root reports [`Side::Right`] with
/// `is_root` set; it may also be read as a left caret.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaretKind {
    pub side: Side,
    pub is_root: bool,
}

impl CaretKind {
    pub fn is_left(self) -> bool {
        self.side == Side::Left
    }

    pub fn is_right(self) -> bool {
        self.side == Side::Right
    }

    pub fn is_interior(self) -> bool {
        self.side == Side::Interior
    }

    /// Left caret or root: the carets whose left edge lies on the left side.
    pub fn on_left_side(self) -> bool {
        self.is_left() || self.is_root
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Node {
    left: Option<usize>,
    right: Option<usize>,
    parent: Option<usize>,
}

/// A finite rooted binary tree with carets numbered `1..=m` in infix order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    nodes: Vec<Node>,
    root: Option<usize>,
    sides: Vec<Side>,
    levels: Vec<u32>,
}

impl Tree {
    /// The tree with no carets and a single leaf.
    pub fn empty() -> Tree {
        Tree::from_shape(&Shape::Leaf)
    }

    pub fn from_shape(shape: &Shape) -> Tree {
        fn build(shape: &Shape, nodes: &mut Vec<Node>) -> Option<usize> {
            match shape {
                Shape::Leaf => None,
                Shape::Caret(l, r) => {
                    let left = build(l, nodes);
                    let idx = nodes.len();
                    nodes.push(Node { left, right: None, parent: None });
                    if let Some(li) = left {
                        nodes[li].parent = Some(idx);
                    }
                    let right = build(r, nodes);
                    nodes[idx].right = right;
                    if let Some(ri) = right {
                        nodes[ri].parent = Some(idx);
                    }
                    Some(idx)
                }
            }
        }

        let mut nodes = Vec::with_capacity(shape.carets());
        let root = build(shape, &mut nodes);

        let mut sides = vec![Side::Interior; nodes.len()];
        let mut cur = root.and_then(|r| nodes[r].left);
        while let Some(c) = cur {
            sides[c] = Side::Left;
            cur = nodes[c].left;
        }
        let mut cur = root;
        while let Some(c) = cur {
            sides[c] = Side::Right;
            cur = nodes[c].right;
        }

        let mut levels = vec![0; nodes.len()];
        let mut stack: Vec<(usize, u32)> = root.map(|r| (r, 1)).into_iter().collect();
        while let Some((c, level)) = stack.pop() {
            levels[c] = level;
            stack.extend(nodes[c].left.map(|l| (l, level + 1)));
            stack.extend(nodes[c].right.map(|r| (r, level + 1)));
        }

        Tree { nodes, root, sides, levels }
    }

    pub fn to_shape(&self) -> Shape {
        fn go(t: &Tree, node: Option<usize>) -> Shape {
            match node {
                None => Shape::Leaf,
                Some(c) => Shape::caret(go(t, t.nodes[c].left), go(t, t.nodes[c].right)),
            }
        }
        go(self, self.root)
    }

    /// Parses a preorder bitstring: `1` for a caret, `0` for a leaf.
    pub fn parse(text: &str) -> Result<Tree> {
        let bytes = text.as_bytes();
        let mut open = 1usize;
        for (offset, &b) in bytes.iter().enumerate() {
            if open == 0 {
                return Err(Error::TreeParse { offset, reason: "trailing characters after a complete tree" });
            }
            match b {
                b'1' => open += 1,
                b'0' => open -= 1,
                _ => return Err(Error::TreeParse { offset, reason: "expected '0' or '1'" }),
            }
        }
        if open != 0 {
            return Err(Error::TreeParse { offset: bytes.len(), reason: "unexpected end of encoding" });
        }

        fn read(bytes: &[u8], pos: &mut usize) -> Shape {
            let b = bytes[*pos];
            *pos += 1;
            if b == b'0' {
                Shape::Leaf
            } else {
                let l = read(bytes, pos);
                let r = read(bytes, pos);
                Shape::caret(l, r)
            }
        }
        let mut pos = 0;
        Ok(Tree::from_shape(&read(bytes, &mut pos)))
    }

    pub fn serialize(&self) -> String {
        fn go(t: &Tree, node: Option<usize>, out: &mut String) {
            match node {
                None => out.push('0'),
                Some(c) => {
                    out.push('1');
                    go(t, t.nodes[c].left, out);
                    go(t, t.nodes[c].right, out);
                }
            }
        }
        let mut out = String::with_capacity(2 * self.nodes.len() + 1);
        go(self, self.root, &mut out);
        out
    }

    pub fn complete(levels: usize) -> Result<Tree> {
        if levels < 1 {
            return Err(Error::Parameter("a complete tree needs at least one level".into()));
        }
        Ok(Tree::from_shape(&Shape::complete(levels)))
    }

    pub fn right_string(m: usize) -> Tree {
        Tree::from_shape(&Shape::right_string(m))
    }

    pub fn caret_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn ix(&self, c: usize) -> Result<usize> {
        if c >= 1 && c <= self.nodes.len() {
            Ok(c - 1)
        } else {
            Err(Error::CaretIndex { index: c, count: self.nodes.len() })
        }
    }

    pub fn root(&self) -> Option<usize> {
        self.root.map(|r| r + 1)
    }

    pub fn left_child(&self, c: usize) -> Result<Option<usize>> {
        Ok(self.nodes[self.ix(c)?].left.map(|x| x + 1))
    }

    pub fn right_child(&self, c: usize) -> Result<Option<usize>> {
        Ok(self.nodes[self.ix(c)?].right.map(|x| x + 1))
    }

    pub fn parent(&self, c: usize) -> Result<Option<usize>> {
        Ok(self.nodes[self.ix(c)?].parent.map(|x| x + 1))
    }

    /// Level of a caret; the root is at level 1.
    pub fn level(&self, c: usize) -> Result<u32> {
        Ok(self.levels[self.ix(c)?])
    }

    pub fn caret_kind(&self, c: usize) -> Result<CaretKind> {
        let i = self.ix(c)?;
        Ok(CaretKind { side: self.sides[i], is_root: self.root == Some(i) })
    }

    /// Kinds of all carets, indexed by `infix - 1`.
    pub fn kinds(&self) -> Vec<CaretKind> {
        (0..self.nodes.len())
            .map(|i| CaretKind { side: self.sides[i], is_root: self.root == Some(i) })
            .collect()
    }

    /// Both children of the caret are leaves.
    pub fn is_exposed(&self, c: usize) -> Result<bool> {
        let n = self.nodes[self.ix(c)?];
        Ok(n.left.is_none() && n.right.is_none())
    }

    /// True if caret `q` lies in the right subtree of caret `p`.
    pub fn in_right_subtree(&self, p: usize, q: usize) -> Result<bool> {
        let p = self.ix(p)?;
        let mut cur = self.ix(q)?;
        while let Some(up) = self.nodes[cur].parent {
            if up == p {
                return Ok(self.nodes[p].right == Some(cur));
            }
            cur = up;
        }
        Ok(false)
    }

    /// Caret `p` has type N: caret `p+1` is interior and in the right subtree of `p`.
    pub fn is_type_n(&self, p: usize) -> Result<bool> {
        self.ix(p)?;
        if p == self.nodes.len() {
            return Ok(false);
        }
        Ok(self.sides[p] == Side::Interior && self.in_right_subtree(p, p + 1)?)
    }

    /// The right spine of `c`'s left subtree and the left spine of its right
    /// subtree, each listed from the top down.
    pub fn spines(&self, c: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        let i = self.ix(c)?;
        let mut left = Vec::new();
        let mut cur = self.nodes[i].left;
        while let Some(x) = cur {
            left.push(x + 1);
            cur = self.nodes[x].right;
        }
        let mut right = Vec::new();
        let mut cur = self.nodes[i].right;
        while let Some(x) = cur {
            right.push(x + 1);
            cur = self.nodes[x].left;
        }
        Ok((left, right))
    }

    /// The caret whose region borders `c` across `c`'s own left edge, or
    /// `None` when that edge lies on the left side of the tree.
    pub fn left_edge_neighbor(&self, c: usize) -> Result<Option<usize>> {
        let mut cur = self.ix(c)?;
        while let Some(up) = self.nodes[cur].parent {
            if self.nodes[up].right == Some(cur) {
                return Ok(Some(up + 1));
            }
            cur = up;
        }
        Ok(None)
    }

    /// Leaf exponents `E(0..=m)`: for each leaf, the number of non-right
    /// carets on the maximal upward path of left edges starting at it.
    pub fn leaf_exponents(&self) -> Vec<u32> {
        let m = self.nodes.len();
        let mut out = vec![0; m + 1];
        for (k, e) in out.iter_mut().enumerate().take(m) {
            // leaf k is the left leaf of caret k+1 exactly when that caret has no left child
            if self.nodes[k].left.is_some() {
                continue;
            }
            let mut cur = k;
            loop {
                if self.sides[cur] != Side::Right {
                    *e += 1;
                }
                match self.nodes[cur].parent {
                    Some(up) if self.nodes[up].left == Some(cur) => cur = up,
                    _ => break,
                }
            }
        }
        out
    }

    /// Removes an exposed caret, turning it into a leaf.
    pub fn remove_exposed(&self, c: usize) -> Result<Tree> {
        fn go(t: &Tree, node: Option<usize>, target: usize) -> Shape {
            match node {
                None => Shape::Leaf,
                Some(x) if x == target => Shape::Leaf,
                Some(x) => Shape::caret(go(t, t.nodes[x].left, target), go(t, t.nodes[x].right, target)),
            }
        }
        if !self.is_exposed(c)? {
            return Err(Error::Parameter(format!("caret {c} is not exposed")));
        }
        Ok(Tree::from_shape(&go(self, self.root, c - 1)))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({})", self.serialize())
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        Tree::parse(s)
    }
}

impl From<&Shape> for Tree {
    fn from(shape: &Shape) -> Tree {
        Tree::from_shape(shape)
    }
}
