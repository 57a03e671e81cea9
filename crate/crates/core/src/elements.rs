//! Elements of F as tree pair diagrams, words and normal forms.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::trees::{Shape, Tree};

/// A tree pair diagram `(T_-, T_+)` with equal caret counts.
///
/// Pairs built through the public constructors other than [`TreePair::new`]
/// are reduced, so structural equality of reduced pairs is equality in F.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TreePair {
    negative: Tree,
    positive: Tree,
}

impl TreePair {
    /// Wraps two trees without reducing them.
    pub fn new(negative: Tree, positive: Tree) -> Result<TreePair> {
        if negative.caret_count() != positive.caret_count() {
            return Err(Error::UnequalCarets {
                negative: negative.caret_count(),
                positive: positive.caret_count(),
            });
        }
        Ok(TreePair { negative, positive })
    }

    pub fn identity() -> TreePair {
        TreePair { negative: Tree::empty(), positive: Tree::empty() }
    }

    pub fn negative(&self) -> &Tree {
        &self.negative
    }

    pub fn positive(&self) -> &Tree {
        &self.positive
    }

    pub fn caret_count(&self) -> usize {
        self.negative.caret_count()
    }

    pub fn is_identity(&self) -> bool {
        self.caret_count() == 0
    }

    /// Carets that are exposed in both trees; each one can be cancelled.
    fn cancellable(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.caret_count()).filter(|&c| {
            self.negative.is_exposed(c).unwrap_or(false) && self.positive.is_exposed(c).unwrap_or(false)
        })
    }

    pub fn is_reduced(&self) -> bool {
        self.cancellable().next().is_none()
    }

    /// Cancels common exposed carets until none remain.
    pub fn reduce(&self) -> TreePair {
        self.reduce_with(|candidates| candidates[0])
    }

    /// Reduction with a caller-chosen removal order; the result never depends on it.
    pub fn reduce_with(&self, mut pick: impl FnMut(&[usize]) -> usize) -> TreePair {
        let mut cur = self.clone();
        loop {
            let candidates: Vec<usize> = cur.cancellable().collect();
            if candidates.is_empty() {
                return cur;
            }
            let c = pick(&candidates);
            assert!(candidates.contains(&c), "picked caret is not cancellable");
            cur = TreePair {
                negative: cur.negative.remove_exposed(c).expect("exposed"),
                positive: cur.positive.remove_exposed(c).expect("exposed"),
            };
        }
    }

    /// Reduced pair for `x_i` or `x_i^{-1}`.
    pub fn generator(index: usize, inverse: bool) -> TreePair {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        let positive = Tree::from_shape(&Shape::from_leaf_exponents(&exps));
        let negative = Tree::right_string(positive.caret_count());
        let g = TreePair { negative, positive };
        if inverse {
            g.inverse()
        } else {
            g
        }
    }

    pub fn letter(letter: Letter) -> TreePair {
        TreePair::generator(letter.index, letter.inverse)
    }

    pub fn inverse(&self) -> TreePair {
        TreePair { negative: self.positive.clone(), positive: self.negative.clone() }
    }

    /// The reduced product `self * other`.
    ///
    /// With `self = (T_-, T_+)` and `other = (S_-, S_+)`, both pairs are
    /// expanded until `S_+` and `T_-` agree, and the product is `(S'_-, T'_+)`.
    pub fn multiply(&self, other: &TreePair) -> TreePair {
        self.multiply_unreduced(other).reduce()
    }

    /// The product before cancelling common exposed carets.
    pub fn multiply_unreduced(&self, other: &TreePair) -> TreePair {
        let t_neg = self.negative.to_shape();
        let s_pos = other.positive.to_shape();
        let middle = t_neg.union(&s_pos);
        let positive = self.positive.to_shape().graft(t_neg.subtrees_at_leaves(&middle));
        let negative = other.negative.to_shape().graft(s_pos.subtrees_at_leaves(&middle));
        TreePair { negative: Tree::from_shape(&negative), positive: Tree::from_shape(&positive) }
    }

    pub fn from_word(word: &Word) -> TreePair {
        word.letters()
            .iter()
            .fold(TreePair::identity(), |acc, &l| acc.multiply(&TreePair::letter(l)))
    }

    pub fn from_normal_form(nf: &NormalForm) -> Result<TreePair> {
        nf.validate()?;
        let dense = |part: &[(usize, u32)]| -> Vec<u32> {
            let len = part.last().map_or(0, |&(i, _)| i + 1);
            let mut v = vec![0; len];
            for &(i, e) in part {
                v[i] = e;
            }
            v
        };
        let pos = Shape::from_leaf_exponents(&dense(&nf.positive));
        let neg = Shape::from_leaf_exponents(&dense(&nf.negative));
        let m = pos.carets().max(neg.carets());
        let pos = pos.extend_right(m - pos.carets());
        let neg = neg.extend_right(m - neg.carets());
        Ok(TreePair { negative: Tree::from_shape(&neg), positive: Tree::from_shape(&pos) }.reduce())
    }

    /// Normal form read off the leaf exponents of a reduced pair.
    pub fn normal_form(&self) -> Result<NormalForm> {
        if !self.is_reduced() {
            return Err(Error::Unreduced);
        }
        let sparse = |exps: Vec<u32>| -> Vec<(usize, u32)> {
            exps.into_iter().enumerate().filter(|&(_, e)| e > 0).collect()
        };
        Ok(NormalForm {
            positive: sparse(self.positive.leaf_exponents()),
            negative: sparse(self.negative.leaf_exponents()),
        })
    }

    /// `neg;pos` preorder bitstrings; equal keys iff equal reduced pairs.
    pub fn canonical_key(&self) -> String {
        format!("{};{}", self.negative.serialize(), self.positive.serialize())
    }

    /// Parses `neg;pos` without reducing.
    pub fn parse_pair(text: &str) -> Result<TreePair> {
        let (neg, pos) = text
            .trim()
            .split_once(';')
            .ok_or_else(|| Error::PairParse(format!("expected `neg;pos`, got {text:?}")))?;
        let negative = Tree::parse(neg.trim())?;
        let positive = Tree::parse(pos.trim())?;
        TreePair::new(negative, positive)
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_key())
    }
}

impl fmt::Debug for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreePair({})", self.canonical_key())
    }
}

impl FromStr for TreePair {
    type Err = Error;

    fn from_str(s: &str) -> Result<TreePair> {
        TreePair::parse_pair(s)
    }
}

/// A generator `x_index` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Letter {
        Letter { index, inverse }
    }

    pub fn inv(self) -> Letter {
        Letter { index: self.index, inverse: !self.inverse }
    }

    /// The letters of `X_n` and their inverses in the fixed order
    /// `x_0, x_0^-1, x_1, x_1^-1, ..., x_n^-1`.
    pub fn alphabet(n: usize) -> Vec<Letter> {
        (0..=n).flat_map(|i| [Letter::new(i, false), Letter::new(i, true)]).collect()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "x{}^-1", self.index)
        } else {
            write!(f, "x{}", self.index)
        }
    }
}

/// A word in the generators `x_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Parses whitespace-separated tokens `x<k>` or `x<k>^<e>`, `e != 0`.
    pub fn parse(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for piece in text.split_inclusive(char::is_whitespace) {
            let token = piece.trim_end();
            if !token.is_empty() {
                parse_token(token, offset, &mut letters)?;
            }
            offset += piece.len();
        }
        Ok(Word(letters))
    }

    pub fn evaluate(&self) -> TreePair {
        TreePair::from_word(self)
    }
}

fn parse_token(token: &str, offset: usize, out: &mut Vec<Letter>) -> Result<()> {
    let err = |reason: String| Error::WordParse { offset, reason };
    let body = token
        .strip_prefix('x')
        .ok_or_else(|| err(format!("token {token:?} does not start with 'x'")))?;
    let (index, exponent) = match body.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (body, None),
    };
    if index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(format!("bad generator index in {token:?}")));
    }
    let index: usize = index.parse().map_err(|_| err(format!("generator index too large in {token:?}")))?;
    let exponent: i64 = match exponent {
        None => 1,
        Some(e) => e
            .parse()
            .map_err(|_| err(format!("bad exponent in {token:?}")))?,
    };
    if exponent == 0 {
        return Err(err(format!("zero exponent in {token:?}")));
    }
    let letter = Letter::new(index, exponent < 0);
    out.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
    Ok(())
}

fn write_power(f: &mut fmt::Formatter<'_>, first: &mut bool, index: usize, exp: i64) -> fmt::Result {
    if !*first {
        f.write_str(" ")?;
    }
    *first = false;
    if exp == 1 {
        write!(f, "x{index}")
    } else {
        write!(f, "x{index}^{exp}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut iter = self.0.iter().peekable();
        while let Some(&l) = iter.next() {
            let mut count = 1i64;
            while iter.peek() == Some(&&l) {
                iter.next();
                count += 1;
            }
            write_power(f, &mut first, l.index, if l.inverse { -count } else { count })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

/// `x_{i_1}^{r_1} ... x_{i_k}^{r_k} x_{j_l}^{-s_l} ... x_{j_1}^{-s_1}`.
///
/// Both parts are stored as `(index, exponent)` with strictly increasing
/// indices; the negative part is rendered in decreasing index order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub positive: Vec<(usize, u32)>,
    pub negative: Vec<(usize, u32)>,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }

    /// Checks ordering, positivity, and the uniqueness condition: when `x_i`
    /// occurs in both parts, `x_{i+1}` occurs in one of them.
    pub fn validate(&self) -> Result<()> {
        for (name, part) in [("positive", &self.positive), ("negative", &self.negative)] {
            if part.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::NormalForm(format!("{name} indices are not strictly increasing")));
            }
            if part.iter().any(|&(_, e)| e == 0) {
                return Err(Error::NormalForm(format!("{name} part has a zero exponent")));
            }
        }
        let has = |part: &[(usize, u32)], i: usize| part.binary_search_by_key(&i, |&(j, _)| j).is_ok();
        for &(i, _) in &self.positive {
            if has(&self.negative, i) && !has(&self.positive, i + 1) && !has(&self.negative, i + 1) {
                return Err(Error::NormalForm(format!(
                    "x{i} occurs with both signs but x{} does not occur",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::new();
        for &(i, e) in &self.positive {
            letters.extend(std::iter::repeat_n(Letter::new(i, false), e as usize));
        }
        for &(i, e) in self.negative.iter().rev() {
            letters.extend(std::iter::repeat_n(Letter::new(i, true), e as usize));
        }
        Word(letters)
    }

    /// Reads a word already in normal-form shape (positive powers with
    /// increasing indices, then negative powers with decreasing indices).
    pub fn from_word(word: &Word) -> Result<NormalForm> {
        let mut positive: Vec<(usize, u32)> = Vec::new();
        let mut negative: Vec<(usize, u32)> = Vec::new();
        for &l in word.letters() {
            if l.inverse {
                match negative.last_mut() {
                    Some((i, e)) if *i == l.index => *e += 1,
                    Some((i, _)) if *i < l.index => {
                        return Err(Error::NormalForm("negative indices must decrease".into()))
                    }
                    _ => negative.push((l.index, 1)),
                }
            } else {
                if !negative.is_empty() {
                    return Err(Error::NormalForm("positive letter after a negative one".into()));
                }
                match positive.last_mut() {
                    Some((i, e)) if *i == l.index => *e += 1,
                    Some((i, _)) if *i > l.index => {
                        return Err(Error::NormalForm("positive indices must increase".into()))
                    }
                    _ => positive.push((l.index, 1)),
                }
            }
        }
        negative.reverse();
        let nf = NormalForm { positive, negative };
        nf.validate()?;
        Ok(nf)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(i, e) in &self.positive {
            write_power(f, &mut first, i, e as i64)?;
        }
        for &(i, e) in self.negative.iter().rev() {
            write_power(f, &mut first, i, -(e as i64))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> TreePair {
        Word::parse(s).unwrap().evaluate()
    }

    #[test]
    fn generator_pairs() {
        let x0 = TreePair::generator(0, false);
        assert_eq!(x0.canonical_key(), "10100;11000");
        assert_eq!(TreePair::generator(0, true).canonical_key(), "11000;10100");
        for i in 0..6 {
            let g = TreePair::generator(i, false);
            assert!(g.is_reduced());
            assert_eq!(g.positive().caret_count(), i + 2);
            assert_eq!(g.normal_form().unwrap().to_string(), format!("x{i}"));
            assert_eq!(TreePair::generator(i, true), g.inverse());
        }
    }

    #[test]
    fn identity_key() {
        assert_eq!(TreePair::identity().canonical_key(), "0;0");
        assert_eq!(word("x0 x0^-1"), TreePair::identity());
        assert_eq!(word(""), TreePair::identity());
    }

    #[test]
    fn conjugation_relator() {
        assert_eq!(word("x0^-1 x1 x0"), TreePair::generator(2, false));
        let x0 = TreePair::generator(0, false);
        let x1 = TreePair::generator(1, false);
        assert_eq!(x0.inverse().multiply(&x1).multiply(&x0), TreePair::generator(2, false));
    }

    #[test]
    fn reduce_examples() {
        // x0 with a caret hung on leaf 1 of both trees
        let unreduced = TreePair::parse_pair("1011000;1101000").unwrap();
        assert!(!unreduced.is_reduced());
        assert_eq!(unreduced.reduce(), TreePair::generator(0, false));
        let x0 = TreePair::generator(0, false);
        assert_eq!(x0.reduce(), x0);
        assert_eq!(TreePair::parse_pair("100;100").unwrap().reduce(), TreePair::identity());
    }

    #[test]
    fn normal_form_examples() {
        assert!(TreePair::identity().normal_form().unwrap().is_identity());
        let nf = word("x3 x1 x2 x3^-2 x2^-1 x3").normal_form().unwrap();
        assert_eq!(nf.to_string(), "x1 x2 x5 x6 x3^-2 x2^-1");
        assert_eq!(word("x0^-1 x1 x0").normal_form().unwrap().to_string(), "x2");
        assert_eq!(
            TreePair::parse_pair("1011000;1101000").unwrap().normal_form(),
            Err(Error::Unreduced)
        );
    }

    #[test]
    fn from_normal_form_examples() {
        assert_eq!(TreePair::from_normal_form(&NormalForm::default()).unwrap(), TreePair::identity());
        let x0 = NormalForm { positive: vec![(0, 1)], negative: vec![] };
        assert_eq!(TreePair::from_normal_form(&x0).unwrap().canonical_key(), "10100;11000");
        let bad = NormalForm { positive: vec![(2, 1)], negative: vec![(2, 1)] };
        assert!(TreePair::from_normal_form(&bad).is_err());
        let unsorted = NormalForm { positive: vec![(3, 1), (1, 1)], negative: vec![] };
        assert!(unsorted.validate().is_err());
    }

    #[test]
    fn word_parsing() {
        let w = Word::parse("x0 x1^2   x4^-1").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.to_string(), "x0 x1^2 x4^-1");
        assert!(Word::parse("").unwrap().is_empty());
        assert!(matches!(Word::parse("x0 y1"), Err(Error::WordParse { offset: 3, .. })));
        assert!(matches!(Word::parse("x1^0"), Err(Error::WordParse { offset: 0, .. })));
        assert!(matches!(Word::parse("x"), Err(Error::WordParse { .. })));
        assert!(matches!(Word::parse("x2^"), Err(Error::WordParse { .. })));
    }

    #[test]
    fn normal_form_from_word() {
        let w = Word::parse("x1 x2 x5 x6 x3^-2 x2^-1").unwrap();
        let nf = NormalForm::from_word(&w).unwrap();
        assert_eq!(nf.negative, vec![(2, 1), (3, 2)]);
        assert_eq!(nf.to_word(), w);
        assert!(NormalForm::from_word(&Word::parse("x2 x1").unwrap()).is_err());
    }

    #[test]
    fn pair_parsing() {
        assert!(TreePair::parse_pair("10100").is_err());
        assert!(matches!(TreePair::parse_pair("100;0"), Err(Error::UnequalCarets { .. })));
        let g: TreePair = "10100;11000".parse().unwrap();
        assert_eq!(g, TreePair::generator(0, false));
    }
}
