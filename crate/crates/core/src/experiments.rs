//! Constructed elements with unusual geometry, and drivers that check length
//! properties over many elements at once.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::elements::{Letter, TreePair, Word};
use crate::error::{Error, Result};
use crate::length::{l_infinity, length_with, word_length};
use crate::penalty::SearchLimits;
use crate::random::random_elements;
use crate::trees::{Shape, Tree};

fn reduced_pair(neg: &Shape, pos: &Shape, what: &str) -> Result<TreePair> {
    let g = TreePair::new(Tree::from_shape(neg), Tree::from_shape(pos))?;
    if !g.is_reduced() {
        return Err(Error::Parameter(format!("{what} is not reduced")));
    }
    Ok(g)
}

/// An element `g` for which both `g x_n` and `g x_n^-1` are shorter than `g`
/// over `X_n`, while `x_n^2` separates them.
///
/// The negative tree is a right spine of `2n+2` carets whose first `n+1`
/// left subtrees are complete with `big_l + 1` levels.
pub fn build_nonac_witness(n: usize, big_l: usize) -> Result<TreePair> {
    if n < 1 || big_l < 1 {
        return Err(Error::Parameter(format!("need n >= 1 and L >= 1, got n={n}, L={big_l}")));
    }
    if big_l > 8 {
        return Err(Error::Parameter(format!("L={big_l} builds an impractically large tree")));
    }
    let block = Shape::complete(big_l + 1);
    let block_carets = block.carets();
    let neg = Shape::right_spine((0..2 * n + 2).map(|i| if i <= n { block.clone() } else { Shape::Leaf }));

    // Root of the positive tree is the caret just before r_{n+1}.
    let root = (n + 1) * (block_carets + 1) - 1;
    let mut left = Shape::caret(Shape::Leaf, Shape::caret(Shape::Leaf, Shape::Leaf));
    for _ in 0..root - 3 {
        left = Shape::caret(left, Shape::Leaf);
    }
    let mut right = Shape::caret(Shape::caret(Shape::Leaf, Shape::Leaf), Shape::Leaf);
    for _ in 0..n {
        right = Shape::caret(Shape::Leaf, right);
    }
    let pos = Shape::caret(left, right);
    reduced_pair(&neg, &pos, "non-convexity witness")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonAcReport {
    pub n: usize,
    pub big_l: usize,
    pub element: String,
    pub l_n: usize,
    pub l_n_times_x: usize,
    pub l_n_times_x_inverse: usize,
    pub holds: bool,
}

pub fn nonac_lengths(n: usize, big_l: usize) -> Result<NonAcReport> {
    let g = build_nonac_witness(n, big_l)?;
    let l = word_length(&g, n)?;
    let up = word_length(&g.multiply(&TreePair::generator(n, false)), n)?;
    let down = word_length(&g.multiply(&TreePair::generator(n, true)), n)?;
    Ok(NonAcReport {
        n,
        big_l,
        element: g.canonical_key(),
        l_n: l,
        l_n_times_x: up,
        l_n_times_x_inverse: down,
        holds: up + 1 == l && down + 1 == l,
    })
}

/// True when multiplying the witness by `x_n` or `x_n^-1` drops its length by
/// exactly one.
pub fn verify_nonac_lengths(n: usize, big_l: usize) -> Result<bool> {
    nonac_lengths(n, big_l).map(|r| r.holds)
}

/// The element `g_k` whose `k`-neighbourhood over `X_n` lies in the ball of
/// radius `l_n(g_k)`. Requires `n >= 2k + 2`.
pub fn build_pocket_element(k: usize, n: usize) -> Result<TreePair> {
    if k < 1 || n < 2 * k + 2 {
        return Err(Error::Parameter(format!("need k >= 1 and n >= 2k+2, got k={k}, n={n}")));
    }
    if k > 6 {
        return Err(Error::Parameter(format!("k={k} builds an impractically large tree")));
    }
    let block = Shape::complete(k + 1);
    let block_carets = block.carets();
    let spine = 2 * n + k + 2;
    let filled = n + k + 1;
    let neg = Shape::right_spine((0..spine).map(|i| if i < filled { block.clone() } else { Shape::Leaf }));

    // A right string of block_carets - 1 carets; the last one gets a single
    // interior caret as its left child.
    let mut b = Shape::caret(Shape::caret(Shape::Leaf, Shape::Leaf), Shape::Leaf);
    for _ in 0..block_carets - 2 {
        b = Shape::caret(Shape::Leaf, b);
    }
    let mut pos = Shape::caret(Shape::caret(Shape::Leaf, Shape::Leaf), Shape::Leaf);
    for i in (0..spine - 2).rev() {
        let left = if i < filled { b.clone() } else { Shape::Leaf };
        pos = Shape::caret(left, pos);
    }
    reduced_pair(&neg, &pos, "pocket element")
}

/// Infix numbers of the right carets `r_1, r_2, ...` of a pocket element's
/// negative tree.
pub fn pocket_right_carets(k: usize, n: usize) -> Vec<usize> {
    let block = (1usize << (k + 1)) - 1;
    let filled = n + k + 1;
    let mut out = Vec::new();
    let mut index = 0;
    for i in 0..2 * n + k + 2 {
        if i < filled {
            index += block;
        }
        index += 1;
        out.push(index);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryWord {
    pub word: String,
    pub length: usize,
    pub escaped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PocketReport {
    pub element: String,
    pub n: usize,
    pub k: usize,
    pub l_n: usize,
    /// Every word of length at most this keeps `g` within its own ball.
    pub k_checked: usize,
    pub confirmed: bool,
    pub boundary: Vec<BoundaryWord>,
}

impl fmt::Display for PocketReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "element  {}", self.element)?;
        writeln!(f, "n={} k={} l_n={} k_checked={} confirmed={}", self.n, self.k, self.l_n, self.k_checked, self.confirmed)?;
        for b in &self.boundary {
            writeln!(f, "{:>4}  {}{}", b.length, b.word, if b.escaped { "  escaped" } else { "" })?;
        }
        Ok(())
    }
}

fn words_of_length(n: usize, len: usize) -> Vec<Vec<Letter>> {
    let alphabet = Letter::alphabet(n);
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    words
}

/// Checks every word `β` with `1 <= |β| <= k` for `l_n(gβ) <= l_n(g)`.
pub fn pocket_depth_at_least(g: &TreePair, n: usize, k: usize) -> Result<PocketReport> {
    pocket_depth_at_least_with(g, n, k, SearchLimits::default())
}

pub fn pocket_depth_at_least_with(g: &TreePair, n: usize, k: usize, limits: SearchLimits) -> Result<PocketReport> {
    let word_length = |h: &TreePair, n| length_with(h, n, limits).map(|r| r.l_n);
    let g = g.reduce();
    let total: usize = (1..=k as u32).map(|j| (2 * n + 2).saturating_pow(j)).sum();
    if total > 2_000_000 {
        return Err(Error::Budget(format!("{total} boundary words")));
    }
    let l_n = word_length(&g, n)?;
    let mut boundary = Vec::with_capacity(total);
    let mut k_checked = k;
    for len in 1..=k {
        let layer: Vec<Result<BoundaryWord>> = words_of_length(n, len)
            .into_par_iter()
            .map(|w| {
                let h = w.iter().fold(g.clone(), |acc, &a| acc.multiply(&TreePair::letter(a)));
                let length = word_length(&h, n)?;
                Ok(BoundaryWord { word: Word::new(w).to_string(), length, escaped: length > l_n })
            })
            .collect();
        let layer = layer.into_iter().collect::<Result<Vec<_>>>()?;
        if k_checked == k && layer.iter().any(|b| b.escaped) {
            k_checked = len - 1;
        }
        boundary.extend(layer);
    }
    Ok(PocketReport { element: g.canonical_key(), n, k, l_n, k_checked, confirmed: k_checked == k, boundary })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBoundReport {
    pub element: String,
    pub n: usize,
    pub l_n: usize,
    /// The first multiplier in `x_0, ..., x_{2n}, α` that lengthens `g`.
    pub escape: Option<String>,
}

/// The multiplier `x_{2n-1}^-1 ... x_1^-1`.
pub fn escape_word(n: usize) -> Word {
    Word::new((1..2 * n).rev().map(|i| Letter::new(i, true)).collect())
}

pub fn upper_bound_escape(g: &TreePair, n: usize) -> Result<UpperBoundReport> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    let g = g.reduce();
    let l_n = word_length(&g, n)?;
    let mut candidates: Vec<Word> = (0..=2 * n).map(|i| Word::new(vec![Letter::new(i, false)])).collect();
    candidates.push(escape_word(n));
    let mut escape = None;
    for w in candidates {
        if word_length(&g.multiply(&w.evaluate()), n)? > l_n {
            escape = Some(w.to_string());
            break;
        }
    }
    Ok(UpperBoundReport { element: g.canonical_key(), n, l_n, escape })
}

/// True when one of `x_0, ..., x_{2n}` or `x_{2n-1}^-1 ... x_1^-1` lengthens `g`.
pub fn upper_bound_check(g: &TreePair, n: usize) -> Result<bool> {
    upper_bound_escape(g, n).map(|r| r.escape.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBoundSuite {
    pub seed: u64,
    pub ns: Vec<usize>,
    pub checked: usize,
    pub violations: Vec<String>,
}

pub fn upper_bound_suite(sample: usize, ns: &[usize], seed: u64, max_carets: usize) -> Result<UpperBoundSuite> {
    let elements = random_elements(seed, sample, max_carets);
    let mut violations = Vec::new();
    for &n in ns {
        let reports: Vec<Result<UpperBoundReport>> =
            elements.par_iter().map(|g| upper_bound_escape(g, n)).collect();
        for r in reports {
            let r = r?;
            if r.escape.is_none() {
                violations.push(format!("n={n} {}", r.element));
            }
        }
    }
    Ok(UpperBoundSuite { seed, ns: ns.to_vec(), checked: sample * ns.len(), violations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaViolation {
    pub element: String,
    pub n: usize,
    /// The offending letter, or `None` when no letter shortens the element.
    pub letter: Option<String>,
    pub before: usize,
    pub after: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub seed: u64,
    pub sample: usize,
    pub ns: Vec<usize>,
    pub products: usize,
    pub step_violations: Vec<LemmaViolation>,
    pub descent_violations: Vec<LemmaViolation>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.step_violations.is_empty() && self.descent_violations.is_empty()
    }
}

fn lemma_check(g: &TreePair, n: usize) -> Result<(usize, Vec<LemmaViolation>, Option<LemmaViolation>)> {
    let before = word_length(g, n)?;
    let mut steps = Vec::new();
    let mut descends = false;
    let alphabet = Letter::alphabet(n);
    for &a in &alphabet {
        let after = word_length(&g.multiply(&TreePair::letter(a)), n)?;
        if after + 1 == before {
            descends = true;
        } else if after != before + 1 {
            steps.push(LemmaViolation {
                element: g.canonical_key(),
                n,
                letter: Some(a.to_string()),
                before,
                after: Some(after),
            });
        }
    }
    let descent = (!descends && !g.is_identity()).then(|| LemmaViolation {
        element: g.canonical_key(),
        n,
        letter: None,
        before,
        after: None,
    });
    Ok((alphabet.len(), steps, descent))
}

/// Over `sample` random elements and each `n`, checks that every letter
/// changes the formula length by exactly one and that some letter lowers it.
pub fn lemma_suites(sample: usize, ns: &[usize], seed: u64, max_carets: usize) -> Result<LemmaReport> {
    let mut elements = random_elements(seed, sample, max_carets);
    elements.insert(0, TreePair::identity());
    let mut report = LemmaReport {
        seed,
        sample,
        ns: ns.to_vec(),
        products: 0,
        step_violations: Vec::new(),
        descent_violations: Vec::new(),
    };
    for &n in ns {
        let results: Vec<_> = elements.par_iter().map(|g| lemma_check(g, n)).collect();
        for r in results {
            let (count, steps, descent) = r?;
            report.products += count;
            report.step_violations.extend(steps);
            report.descent_violations.extend(descent);
        }
    }
    Ok(report)
}

/// How right multiplication by a generator changes the tree pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MultiplicationCase {
    /// The letter's positive tree is not inside the negative tree.
    #[serde(rename = "1")]
    Expands,
    /// The positive tree fits, the product is reduced, the letter is inverse.
    #[serde(rename = "2a")]
    ReducedInverse,
    /// The positive tree fits, the product is reduced, the letter is positive.
    #[serde(rename = "2b")]
    ReducedPositive,
    /// The positive tree fits and the product needs reduction.
    #[serde(rename = "3")]
    Cancels,
}

impl MultiplicationCase {
    pub fn tag(self) -> &'static str {
        match self {
            MultiplicationCase::Expands => "1",
            MultiplicationCase::ReducedInverse => "2a",
            MultiplicationCase::ReducedPositive => "2b",
            MultiplicationCase::Cancels => "3",
        }
    }

    pub fn l_infinity_delta(self) -> i64 {
        match self {
            MultiplicationCase::Expands | MultiplicationCase::ReducedInverse => 1,
            MultiplicationCase::ReducedPositive | MultiplicationCase::Cancels => -1,
        }
    }
}

impl fmt::Display for MultiplicationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub case: MultiplicationCase,
    pub l_infty_before: usize,
    pub l_infty_after: usize,
}

impl Classification {
    pub fn observed_delta(&self) -> i64 {
        self.l_infty_after as i64 - self.l_infty_before as i64
    }

    /// Whether the observed change in `l_∞` is the one the case predicts.
    pub fn consistent(&self) -> bool {
        self.observed_delta() == self.case.l_infinity_delta()
    }
}

pub fn classify_generator_multiplication(g: &TreePair, letter: Letter) -> Classification {
    let g = g.reduce();
    let s = TreePair::letter(letter);
    let fits = g.negative().to_shape().contains(&s.positive().to_shape());
    let product = g.multiply_unreduced(&s);
    let case = if !fits {
        MultiplicationCase::Expands
    } else if !product.is_reduced() {
        MultiplicationCase::Cancels
    } else if letter.inverse {
        MultiplicationCase::ReducedInverse
    } else {
        MultiplicationCase::ReducedPositive
    };
    Classification { case, l_infty_before: l_infinity(&g), l_infty_after: l_infinity(&product.reduce()) }
}
