//! Seeded random trees and elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elements::TreePair;
use crate::trees::{Shape, Tree};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn catalan(m: usize) -> Vec<u128> {
    let mut c = vec![1u128; m + 1];
    for k in 1..=m {
        c[k] = (0..k).map(|i| c[i] * c[k - 1 - i]).sum();
    }
    c
}

/// A shape drawn uniformly among all shapes with `m` carets (`m <= 60`).
pub fn random_shape<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Shape {
    assert!(m <= 60, "catalan numbers overflow beyond 60 carets");
    let table = catalan(m);
    fn go<R: Rng + ?Sized>(rng: &mut R, m: usize, table: &[u128]) -> Shape {
        if m == 0 {
            return Shape::Leaf;
        }
        let mut pick = rng.gen_range(0..table[m]);
        for left in 0..m {
            let count = table[left] * table[m - 1 - left];
            if pick < count {
                let l = go(rng, left, table);
                let r = go(rng, m - 1 - left, table);
                return Shape::caret(l, r);
            }
            pick -= count;
        }
        unreachable!()
    }
    go(rng, m, &table)
}

/// Two uniform trees with a common caret count in `0..=max_carets`, reduced.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, max_carets: usize) -> TreePair {
    let m = rng.gen_range(0..=max_carets);
    let neg = Tree::from_shape(&random_shape(rng, m));
    let pos = Tree::from_shape(&random_shape(rng, m));
    TreePair::new(neg, pos).expect("equal caret counts").reduce()
}

/// `count` random elements that are not the identity.
pub fn random_elements(seed: u64, count: usize, max_carets: usize) -> Vec<TreePair> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = random_element(&mut rng, max_carets);
        if !g.is_identity() {
            out.push(g);
        }
    }
    out
}
