use fgroup_core::length::{bfs_ball, length};

fn check(n: usize, radius: usize) {
    let ball = bfs_ball(n, radius).unwrap();
    let mut mismatches = Vec::new();
    for (g, d) in &ball.elements {
        let r = length(g, n).unwrap();
        if r.l_n != *d {
            mismatches.push((g.canonical_key(), *d, r.l_n));
        }
    }
    println!("n={n} radius={radius}: {} elements, spheres {:?}", ball.len(), ball.sphere_sizes());
    assert!(mismatches.is_empty(), "{} mismatches, first {:?}", mismatches.len(), &mismatches[..mismatches.len().min(5)]);
}

#[test]
fn formula_matches_bfs_n1() {
    check(1, 5);
}

#[test]
fn formula_matches_bfs_n2() {
    check(2, 4);
}

#[test]
fn formula_matches_bfs_n3() {
    check(3, 3);
}
