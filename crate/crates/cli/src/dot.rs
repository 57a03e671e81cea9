use std::fmt::Write;

use fgroup_core::PenaltyTree;

/// DOT digraph of a penalty tree. Weighted vertices get a heavier outline.
pub fn render(tree: &PenaltyTree, n: usize) -> String {
    let weighted = tree.weighted(n);
    let mut s = String::from("digraph penalty {\n  node [shape=circle];\n  v0 [label=\"v_0\"];\n");
    for v in tree.vertices().into_iter().filter(|&v| v != 0) {
        if weighted.contains(&v) {
            writeln!(s, "  v{v} [label=\"{v}\", penwidth=3];").unwrap();
        } else {
            writeln!(s, "  v{v} [label=\"{v}\"];").unwrap();
        }
    }
    for (p, c) in tree.edges() {
        writeln!(s, "  v{p} -> v{c};").unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_tree_is_one_node() {
        let s = render(&PenaltyTree::trivial(), 2);
        assert_eq!(s.matches("label").count(), 1);
        assert!(!s.contains("->"));
    }

    #[test]
    fn marks_weighted_vertices() {
        let t: PenaltyTree = "0->1 1->2 2->3".parse().unwrap();
        let s = render(&t, 2);
        assert!(s.contains("v2 [label=\"2\", penwidth=3]"));
        assert!(s.contains("v1 [label=\"1\"];"));
        assert_eq!(s.matches("penwidth").count(), 1);
    }
}
