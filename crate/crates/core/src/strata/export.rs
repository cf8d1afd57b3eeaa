use std::fmt::Write;

use serde::Serialize;

use super::{DegenerationPoset, SlopeSeq};

/// Graphviz text for the poset; nodes are `n0, n1, ...` in node order.
///
/// ```
/// use elliptic_sklyanin::strata::{reachable_poset, to_dot};
/// let p = reachable_poset(&"17/3".parse().unwrap()).unwrap();
/// assert_eq!(to_dot(&p), "digraph strata {\n  n0 [label=\"{17/3}\"];\n}\n");
/// ```
pub fn to_dot(p: &DegenerationPoset) -> String {
    let mut out = String::from("digraph strata {\n");
    for (i, node) in p.nodes().enumerate() {
        writeln!(out, "  n{i} [label=\"{node}\"];").expect("string write");
    }
    for (a, b) in p.indexed_edges() {
        writeln!(out, "  n{a} -> n{b};").expect("string write");
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct PosetJson<'a> {
    root: &'a SlopeSeq,
    nodes: Vec<&'a SlopeSeq>,
    edges: Vec<(usize, usize)>,
}

/// `{"root": [...], "nodes": [[...], ...], "edges": [[i, j], ...]}` with slopes as strings.
pub fn to_json(p: &DegenerationPoset) -> String {
    let doc = PosetJson { root: p.root(), nodes: p.nodes().collect(), edges: p.indexed_edges() };
    serde_json::to_string(&doc).expect("poset serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::reachable_poset;

    #[test]
    fn chain_dot() {
        let p = reachable_poset(&"0,5/2".parse().unwrap()).unwrap();
        let dot = to_dot(&p);
        assert_eq!(
            dot,
            "digraph strata {\n  n0 [label=\"{5/3}\"];\n  n1 [label=\"{0, 5/2}\"];\n  \
             n2 [label=\"{3/2, 2}\"];\n  n3 [label=\"{1, 2, 2}\"];\n  n1 -> n3;\n  n2 -> n0;\n  \
             n3 -> n2;\n}\n"
        );
    }

    #[test]
    fn chain_json() {
        let p = reachable_poset(&"0,5/2".parse().unwrap()).unwrap();
        assert_eq!(
            to_json(&p),
            r#"{"root":["0","5/2"],"nodes":[["5/3"],["0","5/2"],["3/2","2"],["1","2","2"]],"edges":[[1,3],[2,0],[3,2]]}"#
        );
    }
}
