use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{successors, SlopeSeq};
use crate::error::{Error, Result};

/// The closure of a root sequence under one-step degenerations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationPoset {
    root: SlopeSeq,
    nodes: BTreeSet<SlopeSeq>,
    edges: BTreeSet<(SlopeSeq, SlopeSeq)>,
}

impl DegenerationPoset {
    pub fn root(&self) -> &SlopeSeq {
        &self.root
    }

    /// Nodes in (length, lexicographic) order.
    pub fn nodes(&self) -> impl Iterator<Item = &SlopeSeq> {
        self.nodes.iter()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, s: &SlopeSeq) -> bool {
        self.nodes.contains(s)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&SlopeSeq, &SlopeSeq)> {
        self.edges.iter().map(|(a, b)| (a, b))
    }

    /// Edges as index pairs into the node order, sorted.
    pub fn indexed_edges(&self) -> Vec<(usize, usize)> {
        let index: BTreeMap<&SlopeSeq, usize> = self.nodes.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut out: Vec<(usize, usize)> = self.edges.iter().map(|(a, b)| (index[a], index[b])).collect();
        out.sort_unstable();
        out
    }
}

/// Breadth-first closure of [`successors`] from `root`.
///
/// ```
/// use elliptic_sklyanin::strata::reachable_poset;
/// let p = reachable_poset(&"0,5/2".parse().unwrap()).unwrap();
/// assert_eq!(p.node_count(), 4);
/// assert_eq!(p.edge_count(), 3);
/// ```
pub fn reachable_poset(root: &SlopeSeq) -> Result<DegenerationPoset> {
    let mut nodes = BTreeSet::from([root.clone()]);
    let mut edges = BTreeSet::new();
    let mut queue = VecDeque::from([root.clone()]);
    while let Some(r) = queue.pop_front() {
        for s in successors(&r)? {
            debug_assert_eq!(s.total_degree(), r.total_degree());
            debug_assert_eq!(s.total_rank(), r.total_rank());
            edges.insert((r.clone(), s.clone()));
            if nodes.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    Ok(DegenerationPoset { root: root.clone(), nodes, edges })
}

/// `R ≺ S`: `S` is reachable from `R` by a chain of one-step degenerations.
pub fn precedes(r: &SlopeSeq, s: &SlopeSeq) -> Result<bool> {
    if r.total_degree() != s.total_degree() || r.total_rank() != s.total_rank() {
        return Err(Error::Domain(format!("{r} and {s} have different total degree or rank")));
    }
    Ok(reachable_poset(r)?.contains(s))
}
