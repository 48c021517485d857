//! Atom-side splitting verdicts. The atom sequence splits exactly when every
//! off-diagonal interaction entry vanishes; the nonzero entries define a
//! mixing graph whose connected components are reported as mixing clusters.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::blocks::ReducedInteractionMatrix;
use crate::linalg::Matrix;
use crate::transport::InteractionMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomSplittingReport {
    pub is_split: bool,
    /// 0-based `(i, j)` with `i < j` and a nonzero entry.
    pub mixing_edges: Vec<(usize, usize)>,
    /// Connected components of the mixing graph, each sorted, ordered by least member.
    pub clusters: Vec<Vec<usize>>,
}

fn splitting_of(m: &Matrix) -> AtomSplittingReport {
    let n = m.rows();
    let mut edges = Vec::new();
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if !m[(i, j)].is_zero() {
                edges.push((i, j));
                uf.union(i, j);
            }
        }
    }
    let labels = uf.into_labeling();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut slot_of_root = vec![usize::MAX; n];
    for (k, &root) in labels.iter().enumerate() {
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = clusters.len();
            clusters.push(Vec::new());
        }
        clusters[slot_of_root[root]].push(k);
    }
    AtomSplittingReport {
        is_split: edges.is_empty(),
        mixing_edges: edges,
        clusters,
    }
}

pub fn atom_splitting(lambda: &InteractionMatrix) -> AtomSplittingReport {
    splitting_of(lambda.entries())
}

/// The same verdict on the surviving block sectors.
pub fn blockwise_atom_splitting(reduced: &ReducedInteractionMatrix) -> AtomSplittingReport {
    splitting_of(reduced.entries())
}
