//! Trees on indexed vertices and the combinatorial primitives the spectral
//! code relies on: leaves, diameter, matching number and canonical forms.

mod canon;
mod family;
mod matching;

pub use canon::{canonical_code, canonical_tree, is_isomorphic, tree_from_code, CanonicalCode};
pub use family::{
    build_crab, build_extra_special, build_path, build_spider, build_star, FamilySpec,
};
pub use matching::matching_number;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An undirected tree on the vertices `0..n`.
///
/// Adjacency lists are kept sorted and the edge list holds each edge once as
/// `(u, v)` with `u < v`, sorted lexicographically. Values are immutable after
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeGraph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TreeGraph {
    /// Builds a tree from an edge list, checking that it has `n - 1` distinct
    /// edges without loops and is connected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree(
                "a tree needs at least one vertex".into(),
            ));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} vertices need {} edges, got {}",
                n,
                n - 1,
                edges.len()
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            normalized.push((u.min(v), u.max(v)));
        }
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidTree("duplicate edge".into()));
            }
        }
        normalized.sort_unstable();
        let tree = TreeGraph {
            adjacency,
            edges: normalized,
        };
        if tree.bfs_distances(0).iter().any(|d| d.is_none()) {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }
        Ok(tree)
    }

    /// The one-vertex tree.
    pub fn singleton() -> Self {
        TreeGraph {
            adjacency: vec![Vec::new()],
            edges: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices of a longest path, from one end to the other.
    pub fn diametral_path(&self) -> Vec<usize> {
        let far = |s: usize| -> (usize, Vec<Option<usize>>) {
            let dist = self.bfs_distances(s);
            let (arg, _) = dist
                .iter()
                .enumerate()
                .map(|(i, d)| (i, d.unwrap_or(0)))
                .max_by_key(|&(i, d)| (d, std::cmp::Reverse(i)))
                .unwrap_or((s, 0));
            (arg, dist)
        };
        let (a, _) = far(0);
        let (b, dist_a) = far(a);
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            let dc = dist_a[cur].unwrap_or(0);
            cur = *self.adjacency[cur]
                .iter()
                .find(|&&w| dist_a[w] == Some(dc.wrapping_sub(1)))
                .expect("BFS parent exists on a tree");
            path.push(cur);
        }
        path
    }

    /// The one or two central vertices of the tree.
    pub fn centers(&self) -> Vec<usize> {
        let path = self.diametral_path();
        let len = path.len() - 1;
        if len.is_multiple_of(2) {
            vec![path[len / 2]]
        } else {
            let mut c = vec![path[len / 2], path[len / 2 + 1]];
            c.sort_unstable();
            c
        }
    }

    /// Induced subgraph on `keep`, relabelled in the order given. Fails if the
    /// induced subgraph is not a tree.
    pub fn induced(&self, keep: &[usize]) -> Result<TreeGraph> {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        TreeGraph::from_edges(keep.len(), &edges)
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<TreeGraph> {
        if perm.len() != self.order() {
            return Err(Error::DimensionMismatch {
                expected: self.order(),
                got: perm.len(),
            });
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        TreeGraph::from_edges(self.order(), &edges)
    }

    /// Edge-list text: first line `n`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.order());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<TreeGraph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("vertex count: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let mut next = || -> Result<usize> {
                it.next()
                    .ok_or_else(|| Error::Parse(format!("bad edge line `{line}`")))?
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad edge line `{line}`: {e}")))
            };
            let u = next()?;
            let v = next()?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("bad edge line `{line}`")));
            }
            edges.push((u, v));
        }
        TreeGraph::from_edges(n, &edges)
    }
}

impl fmt::Display for TreeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

impl FromStr for TreeGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TreeGraph::parse_edge_list(s)
    }
}

/// A distinguished vertex subset, kept sorted. The Steklov operator acts on
/// functions over this set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundarySet {
    members: Vec<usize>,
}

impl BoundarySet {
    pub fn new(tree: &TreeGraph, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&v) = members.iter().find(|&&v| v >= tree.order()) {
            return Err(Error::BoundaryOutOfRange(v));
        }
        Ok(BoundarySet { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Vertices outside the boundary, ascending.
    pub fn interior(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&v| !self.contains(v)).collect()
    }
}

/// The degree-one vertices, the default boundary of a tree.
pub fn leaves(tree: &TreeGraph) -> BoundarySet {
    BoundarySet {
        members: (0..tree.order()).filter(|&v| tree.degree(v) == 1).collect(),
    }
}

pub fn diameter(tree: &TreeGraph) -> usize {
    tree.diametral_path().len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edge_sets() {
        assert!(TreeGraph::from_edges(0, &[]).is_err());
        assert!(TreeGraph::from_edges(3, &[(0, 1)]).is_err());
        assert!(TreeGraph::from_edges(3, &[(0, 1), (0, 1)]).is_err());
        assert!(TreeGraph::from_edges(3, &[(0, 0), (1, 2)]).is_err());
        assert!(TreeGraph::from_edges(4, &[(0, 1), (1, 0), (2, 3)]).is_err());
        assert!(TreeGraph::from_edges(3, &[(0, 1), (1, 3)]).is_err());
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let t = TreeGraph::from_edges(5, &[(3, 0), (0, 4), (1, 0), (2, 1)]).unwrap();
        for v in 0..5 {
            assert!(t.neighbors(v).windows(2).all(|w| w[0] < w[1]));
            for &w in t.neighbors(v) {
                assert!(t.neighbors(w).contains(&v));
            }
        }
        assert_eq!(t.edges(), &[(0, 1), (0, 3), (0, 4), (1, 2)]);
    }

    #[test]
    fn edge_list_round_trip() {
        let t = build_spider(&[(1, 3), (2, 1)]).unwrap();
        let text = t.to_edge_list();
        assert!(text.starts_with("6\n"));
        assert_eq!(TreeGraph::parse_edge_list(&text).unwrap(), t);
        assert!(TreeGraph::parse_edge_list("3\n0 1\n1 x\n").is_err());
        assert!(TreeGraph::parse_edge_list("").is_err());
    }

    #[test]
    fn leaves_of_small_trees() {
        assert_eq!(leaves(&build_path(2).unwrap()).members(), &[0, 1]);
        assert_eq!(leaves(&build_star(5).unwrap()).members(), &[1, 2, 3, 4]);
        assert_eq!(leaves(&build_crab(2, 3, 2).unwrap()).len(), 5);
        assert!(leaves(&TreeGraph::singleton()).is_empty());
    }

    #[test]
    fn diameters() {
        for n in 1..12 {
            assert_eq!(diameter(&build_path(n).unwrap()), n - 1);
        }
        assert_eq!(diameter(&build_star(5).unwrap()), 2);
        for r in 1..5 {
            assert_eq!(diameter(&build_crab(2, 3, r).unwrap()), 2 * r + 1);
        }
        assert_eq!(diameter(&build_spider(&[(3, 4), (2, 1)]).unwrap()), 8);
        assert_eq!(diameter(&build_spider(&[(1, 4), (2, 1)]).unwrap()), 5);
    }

    #[test]
    fn centers_of_paths() {
        assert_eq!(build_path(5).unwrap().centers(), vec![2]);
        assert_eq!(build_path(4).unwrap().centers(), vec![1, 2]);
        assert_eq!(TreeGraph::singleton().centers(), vec![0]);
    }

    #[test]
    fn boundary_set_interior() {
        let t = build_path(4).unwrap();
        let b = BoundarySet::new(&t, vec![3, 0, 3]).unwrap();
        assert_eq!(b.members(), &[0, 3]);
        assert_eq!(b.interior(4), vec![1, 2]);
        assert!(BoundarySet::new(&t, vec![4]).is_err());
    }
}
