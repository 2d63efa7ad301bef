//! Free trees up to isomorphism, the matching-number classes, and seeded
//! random trees.
//!
//! Generation walks the Wright-Richmond-Odlyzko-McKay successor sequence of
//! canonical level sequences, which visits each free tree exactly once. Each
//! order is then listed sorted by canonical code, and every tree is emitted in
//! canonical vertex order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    canonical_code, leaves, matching_number, tree_from_code, CanonicalCode, TreeGraph,
};

pub const MAX_ORDER: usize = 20;

/// Splits a level sequence into the first subtree of the root (levels shifted
/// down by one) and the rest of the tree.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// The first valid free-tree level sequence at or after `candidate`.
fn next_tree(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split_tree(&candidate);
    let lh = left.iter().copied().max().unwrap_or(0);
    let rh = rest.iter().copied().max().unwrap_or(0);
    let mut valid = rh >= lh;
    if valid && rh == lh && (left.len() > rest.len() || (left.len() == rest.len() && left > rest)) {
        valid = false;
    }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted_tree(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let h = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (k, slot) in next[len - (h + 1)..].iter_mut().enumerate() {
            *slot = k + 1;
        }
    }
    Some(next)
}

fn layout_to_tree(layout: &[usize]) -> TreeGraph {
    let mut edges = Vec::with_capacity(layout.len().saturating_sub(1));
    let mut stack: Vec<usize> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] >= level {
                stack.pop();
            } else {
                edges.push((j, i));
                break;
            }
        }
        stack.push(i);
    }
    TreeGraph::from_edges(layout.len(), &edges).expect("level sequences describe trees")
}

fn generate_codes(n: usize) -> Vec<CanonicalCode> {
    if n == 1 {
        return vec![canonical_code(&TreeGraph::singleton())];
    }
    let mut layout: Vec<usize> = (0..=n / 2).chain(1..n.div_ceil(2)).collect();
    let mut codes = Vec::new();
    while let Some(valid) = next_tree(layout) {
        codes.push(canonical_code(&layout_to_tree(&valid)));
        match next_rooted_tree(&valid, None) {
            Some(next) => layout = next,
            None => break,
        }
    }
    codes.sort_unstable();
    codes
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::OutOfRange(format!(
            "tree order must be in 1..={MAX_ORDER}, got {n}"
        )));
    }
    Ok(())
}

/// Canonical codes of all free trees on `n` vertices, sorted. Results are
/// cached per order.
pub fn free_tree_codes(n: usize) -> Result<Arc<Vec<CanonicalCode>>> {
    check_order(n)?;
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<CanonicalCode>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&n) {
        return Ok(Arc::clone(hit));
    }
    let codes = Arc::new(generate_codes(n));
    cache
        .lock()
        .expect("cache lock")
        .insert(n, Arc::clone(&codes));
    Ok(codes)
}

/// Iterator over the free trees of one order, in canonical-code order.
#[derive(Debug, Clone)]
pub struct FreeTrees {
    codes: Arc<Vec<CanonicalCode>>,
    next: usize,
}

impl Iterator for FreeTrees {
    type Item = TreeGraph;

    fn next(&mut self) -> Option<TreeGraph> {
        let code = self.codes.get(self.next)?;
        self.next += 1;
        Some(tree_from_code(code).expect("generated codes decode"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.codes.len() - self.next;
        (left, Some(left))
    }
}

impl ExactSizeIterator for FreeTrees {}

pub fn enumerate_free_trees(n: usize) -> Result<FreeTrees> {
    Ok(FreeTrees {
        codes: free_tree_codes(n)?,
        next: 0,
    })
}

/// `T(n, m)`: trees with `n` vertices and matching number `m`; or `T~(b, m)`:
/// trees with `b` leaves and matching number `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum TreeClassQuery {
    ByVerticesMatching { n: usize, m: usize },
    ByLeavesMatching { b: usize, m: usize },
}

impl TreeClassQuery {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TreeClassQuery::ByVerticesMatching { n, m } if n >= 2 && m >= 1 && 2 * m <= n => Ok(()),
            TreeClassQuery::ByLeavesMatching { b, m } if b >= 2 && m >= 1 => Ok(()),
            q => Err(Error::OutOfRange(format!("invalid tree class {q}"))),
        }
    }

    /// The orders that are scanned: `n` itself, or `2m ..= 2m + b - 1`.
    pub fn orders(&self) -> std::ops::RangeInclusive<usize> {
        match *self {
            TreeClassQuery::ByVerticesMatching { n, .. } => n..=n,
            TreeClassQuery::ByLeavesMatching { b, m } => 2 * m..=2 * m + b - 1,
        }
    }

    pub fn contains(&self, tree: &TreeGraph) -> bool {
        match *self {
            TreeClassQuery::ByVerticesMatching { n, m } => {
                tree.order() == n && matching_number(tree) == m
            }
            TreeClassQuery::ByLeavesMatching { b, m } => {
                leaves(tree).len() == b && matching_number(tree) == m
            }
        }
    }
}

impl fmt::Display for TreeClassQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeClassQuery::ByVerticesMatching { n, m } => write!(f, "n={n},m={m}"),
            TreeClassQuery::ByLeavesMatching { b, m } => write!(f, "b={b},m={m}"),
        }
    }
}

impl FromStr for TreeClassQuery {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "class must look like `n=K,m=J` or `b=K,m=J`, got `{s}`"
            ))
        };
        let (first, second) = s.split_once(',').ok_or_else(bad)?;
        let (key, k) = first.trim().split_once('=').ok_or_else(bad)?;
        let (mkey, j) = second.trim().split_once('=').ok_or_else(bad)?;
        if mkey.trim() != "m" {
            return Err(bad());
        }
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        let m: usize = j.trim().parse().map_err(|_| bad())?;
        let q = match key.trim() {
            "n" => TreeClassQuery::ByVerticesMatching { n: k, m },
            "b" => TreeClassQuery::ByLeavesMatching { b: k, m },
            _ => return Err(bad()),
        };
        q.validate()?;
        Ok(q)
    }
}

/// Codes of every tree in the class, ordered by vertex count and then code.
///
/// For leaf classes, the trees on `2m + b` vertices are also scanned and
/// must all lie outside the class; otherwise the scanned range would not be
/// known to cover the class and [`Error::MarginViolation`] is returned.
pub fn class_codes(q: TreeClassQuery) -> Result<Vec<CanonicalCode>> {
    q.validate()?;
    let mut out = Vec::new();
    for n in q.orders() {
        for code in free_tree_codes(n)?.iter() {
            if q.contains(&tree_from_code(code)?) {
                out.push(code.clone());
            }
        }
    }
    if let TreeClassQuery::ByLeavesMatching { b, m } = q {
        let n = 2 * m + b;
        for code in free_tree_codes(n)?.iter() {
            if q.contains(&tree_from_code(code)?) {
                return Err(Error::MarginViolation { b, m, n });
            }
        }
    }
    Ok(out)
}

pub fn trees_in_class(q: TreeClassQuery) -> Result<Vec<TreeGraph>> {
    class_codes(q)?.iter().map(tree_from_code).collect()
}

/// A labelled tree on `n` vertices, uniform over all `n^(n-2)` labelled
/// trees, decoded from a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> TreeGraph {
    assert!(n >= 1, "random_tree needs n >= 1");
    if n == 1 {
        return TreeGraph::singleton();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    for &v in &seq {
        let leaf = leaves.pop_first().expect("a Prüfer step always has a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    TreeGraph::from_edges(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Deletes up to `steps` leaves, chosen at random one at a time, never going
/// below two vertices. Returns the remaining subtree, relabelled by
/// increasing original index.
pub fn prune_leaves(tree: &TreeGraph, steps: usize, seed: u64) -> TreeGraph {
    let n = tree.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut remaining = n;
    for _ in 0..steps {
        if remaining <= 2 {
            break;
        }
        let candidates: Vec<usize> = (0..n).filter(|&v| alive[v] && degree[v] == 1).collect();
        let &leaf = candidates
            .choose(&mut rng)
            .expect("trees with 3+ vertices have leaves");
        alive[leaf] = false;
        remaining -= 1;
        for &w in tree.neighbors(leaf) {
            if alive[w] {
                degree[w] -= 1;
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    tree.induced(&keep).expect("leaf pruning keeps a tree")
}

/// A random connected subtree with at least two vertices: a seeded number of
/// leaf deletions, chosen uniformly in `0..=n-2`.
pub fn random_subtree(tree: &TreeGraph, seed: u64) -> TreeGraph {
    let n = tree.order();
    assert!(n >= 2, "random_subtree needs n >= 2");
    let steps = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15).gen_range(0..=n - 2);
    prune_leaves(tree, steps, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_path, build_star, diameter};

    #[test]
    fn small_counts() {
        let want = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(
                enumerate_free_trees(i + 1).unwrap().count(),
                w,
                "n={}",
                i + 1
            );
        }
        assert!(enumerate_free_trees(0).is_err());
        assert!(enumerate_free_trees(21).is_err());
    }

    #[test]
    fn n4_is_path_and_star() {
        let codes: Vec<CanonicalCode> = enumerate_free_trees(4)
            .unwrap()
            .map(|t| canonical_code(&t))
            .collect();
        let mut want = vec![
            canonical_code(&build_path(4).unwrap()),
            canonical_code(&build_star(4).unwrap()),
        ];
        want.sort();
        assert_eq!(codes, want);
    }

    #[test]
    fn emitted_in_canonical_order() {
        for t in enumerate_free_trees(8).unwrap() {
            assert_eq!(crate::graph::canonical_tree(&t), t);
        }
    }

    #[test]
    fn class_queries() {
        let q: TreeClassQuery = "n=4,m=1".parse().unwrap();
        let ts = trees_in_class(q).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(
            canonical_code(&ts[0]),
            canonical_code(&build_star(4).unwrap())
        );

        for m in 1..5 {
            let ts = trees_in_class(TreeClassQuery::ByLeavesMatching { b: 2, m }).unwrap();
            let orders: Vec<usize> = ts.iter().map(TreeGraph::order).collect();
            assert_eq!(orders, vec![2 * m, 2 * m + 1]);
            assert!(ts.iter().all(|t| t.max_degree() <= 2));
        }
        for n in 4..10 {
            for m in 1..=n / 2 {
                for t in trees_in_class(TreeClassQuery::ByVerticesMatching { n, m }).unwrap() {
                    assert!(diameter(&t) <= 2 * m);
                }
            }
        }
    }

    #[test]
    fn class_parsing() {
        assert_eq!(
            "b=3,m=2".parse::<TreeClassQuery>().unwrap(),
            TreeClassQuery::ByLeavesMatching { b: 3, m: 2 }
        );
        for bad in ["n=4", "x=1,m=1", "n=3,m=2", "b=1,m=1", "n=4,k=1", "n=a,m=1"] {
            assert!(bad.parse::<TreeClassQuery>().is_err(), "{bad}");
        }
        assert_eq!(
            TreeClassQuery::ByVerticesMatching { n: 7, m: 3 }.to_string(),
            "n=7,m=3"
        );
    }

    #[test]
    fn random_tree_basics() {
        assert_eq!(random_tree(1, 0).order(), 1);
        assert_eq!(random_tree(2, 5).edges(), &[(0, 1)]);
        assert_eq!(random_tree(12, 42), random_tree(12, 42));
        assert_ne!(random_tree(12, 42), random_tree(12, 43));
    }

    #[test]
    fn pruning() {
        let t = random_tree(10, 3);
        assert_eq!(prune_leaves(&t, 0, 1), t);
        let p5 = build_path(5).unwrap();
        let edge = prune_leaves(&p5, 100, 9);
        assert_eq!(edge.order(), 2);
        for seed in 0..50 {
            let s = random_subtree(&t, seed);
            assert!(s.order() >= 2 && s.order() <= t.order());
        }
    }
}
