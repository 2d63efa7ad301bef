//! AHU canonical encoding of free trees.
//!
//! A rooted tree encodes as `(` followed by the sorted encodings of its
//! children and `)`. A free tree is rooted at its center; a bicentral tree
//! takes the smaller of the two rooted encodings. Equal codes iff isomorphic.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::TreeGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Number of vertices of the encoded tree.
    pub fn order(&self) -> usize {
        self.0.len() / 2
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // only `(` and `)` ever appear
        f.write_str(std::str::from_utf8(&self.0).unwrap_or("<invalid>"))
    }
}

impl From<CanonicalCode> for String {
    fn from(code: CanonicalCode) -> String {
        code.to_string()
    }
}

impl TryFrom<String> for CanonicalCode {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        let code = CanonicalCode(s.into_bytes());
        tree_from_code(&code)?;
        Ok(code)
    }
}

fn rooted_code(tree: &TreeGraph, root: usize) -> Vec<u8> {
    let n = tree.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    order.push(root);
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &w in tree.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &u in order.iter().rev() {
        let mut children: Vec<Vec<u8>> = tree
            .neighbors(u)
            .iter()
            .filter(|&&w| parent[w] == u && w != u)
            .map(|&w| std::mem::take(&mut codes[w]))
            .collect();
        children.sort_unstable();
        let mut code = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
        code.push(b'(');
        for c in children {
            code.extend_from_slice(&c);
        }
        code.push(b')');
        codes[u] = code;
    }
    std::mem::take(&mut codes[root])
}

pub fn canonical_code(tree: &TreeGraph) -> CanonicalCode {
    let code = tree
        .centers()
        .into_iter()
        .map(|c| rooted_code(tree, c))
        .min()
        .expect("every tree has a center");
    CanonicalCode(code)
}

pub fn is_isomorphic(a: &TreeGraph, b: &TreeGraph) -> bool {
    a.order() == b.order() && canonical_code(a) == canonical_code(b)
}

/// Decodes a canonical (or any balanced rooted) encoding. Vertices are
/// numbered in preorder, the root is `0`.
pub fn tree_from_code(code: &CanonicalCode) -> Result<TreeGraph> {
    let bytes = code.as_bytes();
    let bad = || Error::Parse(format!("malformed tree code `{code}`"));
    if bytes.len() < 2 || !bytes.len().is_multiple_of(2) {
        return Err(bad());
    }
    let mut stack: Vec<usize> = Vec::new();
    let mut edges = Vec::with_capacity(bytes.len() / 2);
    let mut next = 0;
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => {
                if stack.is_empty() && i != 0 {
                    return Err(bad());
                }
                if let Some(&p) = stack.last() {
                    edges.push((p, next));
                }
                stack.push(next);
                next += 1;
            }
            b')' => {
                stack.pop().ok_or_else(bad)?;
            }
            _ => return Err(bad()),
        }
    }
    if !stack.is_empty() {
        return Err(bad());
    }
    TreeGraph::from_edges(next, &edges)
}

/// The canonical relabelling of `tree`: isomorphic inputs give equal outputs.
pub fn canonical_tree(tree: &TreeGraph) -> TreeGraph {
    tree_from_code(&canonical_code(tree)).expect("canonical codes decode")
}
