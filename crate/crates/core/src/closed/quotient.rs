//! Quotient matrices of the distance partitions of crabs and spiders.
//!
//! For `CG_{b1,b2;r}` the parts are ordered like a path,
//! `u_r, ..., u_1, u_0, v_0, v_1, ..., v_r`, where `u_j` collects the `b1`
//! vertices at distance `j` from `u_0` on its legs; `u_j` has index `r - j` and
//! `v_j` has index `r + 1 + j`. For `Sp_{b;r}` the parts are the center
//! and the `r` distance shells.

use nalgebra::DMatrix;

use super::poly::{b_charpolys, path_laplacian_int, CharPoly};
use crate::error::{Error, Result};
use crate::graph::TreeGraph;
use crate::spectra::{eigenvalues_sym, laplacian_matrix, Spectrum, SymmetricMatrix};

/// Integer quotient matrix of an equitable partition together with the part
/// sizes. Row sums are zero; the spectrum is real because
/// `D^{1/2} Q D^{-1/2}` is symmetric for `D = diag(part sizes)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    entries: Vec<Vec<i64>>,
    part_sizes: Vec<usize>,
}

impl QuotientMatrix {
    pub fn new(entries: Vec<Vec<i64>>, part_sizes: Vec<usize>) -> Result<Self> {
        let k = entries.len();
        if let Some(row) = entries.iter().find(|row| row.len() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: row.len(),
            });
        }
        if part_sizes.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: part_sizes.len(),
            });
        }
        Ok(QuotientMatrix {
            entries,
            part_sizes,
        })
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn row_sums_zero(&self) -> bool {
        self.entries.iter().all(|row| row.iter().sum::<i64>() == 0)
    }

    pub fn symmetrized(&self) -> Result<SymmetricMatrix> {
        let k = self.order();
        let d = &self.part_sizes;
        SymmetricMatrix::from_matrix(DMatrix::from_fn(k, k, |i, j| {
            self.entries[i][j] as f64 * (d[i] as f64 / d[j] as f64).sqrt()
        }))
    }

    pub fn eigenvalues(&self) -> Result<Spectrum> {
        eigenvalues_sym(&self.symmetrized()?)
    }

    /// `mu_k`, 1-based ascending.
    pub fn mu(&self, k: usize) -> Result<f64> {
        self.eigenvalues()?
            .nth(k)
            .ok_or_else(|| Error::OutOfRange(format!("mu_{k} of an order-{} matrix", self.order())))
    }

    /// `det(xI - Q)` by exact elimination.
    pub fn charpoly(&self) -> CharPoly {
        CharPoly::of_integer_matrix(&self.entries).expect("square by construction")
    }

    /// Whether `part_of` is an equitable partition of `tree` with this
    /// quotient: `L P = P Q` for the characteristic matrix `P`, and the part
    /// sizes agree.
    pub fn is_quotient_of(&self, tree: &TreeGraph, part_of: &[usize]) -> bool {
        let k = self.order();
        if part_of.len() != tree.order() || part_of.iter().any(|&p| p >= k) {
            return false;
        }
        let mut sizes = vec![0; k];
        for &p in part_of {
            sizes[p] += 1;
        }
        if sizes != self.part_sizes {
            return false;
        }
        let l = laplacian_matrix(tree);
        let n = tree.order();
        // (L P)[v][c] must equal (P Q)[v][c] = Q[part(v)][c]
        (0..n).all(|v| {
            let mut row = vec![0.0; k];
            for w in 0..n {
                row[part_of[w]] += l.get(v, w);
            }
            row.iter()
                .zip(&self.entries[part_of[v]])
                .all(|(&a, &q)| a == q as f64)
        })
    }
}

pub fn quotient_matrix_crab(b1: usize, b2: usize, r: usize) -> Result<QuotientMatrix> {
    if b1 == 0 || b2 == 0 || r == 0 {
        return Err(Error::InvalidFamily("crab needs b1, b2, r >= 1".into()));
    }
    let k = 2 * r + 2;
    let mut e = path_laplacian_int(k);
    let (u0, v0) = (r, r + 1);
    let (b1i, b2i) = (b1 as i64, b2 as i64);
    e[u0][u0] = b1i + 1;
    e[u0][u0 - 1] = -b1i;
    e[v0][v0] = b2i + 1;
    e[v0][v0 + 1] = -b2i;
    let sizes = (0..k)
        .map(|i| match i.cmp(&u0) {
            std::cmp::Ordering::Less => b1,
            _ if i == u0 || i == v0 => 1,
            _ => b2,
        })
        .collect();
    QuotientMatrix::new(e, sizes)
}

/// Part index of every vertex of `build_crab(b1, b2, r)`.
pub fn crab_partition(b1: usize, b2: usize, r: usize) -> Vec<usize> {
    let mut part = vec![r, r + 1];
    for _ in 0..b1 {
        part.extend((1..=r).map(|j| r - j));
    }
    for _ in 0..b2 {
        part.extend((1..=r).map(|j| r + 1 + j));
    }
    part
}

/// `Q_{b;r} = diag(b, 1, ..., 1) L(P_{r+1})`.
pub fn quotient_matrix_spider(b: usize, r: usize) -> Result<QuotientMatrix> {
    if b == 0 || r == 0 {
        return Err(Error::InvalidFamily(
            "spider quotient needs b, r >= 1".into(),
        ));
    }
    let mut e = path_laplacian_int(r + 1);
    for x in e[0].iter_mut() {
        *x *= b as i64;
    }
    let mut sizes = vec![b; r + 1];
    sizes[0] = 1;
    QuotientMatrix::new(e, sizes)
}

/// Part index of every vertex of `build_spider(&[(b, r)])`.
pub fn spider_partition(b: usize, r: usize) -> Vec<usize> {
    let mut part = vec![0];
    for _ in 0..b {
        part.extend(1..=r);
    }
    part
}

/// `Phi(Q_{b1,b2;r})` from the three-term expansion in `Phi(B_r)` and
/// `Phi(B_{r-1})`.
pub fn crab_quotient_expansion(b1: usize, b2: usize, r: usize) -> CharPoly {
    let bs = b_charpolys(r.max(1));
    let (br, br1) = (&bs[r], &bs[r - 1]);
    let (b1, b2) = (b1 as i64, b2 as i64);
    let b = b1 + b2;
    let c2 = CharPoly::from_i64(&[b1 * b2 + b, -(b + 2), 1]);
    let c1 = CharPoly::from_i64(&[-2 * b1 * b2 - b, b]);
    let t2 = &(&c2 * br) * br;
    let t1 = &(&c1 * br) * br1;
    let t0 = (br1 * br1).scale_i64(b1 * b2);
    &(&t2 - &t1) + &t0
}
