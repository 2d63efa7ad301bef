//! Laplacian and Steklov (Dirichlet-to-Neumann) operators of a tree as dense
//! symmetric matrices, with residual-checked spectra.
//!
//! The normal derivative at a boundary vertex `x` is
//! `sum_{y ~ x} (g(x) - g(y))` over every edge at `x`, including edges to
//! other boundary vertices, where `g` is the harmonic extension. The DtN
//! matrix is the Schur complement `L_BB - L_BI L_II^{-1} L_IB`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{leaves, BoundarySet, TreeGraph};

/// Absolute tolerance for eigenvalue comparisons on matrices of norm
/// O(max degree).
pub const EIGEN_TOL: f64 = 1e-9;

/// Gap below which neighbouring eigenvalues are reported as one multiplicity
/// group. Values themselves are never rounded.
pub const GROUPING_TOL: f64 = 1e-7;

const MAX_SWEEPS_PER_ORDER: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix(DMatrix<f64>);

impl SymmetricMatrix {
    /// Wraps `m`, averaging it with its transpose so it is exactly symmetric.
    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                got: m.ncols(),
            });
        }
        let sym = (&m + m.transpose()) * 0.5;
        Ok(SymmetricMatrix(sym))
    }

    pub fn zeros(order: usize) -> Self {
        SymmetricMatrix(DMatrix::zeros(order, order))
    }

    pub fn order(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.0
            .row_iter()
            .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.order() {
            return Err(Error::DimensionMismatch {
                expected: self.order(),
                got: v.len(),
            });
        }
        let out = &self.0 * DVector::from_column_slice(v);
        Ok(out.iter().copied().collect())
    }

    /// Plain-text dense export: the order on the first line, then one row per
    /// line with space-separated entries.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order());
        for row in self.0.row_iter() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.17e}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Ascending eigenvalues of an operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    #[serde(rename = "tol")]
    pub grouping_tol: f64,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum {
            values,
            grouping_tol: GROUPING_TOL,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `k`-th smallest eigenvalue, 1-based as in `sigma_k` / `lambda_k`.
    pub fn nth(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    /// Groups of consecutive values whose gaps are at most `grouping_tol`,
    /// reported as `(mean value, multiplicity)`.
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        let mut groups: Vec<(f64, usize)> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for &v in &self.values {
            match groups.last_mut() {
                Some((sum, count)) if v - last <= self.grouping_tol => {
                    *sum += v;
                    *count += 1;
                }
                _ => groups.push((v, 1)),
            }
            last = v;
        }
        groups
            .into_iter()
            .map(|(sum, count)| (sum / count as f64, count))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectrum serializes")
    }
}

/// Real values indexed like a [`BoundarySet`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFunction(pub Vec<f64>);

impl BoundaryFunction {
    pub fn constant(boundary: &BoundarySet, c: f64) -> Self {
        BoundaryFunction(vec![c; boundary.len()])
    }

    /// Restriction of a vertex function to the boundary.
    pub fn restrict(values: &[f64], boundary: &BoundarySet) -> Self {
        BoundaryFunction(boundary.members().iter().map(|&v| values[v]).collect())
    }
}

pub fn laplacian_matrix(tree: &TreeGraph) -> SymmetricMatrix {
    let n = tree.order();
    let mut m = DMatrix::zeros(n, n);
    for &(u, v) in tree.edges() {
        m[(u, u)] += 1.0;
        m[(v, v)] += 1.0;
        m[(u, v)] -= 1.0;
        m[(v, u)] -= 1.0;
    }
    SymmetricMatrix(m)
}

fn block(m: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

fn check_boundary(tree: &TreeGraph, boundary: &BoundarySet) -> Result<()> {
    if boundary.is_empty() {
        return Err(Error::EmptyBoundary);
    }
    match boundary.members().last() {
        Some(&v) if v >= tree.order() => Err(Error::BoundaryOutOfRange(v)),
        _ => Ok(()),
    }
}

/// Solves `L_II X = rhs` for the interior block.
fn solve_interior(l_ii: DMatrix<f64>, rhs: DMatrix<f64>) -> Result<DMatrix<f64>> {
    let chol = l_ii.cholesky().ok_or(Error::SingularInterior)?;
    Ok(chol.solve(&rhs))
}

/// The harmonic extension of `f` from `boundary` to all of `tree`.
pub fn harmonic_extension(
    tree: &TreeGraph,
    boundary: &BoundarySet,
    f: &BoundaryFunction,
) -> Result<Vec<f64>> {
    check_boundary(tree, boundary)?;
    if f.0.len() != boundary.len() {
        return Err(Error::DimensionMismatch {
            expected: boundary.len(),
            got: f.0.len(),
        });
    }
    let n = tree.order();
    let mut g = vec![0.0; n];
    for (&v, &x) in boundary.members().iter().zip(&f.0) {
        g[v] = x;
    }
    let interior = boundary.interior(n);
    if interior.is_empty() {
        return Ok(g);
    }
    let l = laplacian_matrix(tree).0;
    let l_ii = block(&l, &interior, &interior);
    let l_ib = block(&l, &interior, boundary.members());
    let rhs = -(l_ib * DVector::from_column_slice(&f.0));
    let x = solve_interior(
        l_ii,
        DMatrix::from_column_slice(rhs.len(), 1, rhs.as_slice()),
    )?;
    for (k, &v) in interior.iter().enumerate() {
        g[v] = x[(k, 0)];
    }
    Ok(g)
}

/// Discrete normal derivative of a vertex function at each boundary vertex.
pub fn normal_derivative(tree: &TreeGraph, boundary: &BoundarySet, g: &[f64]) -> Vec<f64> {
    boundary
        .members()
        .iter()
        .map(|&x| tree.neighbors(x).iter().map(|&y| g[x] - g[y]).sum())
        .collect()
}

pub fn dtn_matrix(tree: &TreeGraph, boundary: &BoundarySet) -> Result<SymmetricMatrix> {
    check_boundary(tree, boundary)?;
    let l = laplacian_matrix(tree).0;
    let b = boundary.members();
    let interior = boundary.interior(tree.order());
    let l_bb = block(&l, b, b);
    if interior.is_empty() {
        return SymmetricMatrix::from_matrix(l_bb);
    }
    let l_ii = block(&l, &interior, &interior);
    let l_ib = block(&l, &interior, b);
    let x = solve_interior(l_ii, l_ib.clone())?;
    SymmetricMatrix::from_matrix(l_bb - l_ib.transpose() * x)
}

/// Eigenvalues with an orthonormal set of eigenvectors (as columns).
#[derive(Debug, Clone)]
pub struct EigenPairs {
    pub spectrum: Spectrum,
    pub vectors: DMatrix<f64>,
}

impl EigenPairs {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k).iter().copied().collect()
    }
}

/// Full ascending eigendecomposition. Every pair is checked against
/// `||Mv - mu v||_inf <= 1e-9 max(1, ||M||_inf)`.
pub fn eigenpairs(m: &SymmetricMatrix) -> Result<EigenPairs> {
    let order = m.order();
    if order == 0 {
        return Ok(EigenPairs {
            spectrum: Spectrum::new(Vec::new()),
            vectors: DMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::try_new(
        m.0.clone(),
        f64::EPSILON,
        MAX_SWEEPS_PER_ORDER * order.max(1),
    )
    .ok_or(Error::NoConvergence(order))?;
    let mut idx: Vec<usize> = (0..order).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(order, order, |r, c| eig.eigenvectors[(r, idx[c])]);

    let limit = EIGEN_TOL * m.norm_inf().max(1.0);
    for (k, &mu) in values.iter().enumerate() {
        let v: Vec<f64> = vectors.column(k).iter().copied().collect();
        let residual = eigen_residual(m, mu, &v)?;
        if residual > limit {
            return Err(Error::ResidualTooLarge { residual, limit });
        }
    }
    Ok(EigenPairs {
        spectrum: Spectrum::new(values),
        vectors,
    })
}

pub fn eigenvalues_sym(m: &SymmetricMatrix) -> Result<Spectrum> {
    eigenpairs(m).map(|p| p.spectrum)
}

/// `||Mv - mu v||_inf`.
pub fn eigen_residual(m: &SymmetricMatrix, mu: f64, v: &[f64]) -> Result<f64> {
    let mv = m.apply(v)?;
    Ok(mv
        .iter()
        .zip(v)
        .map(|(a, b)| (a - mu * b).abs())
        .fold(0.0, f64::max))
}

pub fn steklov_spectrum(tree: &TreeGraph, boundary: &BoundarySet) -> Result<Spectrum> {
    eigenvalues_sym(&dtn_matrix(tree, boundary)?)
}

/// Steklov spectrum with the leaves as boundary.
pub fn leaf_steklov_spectrum(tree: &TreeGraph) -> Result<Spectrum> {
    steklov_spectrum(tree, &leaves(tree))
}

pub fn laplacian_spectrum(tree: &TreeGraph) -> Result<Spectrum> {
    eigenvalues_sym(&laplacian_matrix(tree))
}
