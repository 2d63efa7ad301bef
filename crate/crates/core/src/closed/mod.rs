//! Closed-form spectra, explicit eigenfunctions, characteristic polynomials
//! and quotient matrices for paths, spiders, crabs and extra special graphs.

mod bounds;
mod checks;
mod laplacian;
mod poly;
mod quotient;
mod steklov;

pub use bounds::{
    older_bound, theorem_bound, Conjectured, Operator, Theorem, TheoremBound, Uniqueness,
};
pub use checks::{
    charpoly_identity_checks, eigenvalue_product_inequality_check, root_formula_checks,
    IdentityReport, ProductInequalityReport, RootCheckReport,
};
pub use laplacian::{
    b_root, crab_lambda2, crab_lambda2_exact, lifted_path_eigenfunctions, path_eigenvalue,
    path_eigenvector, ranch_cubic, ranch_cubic_root, spider_lambda2,
    spider_lifted_path_eigenfunctions,
};
pub use poly::{
    b_charpolys, b_matrix, charpoly_b, charpoly_h, charpoly_path, h_charpolys, h_matrix,
    path_charpolys, path_laplacian_int, CharPoly,
};
pub use quotient::{
    crab_partition, crab_quotient_expansion, quotient_matrix_crab, quotient_matrix_spider,
    spider_partition, QuotientMatrix,
};
pub use steklov::{
    closed_steklov, crab_steklov, es_eigenfunctions, es_sigma_pm, es_steklov,
    spider_eigenfunctions, spider_parts, spider_steklov, ClosedEntry, ClosedSpectrum, ClosedValue,
};

use serde::Serialize;

use crate::graph::{BoundarySet, TreeGraph};
use crate::spectra::laplacian_matrix;

/// A function on all vertices of a built graph together with the eigenvalue
/// it is claimed to carry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexFunction {
    pub eigenvalue: f64,
    pub label: String,
    pub values: Vec<f64>,
}

fn apply_laplacian(tree: &TreeGraph, f: &[f64]) -> Vec<f64> {
    (0..tree.order())
        .map(|v| tree.neighbors(v).iter().map(|&w| f[v] - f[w]).sum())
        .collect()
}

/// `max(|Lf| on the interior, |Lf - sigma f| on the boundary)`. Zero exactly
/// when `f` is harmonic off the boundary and its boundary restriction is a
/// Steklov eigenvector for `sigma`.
pub fn steklov_residual(tree: &TreeGraph, boundary: &BoundarySet, f: &[f64], sigma: f64) -> f64 {
    let lf = apply_laplacian(tree, f);
    (0..tree.order())
        .map(|v| {
            if boundary.contains(v) {
                (lf[v] - sigma * f[v]).abs()
            } else {
                lf[v].abs()
            }
        })
        .fold(0.0, f64::max)
}

/// `||Lf - lambda f||_inf`.
pub fn laplacian_residual(tree: &TreeGraph, f: &[f64], lambda: f64) -> f64 {
    let l = laplacian_matrix(tree);
    l.apply(f)
        .map(|lf| {
            lf.iter()
                .zip(f)
                .map(|(a, b)| (a - lambda * b).abs())
                .fold(0.0, f64::max)
        })
        .unwrap_or(f64::INFINITY)
}
