//! Laplacian closed forms: path eigenpairs, algebraic connectivity of spiders
//! and crabs, and path eigenvectors lifted onto pairs of legs.

use std::f64::consts::PI;

use super::poly::CharPoly;
use super::quotient::quotient_matrix_crab;
use super::VertexFunction;
use crate::error::{Error, Result};

/// `lambda_i(P_n) = 4 sin^2((i - 1) pi / (2n))`, `i` 1-based.
pub fn path_eigenvalue(n: usize, i: usize) -> f64 {
    let s = ((i as f64 - 1.0) * PI / (2.0 * n as f64)).sin();
    4.0 * s * s
}

/// The `i`-th root of `Phi(B_n)`, `4 sin^2((2i - 1) pi / (4n + 2))`.
pub fn b_root(n: usize, i: usize) -> f64 {
    let s = ((2.0 * i as f64 - 1.0) * PI / (4.0 * n as f64 + 2.0)).sin();
    4.0 * s * s
}

/// Eigenvector of `L(P_n)` for `lambda_i(P_n)`:
/// `xi(w_j) = (-1)^(j-1) (1 + sum_{t=1}^{j-1} 2 (-1)^t cos(t theta))` with
/// `theta = (i - 1) pi / n`. Entry `j - 1` is the value at vertex `w_j`.
pub fn path_eigenvector(n: usize, i: usize) -> Vec<f64> {
    let theta = (i as f64 - 1.0) * PI / n as f64;
    let mut out = Vec::with_capacity(n);
    let mut partial = 1.0;
    for j in 1..=n {
        if j > 1 {
            let t = j - 1;
            let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
            partial += 2.0 * sign * (t as f64 * theta).cos();
        }
        let outer = if j % 2 == 1 { 1.0 } else { -1.0 };
        out.push(outer * partial);
    }
    out
}

/// `x^3 - (b + 4) x^2 + (3b + 4) x - b - 2`, whose smallest root is
/// `lambda_2(CG_{1,b-1;1})`.
pub fn ranch_cubic(b: usize) -> CharPoly {
    let b = b as i64;
    CharPoly::from_i64(&[-b - 2, 3 * b + 4, -(b + 4), 1])
}

pub fn ranch_cubic_root(b: usize) -> f64 {
    ranch_cubic(b).real_roots()[0]
}

/// `lambda_2(Sp_{b;r}) = 4 sin^2(pi / (4r + 2))`.
pub fn spider_lambda2(b: usize, r: usize) -> Result<f64> {
    if b < 2 || r < 1 {
        return Err(Error::InvalidFamily(
            "spider needs b >= 2 and r >= 1".into(),
        ));
    }
    Ok(path_eigenvalue(2 * r + 1, 2))
}

/// `lambda_2(CG_{b1,b2;r}) = mu_2(Q_{b1,b2;r})`, from the symmetrized
/// quotient.
pub fn crab_lambda2(b1: usize, b2: usize, r: usize) -> Result<f64> {
    quotient_matrix_crab(b1, b2, r)?.mu(2)
}

/// `mu_2(Q_{b1,b2;r})` as the smallest root of `Phi(Q) / x`, isolated from
/// the exact polynomial.
pub fn crab_lambda2_exact(b1: usize, b2: usize, r: usize) -> Result<f64> {
    let phi = quotient_matrix_crab(b1, b2, r)?.charpoly();
    let reduced = phi
        .div_exact_monic(&CharPoly::x())
        .ok_or_else(|| Error::OutOfRange("quotient charpoly has no root at 0".into()))?;
    reduced
        .real_roots()
        .first()
        .copied()
        .ok_or_else(|| Error::OutOfRange("quotient charpoly has no nonzero root".into()))
}

/// Values of a path eigenvector of `P_{2r+1}` laid out along two legs of
/// length `r` meeting at a center: leg `a` carries positions `r-1, ..., 0`
/// (distance `1..=r`), leg `b` carries positions `r+1, ..., 2r`.
fn lift(values: &mut [f64], path: &[f64], leg_a: usize, leg_b: usize, r: usize) {
    for d in 1..=r {
        values[leg_a + d - 1] = path[r - d];
        values[leg_b + d - 1] = path[r + d];
    }
}

fn even_path_eigenpairs(r: usize) -> Vec<(usize, f64, Vec<f64>)> {
    (1..=r)
        .map(|i| {
            let n = 2 * r + 1;
            (2 * i, path_eigenvalue(n, 2 * i), path_eigenvector(n, 2 * i))
        })
        .collect()
}

/// For every `lambda_{2i}(P_{2r+1})`, `i = 1..=r`, the `b1 + b2 - 2`
/// eigenfunctions of `L(CG_{b1,b2;r})` supported on two legs at the same
/// center. Each has sum zero on every part of the distance partition.
pub fn lifted_path_eigenfunctions(b1: usize, b2: usize, r: usize) -> Result<Vec<VertexFunction>> {
    if b1 == 0 || b2 == 0 || r == 0 {
        return Err(Error::InvalidFamily("crab needs b1, b2, r >= 1".into()));
    }
    let n = (b1 + b2) * r + 2;
    let u_leg = |k: usize| 2 + k * r;
    let v_leg = |k: usize| 2 + b1 * r + k * r;
    let mut out = Vec::new();
    for (idx, lambda, path) in even_path_eigenpairs(r) {
        for (side, legs, leg) in [
            ("u", b1, &u_leg as &dyn Fn(usize) -> usize),
            ("v", b2, &v_leg),
        ] {
            for m in 1..legs {
                let mut values = vec![0.0; n];
                lift(&mut values, &path, leg(m - 1), leg(m), r);
                out.push(VertexFunction {
                    eigenvalue: lambda,
                    label: format!("lambda_{idx}(P_{}) on {side}-legs {m},{}", 2 * r + 1, m + 1),
                    values,
                });
            }
        }
    }
    Ok(out)
}

/// The analogue of [`lifted_path_eigenfunctions`] on `Sp_{b;r}`: `b - 1`
/// functions per even-index eigenvalue of `P_{2r+1}`.
pub fn spider_lifted_path_eigenfunctions(b: usize, r: usize) -> Result<Vec<VertexFunction>> {
    if b < 2 || r == 0 {
        return Err(Error::InvalidFamily(
            "spider needs b >= 2 and r >= 1".into(),
        ));
    }
    let n = b * r + 1;
    let leg = |k: usize| 1 + k * r;
    let mut out = Vec::new();
    for (idx, lambda, path) in even_path_eigenpairs(r) {
        for m in 1..b {
            let mut values = vec![0.0; n];
            lift(&mut values, &path, leg(m - 1), leg(m), r);
            out.push(VertexFunction {
                eigenvalue: lambda,
                label: format!("lambda_{idx}(P_{}) on legs {m},{}", 2 * r + 1, m + 1),
                values,
            });
        }
    }
    Ok(out)
}
