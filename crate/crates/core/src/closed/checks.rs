//! Report-style checks of the polynomial identities, the closed-form roots
//! and the eigenvalue product inequality.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::laplacian::{b_root, path_eigenvalue};
use super::poly::{
    b_charpolys, b_matrix, h_charpolys, h_matrix, path_charpolys, path_laplacian_int, CharPoly,
};
use super::quotient::{crab_quotient_expansion, quotient_matrix_crab};

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

/// Every recurrence and identity on `Phi(P_n)`, `Phi(B_n)`, `Phi(H_n)` for
/// `n <= max_n`, the recurrences against exact determinants for
/// `n <= max_det_n`, and the quotient expansion and difference identities for
/// `r <= max_r`, `b1 + b2 <= max_b`. All comparisons are coefficientwise.
pub fn charpoly_identity_checks(
    max_n: usize,
    max_det_n: usize,
    max_r: usize,
    max_b: usize,
) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let top = max_n.max(max_det_n).max(max_r) + 2;
    let p = path_charpolys(top);
    let bs = b_charpolys(top);
    let hs = h_charpolys(top);
    let x = CharPoly::x();
    let shift = CharPoly::linear(1, -2);

    for n in 1..=max_det_n {
        let det = |m: Vec<Vec<i64>>| CharPoly::of_integer_matrix(&m).expect("square");
        rep.check(p[n] == det(path_laplacian_int(n)), || {
            format!("Phi(P_{n}) != det")
        });
        rep.check(bs[n] == det(b_matrix(n)), || format!("Phi(B_{n}) != det"));
        rep.check(hs[n] == det(h_matrix(n)), || format!("Phi(H_{n}) != det"));
    }
    for n in 1..=max_n {
        let rec = &(&shift * &p[n]) - &p[n - 1];
        rep.check(p[n + 1] == rec, || format!("path recurrence at n={n}"));
        rep.check(&x * &bs[n] == &p[n + 1] + &p[n], || {
            format!("x Phi(B_{n}) identity")
        });
        rep.check(&x * &hs[n] == p[n + 1], || format!("x Phi(H_{n}) identity"));
        rep.check(&bs[n] + &bs[n - 1] == p[n], || {
            format!("Phi(B_{n}) + Phi(B_{n}-1) identity")
        });
        for m in 2..=max_n {
            let lhs = &(&p[m] * &p[n]) - &(&p[m - 1] * &p[n + 1]);
            let rhs = &(&p[m - 1] * &p[n - 1]) - &(&p[m - 2] * &p[n]);
            rep.check(lhs == rhs, || format!("four-term identity at m={m}, n={n}"));
        }
    }

    for r in 1..=max_r {
        let base = quotient_matrix_crab(1, 1, r).expect("valid").charpoly();
        for b in 2..=max_b {
            for b1 in 1..b {
                let b2 = b - b1;
                let phi = quotient_matrix_crab(b1, b2, r).expect("valid").charpoly();
                rep.check(phi == crab_quotient_expansion(b1, b2, r), || {
                    format!("expansion of Phi(Q_{{{b1},{b2};{r}}})")
                });
                if b2 >= 2 {
                    let moved = quotient_matrix_crab(b1 + 1, b2 - 1, r)
                        .expect("valid")
                        .charpoly();
                    let sum = &bs[r - 1] + &bs[r];
                    let factor = b2 as i64 - b1 as i64 - 1;
                    let rhs = (&sum * &sum).scale_i64(factor);
                    rep.check(&moved - &phi == rhs, || {
                        format!("moving a leg: Q_{{{b1},{b2};{r}}}")
                    });
                }
            }
            let one_side = quotient_matrix_crab(1, b - 1, r).expect("valid").charpoly();
            let inner = &(&CharPoly::linear(-1, 1) * &bs[r]) + &p[r];
            let rhs = (&inner * &p[r]).scale_i64(b as i64 - 2);
            rep.check(&one_side - &base == rhs, || {
                format!("Q_{{1,{};{r}}} against Q_{{1,1;{r}}}", b - 1)
            });
        }
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootCheckReport {
    pub checked: usize,
    /// Largest `|Phi(root)| / ||Phi||`, with `||Phi||` the largest absolute
    /// coefficient.
    pub worst_ratio: f64,
    pub violations: Vec<String>,
}

impl RootCheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates `Phi(P_n)` at `4 sin^2((i-1) pi / (2n))` and `Phi(B_n)` at
/// `4 sin^2((2i-1) pi / (4n+2))` for `1 <= i <= n <= max_n`, requiring
/// `|Phi(root)| <= rel_tol * ||Phi||`.
pub fn root_formula_checks(max_n: usize, rel_tol: f64) -> RootCheckReport {
    let p = path_charpolys(max_n);
    let bs = b_charpolys(max_n);
    let mut rep = RootCheckReport {
        checked: 0,
        worst_ratio: 0.0,
        violations: Vec::new(),
    };
    for n in 1..=max_n {
        for i in 1..=n {
            for (name, poly, root) in [
                ("P", &p[n], path_eigenvalue(n, i)),
                ("B", &bs[n], b_root(n, i)),
            ] {
                let ratio = poly.eval(root).abs() / poly.norm_inf();
                rep.checked += 1;
                rep.worst_ratio = rep.worst_ratio.max(ratio);
                if ratio > rel_tol {
                    rep.violations
                        .push(format!("Phi({name}_{n}) at root {i}: ratio {ratio:e}"));
                }
            }
        }
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductInequalityReport {
    pub trials: usize,
    pub seed: u64,
    /// Smallest `mu_k(PS) - mu_1(P) mu_k(S)` seen.
    pub worst_margin: f64,
    pub violations: Vec<String>,
}

impl ProductInequalityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn random_factor(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

/// `mu_k(PS) >= mu_1(P) mu_k(S) - 1e-9` for random positive-definite `P` and
/// positive-semidefinite `S` of orders `1..=8`. The eigenvalues of `PS` come
/// from the general (nonsymmetric) eigensolver.
pub fn eigenvalue_product_inequality_check(trials: usize, seed: u64) -> ProductInequalityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = ProductInequalityReport {
        trials,
        seed,
        worst_margin: f64::INFINITY,
        violations: Vec::new(),
    };
    for t in 0..trials {
        let k = rng.gen_range(1..=8);
        let a = random_factor(&mut rng, k, k);
        let delta = rng.gen_range(0.01..1.0);
        let p = &a * a.transpose() + DMatrix::identity(k, k) * delta;
        let rank = rng.gen_range(0..=k);
        let b = random_factor(&mut rng, k, rank);
        let s = &b * b.transpose();

        let mu_p = sorted(p.clone().symmetric_eigenvalues().iter().copied().collect());
        let mu_s = sorted(s.clone().symmetric_eigenvalues().iter().copied().collect());
        let ps = &p * &s;
        let mu_ps = sorted(ps.complex_eigenvalues().iter().map(|z| z.re).collect());
        for i in 0..k {
            let margin = mu_ps[i] - mu_p[0] * mu_s[i];
            rep.worst_margin = rep.worst_margin.min(margin);
            if margin < -1e-9 {
                rep.violations.push(format!(
                    "trial {t}: order {k}, k={}: margin {margin:e}",
                    i + 1
                ));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_small_grid() {
        let rep = charpoly_identity_checks(8, 8, 3, 5);
        assert!(rep.passed(), "{:?}", rep.violations);
        assert!(rep.checked > 100);
    }

    #[test]
    fn roots_small() {
        let rep = root_formula_checks(10, 1e-6);
        assert!(rep.passed(), "{:?}", rep.violations);
    }

    #[test]
    fn product_inequality_small() {
        let rep = eigenvalue_product_inequality_check(300, 7);
        assert!(rep.passed(), "{:?}", rep.violations);
        assert_eq!(rep, eigenvalue_product_inequality_check(300, 7));
    }

    #[test]
    fn identity_and_scalar_p() {
        // P = c I gives equality
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = random_factor(&mut rng, 5, 3);
        let s = &b * b.transpose();
        let c = 2.5;
        let ps = DMatrix::identity(5, 5) * c * &s;
        let mu_ps = sorted(ps.complex_eigenvalues().iter().map(|z| z.re).collect());
        let mu_s = sorted(s.symmetric_eigenvalues().iter().copied().collect());
        for (x, y) in mu_ps.iter().zip(&mu_s) {
            assert!((x - c * y).abs() < 1e-12);
        }
    }
}
