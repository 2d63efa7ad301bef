//! Exact integer polynomials in `x` and the characteristic polynomials of the
//! path Laplacian and its one- and two-end truncations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer polynomial, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = CharPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        CharPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_i64(&[c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `a x + c`
    pub fn linear(a: i64, c: i64) -> Self {
        Self::from_i64(&[c, a])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Horner evaluation in `f64`.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_exact(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Largest absolute coefficient.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// Exact quotient by a monic divisor; `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &CharPoly) -> Option<CharPoly> {
        if !divisor.is_monic() {
            return None;
        }
        let dd = divisor.coeffs.len() - 1;
        if self.is_zero() {
            return Some(CharPoly::zero());
        }
        if self.coeffs.len() - 1 < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd].clone();
            if q.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        rem.iter()
            .all(Zero::is_zero)
            .then(|| CharPoly::from_coeffs(quot))
    }

    /// `det(xI - M)` for an integer matrix, by fraction-free (Bareiss)
    /// elimination over `Z[x]`. The pivots are leading principal minors of
    /// `xI - M`, monic of full degree, so no pivoting is needed and every
    /// division is exact.
    pub fn of_integer_matrix(m: &[Vec<i64>]) -> Result<CharPoly> {
        let n = m.len();
        if let Some(row) = m.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
        if n == 0 {
            return Ok(CharPoly::one());
        }
        let mut a: Vec<Vec<CharPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let delta = i64::from(i == j);
                        CharPoly::linear(delta, -m[i][j])
                    })
                    .collect()
            })
            .collect();
        let mut prev = CharPoly::one();
        for k in 0..n - 1 {
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .div_exact_monic(&prev)
                        .expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        Ok(a[n - 1][n - 1].clone())
    }

    /// Real roots of a polynomial whose roots are all real, ascending.
    ///
    /// Critical points (the roots of the derivative, found recursively)
    /// separate the roots; each bracket with a sign change is bisected. A root
    /// sitting on a critical point is reported once.
    pub fn real_roots(&self) -> Vec<f64> {
        let deg = match self.degree() {
            None | Some(0) => return Vec::new(),
            Some(d) => d,
        };
        let lead = self.coeffs[deg].to_f64().unwrap_or(f64::NAN);
        if deg == 1 {
            return vec![-self.coeffs[0].to_f64().unwrap_or(f64::NAN) / lead];
        }
        let cauchy = 1.0
            + self.coeffs[..deg]
                .iter()
                .map(|c| (c.to_f64().unwrap_or(f64::INFINITY) / lead).abs())
                .fold(0.0, f64::max);
        let critical = self.derivative().real_roots();
        let mut points = Vec::with_capacity(critical.len() + 2);
        points.push(-cauchy);
        points.extend(critical.iter().copied());
        points.push(cauchy);

        let scale = |x: f64| -> f64 {
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    c.abs().to_f64().unwrap_or(f64::INFINITY) * x.abs().max(1.0).powi(k as i32)
                })
                .sum()
        };
        let mut roots = Vec::new();
        for &c in &critical {
            if self.eval(c).abs() <= 1e-12 * scale(c) && !roots.contains(&c) {
                roots.push(c);
            }
        }
        for w in points.windows(2) {
            let (mut lo, mut hi) = (w[0], w[1]);
            let (flo, fhi) = (self.eval(lo), self.eval(hi));
            if lo >= hi || flo == 0.0 || fhi == 0.0 || flo.signum() == fhi.signum() {
                continue;
            }
            if roots.iter().any(|&r| r == lo || r == hi) {
                continue;
            }
            let neg_at_lo = flo < 0.0;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = self.eval(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm < 0.0) == neg_at_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        roots.sort_by(f64::total_cmp);
        roots
    }

    /// JSON integer array, ascending coefficients.
    pub fn to_json(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        format!("[{}]", body.join(","))
    }

    pub fn from_json(text: &str) -> Result<CharPoly> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("`{text}` is not a JSON array")))?;
        if inner.trim().is_empty() {
            return Ok(CharPoly::zero());
        }
        let coeffs = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("coefficient `{}`: {e}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharPoly::from_coeffs(coeffs))
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &CharPoly {
    type Output = CharPoly;

    fn add(self, rhs: &CharPoly) -> CharPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        CharPoly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &CharPoly {
    type Output = CharPoly;

    fn sub(self, rhs: &CharPoly) -> CharPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        CharPoly::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &CharPoly {
    type Output = CharPoly;

    fn mul(self, rhs: &CharPoly) -> CharPoly {
        if self.is_zero() || rhs.is_zero() {
            return CharPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CharPoly::from_coeffs(out)
    }
}

impl Neg for &CharPoly {
    type Output = CharPoly;

    fn neg(self) -> CharPoly {
        CharPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for CharPoly {
            type Output = CharPoly;

            fn $method(self, rhs: CharPoly) -> CharPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `Phi(P_0), ..., Phi(P_n)` from `Phi(P_0) = 0`, `Phi(P_1) = x` and
/// `Phi(P_{k+1}) = (x - 2) Phi(P_k) - Phi(P_{k-1})`.
pub fn path_charpolys(n: usize) -> Vec<CharPoly> {
    three_term(CharPoly::zero(), CharPoly::x(), n)
}

/// `Phi(B_0), ..., Phi(B_n)`, where `B_k` is `L(P_{k+1})` with one end
/// deleted: tridiagonal, diagonal `(2, ..., 2, 1)`.
pub fn b_charpolys(n: usize) -> Vec<CharPoly> {
    three_term(CharPoly::one(), CharPoly::linear(1, -1), n)
}

/// `Phi(H_0), ..., Phi(H_n)`, where `H_k` is `L(P_{k+2})` with both ends
/// deleted: tridiagonal, constant diagonal 2.
pub fn h_charpolys(n: usize) -> Vec<CharPoly> {
    three_term(CharPoly::one(), CharPoly::linear(1, -2), n)
}

fn three_term(first: CharPoly, second: CharPoly, n: usize) -> Vec<CharPoly> {
    let shift = CharPoly::linear(1, -2);
    let mut out = vec![first, second];
    while out.len() <= n {
        let k = out.len();
        let next = &(&shift * &out[k - 1]) - &out[k - 2];
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

pub fn charpoly_path(n: usize) -> CharPoly {
    path_charpolys(n).pop().expect("nonempty")
}

pub fn charpoly_b(n: usize) -> CharPoly {
    b_charpolys(n).pop().expect("nonempty")
}

pub fn charpoly_h(n: usize) -> CharPoly {
    h_charpolys(n).pop().expect("nonempty")
}

/// Integer Laplacian of `P_n`.
pub fn path_laplacian_int(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for i in 1..n {
        m[i - 1][i - 1] += 1;
        m[i][i] += 1;
        m[i - 1][i] = -1;
        m[i][i - 1] = -1;
    }
    m
}

/// `B_n`: delete the first row and column of `L(P_{n+1})`.
pub fn b_matrix(n: usize) -> Vec<Vec<i64>> {
    let full = path_laplacian_int(n + 1);
    full[1..].iter().map(|row| row[1..].to_vec()).collect()
}

/// `H_n`: delete both end rows and columns of `L(P_{n+2})`.
pub fn h_matrix(n: usize) -> Vec<Vec<i64>> {
    let full = path_laplacian_int(n + 2);
    full[1..=n].iter().map(|row| row[1..=n].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_path_polynomials() {
        assert_eq!(charpoly_path(0), CharPoly::zero());
        assert_eq!(charpoly_path(1), CharPoly::x());
        assert_eq!(charpoly_path(2), CharPoly::from_i64(&[0, -2, 1]));
        assert_eq!(charpoly_path(3), CharPoly::from_i64(&[0, 3, -4, 1]));
        assert_eq!(charpoly_b(0), CharPoly::one());
        assert_eq!(charpoly_b(2), CharPoly::from_i64(&[1, -3, 1]));
        assert_eq!(charpoly_h(1), CharPoly::linear(1, -2));
    }

    #[test]
    fn bareiss_matches_hand_determinants() {
        assert_eq!(
            CharPoly::of_integer_matrix(&[vec![1, -1], vec![-1, 1]]).unwrap(),
            CharPoly::from_i64(&[0, -2, 1])
        );
        assert_eq!(CharPoly::of_integer_matrix(&[]).unwrap(), CharPoly::one());
        // non-symmetric, diagonal zero in M
        let m = vec![vec![0, 1, 0], vec![2, 0, 3], vec![0, 4, 0]];
        // det(xI - M) = x^3 - 14x
        assert_eq!(
            CharPoly::of_integer_matrix(&m).unwrap(),
            CharPoly::from_i64(&[0, -14, 0, 1])
        );
        assert!(CharPoly::of_integer_matrix(&[vec![1, 2]]).is_err());
    }

    #[test]
    fn truncated_matrices() {
        assert_eq!(b_matrix(2), vec![vec![2, -1], vec![-1, 1]]);
        assert_eq!(h_matrix(2), vec![vec![2, -1], vec![-1, 2]]);
        assert!(h_matrix(0).is_empty());
    }

    #[test]
    fn exact_division() {
        let a = CharPoly::from_i64(&[-1, 0, 1]);
        let d = CharPoly::linear(1, -1);
        assert_eq!(a.div_exact_monic(&d), Some(CharPoly::linear(1, 1)));
        assert_eq!(CharPoly::from_i64(&[1, 0, 1]).div_exact_monic(&d), None);
        assert_eq!(a.div_exact_monic(&CharPoly::linear(2, 1)), None);
    }

    #[test]
    fn real_roots_of_products() {
        let p = &(&CharPoly::linear(1, -1) * &CharPoly::linear(1, -3)) * &CharPoly::linear(1, 2);
        let roots = p.real_roots();
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([-2.0, 1.0, 3.0]) {
            assert!((r - want).abs() < 1e-12);
        }
        let sq = &CharPoly::linear(1, -2) * &CharPoly::linear(1, -2);
        let r = sq.real_roots();
        assert_eq!(r.len(), 1);
        assert!((r[0] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn display_and_json() {
        let p = CharPoly::from_i64(&[-2, 0, -1, 1]);
        assert_eq!(p.to_string(), "x^3 - x^2 - 2");
        assert_eq!(p.to_json(), "[-2,0,-1,1]");
        assert_eq!(CharPoly::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(CharPoly::from_json("[]").unwrap(), CharPoly::zero());
        assert!(CharPoly::from_json("[1,a]").is_err());
        assert!(CharPoly::from_json("1,2").is_err());
    }
}
