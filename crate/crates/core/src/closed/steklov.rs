//! Steklov spectra of two-length spiders, extra special graphs and crabs.
//!
//! Eigenfunctions are returned as values on every vertex of the graph built by
//! the matching constructor in [`crate::graph`], using its vertex indexing.

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use super::VertexFunction;
use crate::error::{Error, Result};
use crate::graph::FamilySpec;

/// An eigenvalue kept in exact form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedValue {
    Rational(Ratio<i64>),
    /// A root of `a x^2 + b x + c` (`a > 0`, positive discriminant).
    QuadraticRoot {
        a: i64,
        b: i64,
        c: i64,
        larger: bool,
    },
}

impl ClosedValue {
    pub fn rational(num: i64, den: i64) -> Self {
        ClosedValue::Rational(Ratio::new(num, den))
    }

    pub fn value(&self) -> f64 {
        match *self {
            ClosedValue::Rational(r) => *r.numer() as f64 / *r.denom() as f64,
            ClosedValue::QuadraticRoot { a, b, c, larger } => {
                let (a, b, c) = (a as f64, b as f64, c as f64);
                let root = (b * b - 4.0 * a * c).sqrt();
                // avoid cancellation: compute the larger-magnitude root first
                let q = -0.5 * (b + b.signum() * root);
                let (r1, r2) = (q / a, c / q);
                if larger {
                    r1.max(r2)
                } else {
                    r1.min(r2)
                }
            }
        }
    }
}

impl fmt::Display for ClosedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedValue::Rational(r) => write!(f, "{r}"),
            ClosedValue::QuadraticRoot { a, b, c, larger } => {
                let which = if *larger { "larger" } else { "smaller" };
                let sign = |x: i64| if x < 0 { '-' } else { '+' };
                write!(
                    f,
                    "{which} root of {a}x^2 {} {}x {} {}",
                    sign(*b),
                    b.abs(),
                    sign(*c),
                    c.abs()
                )
            }
        }
    }
}

impl Serialize for ClosedValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ClosedValue", 2)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("value", &self.value())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedEntry {
    pub value: ClosedValue,
    pub multiplicity: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedSpectrum {
    pub entries: Vec<ClosedEntry>,
}

impl ClosedSpectrum {
    fn push(&mut self, value: ClosedValue, multiplicity: usize, label: &str) {
        if multiplicity > 0 {
            self.entries.push(ClosedEntry {
                value,
                multiplicity,
                label: label.to_string(),
            });
        }
    }

    /// Sum of multiplicities.
    pub fn order(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Every eigenvalue repeated by multiplicity, ascending.
    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value.value(), e.multiplicity))
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Largest entrywise gap to `numeric` after sorting; `None` if the
    /// lengths differ.
    pub fn max_deviation(&self, numeric: &[f64]) -> Option<f64> {
        let mine = self.sorted_values();
        (mine.len() == numeric.len()).then(|| {
            mine.iter()
                .zip(numeric)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }
}

fn to_i64(x: usize) -> i64 {
    i64::try_from(x).expect("parameter fits in i64")
}

fn check_spider(p1: usize, p2: usize, l1: usize, l2: usize) -> Result<()> {
    if p1 + p2 < 2 {
        return Err(Error::InvalidFamily("spider needs p1 + p2 >= 2".into()));
    }
    if l1 == 0 || l2 == 0 {
        return Err(Error::InvalidFamily(
            "spider leg lengths must be >= 1".into(),
        ));
    }
    if p1 > 0 && p2 > 0 && l1 < l2 {
        return Err(Error::InvalidFamily("spider needs l1 >= l2".into()));
    }
    Ok(())
}

/// Parts of `Sp_{p1,p2;l1,l2}` with empty parts dropped, as accepted by
/// [`crate::graph::build_spider`].
pub fn spider_parts(p1: usize, p2: usize, l1: usize, l2: usize) -> Vec<(usize, usize)> {
    [(p1, l1), (p2, l2)]
        .into_iter()
        .filter(|&(p, _)| p > 0)
        .collect()
}

pub fn spider_steklov(p1: usize, p2: usize, l1: usize, l2: usize) -> Result<ClosedSpectrum> {
    check_spider(p1, p2, l1, l2)?;
    let (p1i, p2i, l1i, l2i) = (to_i64(p1), to_i64(p2), to_i64(l1), to_i64(l2));
    let mut s = ClosedSpectrum {
        entries: Vec::new(),
    };
    s.push(ClosedValue::rational(0, 1), 1, "constant");
    s.push(
        ClosedValue::rational(1, l1i),
        p1.saturating_sub(1),
        "antisymmetric on long legs",
    );
    if p1 >= 1 && p2 >= 1 {
        s.push(
            ClosedValue::rational(p1i + p2i, l2i * p1i + l1i * p2i),
            1,
            "long against short legs",
        );
    }
    s.push(
        ClosedValue::rational(1, l2i),
        p2.saturating_sub(1),
        "antisymmetric on short legs",
    );
    Ok(s)
}

/// `j / len` along one leg and `-j / len` along another, zero elsewhere.
fn antisymmetric_pair(n: usize, first: usize, second: usize, len: usize) -> Vec<f64> {
    let mut f = vec![0.0; n];
    for j in 1..=len {
        let x = j as f64 / len as f64;
        f[first + j - 1] = x;
        f[second + j - 1] = -x;
    }
    f
}

/// `xi_1, ..., xi_{p1+p2}` on the graph built from [`spider_parts`].
pub fn spider_eigenfunctions(
    p1: usize,
    p2: usize,
    l1: usize,
    l2: usize,
) -> Result<Vec<VertexFunction>> {
    check_spider(p1, p2, l1, l2)?;
    let n = 1 + p1 * l1 + p2 * l2;
    let u_leg = |k: usize| 1 + k * l1;
    let v_leg = |k: usize| 1 + p1 * l1 + k * l2;
    let mut out = vec![VertexFunction {
        eigenvalue: 0.0,
        label: "xi_1".into(),
        values: vec![1.0; n],
    }];
    for m in 2..=p1 {
        out.push(VertexFunction {
            eigenvalue: 1.0 / l1 as f64,
            label: format!("xi_{m}"),
            values: antisymmetric_pair(n, u_leg(m - 2), u_leg(m - 1), l1),
        });
    }
    if p1 >= 1 && p2 >= 1 {
        let (p1f, p2f, l1f, l2f) = (p1 as f64, p2 as f64, l1 as f64, l2 as f64);
        let denom = l2f * p1f + l1f * p2f;
        let sigma = (p1f + p2f) / denom;
        let mut f = vec![0.0; n];
        f[0] = (l2f - l1f) * p1f * p2f / denom;
        for k in 0..p1 {
            for j in 1..=l1 {
                f[u_leg(k) + j - 1] = p2f * (1.0 - (l1 - j) as f64 * sigma);
            }
        }
        for k in 0..p2 {
            for j in 1..=l2 {
                f[v_leg(k) + j - 1] = -p1f * (1.0 - (l2 - j) as f64 * sigma);
            }
        }
        out.push(VertexFunction {
            eigenvalue: sigma,
            label: format!("xi_{}", p1 + 1),
            values: f,
        });
    }
    for m in p1 + 2..=p1 + p2 {
        let k = m - p1 - 2;
        out.push(VertexFunction {
            eigenvalue: 1.0 / l2 as f64,
            label: format!("xi_{m}"),
            values: antisymmetric_pair(n, v_leg(k), v_leg(k + 1), l2),
        });
    }
    Ok(out)
}

fn check_es(b: usize, p: usize) -> Result<()> {
    if b < 3 || p < 1 {
        return Err(Error::InvalidFamily(
            "extra special graph needs b >= 3 and p >= 1".into(),
        ));
    }
    Ok(())
}

/// `(A, K)` with `sigma_pm = (A +- sqrt(b^2 - 2b + 9)) / (2K)`.
fn es_coefficients(b: usize, p: usize) -> (i64, i64) {
    let (b, p) = (to_i64(b), to_i64(p));
    let a = 2 * b * p + 3 * b - 3;
    let k = b * p * p + 3 * b * p - 3 * p + 2 * b - 4;
    (a, k)
}

/// `(sigma^-, sigma^+)` of `ES_{b;p}`.
pub fn es_sigma_pm(b: usize, p: usize) -> Result<(f64, f64)> {
    check_es(b, p)?;
    let (a, k) = es_coefficients(b, p);
    let bf = b as f64;
    let root = (bf * bf - 2.0 * bf + 9.0).sqrt();
    let (a, k) = (a as f64, k as f64);
    Ok(((a - root) / (2.0 * k), (a + root) / (2.0 * k)))
}

/// `sigma^+-` are the roots of `K x^2 - A x + b`, since `A^2 - (b^2 - 2b + 9)
/// = 4bK`.
pub fn es_steklov(b: usize, p: usize) -> Result<ClosedSpectrum> {
    check_es(b, p)?;
    let (a, k) = es_coefficients(b, p);
    let mut s = ClosedSpectrum {
        entries: Vec::new(),
    };
    s.push(ClosedValue::rational(0, 1), 1, "constant");
    for (larger, label) in [(false, "sigma-"), (true, "sigma+")] {
        s.push(
            ClosedValue::QuadraticRoot {
                a: k,
                b: -a,
                c: to_i64(b),
                larger,
            },
            1,
            label,
        );
    }
    s.push(
        ClosedValue::rational(1, to_i64(p)),
        b - 3,
        "antisymmetric on short legs",
    );
    Ok(s)
}

/// `xi_1, ..., xi_b` on `ES_{b;p}`: the constant, the two functions carried by
/// `sigma^-` and `sigma^+`, and `b - 3` antisymmetric pairs on the short legs.
///
/// On the legs of length `p + 2`, `p + 1` and `p` the functions carrying
/// `sigma` are `f1 (1 - (p + 2 - j) sigma)`, `f2 (1 - (p + 1 - j) sigma)` and
/// `1 - (p - j) sigma` at distance `j` from the center, with
/// `f1 = 1 - 2b - bp + K sigma` and `f2 = 1 + b + bp - K sigma`.
pub fn es_eigenfunctions(b: usize, p: usize) -> Result<Vec<VertexFunction>> {
    check_es(b, p)?;
    let n = 1 + (p + 2) + (p + 1) + (b - 2) * p;
    let leg1 = 1;
    let leg2 = 1 + p + 2;
    let short_leg = |k: usize| 1 + (p + 2) + (p + 1) + k * p;
    let (_, k) = es_coefficients(b, p);
    let (bf, pf, kf) = (b as f64, p as f64, k as f64);
    let (minus, plus) = es_sigma_pm(b, p)?;

    let mut out = vec![VertexFunction {
        eigenvalue: 0.0,
        label: "xi_1".into(),
        values: vec![1.0; n],
    }];
    for (idx, sigma) in [(2, minus), (3, plus)] {
        let f1 = 1.0 - 2.0 * bf - bf * pf + kf * sigma;
        let f2 = 1.0 + bf + bf * pf - kf * sigma;
        let mut f = vec![0.0; n];
        f[0] = 1.0 - pf * sigma;
        for j in 1..=p + 2 {
            f[leg1 + j - 1] = f1 * (1.0 - (p + 2 - j) as f64 * sigma);
        }
        for j in 1..=p + 1 {
            f[leg2 + j - 1] = f2 * (1.0 - (p + 1 - j) as f64 * sigma);
        }
        for s in 0..b - 2 {
            for j in 1..=p {
                f[short_leg(s) + j - 1] = 1.0 - (p - j) as f64 * sigma;
            }
        }
        out.push(VertexFunction {
            eigenvalue: sigma,
            label: format!("xi_{idx}"),
            values: f,
        });
    }
    for m in 4..=b {
        out.push(VertexFunction {
            eigenvalue: 1.0 / pf,
            label: format!("xi_{m}"),
            values: antisymmetric_pair(n, short_leg(m - 4), short_leg(m - 3), p),
        });
    }
    Ok(out)
}

pub fn crab_steklov(b1: usize, b2: usize, r: usize) -> Result<ClosedSpectrum> {
    if b1 == 0 || b2 == 0 || r == 0 {
        return Err(Error::InvalidFamily("crab needs b1, b2, r >= 1".into()));
    }
    let (b1i, b2i, ri) = (to_i64(b1), to_i64(b2), to_i64(r));
    let mut s = ClosedSpectrum {
        entries: Vec::new(),
    };
    s.push(ClosedValue::rational(0, 1), 1, "constant");
    s.push(
        ClosedValue::rational(b1i + b2i, b1i * b2i + ri * (b1i + b2i)),
        1,
        "one side against the other",
    );
    s.push(
        ClosedValue::rational(1, ri),
        b1 + b2 - 2,
        "antisymmetric on one side",
    );
    Ok(s)
}

/// The closed-form Steklov spectrum of a named family, where one is known:
/// stars and paths with at least three vertices, spiders with at most two
/// distinct leg lengths, crabs and extra special graphs.
pub fn closed_steklov(spec: &FamilySpec) -> Option<Result<ClosedSpectrum>> {
    match spec {
        FamilySpec::Path(n) if *n >= 3 => Some(spider_steklov(1, 1, n / 2, (n - 1) / 2)),
        FamilySpec::Star(n) if *n >= 3 => Some(spider_steklov(n - 1, 0, 1, 1)),
        FamilySpec::Spider(parts) => {
            let parts: Vec<(usize, usize)> =
                parts.iter().copied().filter(|&(p, _)| p > 0).collect();
            match parts.as_slice() {
                [(p1, l1)] => Some(spider_steklov(*p1, 0, *l1, *l1)),
                [(p1, l1), (p2, l2)] => Some(spider_steklov(*p1, *p2, *l1, *l2)),
                _ => None,
            }
        }
        FamilySpec::Crab { b1, b2, r } => Some(crab_steklov(*b1, *b2, *r)),
        FamilySpec::ExtraSpecial { b, p } => Some(es_steklov(*b, *p)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed::steklov_residual;
    use crate::graph::{build_extra_special, build_spider, leaves};
    use crate::spectra::leaf_steklov_spectrum;

    fn values(s: &ClosedSpectrum) -> Vec<f64> {
        s.sorted_values()
    }

    #[test]
    fn spider_examples() {
        let s = spider_steklov(2, 0, 3, 1).unwrap();
        assert_eq!(values(&s), vec![0.0, 1.0 / 3.0]);
        let s = spider_steklov(1, 2, 2, 1).unwrap();
        assert_eq!(values(&s), vec![0.0, 0.6, 1.0]);
        for m in 3..7 {
            for n in 2 * m + 1..2 * m + 5 {
                let s = spider_steklov(m - 1, n - 2 * m + 1, 2, 1).unwrap();
                assert!((s.sorted_values()[1] - 0.5).abs() < 1e-15);
            }
        }
        assert!(spider_steklov(1, 0, 1, 1).is_err());
        assert!(spider_steklov(1, 1, 1, 2).is_err());
        assert!(spider_steklov(1, 1, 0, 0).is_err());
    }

    #[test]
    fn spider_center_value() {
        let fs = spider_eigenfunctions(1, 2, 2, 1).unwrap();
        let mixed = &fs[1];
        assert!((mixed.values[0] + 0.4).abs() < 1e-15);
        assert!((mixed.eigenvalue - 0.6).abs() < 1e-15);
    }

    #[test]
    fn spider_eigenfunction_residuals() {
        for (p1, p2, l1, l2) in [
            (2, 2, 2, 1),
            (1, 2, 2, 1),
            (3, 0, 2, 2),
            (0, 3, 5, 2),
            (3, 4, 4, 3),
        ] {
            let t = build_spider(&spider_parts(p1, p2, l1, l2)).unwrap();
            let bd = leaves(&t);
            let fs = spider_eigenfunctions(p1, p2, l1, l2).unwrap();
            assert_eq!(fs.len(), p1 + p2);
            for f in &fs {
                let r = steklov_residual(&t, &bd, &f.values, f.eigenvalue);
                assert!(r <= 1e-9, "{p1} {p2} {l1} {l2} {}: {r}", f.label);
            }
        }
    }

    #[test]
    fn es_sigma_examples() {
        let (m, p) = es_sigma_pm(3, 1).unwrap();
        let r12 = 12f64.sqrt();
        assert!((m - (12.0 - r12) / 22.0).abs() < 1e-15);
        assert!((p - (12.0 + r12) / 22.0).abs() < 1e-15);
        assert!(es_sigma_pm(2, 1).is_err());
        assert!(es_sigma_pm(3, 0).is_err());
    }

    #[test]
    fn es_quadratic_agrees_with_formula() {
        for b in 3..11 {
            for p in 1..7 {
                let (m, pl) = es_sigma_pm(b, p).unwrap();
                let s = es_steklov(b, p).unwrap();
                assert_eq!(s.order(), b);
                let v = s.sorted_values();
                assert!(v.iter().any(|x| (x - m).abs() < 1e-13));
                assert!(v.iter().any(|x| (x - pl).abs() < 1e-13));
            }
        }
        assert_eq!(es_steklov(3, 2).unwrap().entries.len(), 3);
    }

    #[test]
    fn es_numeric_match() {
        let t = build_extra_special(4, 1).unwrap();
        let num = leaf_steklov_spectrum(&t).unwrap();
        let dev = es_steklov(4, 1)
            .unwrap()
            .max_deviation(&num.values)
            .unwrap();
        assert!(dev < 1e-9);
    }

    #[test]
    fn es_eigenfunction_residuals() {
        for (b, p) in [(3, 1), (5, 2), (4, 3)] {
            let t = build_extra_special(b, p).unwrap();
            let bd = leaves(&t);
            let fs = es_eigenfunctions(b, p).unwrap();
            assert_eq!(fs.len(), b);
            for f in &fs {
                let r = steklov_residual(&t, &bd, &f.values, f.eigenvalue);
                assert!(r <= 1e-9, "({b},{p}) {}: {r}", f.label);
            }
        }
    }

    #[test]
    fn crab_examples() {
        assert_eq!(values(&crab_steklov(1, 2, 1).unwrap()), vec![0.0, 0.6, 1.0]);
        for b in 2..8 {
            let s = crab_steklov(1, b - 1, 1).unwrap();
            assert_eq!(
                s.entries[1].value,
                ClosedValue::rational(b as i64, 2 * b as i64 - 1)
            );
            for r in 1..4 {
                let s = crab_steklov(1, b - 1, 2 * r).unwrap();
                let want = ClosedValue::rational(b as i64, (2 * r * b + b - 1) as i64);
                assert_eq!(s.entries[1].value, want);
            }
        }
    }

    #[test]
    fn display_and_json() {
        let s = es_steklov(3, 1).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert!(
            json.contains("\"exact\":\"smaller root of 11x^2 - 12x + 3\""),
            "{json}"
        );
        assert_eq!(ClosedValue::rational(2, 4).to_string(), "1/2");
    }

    #[test]
    fn closed_families() {
        for spec in [
            "path:7",
            "path:6",
            "star:5",
            "spider:2x3,3x1",
            "spider:4x2",
            "crab:2,3,2",
            "es:4,2",
        ] {
            let spec: FamilySpec = spec.parse().unwrap();
            let t = spec.build().unwrap();
            let num = leaf_steklov_spectrum(&t).unwrap();
            let cs = closed_steklov(&spec).unwrap().unwrap();
            assert!(cs.max_deviation(&num.values).unwrap() < 1e-9, "{spec}");
        }
        assert!(closed_steklov(&FamilySpec::Path(2)).is_none());
        assert!(closed_steklov(&FamilySpec::Spider(vec![(1, 3), (1, 2), (1, 1)])).is_none());
    }
}
