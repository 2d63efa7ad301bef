//! Exhaustive checks of the extremal `sigma_2`, `sigma_k` and `lambda_2`
//! bounds over the matching-number classes.
//!
//! Every class is scanned in parallel; per-tree results are merged into an
//! [`ArgmaxSet`], whose merge is associative and commutative, so reports do
//! not depend on scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::closed::{older_bound, theorem_bound, Operator, Theorem, TheoremBound, Uniqueness};
use crate::enumerate::{class_codes, free_tree_codes, TreeClassQuery};
use crate::error::{Error, Result};
use crate::graph::{
    canonical_code, leaves, matching_number, tree_from_code, CanonicalCode, FamilySpec, TreeGraph,
};
use crate::spectra::{laplacian_spectrum, leaf_steklov_spectrum, Spectrum};

pub const DEFAULT_TOL: f64 = 1e-8;

/// The largest value seen together with every code whose value is within
/// `tol` of it.
#[derive(Debug, Clone, PartialEq)]
pub struct ArgmaxSet {
    tol: f64,
    max: f64,
    candidates: BTreeMap<CanonicalCode, f64>,
}

impl ArgmaxSet {
    pub fn empty(tol: f64) -> Self {
        ArgmaxSet {
            tol,
            max: f64::NEG_INFINITY,
            candidates: BTreeMap::new(),
        }
    }

    pub fn single(tol: f64, code: CanonicalCode, value: f64) -> Self {
        let mut s = Self::empty(tol);
        s.max = value;
        s.candidates.insert(code, value);
        s
    }

    pub fn merge(mut self, other: ArgmaxSet) -> ArgmaxSet {
        self.max = self.max.max(other.max);
        self.candidates.extend(other.candidates);
        let floor = self.max - self.tol;
        self.candidates.retain(|_, v| *v >= floor);
        self
    }

    pub fn max(&self) -> Option<f64> {
        (!self.candidates.is_empty()).then_some(self.max)
    }

    pub fn codes(&self) -> Vec<CanonicalCode> {
        self.candidates.keys().cloned().collect()
    }
}

/// Names a tree by family when it has a recognizable shape; extra special
/// graphs are reported as such.
pub fn describe(tree: &TreeGraph) -> String {
    let code = canonical_code(tree);
    if let Some(FamilySpec::Spider(parts)) = FamilySpec::recognize(tree) {
        if let [(1, a), (1, b), (k, p)] = parts.as_slice() {
            if *a == p + 2 && *b == p + 1 && *p >= 1 {
                let es = FamilySpec::ExtraSpecial { b: k + 2, p: *p };
                if es.build().map(|t| canonical_code(&t)) == Ok(code.clone()) {
                    return es.to_string();
                }
            }
        }
        return FamilySpec::Spider(parts).to_string();
    }
    FamilySpec::recognize(tree).map_or_else(|| format!("tree:{code}"), |f| f.to_string())
}

fn describe_code(code: &CanonicalCode) -> String {
    tree_from_code(code).map_or_else(|_| format!("tree:{code}"), |t| describe(&t))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub class: String,
    pub case: String,
    /// Which eigenvalue is bounded, e.g. `sigma_2` or `sigma_k, 3<=k<=b`.
    pub quantity: String,
    pub bound: f64,
    pub bound_exact: String,
    pub class_size: usize,
    pub observed_max: Option<f64>,
    pub argmax: Vec<CanonicalCode>,
    pub argmax_names: Vec<String>,
    pub claimed: Vec<String>,
    pub claimed_values: Vec<f64>,
    /// Whether the argmax set is exactly the claimed graphs.
    pub extremal_matches: bool,
    pub uniqueness_claim: Uniqueness,
    pub tol: f64,
    pub passed: bool,
    pub failures: Vec<String>,
}

fn spectrum_of(tree: &TreeGraph, op: Operator) -> Result<Spectrum> {
    match op {
        Operator::Steklov => leaf_steklov_spectrum(tree),
        Operator::Laplacian => laplacian_spectrum(tree),
    }
}

/// The value bounded by `theorem`: `sigma_2`/`lambda_2`, or the largest of
/// `sigma_3, ..., sigma_b`.
fn quantity(tree: &TreeGraph, theorem: Theorem) -> Result<f64> {
    let s = spectrum_of(tree, theorem.operator())?;
    let value = match theorem {
        Theorem::Older => s
            .values
            .iter()
            .skip(2)
            .copied()
            .fold(f64::NEG_INFINITY, f64::max),
        _ => s.nth(2).unwrap_or(f64::NEG_INFINITY),
    };
    Ok(value)
}

fn scan(codes: &[CanonicalCode], theorem: Theorem, tol: f64) -> Result<ArgmaxSet> {
    codes
        .par_iter()
        .map(|code| {
            let tree = tree_from_code(code)?;
            Ok(ArgmaxSet::single(
                tol,
                code.clone(),
                quantity(&tree, theorem)?,
            ))
        })
        .try_reduce(|| ArgmaxSet::empty(tol), |a, b| Ok(a.merge(b)))
}

fn quantity_name(theorem: Theorem) -> &'static str {
    match theorem {
        Theorem::Slope | Theorem::Fell => "sigma_2",
        Theorem::Older => "max sigma_k, 3<=k<=b",
        Theorem::Ranch | Theorem::Unit => "lambda_2",
    }
}

fn build_report(
    class: String,
    in_class: &dyn Fn(&TreeGraph) -> bool,
    codes: &[CanonicalCode],
    bound: TheoremBound,
    tol: f64,
) -> Result<VerificationReport> {
    let theorem = bound.theorem;
    let found = scan(codes, theorem, tol)?;
    let observed_max = found.max();
    let argmax = found.codes();
    let mut failures = Vec::new();

    match observed_max {
        None => failures.push("class is empty".to_string()),
        Some(max) if max > bound.bound + tol => failures.push(format!(
            "observed max {max:.12} exceeds bound {:.12} at {}",
            bound.bound,
            argmax
                .iter()
                .map(describe_code)
                .collect::<Vec<_>>()
                .join(", ")
        )),
        _ => {}
    }

    let mut claimed_codes = Vec::new();
    let mut claimed_values = Vec::new();
    for spec in &bound.extremal {
        let tree = spec.build()?;
        let value = quantity(&tree, theorem)?;
        if !in_class(&tree) {
            failures.push(format!("claimed extremal {spec} is not in the class"));
        }
        if (value - bound.bound).abs() > tol {
            failures.push(format!(
                "claimed extremal {spec} has value {value:.12}, bound is {:.12}",
                bound.bound
            ));
        }
        claimed_codes.push(canonical_code(&tree));
        claimed_values.push(value);
    }
    claimed_codes.sort();
    claimed_codes.dedup();
    let extremal_matches = !claimed_codes.is_empty() && claimed_codes == argmax;

    match bound.uniqueness {
        Uniqueness::Unique if !extremal_matches => failures.push(format!(
            "claimed unique extremal {} but argmax is {}",
            bound
                .extremal
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", "),
            argmax
                .iter()
                .map(describe_code)
                .collect::<Vec<_>>()
                .join(", ")
        )),
        Uniqueness::AttainedNotUnique => {
            for code in &claimed_codes {
                if !argmax.contains(code) {
                    failures.push(format!(
                        "claimed extremal {} is not a maximizer",
                        describe_code(code)
                    ));
                }
            }
        }
        _ => {}
    }

    Ok(VerificationReport {
        theorem,
        class,
        case: bound.case,
        quantity: quantity_name(theorem).to_string(),
        bound: bound.bound,
        bound_exact: bound.exact,
        class_size: codes.len(),
        observed_max,
        argmax_names: argmax.iter().map(describe_code).collect(),
        argmax,
        claimed: bound.extremal.iter().map(ToString::to_string).collect(),
        claimed_values,
        extremal_matches,
        uniqueness_claim: bound.uniqueness,
        tol,
        passed: failures.is_empty(),
        failures,
    })
}

fn verify_class(q: TreeClassQuery, op: Operator, tol: f64) -> Result<VerificationReport> {
    let bound = theorem_bound(q, op)?;
    let codes = class_codes(q)?;
    build_report(q.to_string(), &|t| q.contains(t), &codes, bound, tol)
}

fn check_n_max(n_max: usize) -> Result<()> {
    if !(2..=crate::enumerate::MAX_ORDER).contains(&n_max) {
        return Err(Error::OutOfRange(format!(
            "n_max must be in 2..=20, got {n_max}"
        )));
    }
    Ok(())
}

fn by_vertices(n_max: usize, op: Operator, tol: f64) -> Result<Vec<VerificationReport>> {
    check_n_max(n_max)?;
    let mut out = Vec::new();
    for n in 2..=n_max {
        for m in 1..=n / 2 {
            out.push(verify_class(
                TreeClassQuery::ByVerticesMatching { n, m },
                op,
                tol,
            )?);
        }
    }
    Ok(out)
}

fn by_leaves(
    b_max: usize,
    m_max: usize,
    op: Operator,
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for b in 2..=b_max {
        for m in 1..=m_max {
            out.push(verify_class(
                TreeClassQuery::ByLeavesMatching { b, m },
                op,
                tol,
            )?);
        }
    }
    Ok(out)
}

/// `sigma_2` over every `T(n, m)` with `2 <= n <= n_max`.
pub fn verify_sigma_nm(n_max: usize, tol: f64) -> Result<Vec<VerificationReport>> {
    by_vertices(n_max, Operator::Steklov, tol)
}

/// `lambda_2` over every `T(n, m)` with `2 <= n <= n_max`.
pub fn verify_lambda_nm(n_max: usize, tol: f64) -> Result<Vec<VerificationReport>> {
    by_vertices(n_max, Operator::Laplacian, tol)
}

/// `sigma_2` over every `T~(b, m)` with `2 <= b <= b_max`, `1 <= m <= m_max`.
pub fn verify_sigma_bm(b_max: usize, m_max: usize, tol: f64) -> Result<Vec<VerificationReport>> {
    by_leaves(b_max, m_max, Operator::Steklov, tol)
}

/// `lambda_2` over every `T~(b, m)` with `2 <= b <= b_max`, `1 <= m <= m_max`.
pub fn verify_lambda_bm(b_max: usize, m_max: usize, tol: f64) -> Result<Vec<VerificationReport>> {
    by_leaves(b_max, m_max, Operator::Laplacian, tol)
}

/// `sigma_k <= 1` for `3 <= k <= b` over every `T~(b, m)` with
/// `3 <= b <= b_max`, `1 <= m <= m_max`, and attainment by
/// `Sp_{1,b-1;2m-1,1}`.
pub fn verify_sigma_k(b_max: usize, m_max: usize, tol: f64) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for b in 3..=b_max {
        for m in 1..=m_max {
            let q = TreeClassQuery::ByLeavesMatching { b, m };
            let codes = class_codes(q)?;
            let bound = older_bound(b, m)?;
            out.push(build_report(
                q.to_string(),
                &|t| q.contains(t),
                &codes,
                bound,
                tol,
            )?);
        }
    }
    Ok(out)
}

/// `sigma_k <= 1` for `3 <= k <= b` over all trees on `n` vertices, one
/// report per `n <= n_max` (trees with fewer than three leaves are skipped).
pub fn verify_sigma_k_all_trees(n_max: usize, tol: f64) -> Result<Vec<VerificationReport>> {
    check_n_max(n_max)?;
    let mut out = Vec::new();
    for n in 4..=n_max {
        let codes: Vec<CanonicalCode> = free_tree_codes(n)?
            .iter()
            .filter(|c| {
                tree_from_code(c)
                    .map(|t| leaves(&t).len() >= 3)
                    .unwrap_or(false)
            })
            .cloned()
            .collect();
        let found = scan(&codes, Theorem::Older, tol)?;
        let observed_max = found.max();
        let argmax = found.codes();
        let mut failures = Vec::new();
        if let Some(max) = observed_max {
            if max > 1.0 + tol {
                failures.push(format!("observed max {max:.12} exceeds 1"));
            }
        }
        out.push(VerificationReport {
            theorem: Theorem::Older,
            class: format!("n={n},b>=3"),
            case: "older:all trees".into(),
            quantity: quantity_name(Theorem::Older).into(),
            bound: 1.0,
            bound_exact: "1".into(),
            class_size: codes.len(),
            observed_max,
            argmax_names: argmax.iter().map(describe_code).collect(),
            argmax,
            claimed: Vec::new(),
            claimed_values: Vec::new(),
            extremal_matches: false,
            uniqueness_claim: Uniqueness::Open,
            tol,
            passed: failures.is_empty(),
            failures,
        });
    }
    Ok(out)
}

/// Dispatch on the theorem. `n_max` is used by the vertex-count theorems,
/// `b_max`/`m_max` by the leaf-count ones.
pub fn verify_theorem(
    theorem: Theorem,
    n_max: usize,
    b_max: usize,
    m_max: usize,
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    match theorem {
        Theorem::Slope => verify_sigma_nm(n_max, tol),
        Theorem::Ranch => verify_lambda_nm(n_max, tol),
        Theorem::Fell => verify_sigma_bm(b_max, m_max, tol),
        Theorem::Unit => verify_lambda_bm(b_max, m_max, tol),
        Theorem::Older => verify_sigma_k(b_max, m_max, tol),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub b: usize,
    pub r: usize,
    pub operator: Operator,
    pub class: String,
    pub class_size: usize,
    pub proven_bound: f64,
    pub class_max: Option<f64>,
    pub argmax: Vec<CanonicalCode>,
    pub argmax_names: Vec<String>,
    pub conjectured_graph: String,
    pub conjectured_code: CanonicalCode,
    pub conjectured_in_class: bool,
    pub conjectured_value: f64,
    pub note: String,
    /// `|class max - conjectured value|`.
    pub gap: Option<f64>,
    /// Whether the argmax set is exactly the conjectured graph and the gap is
    /// within `tol`.
    pub agrees: bool,
    pub tol: f64,
}

/// Scans `T~(b, br + 2)` and compares the class maximum of `sigma_2` or
/// `lambda_2` with the value at `ES_{b;2r}`. Report only.
pub fn explore_conjecture(
    b: usize,
    r: usize,
    operator: Operator,
    tol: f64,
) -> Result<ConjectureReport> {
    if b < 3 || r < 1 {
        return Err(Error::OutOfRange(format!(
            "conjecture exploration needs b >= 3 and r >= 1, got b={b}, r={r}"
        )));
    }
    let q = TreeClassQuery::ByLeavesMatching { b, m: b * r + 2 };
    let bound = theorem_bound(q, operator)?;
    let conj = bound
        .conjectured
        .clone()
        .ok_or_else(|| Error::OutOfRange("case has no conjectured extremal graph".into()))?;
    let es = conj.graph.build()?;
    let es_code = canonical_code(&es);
    let theorem = bound.theorem;
    let codes = class_codes(q)?;
    let found = scan(&codes, theorem, tol)?;
    let class_max = found.max();
    let argmax = found.codes();
    let gap = class_max.map(|m| (m - conj.value).abs());
    let agrees = gap.is_some_and(|g| g <= tol) && argmax == [es_code.clone()];
    Ok(ConjectureReport {
        b,
        r,
        operator,
        class: q.to_string(),
        class_size: codes.len(),
        proven_bound: bound.bound,
        class_max,
        argmax_names: argmax.iter().map(describe_code).collect(),
        argmax,
        conjectured_graph: conj.graph.to_string(),
        conjectured_code: es_code,
        conjectured_in_class: leaves(&es).len() == b && matching_number(&es) == b * r + 2,
        conjectured_value: conj.value,
        note: conj.note,
        gap,
        agrees,
        tol,
    })
}
