//! Upper bounds on `sigma_2` and `lambda_2` over the matching-number classes,
//! with the graphs that attain them.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::laplacian::{crab_lambda2_exact, ranch_cubic, ranch_cubic_root};
use super::steklov::es_sigma_pm;
use crate::enumerate::TreeClassQuery;
use crate::error::{Error, Result};
use crate::graph::FamilySpec;
use crate::spectra::laplacian_spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// `sigma_2` over trees with `n` vertices and matching number `m`.
    Slope,
    /// `sigma_2` over trees with `b` leaves and matching number `m`.
    Fell,
    /// `sigma_k`, `3 <= k <= b`, over trees with `b` leaves.
    Older,
    /// `lambda_2` over trees with `n` vertices and matching number `m`.
    Ranch,
    /// `lambda_2` over trees with `b` leaves and matching number `m`.
    Unit,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [
        Theorem::Slope,
        Theorem::Fell,
        Theorem::Older,
        Theorem::Ranch,
        Theorem::Unit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Slope => "slope",
            Theorem::Fell => "fell",
            Theorem::Older => "older",
            Theorem::Ranch => "ranch",
            Theorem::Unit => "unit",
        }
    }

    pub fn operator(self) -> Operator {
        match self {
            Theorem::Slope | Theorem::Fell | Theorem::Older => Operator::Steklov,
            Theorem::Ranch | Theorem::Unit => Operator::Laplacian,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown theorem `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Steklov,
    Laplacian,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::Steklov => "steklov",
            Operator::Laplacian => "laplacian",
        })
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "steklov" => Ok(Operator::Steklov),
            "laplacian" => Ok(Operator::Laplacian),
            _ => Err(Error::Parse(format!("unknown operator `{s}`"))),
        }
    }
}

/// What a theorem claims about the graphs attaining its bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Uniqueness {
    /// The listed graph is the only one attaining the bound.
    Unique,
    /// The listed graphs attain the bound; others may too.
    AttainedNotUnique,
    /// Only the inequality is proved; no attaining graph is claimed.
    Open,
}

/// A conjectured sharper value for a case where only an inequality is proved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conjectured {
    pub value: f64,
    pub graph: FamilySpec,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremBound {
    pub theorem: Theorem,
    pub case: String,
    pub bound: f64,
    /// Human-readable exact form of `bound`.
    pub exact: String,
    pub extremal: Vec<FamilySpec>,
    pub uniqueness: Uniqueness,
    pub conjectured: Option<Conjectured>,
}

fn rational(num: usize, den: usize) -> (f64, String) {
    let r = Ratio::new(num as i64, den as i64);
    (*r.numer() as f64 / *r.denom() as f64, r.to_string())
}

fn sin_bound(den: usize) -> (f64, String) {
    // 4 sin^2(pi / den) = lambda_2 of the path on den / 2 vertices
    let s = (std::f64::consts::PI / den as f64).sin();
    (4.0 * s * s, format!("4 sin^2(pi/{den})"))
}

fn cubic_bound(b: usize) -> (f64, String) {
    (
        ranch_cubic_root(b),
        format!("smallest root of {}", ranch_cubic(b)),
    )
}

fn two_length_spider(p1: usize, p2: usize, l1: usize, l2: usize) -> FamilySpec {
    FamilySpec::Spider(
        [(p1, l1), (p2, l2)]
            .into_iter()
            .filter(|&(p, _)| p > 0)
            .collect(),
    )
}

struct Case {
    label: String,
    value: (f64, String),
    extremal: Vec<FamilySpec>,
    uniqueness: Uniqueness,
    conjectured: Option<Conjectured>,
}

impl Case {
    fn unique(label: String, value: (f64, String), graph: FamilySpec) -> Self {
        Case {
            label,
            value,
            extremal: vec![graph],
            uniqueness: Uniqueness::Unique,
            conjectured: None,
        }
    }
}

/// The bound on `sigma_2` (Steklov) or `lambda_2` (Laplacian) over `class`,
/// following the piecewise case tables.
///
/// The `(b, br + 2)` cases only prove an inequality; the extra special graph
/// `ES_{b;2r}` and its value are reported under `conjectured`, never as the
/// bound.
pub fn theorem_bound(class: TreeClassQuery, operator: Operator) -> Result<TheoremBound> {
    class.validate()?;
    let (theorem, case) = match (class, operator) {
        (TreeClassQuery::ByVerticesMatching { n, m }, Operator::Steklov) => {
            (Theorem::Slope, by_vertices(n, m, Operator::Steklov)?)
        }
        (TreeClassQuery::ByVerticesMatching { n, m }, Operator::Laplacian) => {
            (Theorem::Ranch, by_vertices(n, m, Operator::Laplacian)?)
        }
        (TreeClassQuery::ByLeavesMatching { b, m }, Operator::Steklov) => {
            (Theorem::Fell, by_leaves(b, m, Operator::Steklov)?)
        }
        (TreeClassQuery::ByLeavesMatching { b, m }, Operator::Laplacian) => {
            (Theorem::Unit, by_leaves(b, m, Operator::Laplacian)?)
        }
    };
    Ok(TheoremBound {
        theorem,
        case: format!("{theorem}:{}", case.label),
        bound: case.value.0,
        exact: case.value.1,
        extremal: case.extremal,
        uniqueness: case.uniqueness,
        conjectured: case.conjectured,
    })
}

/// `sigma_k <= 1` for `3 <= k <= b` over trees with `b` leaves and matching
/// number `m`, attained by `Sp_{1,b-1;2m-1,1}`.
pub fn older_bound(b: usize, m: usize) -> Result<TheoremBound> {
    if b < 3 || m < 1 {
        return Err(Error::OutOfRange(format!(
            "sigma_k bound needs b >= 3 and m >= 1, got b={b}, m={m}"
        )));
    }
    Ok(TheoremBound {
        theorem: Theorem::Older,
        case: "older:3<=k<=b".into(),
        bound: 1.0,
        exact: "1".into(),
        extremal: vec![two_length_spider(1, b - 1, 2 * m - 1, 1)],
        uniqueness: Uniqueness::AttainedNotUnique,
        conjectured: None,
    })
}

fn by_vertices(n: usize, m: usize, op: Operator) -> Result<Case> {
    let steklov = op == Operator::Steklov;
    Ok(match m {
        1 => Case::unique("m=1".into(), (1.0, "1".into()), FamilySpec::Star(n)),
        2 => {
            let value = if steklov {
                rational(n - 2, 2 * n - 5)
            } else {
                // the crab CG_{1,n-3;1} has b = n - 2 leaves
                cubic_bound(n - 2)
            };
            Case::unique(
                "m=2".into(),
                value,
                FamilySpec::Crab {
                    b1: 1,
                    b2: n - 3,
                    r: 1,
                },
            )
        }
        _ => {
            let value = if steklov {
                (0.5, "1/2".into())
            } else {
                sin_bound(10)
            };
            Case::unique(
                "m>=3".into(),
                value,
                two_length_spider(m - 1, n - 2 * m + 1, 2, 1),
            )
        }
    })
}

fn by_leaves(b: usize, m: usize, op: Operator) -> Result<Case> {
    let steklov = op == Operator::Steklov;
    if m == 1 {
        return Ok(Case::unique(
            "m=1".into(),
            (1.0, "1".into()),
            FamilySpec::Star(b + 1),
        ));
    }
    if m == 2 {
        let value = if steklov {
            rational(b, 2 * b - 1)
        } else {
            cubic_bound(b)
        };
        return Ok(Case::unique(
            "m=2".into(),
            value,
            FamilySpec::Crab {
                b1: 1,
                b2: b - 1,
                r: 1,
            },
        ));
    }
    if b == 2 {
        let value = if steklov {
            rational(2, 2 * m - 1)
        } else {
            sin_bound(4 * m)
        };
        return Ok(Case::unique("b=2".into(), value, FamilySpec::Path(2 * m)));
    }
    let r = (m - 1) / b;
    let s = m - b * r;
    Ok(match s {
        1 => {
            let value = if steklov {
                rational(b, 2 * r * b + b - 1)
            } else {
                let x = crab_lambda2_exact(1, b - 1, 2 * r)?;
                (x, format!("lambda_2(CG_{{1,{};{}}})", b - 1, 2 * r))
            };
            Case::unique(
                "m=br+1".into(),
                value,
                FamilySpec::Crab {
                    b1: 1,
                    b2: b - 1,
                    r: 2 * r,
                },
            )
        }
        2 => {
            let graph = FamilySpec::ExtraSpecial { b, p: 2 * r };
            let (value, conjectured) = if steklov {
                let (minus, _) = es_sigma_pm(b, 2 * r)?;
                (
                    rational(2, 4 * r + 3),
                    Conjectured {
                        value: minus,
                        graph,
                        note: "sigma^-_ES(b, 2r), conjectured maximum".into(),
                    },
                )
            } else {
                let es = laplacian_spectrum(&graph.build()?)?;
                let l2 = es.nth(2).expect("ES has at least two vertices");
                (
                    sin_bound(8 * r + 8),
                    Conjectured {
                        value: l2,
                        graph,
                        note: "numeric lambda_2(ES_{b;2r}); no closed form is derived".into(),
                    },
                )
            };
            Case {
                label: "m=br+2".into(),
                value,
                extremal: Vec::new(),
                uniqueness: Uniqueness::Open,
                conjectured: Some(conjectured),
            }
        }
        _ => {
            let value = if steklov {
                rational(1, 2 * r + 2)
            } else {
                sin_bound(8 * r + 10)
            };
            let mut extremal = vec![two_length_spider(s - 1, b - s + 1, 2 * r + 2, 2 * r + 1)];
            if s == b {
                extremal.push(FamilySpec::Spider(vec![(b, 2 * r + 2)]));
            }
            Case {
                label: "m=br+s".into(),
                value,
                extremal,
                uniqueness: Uniqueness::AttainedNotUnique,
                conjectured: None,
            }
        }
    })
}
