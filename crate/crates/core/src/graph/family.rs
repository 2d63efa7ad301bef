//! Named tree families and their constructors.
//!
//! Vertex indexing is fixed so that closed-form eigenfunctions can be written
//! against concrete indices:
//!
//! * `P_n`: vertex `i` is adjacent to `i + 1`.
//! * `S_n`: the center is `0`, leaves are `1..n`.
//! * Spiders: the center is `0`; legs follow part by part, leg by leg, and
//!   within a leg by increasing distance from the center. The vertex at
//!   distance `j` (1-based) on leg `k` (0-based) of part `i` has index
//!   `1 + sum_{i' < i} p_{i'} l_{i'} + k l_i + (j - 1)`. Parts with `p = 0`
//!   contribute nothing.
//! * Crabs `CG_{b1,b2;r}`: the two centers are `u0 = 0` and `v0 = 1`; the
//!   `b1` legs at `u0` come first (`2 + k r + j - 1`), then the `b2` legs at
//!   `v0` (`2 + b1 r + k r + j - 1`).
//! * `ES_{b;p}` is the spider with parts `[(1, p+2), (1, p+1), (b-2, p)]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TreeGraph;
use crate::error::{Error, Result};

pub fn build_path(n: usize) -> Result<TreeGraph> {
    if n == 0 {
        return Err(Error::InvalidFamily("path needs n >= 1".into()));
    }
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    TreeGraph::from_edges(n, &edges)
}

pub fn build_star(n: usize) -> Result<TreeGraph> {
    if n < 2 {
        return Err(Error::InvalidFamily("star needs n >= 2".into()));
    }
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
    TreeGraph::from_edges(n, &edges)
}

/// `parts` lists `(count, length)` pairs with non-increasing lengths.
pub fn build_spider(parts: &[(usize, usize)]) -> Result<TreeGraph> {
    validate_spider(parts)?;
    let n = 1 + parts.iter().map(|&(p, l)| p * l).sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &(count, length) in parts {
        for _ in 0..count {
            let mut prev = 0;
            for _ in 0..length {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
    }
    TreeGraph::from_edges(n, &edges)
}

fn validate_spider(parts: &[(usize, usize)]) -> Result<()> {
    if parts.iter().any(|&(_, l)| l == 0) {
        return Err(Error::InvalidFamily(
            "spider leg lengths must be >= 1".into(),
        ));
    }
    if parts.windows(2).any(|w| w[0].1 < w[1].1) {
        return Err(Error::InvalidFamily(
            "spider leg lengths must be non-increasing".into(),
        ));
    }
    if parts.iter().map(|&(p, _)| p).sum::<usize>() < 2 {
        return Err(Error::InvalidFamily(
            "spider needs at least two legs".into(),
        ));
    }
    Ok(())
}

pub fn build_crab(b1: usize, b2: usize, r: usize) -> Result<TreeGraph> {
    if b1 == 0 || b2 == 0 || r == 0 {
        return Err(Error::InvalidFamily("crab needs b1, b2, r >= 1".into()));
    }
    let n = (b1 + b2) * r + 2;
    let mut edges = vec![(0, 1)];
    let mut next = 2;
    for (center, legs) in [(0, b1), (1, b2)] {
        for _ in 0..legs {
            let mut prev = center;
            for _ in 0..r {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
    }
    TreeGraph::from_edges(n, &edges)
}

pub fn build_extra_special(b: usize, p: usize) -> Result<TreeGraph> {
    if b < 3 || p < 1 {
        return Err(Error::InvalidFamily(
            "extra special graph needs b >= 3 and p >= 1".into(),
        ));
    }
    build_spider(&extra_special_parts(b, p))
}

pub(crate) fn extra_special_parts(b: usize, p: usize) -> Vec<(usize, usize)> {
    vec![(1, p + 2), (1, p + 1), (b - 2, p)]
}

/// A named family instance with its integer parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    Path(usize),
    Star(usize),
    /// `(count, length)` parts, lengths non-increasing.
    Spider(Vec<(usize, usize)>),
    Crab {
        b1: usize,
        b2: usize,
        r: usize,
    },
    ExtraSpecial {
        b: usize,
        p: usize,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<TreeGraph> {
        match self {
            FamilySpec::Path(n) => build_path(*n),
            FamilySpec::Star(n) => build_star(*n),
            FamilySpec::Spider(parts) => build_spider(parts),
            FamilySpec::Crab { b1, b2, r } => build_crab(*b1, *b2, *r),
            FamilySpec::ExtraSpecial { b, p } => build_extra_special(*b, *p),
        }
    }

    /// Two-length spider `Sp_{p1,p2;l1,l2}`.
    pub fn spider2(p1: usize, p2: usize, l1: usize, l2: usize) -> Self {
        FamilySpec::Spider(vec![(p1, l1), (p2, l2)])
    }

    /// Names `tree` as a path, star, spider or crab when it has one of those
    /// shapes. Spiders are reported with parts sorted by decreasing length;
    /// crabs with `b1 <= b2`.
    pub fn recognize(tree: &TreeGraph) -> Option<FamilySpec> {
        let n = tree.order();
        if tree.max_degree() <= 2 {
            return Some(FamilySpec::Path(n));
        }
        if super::diameter(tree) == 2 {
            return Some(FamilySpec::Star(n));
        }
        let branch: Vec<usize> = (0..n).filter(|&v| tree.degree(v) >= 3).collect();
        let leg_lengths = |center: usize, skip: Option<usize>| -> Vec<usize> {
            let mut lengths = Vec::new();
            for &start in tree.neighbors(center) {
                if Some(start) == skip {
                    continue;
                }
                let (mut prev, mut cur, mut len) = (center, start, 1);
                while tree.degree(cur) == 2 {
                    let nxt = tree
                        .neighbors(cur)
                        .iter()
                        .copied()
                        .find(|&w| w != prev)
                        .expect("degree-2 vertex has another neighbor");
                    prev = cur;
                    cur = nxt;
                    len += 1;
                }
                if tree.degree(cur) != 1 {
                    return Vec::new();
                }
                lengths.push(len);
            }
            lengths
        };
        match branch.as_slice() {
            [c] => {
                let mut lengths = leg_lengths(*c, None);
                lengths.sort_unstable_by(|a, b| b.cmp(a));
                let mut parts: Vec<(usize, usize)> = Vec::new();
                for l in lengths {
                    match parts.last_mut() {
                        Some(last) if last.1 == l => last.0 += 1,
                        _ => parts.push((1, l)),
                    }
                }
                Some(FamilySpec::Spider(parts))
            }
            [u, v] if tree.neighbors(*u).contains(v) => {
                let lu = leg_lengths(*u, Some(*v));
                let lv = leg_lengths(*v, Some(*u));
                let r = *lu.first()?;
                if lu.iter().chain(lv.iter()).any(|&l| l != r) {
                    return None;
                }
                let (b1, b2) = (lu.len().min(lv.len()), lu.len().max(lv.len()));
                Some(FamilySpec::Crab { b1, b2, r })
            }
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::Spider(parts) => {
                let body: Vec<String> = parts.iter().map(|(p, l)| format!("{p}x{l}")).collect();
                write!(f, "spider:{}", body.join(","))
            }
            FamilySpec::Crab { b1, b2, r } => write!(f, "crab:{b1},{b2},{r}"),
            FamilySpec::ExtraSpecial { b, p } => write!(f, "es:{b},{p}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("family `{s}` has no `kind:` prefix")))?;
        let ints = |text: &str| -> Result<Vec<usize>> {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("`{t}` in family `{s}`: {e}")))
                })
                .collect()
        };
        let spec = match kind.trim() {
            "path" => match ints(args)?.as_slice() {
                [n] => FamilySpec::Path(*n),
                _ => return Err(Error::Parse(format!("`{s}`: expected path:n"))),
            },
            "star" => match ints(args)?.as_slice() {
                [n] => FamilySpec::Star(*n),
                _ => return Err(Error::Parse(format!("`{s}`: expected star:n"))),
            },
            "spider" => {
                let mut parts = Vec::new();
                for part in args.split(',') {
                    let (p, l) = part
                        .split_once('x')
                        .ok_or_else(|| Error::Parse(format!("`{part}`: expected PxL")))?;
                    let p = p
                        .trim()
                        .parse()
                        .map_err(|e| Error::Parse(format!("`{part}`: {e}")))?;
                    let l = l
                        .trim()
                        .parse()
                        .map_err(|e| Error::Parse(format!("`{part}`: {e}")))?;
                    parts.push((p, l));
                }
                FamilySpec::Spider(parts)
            }
            "crab" => match ints(args)?.as_slice() {
                [b1, b2, r] => FamilySpec::Crab {
                    b1: *b1,
                    b2: *b2,
                    r: *r,
                },
                _ => return Err(Error::Parse(format!("`{s}`: expected crab:b1,b2,r"))),
            },
            "es" => match ints(args)?.as_slice() {
                [b, p] => FamilySpec::ExtraSpecial { b: *b, p: *p },
                _ => return Err(Error::Parse(format!("`{s}`: expected es:b,p"))),
            },
            other => return Err(Error::Parse(format!("unknown family kind `{other}`"))),
        };
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{diameter, is_isomorphic, leaves, matching_number};

    #[test]
    fn path_examples() {
        let p1 = build_path(1).unwrap();
        assert_eq!((p1.order(), p1.edges().len()), (1, 0));
        let p2 = build_path(2).unwrap();
        assert_eq!(leaves(&p2).len(), 2);
        let p5 = build_path(5).unwrap();
        assert_eq!((diameter(&p5), matching_number(&p5)), (4, 2));
        assert!(build_path(0).is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(build_star(2).unwrap(), build_path(2).unwrap());
        let s4 = build_star(4).unwrap();
        assert_eq!((s4.degree(0), matching_number(&s4)), (3, 1));
        assert_eq!(diameter(&build_star(5).unwrap()), 2);
        assert!(build_star(1).is_err());
    }

    #[test]
    fn spider_examples() {
        for l in 1..6 {
            let sp = build_spider(&[(2, l)]).unwrap();
            assert!(is_isomorphic(&sp, &build_path(2 * l + 1).unwrap()));
        }
        for n in 6..14 {
            for m in 3..=n / 2 {
                let sp = build_spider(&[(m - 1, 2), (n - 2 * m + 1, 1)]).unwrap();
                assert_eq!((sp.order(), matching_number(&sp)), (n, m));
            }
        }
        let sp = build_spider(&[(1, 3), (2, 1)]).unwrap();
        assert_eq!((sp.order(), leaves(&sp).len()), (6, 3));
    }

    #[test]
    fn spider_indexing_is_part_major() {
        let sp = build_spider(&[(2, 3), (1, 1)]).unwrap();
        assert_eq!(sp.neighbors(0), &[1, 4, 7]);
        assert_eq!(sp.neighbors(2), &[1, 3]);
        assert_eq!(sp.neighbors(5), &[4, 6]);
    }

    #[test]
    fn spider_rejections() {
        assert!(build_spider(&[(1, 1), (2, 3)]).is_err());
        assert!(build_spider(&[(0, 3), (0, 1)]).is_err());
        assert!(build_spider(&[(1, 3)]).is_err());
        assert!(build_spider(&[(2, 0)]).is_err());
        // zero-count parts are absent
        assert_eq!(
            build_spider(&[(0, 5), (3, 2)]).unwrap(),
            build_spider(&[(3, 2)]).unwrap()
        );
    }

    #[test]
    fn crab_examples() {
        for r in 1..6 {
            let c = build_crab(1, 1, r).unwrap();
            assert!(is_isomorphic(&c, &build_path(2 * r + 2).unwrap()));
        }
        for t in 1..4 {
            assert_eq!(diameter(&build_crab(2, 3, 2 * t).unwrap()), 4 * t + 1);
        }
        let c = build_crab(1, 2, 1).unwrap();
        assert_eq!((c.order(), leaves(&c).len()), (5, 3));
        assert!(build_crab(0, 1, 1).is_err());
    }

    #[test]
    fn extra_special_examples() {
        assert_eq!(build_extra_special(3, 1).unwrap().order(), 7);
        for b in 3..8 {
            for p in 1..5 {
                let es = build_extra_special(b, p).unwrap();
                assert_eq!(leaves(&es).len(), b);
            }
        }
        // ES_{4;2}: legs 4, 3, 2, 2 -> 2 + 1 + 1 + 1 matched on legs, plus the
        // center with the free neighbour on the odd leg.
        assert_eq!(matching_number(&build_extra_special(4, 2).unwrap()), 6);
        assert!(build_extra_special(2, 1).is_err());
        assert!(build_extra_special(3, 0).is_err());
    }

    #[test]
    fn family_text_form() {
        for text in ["path:5", "star:4", "spider:2x3,1x1", "crab:1,2,3", "es:4,2"] {
            let spec: FamilySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            assert!(spec.build().is_ok());
        }
        for bad in ["path", "tree:3", "crab:1,2", "spider:2y3", "star:-1"] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn recognizes_named_shapes() {
        let cases = [
            ("path:6", "path:6"),
            ("star:5", "star:5"),
            ("spider:1x3,2x1", "spider:1x3,2x1"),
            ("es:4,1", "spider:1x3,1x2,2x1"),
            ("crab:3,2,2", "crab:2,3,2"),
            ("crab:1,3,1", "spider:1x2,3x1"),
        ];
        for (input, expected) in cases {
            let t = input.parse::<FamilySpec>().unwrap().build().unwrap();
            assert_eq!(FamilySpec::recognize(&t).unwrap().to_string(), expected);
        }
        // two branch vertices at distance 2
        let t =
            TreeGraph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6)]).unwrap();
        assert_eq!(FamilySpec::recognize(&t), None);
    }
}
