//! Covers of finite point sets in ℚⁿ \ {0} by proper linear subspaces.
//!
//! Every proper subspace lies in a hyperplane, so covers are always
//! reported as hyperplanes. The exact search runs over the maximal
//! span-closed point subsets ("flats"): any proper subspace can be
//! enlarged to one of them without uncovering a point.

mod hyperplane;
mod search;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::rational::{primitive_integer_vector, Rational};
use crate::arith::{kernel_basis, rank_of, RatMatrix};

pub use hyperplane::Hyperplane;
pub use search::{greedy_cover, min_cover, min_cover_with, CoverOptions, CoverResult};

/// Masks are `u128`, so at most this many pairwise non-proportional points.
pub const MAX_POINTS: usize = 128;

/// Default node cap of the exact search.
pub const DEFAULT_NODE_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("point {index} is the zero vector")]
    ZeroPoint { index: usize },
    #[error("point {index} has length {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("no proper subspace of a {0}-dimensional space contains a nonzero point")]
    NoProperCover(usize),
    #[error("{0} distinct directions exceed the supported {MAX_POINTS}")]
    TooManyPoints(usize),
    #[error("search visited {nodes} nodes (cap {cap}); best cover so far has {best} hyperplanes, lower bound {lower_bound}")]
    BudgetExceeded { nodes: u64, cap: u64, best: usize, lower_bound: usize },
    #[error("no cover with at most {limit} subspaces; at least {lower_bound} are needed")]
    LimitExceeded { limit: usize, lower_bound: usize },
}

/// A maximal set of input points whose span is a proper subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatCandidate {
    /// Indices into the input point list, increasing.
    pub member_indices: Vec<usize>,
    pub span_dim: usize,
    /// A hyperplane containing the span.
    pub hyperplane: Hyperplane,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub hyperplanes: Vec<Hyperplane>,
    /// For each input point, the index of the first hyperplane containing it.
    pub assignment: Vec<usize>,
}

impl Cover {
    pub fn size(&self) -> usize {
        self.hyperplanes.len()
    }
}

/// Input points reduced to distinct directions.
pub(crate) struct Directions {
    pub n: usize,
    /// Primitive integer representative per direction.
    pub unique: Vec<Vec<BigInt>>,
    /// Input index → direction index.
    pub class_of: Vec<usize>,
}

impl Directions {
    pub(crate) fn new(points: &[Vec<Rational>]) -> Result<Self, CoverError> {
        let n = points.first().map_or(0, Vec::len);
        let mut unique = Vec::new();
        let mut class_of = Vec::with_capacity(points.len());
        let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
        for (index, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(CoverError::DimensionMismatch { index, expected: n, found: p.len() });
            }
            if p.iter().all(Zero::is_zero) {
                return Err(CoverError::ZeroPoint { index });
            }
            let key = primitive_integer_vector(p);
            let next = unique.len();
            let id = *seen.entry(key.clone()).or_insert_with(|| {
                unique.push(key);
                next
            });
            class_of.push(id);
        }
        if !points.is_empty() && n < 2 {
            return Err(CoverError::NoProperCover(n));
        }
        if unique.len() > MAX_POINTS {
            return Err(CoverError::TooManyPoints(unique.len()));
        }
        Ok(Directions { n, unique, class_of })
    }

    fn rational(&self, i: usize) -> Vec<Rational> {
        self.unique[i].iter().cloned().map(Rational::from_integer).collect()
    }

    fn on(&self, h: &Hyperplane, i: usize) -> bool {
        h.normal().iter().zip(&self.unique[i]).map(|(a, b)| a * b).sum::<BigInt>().is_zero()
    }

    /// Expands a direction mask to sorted input indices.
    pub(crate) fn members(&self, mask: u128) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&i| mask >> self.class_of[i] & 1 == 1).collect()
    }
}

/// Span-closed flats as direction masks, sorted by their member lists.
pub(crate) fn flats(d: &Directions) -> Vec<(u128, usize, Hyperplane)> {
    let k = d.unique.len();
    if k == 0 {
        return Vec::new();
    }
    let all: Vec<Vec<Rational>> = (0..k).map(|i| d.rational(i)).collect();
    let m = RatMatrix::from_rows(d.n, &all).expect("uniform length");
    let total_rank = rank_of(&m);
    let mut out: Vec<(u128, usize, Hyperplane)> = Vec::new();
    if total_rank < d.n {
        let normal = kernel_basis(&m).into_iter().next().expect("rank < n gives a kernel");
        let h = Hyperplane::from_normal(&normal).expect("kernel vectors are nonzero");
        let mask = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
        out.push((mask, total_rank, h));
    } else {
        let mut seen = std::collections::HashSet::new();
        for subset in combinations(k, d.n - 1) {
            let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| all[i].clone()).collect();
            let sm = RatMatrix::from_rows(d.n, &rows).expect("uniform length");
            let kern = kernel_basis(&sm);
            if kern.len() != 1 {
                continue;
            }
            let h = Hyperplane::from_normal(&kern[0]).expect("kernel vectors are nonzero");
            let mask = (0..k).filter(|&i| d.on(&h, i)).fold(0u128, |acc, i| acc | 1 << i);
            if seen.insert(mask) {
                out.push((mask, d.n - 1, h));
            }
        }
    }
    out.sort_by_key(|a| d.members(a.0));
    out
}

/// Increasing `size`-subsets of `0..k` in lexicographic order.
pub fn combinations(k: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (size <= k).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = size;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < k - size + i {
                c[i] += 1;
                for j in i + 1..size {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

pub fn candidate_flats(points: &[Vec<Rational>]) -> Result<Vec<FlatCandidate>, CoverError> {
    let d = Directions::new(points)?;
    Ok(flats(&d)
        .into_iter()
        .map(|(mask, span_dim, hyperplane)| FlatCandidate { member_indices: d.members(mask), span_dim, hyperplane })
        .collect())
}

/// `Err(i)` names the first point on none of the hyperplanes.
pub fn verify_cover(points: &[Vec<Rational>], hyperplanes: &[Hyperplane]) -> Result<(), usize> {
    match points.iter().position(|p| !hyperplanes.iter().any(|h| h.contains(p))) {
        Some(i) => Err(i),
        None => Ok(()),
    }
}

/// Builds the assignment table for a list of hyperplanes known to cover.
pub fn assign(points: &[Vec<Rational>], hyperplanes: Vec<Hyperplane>) -> Cover {
    let assignment = points
        .iter()
        .map(|p| hyperplanes.iter().position(|h| h.contains(p)).expect("hyperplanes cover every point"))
        .collect();
    Cover { hyperplanes, assignment }
}

/// Largest number of input points inside one proper subspace.
pub fn max_points_per_flat(points: &[Vec<Rational>]) -> Result<usize, CoverError> {
    Ok(candidate_flats(points)?.iter().map(|f| f.member_indices.len()).max().unwrap_or(0))
}
