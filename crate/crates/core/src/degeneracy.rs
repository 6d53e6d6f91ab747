//! Deforming a solution list along integer directions `λ^c`, and what a
//! degenerate direction yields: a polynomial kernel, its value at `λ = −1`,
//! and at most 2ⁿ hyperplanes through every non-degenerate solution.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::poly_matrix::{apply, eval_matrix, is_zero_vector};
use crate::arith::rational::{int, Rational};
use crate::arith::{laurent_det, poly_kernel_vector, rank_of, ArithError, LaurentPoly, RatMatrix, UniPoly};
use crate::cover::{combinations, Hyperplane};
use crate::equation::SolutionSet;
use crate::lattice::CoeffTuple;

/// Default cap on the number of direction matrices a search may test.
pub const DEFAULT_DIRECTION_CAP: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegeneracyError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("direction entries have gcd {gcd}, expected 1")]
    NotPrimitive { gcd: String },
    #[error("{rows} rows give no (n+1)-minors for n = {n}")]
    TooFewRows { rows: usize, n: usize },
    #[error("first row must be the all-ones solution")]
    MissingAllOnes,
    #[error("search space has {points} directions, cap is {cap}")]
    BudgetExceeded { points: u128, cap: u64 },
    #[error("normal vanishes for ε = {eps:?}")]
    ZeroNormal { eps: Vec<i8> },
    #[error("identity fails on row {row}")]
    IdentityFailed { row: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Integer exponents `c_{ij}` for rows 2…N, with gcd of all entries 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectionMatrix {
    c: Vec<Vec<i64>>,
}

impl DirectionMatrix {
    pub fn new(c: Vec<Vec<i64>>) -> Result<Self, DegeneracyError> {
        let width = c.first().map_or(0, Vec::len);
        if c.iter().any(|r| r.len() != width) {
            return Err(DegeneracyError::ShapeMismatch("ragged direction matrix".into()));
        }
        let g = c.iter().flatten().fold(0i64, |g, &x| g.gcd(&x));
        if g != 1 {
            return Err(DegeneracyError::NotPrimitive { gcd: g.to_string() });
        }
        Ok(DirectionMatrix { c })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn negated(&self) -> DirectionMatrix {
        DirectionMatrix { c: self.c.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    pub fn epsilon(&self) -> EpsilonMatrix {
        let eps = self.c.iter().map(|r| r.iter().map(|x| if x % 2 == 0 { 1 } else { -1 }).collect()).collect();
        EpsilonMatrix { eps }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BVector {
    pub b: Vec<Rational>,
    pub b0: Rational,
}

impl BVector {
    pub fn is_zero(&self) -> bool {
        self.b0.is_zero() && self.b.iter().all(Zero::is_zero)
    }
}

/// `ε_{ij} = (−1)^{c_{ij}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonMatrix {
    pub eps: Vec<Vec<i8>>,
}

impl EpsilonMatrix {
    pub fn all_plus(&self) -> bool {
        self.eps.iter().flatten().all(|&e| e == 1)
    }
}

/// Labels are relative to the supplied solution list and, for the third
/// class, to the direction box that was searched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassLabel {
    ClassI { rank: usize, box_size: u32 },
    ClassII { rank: usize },
    ClassIII { direction: DirectionMatrix, box_size: u32 },
}

impl ClassLabel {
    pub fn name(&self) -> &'static str {
        match self {
            ClassLabel::ClassI { .. } => "ClassI",
            ClassLabel::ClassII { .. } => "ClassII",
            ClassLabel::ClassIII { .. } => "ClassIII",
        }
    }
}

/// Solution points of `ss` in matrix order (all-ones first).
pub fn points_of(ss: &SolutionSet) -> Vec<Vec<Rational>> {
    ss.ordered().into_iter().map(|s| s.x.clone()).collect()
}

fn check_rows(points: &[Vec<Rational>]) -> Result<usize, DegeneracyError> {
    let first = points.first().ok_or(DegeneracyError::MissingAllOnes)?;
    if !first.iter().all(One::is_one) {
        return Err(DegeneracyError::MissingAllOnes);
    }
    let n = first.len();
    if let Some(i) = points.iter().position(|p| p.len() != n) {
        return Err(DegeneracyError::ShapeMismatch(format!("row {} has {} entries, expected {n}", i + 1, points[i].len())));
    }
    Ok(n)
}

fn check_shape(points: &[Vec<Rational>], c: &DirectionMatrix) -> Result<usize, DegeneracyError> {
    let n = check_rows(points)?;
    if c.c.len() + 1 != points.len() || c.c.iter().any(|r| r.len() != n) {
        return Err(DegeneracyError::ShapeMismatch(format!(
            "{} solution rows need a {}×{n} direction matrix",
            points.len(),
            points.len() - 1
        )));
    }
    Ok(n)
}

/// Rows `(λ^{c_{i1}}x_{i1}, …, λ^{c_{in}}x_{in}, 1)`, with the undeformed
/// all-ones row first.
pub fn deformed_matrix(points: &[Vec<Rational>], c: &DirectionMatrix) -> Result<Vec<Vec<LaurentPoly>>, DegeneracyError> {
    let n = check_shape(points, c)?;
    let zero_row = vec![0i64; n];
    Ok(points
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let exps = if i == 0 { &zero_row } else { &c.c[i - 1] };
            x.iter()
                .zip(exps)
                .map(|(v, &e)| LaurentPoly::monomial(v.clone(), e))
                .chain(std::iter::once(LaurentPoly::one()))
                .collect()
        })
        .collect())
}

fn minors_vanish(m: &[Vec<LaurentPoly>], n: usize) -> bool {
    // A nonzero value at λ = 2 already rules out degeneracy.
    let at_two = eval_matrix(m, &int(2));
    let numeric = RatMatrix::from_rows(n + 1, &at_two).expect("rows have n+1 entries");
    if rank_of(&numeric) > n {
        return false;
    }
    combinations(m.len(), n + 1).all(|rows| {
        let sub: Vec<Vec<LaurentPoly>> = rows.iter().map(|&i| m[i].clone()).collect();
        laurent_det(&sub).is_zero()
    })
}

/// Whether every `(n+1)`-minor of the deformed matrix vanishes identically.
pub fn is_degenerate_direction(points: &[Vec<Rational>], c: &DirectionMatrix) -> Result<bool, DegeneracyError> {
    let n = check_shape(points, c)?;
    if points.len() < n + 1 {
        return Err(DegeneracyError::TooFewRows { rows: points.len(), n });
    }
    Ok(minors_vanish(&deformed_matrix(points, c)?, n))
}

/// First direction with entries in `[−box, box]` passing the degeneracy
/// test, in lexicographic order of the flattened matrix. Finding none says
/// nothing about larger boxes.
pub fn find_direction(points: &[Vec<Rational>], box_size: u32, cap: u64) -> Result<Option<DirectionMatrix>, DegeneracyError> {
    let n = check_rows(points)?;
    if points.len() < n + 1 {
        return Err(DegeneracyError::TooFewRows { rows: points.len(), n });
    }
    let cells = (points.len() - 1) * n;
    let side = 2 * box_size as u128 + 1;
    let total = (0..cells).try_fold(1u128, |acc, _| acc.checked_mul(side)).filter(|&t| t <= cap as u128);
    let Some(total) = total else {
        let points = (0..cells).fold(1u128, |acc, _| acc.saturating_mul(side));
        return Err(DegeneracyError::BudgetExceeded { points, cap });
    };
    let b = box_size as i64;
    let decode = |mut idx: u64| -> Vec<i64> {
        let mut flat = vec![0i64; cells];
        for slot in flat.iter_mut().rev() {
            *slot = (idx % side as u64) as i64 - b;
            idx /= side as u64;
        }
        flat
    };
    let found = (0..total as u64).into_par_iter().find_first(|&idx| {
        let flat = decode(idx);
        if flat.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
            return false;
        }
        let c = DirectionMatrix { c: flat.chunks(n).map(<[i64]>::to_vec).collect() };
        let m = deformed_matrix(points, &c).expect("shape checked");
        minors_vanish(&m, n)
    });
    Ok(found.map(|idx| DirectionMatrix { c: decode(idx).chunks(n).map(<[i64]>::to_vec).collect() }))
}

/// Polynomials `(b₁(λ), …, bₙ(λ), b₀(λ))` without common zero with
/// `Σ bⱼ = b₀` and `Σ bⱼ λ^{c_{ij}} x_{ij} = b₀` for every row, checked
/// symbolically before returning.
pub fn lambda_kernel(points: &[Vec<Rational>], c: &DirectionMatrix) -> Result<Vec<UniPoly>, DegeneracyError> {
    let n = check_shape(points, c)?;
    let m = deformed_matrix(points, c)?;
    let v = poly_kernel_vector(&m, n + 1)?;
    let mut out = v;
    out[n] = -&out[n];
    verify_kernel(points, c, &out)?;
    Ok(out)
}

/// Substitutes the kernel back into every row of the deformed system.
pub fn verify_kernel(points: &[Vec<Rational>], c: &DirectionMatrix, b: &[UniPoly]) -> Result<(), DegeneracyError> {
    let n = check_shape(points, c)?;
    if b.len() != n + 1 || b.iter().all(UniPoly::is_zero) {
        return Err(DegeneracyError::ShapeMismatch("kernel must be a nonzero vector of length n+1".into()));
    }
    let m = deformed_matrix(points, c)?;
    let mut v = b.to_vec();
    v[n] = -&v[n];
    let residual = apply(&m, &v);
    if is_zero_vector(&residual) {
        return Ok(());
    }
    let row = residual.iter().position(|r| !r.is_zero()).unwrap_or(0);
    Err(DegeneracyError::IdentityFailed { row: row + 1 })
}

/// Evaluation at `λ = −1` together with `ε_{ij} = (−1)^{c_{ij}}`.
pub fn specialize(b_lambda: &[UniPoly], c: &DirectionMatrix) -> (BVector, EpsilonMatrix) {
    let minus_one = -Rational::one();
    let n = b_lambda.len() - 1;
    let bv = BVector { b: b_lambda[..n].iter().map(|p| p.eval(&minus_one)).collect(), b0: b_lambda[n].eval(&minus_one) };
    let eps = c.epsilon();
    assert!(!bv.is_zero(), "coprime kernel cannot vanish at λ = −1");
    assert!(!eps.all_plus(), "a primitive direction has an odd entry");
    (bv, eps)
}

/// Checks `Σ bⱼ = b₀` and `Σ bⱼ ε_{ij} x_{ij} = b₀` row by row; on failure
/// returns the 1-based row.
pub fn verify_specialized(points: &[Vec<Rational>], bv: &BVector, eps: &EpsilonMatrix) -> Result<(), usize> {
    for (i, x) in points.iter().enumerate() {
        let lhs: Rational = x
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let e = if i == 0 { 1 } else { eps.eps[i - 1][j] };
                &bv.b[j] * v * int(e as i64)
            })
            .sum();
        if lhs != bv.b0 {
            return Err(i + 1);
        }
    }
    Ok(())
}

/// True when no sign choice makes `(b₁ε₁, …, bₙεₙ, b₀)` proportional to
/// `(a₁, …, aₙ, 1)`.
pub fn check_claim(a: &CoeffTuple, bv: &BVector) -> bool {
    // Proportionality forces the factor b₀, and then each |bⱼ| = |b₀aⱼ|.
    if bv.b0.is_zero() {
        return !bv.b.iter().all(Zero::is_zero);
    }
    !a.as_slice().iter().zip(&bv.b).all(|(aj, bj)| (&bv.b0 * aj).abs() == bj.abs())
}

fn sign_vectors(n: usize) -> impl Iterator<Item = Vec<i8>> {
    (0..1u32 << n).map(move |m| (0..n).map(|j| if m >> j & 1 == 1 { -1 } else { 1 }).collect())
}

/// The hyperplanes `b₀ Σ aⱼXⱼ − Σ bⱼεⱼXⱼ = 0` over all ε, deduplicated and
/// sorted.
pub fn cover_family(a: &CoeffTuple, bv: &BVector) -> Result<Vec<Hyperplane>, DegeneracyError> {
    let mut out = BTreeSet::new();
    for eps in sign_vectors(a.len()) {
        let normal: Vec<Rational> = a
            .as_slice()
            .iter()
            .zip(&bv.b)
            .zip(&eps)
            .map(|((aj, bj), &e)| &bv.b0 * aj - bj * int(e as i64))
            .collect();
        let h = Hyperplane::from_normal(&normal).ok_or(DegeneracyError::ZeroNormal { eps })?;
        out.insert(h);
    }
    Ok(out.into_iter().collect())
}

/// For each point, the index of the first hyperplane containing it.
pub fn coverage(points: &[Vec<Rational>], hyperplanes: &[Hyperplane]) -> Vec<Option<usize>> {
    points.iter().map(|p| hyperplanes.iter().position(|h| h.contains(p))).collect()
}

/// Rank first (a deficient point rank is the second class, even when a
/// direction also exists), then the direction search.
pub fn classify_class(points: &[Vec<Rational>], box_size: u32, cap: u64) -> Result<ClassLabel, DegeneracyError> {
    let n = check_rows(points)?;
    let rank = rank_of(&RatMatrix::from_rows(n, points).expect("shape checked"));
    if rank < n {
        return Ok(ClassLabel::ClassII { rank });
    }
    Ok(match find_direction(points, box_size, cap)? {
        Some(direction) => ClassLabel::ClassIII { direction, box_size },
        None => ClassLabel::ClassI { rank, box_size },
    })
}
