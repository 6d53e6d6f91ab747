//! Solutions of `a₁x₁ + ⋯ + aₙxₙ = 1` with `x ∈ Γ`, enumerated over
//! bounded exponent boxes and classified by their vanishing subsums.

use std::collections::HashSet;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::rational::{pow_i64, Rational};
use crate::arith::RatMatrix;
use crate::cover::Hyperplane;
use crate::lattice::{CoeffTuple, FinRankGroup, LatticeError, Witness};

/// Default cap on the number of lattice points an enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000_000;

/// Subset sums are tracked as bitmasks.
pub const MAX_DIMENSION: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquationError {
    #[error("box needs {points} lattice points, cap is {cap}")]
    BudgetExceeded { points: u128, cap: u64 },
    #[error("not a solution: Σ aᵢxᵢ = {sum}")]
    NotASolution { sum: String },
    #[error("point is not in the group")]
    NotInGroup,
    #[error("coefficient tuple has length {found}, group has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is outside the supported range 1..={MAX_DIMENSION}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug)]
pub struct Equation {
    a: CoeffTuple,
    group: FinRankGroup,
}

impl Equation {
    pub fn new(a: CoeffTuple, group: FinRankGroup) -> Result<Self, EquationError> {
        if a.len() != group.dimension() {
            return Err(EquationError::DimensionMismatch { expected: group.dimension(), found: a.len() });
        }
        if a.is_empty() || a.len() > MAX_DIMENSION {
            return Err(EquationError::UnsupportedDimension(a.len()));
        }
        Ok(Equation { a, group })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn coefficients(&self) -> &CoeffTuple {
        &self.a
    }

    pub fn group(&self) -> &FinRankGroup {
        &self.group
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.a.as_slice().iter().zip(x).map(|(a, x)| a * x).sum()
    }
}

/// Which subsums vanish. Subsets are bitmasks over coordinates (bit i is
/// coordinate i+1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    NonDegenerate,
    Degenerate { vanishing: Vec<u32> },
}

impl Classification {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Classification::Degenerate { .. })
    }

    pub fn vanishing_masks(&self) -> &[u32] {
        match self {
            Classification::NonDegenerate => &[],
            Classification::Degenerate { vanishing } => vanishing,
        }
    }
}

/// 1-based sorted index lists of a subset bitmask.
pub fn mask_to_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<Rational>,
    pub witness: Witness,
    pub classification: Classification,
}

impl Solution {
    pub fn is_degenerate(&self) -> bool {
        self.classification.is_degenerate()
    }

    pub fn vanishing_subsets(&self) -> Vec<Vec<usize>> {
        self.classification.vanishing_masks().iter().map(|&m| mask_to_indices(m)).collect()
    }

    pub fn is_all_ones(&self) -> bool {
        self.x.iter().all(One::is_one)
    }
}

/// Solutions sorted by witness, without duplicates. `bound` is the
/// exponent box the list is complete for, or `None` for a supplied list.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub equation: Equation,
    pub bound: Option<u32>,
    pub solutions: Vec<Solution>,
}

fn subset_masks(n: usize) -> impl Iterator<Item = u32> {
    1..(1u32 << n)
}

fn vanishing_of(terms: &[Rational]) -> Vec<u32> {
    subset_masks(terms.len())
        .filter(|&m| {
            terms
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, t)| t)
                .sum::<Rational>()
                .is_zero()
        })
        .collect()
}

pub fn classify_solution(eq: &Equation, x: &[Rational]) -> Result<Classification, EquationError> {
    if x.len() != eq.n() {
        return Err(EquationError::DimensionMismatch { expected: eq.n(), found: x.len() });
    }
    let sum = eq.lhs(x);
    if !sum.is_one() {
        return Err(EquationError::NotASolution { sum: crate::arith::format_rational(&sum) });
    }
    let terms: Vec<Rational> = eq.a.as_slice().iter().zip(x).map(|(a, x)| a * x).collect();
    let vanishing = vanishing_of(&terms);
    Ok(if vanishing.is_empty() {
        Classification::NonDegenerate
    } else {
        Classification::Degenerate { vanishing }
    })
}

pub fn enumerate_solutions(eq: &Equation, bound: u32) -> Result<SolutionSet, EquationError> {
    enumerate_solutions_capped(eq, bound, DEFAULT_ENUMERATION_CAP)
}

/// Every `x = t·∏ g_k^{z_k}` with `|z_k| ≤ bound` (and every torsion sign
/// pattern `t` when the group has sign torsion) solving the equation.
pub fn enumerate_solutions_capped(eq: &Equation, bound: u32, cap: u64) -> Result<SolutionSet, EquationError> {
    let n = eq.n();
    let g = &eq.group;
    let r = g.generator_count();
    let side = 2 * bound as u128 + 1;
    let torsion_patterns: u128 = if g.sign_torsion() { 1 << n } else { 1 };
    let points = side.checked_pow(r as u32).and_then(|s| s.checked_mul(torsion_patterns)).unwrap_or(u128::MAX);
    if points > cap as u128 {
        return Err(EquationError::BudgetExceeded { points, cap });
    }

    // powers[k][e + bound][i] = (g_k)_i^e
    let b = bound as i64;
    let powers: Vec<Vec<Vec<Rational>>> = g
        .generators()
        .iter()
        .map(|gen| (-b..=b).map(|e| gen.iter().map(|q| pow_i64(q, e)).collect()).collect())
        .collect();
    let a = eq.a.as_slice();
    let total = side.pow(r as u32) as usize;
    let flips: Vec<u32> = if g.sign_torsion() { (0..1u32 << n).collect() } else { vec![0] };

    let mut found: Vec<Solution> = (0..total)
        .into_par_iter()
        .with_min_len(64)
        .flat_map_iter(|idx| {
            let mut rest = idx;
            let mut z = vec![0i64; r];
            for zk in z.iter_mut().rev() {
                *zk = (rest % side as usize) as i64 - b;
                rest /= side as usize;
            }
            let mut x = vec![Rational::one(); n];
            for (k, &zk) in z.iter().enumerate() {
                if zk != 0 {
                    for (xi, p) in x.iter_mut().zip(&powers[k][(zk + b) as usize]) {
                        *xi *= p;
                    }
                }
            }
            let terms: Vec<Rational> = a.iter().zip(&x).map(|(a, x)| a * x).collect();
            let mut hits = Vec::new();
            for &mask in &flips {
                let s: Rational = terms
                    .iter()
                    .enumerate()
                    .map(|(i, t)| if mask >> i & 1 == 1 { -t } else { t.clone() })
                    .sum();
                if s.is_one() {
                    let flip: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                    let xs: Vec<Rational> =
                        x.iter().zip(&flip).map(|(v, &f)| if f { -v } else { v.clone() }).collect();
                    hits.push((Witness { z: z.clone(), flip }, xs));
                }
            }
            hits
        })
        .map(|(witness, x)| {
            let classification = classify_solution(eq, &x).expect("enumerated point solves the equation");
            Solution { x, witness, classification }
        })
        .collect();
    found.sort_by(|p, q| p.witness.cmp(&q.witness));
    let mut seen = HashSet::new();
    found.retain(|s| seen.insert(s.x.clone()));
    Ok(SolutionSet { equation: eq.clone(), bound: Some(bound), solutions: found })
}

impl SolutionSet {
    /// Wraps a supplied list of points, checking each is a solution in Γ.
    pub fn from_points(eq: &Equation, points: &[Vec<Rational>]) -> Result<Self, EquationError> {
        let mut solutions = points
            .iter()
            .map(|x| {
                let classification = classify_solution(eq, x)?;
                let witness = eq.group.contains(x)?.ok_or(EquationError::NotInGroup)?;
                Ok(Solution { x: x.clone(), witness, classification })
            })
            .collect::<Result<Vec<_>, EquationError>>()?;
        solutions.sort_by(|p, q| p.witness.cmp(&q.witness));
        let mut seen = HashSet::new();
        solutions.retain(|s| seen.insert(s.x.clone()));
        Ok(SolutionSet { equation: eq.clone(), bound: None, solutions })
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn non_degenerate(&self) -> SolutionSet {
        SolutionSet {
            equation: self.equation.clone(),
            bound: self.bound,
            solutions: self.solutions.iter().filter(|s| !s.is_degenerate()).cloned().collect(),
        }
    }

    pub fn degenerate(&self) -> impl Iterator<Item = &Solution> {
        self.solutions.iter().filter(|s| s.is_degenerate())
    }

    /// Solutions in matrix order: the all-ones solution first when present,
    /// then the rest in canonical order.
    pub fn ordered(&self) -> Vec<&Solution> {
        let ones = self.solutions.iter().filter(|s| s.is_all_ones());
        let rest = self.solutions.iter().filter(|s| !s.is_all_ones());
        ones.chain(rest).collect()
    }

    pub fn contains_all_ones(&self) -> bool {
        self.solutions.iter().any(Solution::is_all_ones)
    }

    /// Replaces `a` by `a·y` and each solution `x` by `x/y`, for the
    /// solution `y = solutions[index]`. The all-ones tuple then solves the
    /// new equation, and it is non-degenerate exactly when `y` was.
    pub fn normalize_at(&self, index: usize) -> Result<SolutionSet, EquationError> {
        let y = &self.solutions[index];
        let a = self.equation.a.mul(&y.x);
        let eq = Equation::new(a, self.equation.group.clone())?;
        let mut solutions: Vec<Solution> = self
            .solutions
            .iter()
            .map(|s| {
                let x: Vec<Rational> = s.x.iter().zip(&y.x).map(|(p, q)| p / q).collect();
                let witness = Witness {
                    z: s.witness.z.iter().zip(&y.witness.z).map(|(p, q)| p - q).collect(),
                    flip: s.witness.flip.iter().zip(&y.witness.flip).map(|(p, q)| p ^ q).collect(),
                };
                let classification = classify_solution(&eq, &x).expect("division by a solution preserves solutions");
                Solution { x, witness, classification }
            })
            .collect();
        solutions.sort_by(|p, q| p.witness.cmp(&q.witness));
        Ok(SolutionSet { equation: eq, bound: self.bound, solutions })
    }
}

/// The `N × (n+1)` matrix with rows `(x_1, …, x_n, 1)` in [`SolutionSet::ordered`] order.
pub fn solution_matrix(ss: &SolutionSet) -> RatMatrix {
    let n = ss.equation.n();
    let rows: Vec<Vec<Rational>> = ss
        .ordered()
        .into_iter()
        .map(|s| s.x.iter().cloned().chain(std::iter::once(Rational::one())).collect())
        .collect();
    RatMatrix::from_rows(n + 1, &rows).expect("rows have n+1 entries")
}

/// The `N × n` matrix of solution points, same order as [`solution_matrix`].
pub fn point_matrix(ss: &SolutionSet) -> RatMatrix {
    let rows: Vec<Vec<Rational>> = ss.ordered().into_iter().map(|s| s.x.clone()).collect();
    RatMatrix::from_rows(ss.equation.n(), &rows).expect("rows have n entries")
}

/// Hyperplanes `Σ_{i∈I} aᵢXᵢ = 0` for every `I` with `2 ≤ |I| ≤ n−1`,
/// ordered by subset size and then by bitmask.
pub fn degenerate_subsum_subspaces(eq: &Equation) -> Vec<Hyperplane> {
    let n = eq.n();
    let mut masks: Vec<u32> = subset_masks(n)
        .filter(|m| {
            let k = m.count_ones() as usize;
            k >= 2 && k < n
        })
        .collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
        .into_iter()
        .map(|m| {
            let normal: Vec<Rational> = eq
                .a
                .as_slice()
                .iter()
                .enumerate()
                .map(|(i, a)| if m >> i & 1 == 1 { a.clone() } else { Rational::zero() })
                .collect();
            Hyperplane::from_normal(&normal).expect("coefficients are nonzero")
        })
        .collect()
}
