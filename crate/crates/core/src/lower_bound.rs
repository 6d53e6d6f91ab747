//! Permutation determinants and equations whose n! permuted solutions need
//! n proper subspaces.
//!
//! For permutations σ₁, …, σₙ of {1, …, n}, `F_{σ₁…σₙ}` is the determinant of
//! the matrix with rows `(X_{σᵢ(1)}, …, X_{σᵢ(n)})`. It vanishes when two σᵢ
//! coincide and only changes sign when they are reordered, so the set `T` of
//! tuples with `F ≢ 0` is stored as n-element sets of permutations.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::matrix::det_exact;
use crate::arith::rational::{denominator_lcm, pow_i64, Rational};
use crate::cover::{combinations, max_points_per_flat, Hyperplane};
use crate::equation::{classify_solution, Classification, Equation, EquationError};
use crate::lattice::{CoeffTuple, FinRankGroup, LatticeError};

/// Default cap on the number of n-sets of permutations expanded for `T`.
pub const DEFAULT_PATTERN_BUDGET: u64 = 1_000_000;
/// Default cap on the number of subsets an exhaustive pass may visit.
pub const DEFAULT_SUBSET_BUDGET: u64 = 200_000;
/// Permutation sets are bitmasks over Sₙ.
pub const MAX_N: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowerBoundError {
    #[error("work of {needed} items exceeds the budget of {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },
    #[error("no tuple in the exponent box of radius {box_size} satisfies the genericity conditions")]
    NotFound { box_size: u32 },
    #[error("n = {0} is outside the supported range 2..={MAX_N}")]
    UnsupportedN(usize),
    #[error("{0:?} is not a permutation")]
    InvalidPermutation(Vec<usize>),
    #[error("expected a subgroup of ℚ* with a non-torsion generator")]
    NotAnInfiniteSubgroup,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Equation(#[from] EquationError),
}

fn check_n(n: usize) -> Result<(), LowerBoundError> {
    if (2..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(LowerBoundError::UnsupportedN(n))
    }
}

/// Permutations of `0..n` in lexicographic order (identity first).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// A tuple of n permutations of `0..n` (0-based images).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermTuple {
    sigmas: Vec<Vec<usize>>,
}

impl PermTuple {
    pub fn new(sigmas: Vec<Vec<usize>>) -> Result<Self, LowerBoundError> {
        let n = sigmas.len();
        for s in &sigmas {
            let mut seen = vec![false; n];
            if s.len() != n || s.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
                return Err(LowerBoundError::InvalidPermutation(s.clone()));
            }
        }
        Ok(PermTuple { sigmas })
    }

    pub fn sigmas(&self) -> &[Vec<usize>] {
        &self.sigmas
    }

    pub fn n(&self) -> usize {
        self.sigmas.len()
    }

    /// The matrix `(p_{σᵢ(j)})`.
    pub fn matrix_at<T: Clone>(&self, p: &[T]) -> Vec<Vec<T>> {
        self.sigmas.iter().map(|s| s.iter().map(|&k| p[k].clone()).collect()).collect()
    }
}

/// Signed monomial expansion: exponent vector over X₁…Xₙ → coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DetPattern {
    pub monomials: BTreeMap<Vec<u32>, i64>,
}

impl DetPattern {
    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn eval(&self, p: &[Rational]) -> Rational {
        self.monomials
            .iter()
            .map(|(e, &c)| {
                e.iter().zip(p).fold(Rational::from_integer(c.into()), |acc, (&k, x)| acc * pow_i64(x, k as i64))
            })
            .sum()
    }
}

pub fn f_expand(pt: &PermTuple) -> DetPattern {
    let n = pt.n();
    let mut monomials: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for tau in permutations(n) {
        let mut e = vec![0u32; n];
        for (i, &t) in tau.iter().enumerate() {
            e[pt.sigmas[i][t]] += 1;
        }
        *monomials.entry(e).or_default() += sign(&tau);
    }
    monomials.retain(|_, c| *c != 0);
    DetPattern { monomials }
}

/// The permutation sets with nonvanishing determinant.
#[derive(Clone, Debug)]
pub struct TSet {
    n: usize,
    perms: Vec<Vec<usize>>,
    /// Sorted index sets into `perms`.
    sets: Vec<Vec<usize>>,
    masks: HashSet<u128>,
}

fn mask_of(indices: &[usize]) -> u128 {
    indices.iter().fold(0u128, |m, &i| m | 1 << i)
}

impl TSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Unordered representatives, lexicographic in permutation index.
    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Number of ordered tuples (each set in all n! row orders).
    pub fn ordered_count(&self) -> usize {
        self.sets.len() * factorial(self.n)
    }

    pub fn contains_set(&self, indices: &[usize]) -> bool {
        self.masks.contains(&mask_of(indices))
    }

    pub fn contains(&self, pt: &PermTuple) -> bool {
        let mut idx: Vec<usize> = pt
            .sigmas
            .iter()
            .map(|s| self.perms.iter().position(|p| p == s).expect("valid permutation"))
            .collect();
        idx.sort_unstable();
        idx.dedup();
        idx.len() == self.n && self.contains_set(&idx)
    }

    pub fn tuple(&self, set: &[usize]) -> PermTuple {
        PermTuple { sigmas: set.iter().map(|&i| self.perms[i].clone()).collect() }
    }
}

pub fn compute_t(n: usize, budget: u64) -> Result<TSet, LowerBoundError> {
    check_n(n)?;
    let perms = permutations(n);
    let needed = binomial(perms.len() as u128, n as u128);
    if needed > budget as u128 {
        return Err(LowerBoundError::BudgetExceeded { needed, cap: budget });
    }
    let candidates: Vec<Vec<usize>> = combinations(perms.len(), n).collect();
    let sets: Vec<Vec<usize>> = candidates
        .into_par_iter()
        .filter(|set| {
            let pt = PermTuple { sigmas: set.iter().map(|&i| perms[i].clone()).collect() };
            !f_expand(&pt).is_zero()
        })
        .collect();
    let masks = sets.iter().map(|s| mask_of(s)).collect();
    Ok(TSet { n, perms, sets, masks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    pub n: usize,
    pub mode: SubsetMode,
    pub subset_size: usize,
    pub subsets_checked: u64,
    /// Subsets containing no member of `T`, as permutation index sets.
    pub failures: Vec<Vec<usize>>,
    /// Number of T-sets inside a subset → how many subsets had that many.
    pub witness_histogram: BTreeMap<usize, u64>,
    /// The first witness of the first subset checked.
    pub first_witness: Option<(Vec<usize>, Vec<usize>)>,
}

fn t_members_within(t: &TSet, subset: &[usize]) -> (usize, Option<Vec<usize>>) {
    let mut count = 0;
    let mut first = None;
    for pos in combinations(subset.len(), t.n) {
        let set: Vec<usize> = pos.iter().map(|&p| subset[p]).collect();
        if t.contains_set(&set) {
            count += 1;
            first.get_or_insert(set);
        }
    }
    (count, first)
}

/// Every (sampled) set of (n−1)!+1 permutations contains n of them with
/// nonvanishing determinant. Larger sets contain a minimal one, so only the
/// minimal size is checked.
pub fn verify_subset_threshold(t: &TSet, mode: &SubsetMode, budget: u64) -> Result<ThresholdReport, LowerBoundError> {
    let n = t.n;
    let k = factorial(n - 1) + 1;
    let total = t.perms.len();
    let subsets: Vec<Vec<usize>> = match mode {
        SubsetMode::Exhaustive => {
            let needed = binomial(total as u128, k as u128);
            if needed > budget as u128 {
                return Err(LowerBoundError::BudgetExceeded { needed, cap: budget });
            }
            combinations(total, k).collect()
        }
        SubsetMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..*count)
                .map(|_| {
                    let mut s = sample(&mut rng, total, k).into_vec();
                    s.sort_unstable();
                    s
                })
                .collect()
        }
    };
    let results: Vec<(usize, Option<Vec<usize>>)> = subsets.par_iter().map(|s| t_members_within(t, s)).collect();
    let mut witness_histogram = BTreeMap::new();
    let mut failures = Vec::new();
    for (s, (count, _)) in subsets.iter().zip(&results) {
        *witness_histogram.entry(*count).or_insert(0) += 1;
        if *count == 0 {
            failures.push(s.clone());
        }
    }
    let first_witness = subsets.first().zip(results.first()).and_then(|(s, (_, w))| w.clone().map(|w| (s.clone(), w)));
    Ok(ThresholdReport {
        n,
        mode: mode.clone(),
        subset_size: k,
        subsets_checked: subsets.len() as u64,
        failures,
        witness_histogram,
        first_witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessReport {
    pub n: usize,
    pub subset_size: usize,
    pub subsets_checked: u64,
    /// How many size-(n−1)! subsets contain no T-set at all.
    pub vanishing: u64,
    pub examples: Vec<Vec<usize>>,
}

/// Exploratory: looks for size-(n−1)! subsets in which every determinant
/// vanishes. Reports what it finds without asserting either way.
pub fn explore_sharpness(t: &TSet, budget: u64, max_examples: usize) -> Result<SharpnessReport, LowerBoundError> {
    let k = factorial(t.n - 1);
    let total = t.perms.len();
    let needed = binomial(total as u128, k as u128);
    if needed > budget as u128 {
        return Err(LowerBoundError::BudgetExceeded { needed, cap: budget });
    }
    let subsets: Vec<Vec<usize>> = combinations(total, k).collect();
    let empty: Vec<bool> = subsets.par_iter().map(|s| t_members_within(t, s).0 == 0).collect();
    let hits: Vec<Vec<usize>> = subsets.iter().zip(&empty).filter(|(_, &e)| e).map(|(s, _)| s.clone()).collect();
    Ok(SharpnessReport {
        n: t.n,
        subset_size: k,
        subsets_checked: subsets.len() as u64,
        vanishing: hits.len() as u64,
        examples: hits.into_iter().take(max_examples).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenericFailure {
    /// 0-based indices of a subset with zero sum.
    ZeroSubsum(Vec<usize>),
    /// Permutation index set whose determinant vanishes at u.
    VanishingPattern(Vec<usize>),
}

fn det_small(perms: &[Vec<usize>], signs: &[i64], m: &[Vec<i128>]) -> i128 {
    perms
        .iter()
        .zip(signs)
        .map(|(p, &s)| s as i128 * p.iter().enumerate().map(|(i, &j)| m[i][j]).product::<i128>())
        .sum()
}

/// All nonempty subset sums of `u` nonzero, and `F(u) ≠ 0` for every set in `T`.
pub fn check_generic(u: &[Rational], t: &TSet) -> Result<(), GenericFailure> {
    let n = u.len();
    assert_eq!(n, t.n, "tuple length must match T");
    for mask in 1u32..1 << n {
        let s: Rational = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &u[i]).sum();
        if s.is_zero() {
            return Err(GenericFailure::ZeroSubsum((0..n).filter(|i| mask >> i & 1 == 1).collect()));
        }
    }
    // F is homogeneous, so clearing denominators keeps its zeros.
    let l = denominator_lcm(u);
    let v: Vec<BigInt> = u.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect();
    let small = v.iter().all(|x| x.abs() < BigInt::from(1u64 << 20));
    let exp = permutations(n);
    let signs: Vec<i64> = exp.iter().map(|p| sign(p)).collect();
    let vs: Vec<i128> = if small { v.iter().map(|x| x.try_into().expect("small")).collect() } else { Vec::new() };
    for set in &t.sets {
        let pt = t.tuple(set);
        let zero = if small {
            det_small(&exp, &signs, &pt.matrix_at(&vs)) == 0
        } else {
            det_exact(pt.matrix_at(&v)).is_zero()
        };
        if zero {
            return Err(GenericFailure::VanishingPattern(set.clone()));
        }
    }
    Ok(())
}

/// An equation `b⁻¹x₁ + ⋯ + b⁻¹xₙ = 1` over Γ₁ⁿ with the n! solutions `u_σ`.
#[derive(Clone, Debug)]
pub struct ExampleInstance {
    pub gamma1: FinRankGroup,
    pub n: usize,
    pub u: Vec<Rational>,
    pub b: Rational,
    pub equation: Equation,
    /// `u_σ = (u_{σ(1)}, …, u_{σ(n)})` for σ in lexicographic order.
    pub solutions: Vec<Vec<Rational>>,
}

impl ExampleInstance {
    /// Builds the instance for a given `u`, checking every `u_σ` is a
    /// non-degenerate solution.
    pub fn from_u(gamma1: &FinRankGroup, u: Vec<Rational>) -> Result<Self, LowerBoundError> {
        let n = u.len();
        check_n(n)?;
        let b: Rational = u.iter().sum();
        if b.is_zero() {
            return Err(EquationError::NotASolution { sum: "0".into() }.into());
        }
        let group = FinRankGroup::power(gamma1, n)?;
        let a = CoeffTuple::new(vec![b.recip(); n])?;
        let equation = Equation::new(a, group)?;
        let solutions: Vec<Vec<Rational>> =
            permutations(n).iter().map(|s| s.iter().map(|&i| u[i].clone()).collect()).collect();
        for x in &solutions {
            if equation.group().contains(x)?.is_none() {
                return Err(EquationError::NotInGroup.into());
            }
            let c = classify_solution(&equation, x)?;
            assert_eq!(c, Classification::NonDegenerate, "nonzero subset sums make u_σ non-degenerate");
        }
        Ok(ExampleInstance { gamma1: gamma1.clone(), n, u, b, equation, solutions })
    }
}

/// Exponent vectors of `[−k, k]^d` with max-norm exactly `k`, lexicographic.
fn shell(d: usize, k: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * k + 1) as u64;
    let total = side.pow(d as u32);
    (0..total).filter_map(move |mut idx| {
        let mut v = vec![0i64; d];
        for slot in v.iter_mut().rev() {
            *slot = (idx % side) as i64 - k;
            idx /= side;
        }
        v.iter().any(|x| x.abs() == k).then_some(v)
    })
}

/// Tuples in Γ₁ⁿ by increasing exponent max-norm, then lexicographic
/// exponents, then sign patterns (when Γ₁ has −1).
fn candidates(gamma1: &FinRankGroup, n: usize, box_size: u32) -> Result<impl Iterator<Item = Vec<Rational>> + '_, LowerBoundError> {
    if gamma1.dimension() != 1 || !gamma1.is_infinite() {
        return Err(LowerBoundError::NotAnInfiniteSubgroup);
    }
    let gens: Vec<Rational> = gamma1.generators().iter().map(|g| g[0].clone()).collect();
    let r = gens.len();
    let flips: Vec<u32> = if gamma1.sign_torsion() { (0..1u32 << n).collect() } else { vec![0] };
    Ok((0..=box_size as i64).flat_map(move |k| {
        let gens = gens.clone();
        let flips = flips.clone();
        shell(n * r, k).flat_map(move |e| {
            let base: Vec<Rational> = (0..n)
                .map(|i| (0..r).fold(Rational::one(), |acc, j| acc * pow_i64(&gens[j], e[i * r + j])))
                .collect();
            flips
                .clone()
                .into_iter()
                .map(move |m| base.iter().enumerate().map(|(i, x)| if m >> i & 1 == 1 { -x } else { x.clone() }).collect())
        })
    }))
}

/// The first tuple in scan order passing [`check_generic`].
pub fn generate_example(gamma1: &FinRankGroup, t: &TSet, box_size: u32) -> Result<ExampleInstance, LowerBoundError> {
    let n = t.n;
    let u = candidates(gamma1, n, box_size)?
        .find(|u| check_generic(u, t).is_ok())
        .ok_or(LowerBoundError::NotFound { box_size })?;
    ExampleInstance::from_u(gamma1, u)
}

/// Hyperplanes `uᵢ(X₁ + ⋯ + X_{n−1}) − (b − uᵢ)Xₙ = 0`; the i-th holds
/// exactly the `u_σ` with `σ(n) = i`.
pub fn explicit_n_cover(inst: &ExampleInstance) -> Vec<Hyperplane> {
    inst.u
        .iter()
        .map(|ui| {
            let mut normal = vec![ui.clone(); inst.n];
            normal[inst.n - 1] = -(&inst.b - ui);
            Hyperplane::from_normal(&normal).expect("b ≠ 0 keeps the normal nonzero")
        })
        .collect()
}

/// Largest number of the `u_σ` on one proper subspace; at most (n−1)!.
pub fn max_points_per_subspace(inst: &ExampleInstance) -> usize {
    let m = max_points_per_flat(&inst.solutions).expect("solutions are nonzero and of equal length");
    assert!(m <= factorial(inst.n - 1), "a proper subspace holds {m} > (n−1)! permuted solutions");
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSample {
    pub values: Vec<Rational>,
    /// The tuple each value came from.
    pub tuples: Vec<Vec<Rational>>,
    /// False when the box held fewer than the requested count.
    pub complete: bool,
}

/// Pairwise Γ₁-inequivalent sums `b = u₁ + ⋯ + uₙ` over generic `u`.
pub fn b_inequivalence_sample(gamma1: &FinRankGroup, t: &TSet, count: usize, box_size: u32) -> Result<BSample, LowerBoundError> {
    let mut values: Vec<Rational> = Vec::new();
    let mut tuples = Vec::new();
    for u in candidates(gamma1, t.n, box_size)? {
        if values.len() >= count {
            break;
        }
        if check_generic(&u, t).is_err() {
            continue;
        }
        let b: Rational = u.iter().sum();
        assert!(!b.is_zero(), "the full subset sum is nonzero");
        if !values.iter().any(|prev| equivalent_values(gamma1, prev, &b)) {
            values.push(b);
            tuples.push(u);
        }
    }
    let complete = values.len() >= count;
    Ok(BSample { values, tuples, complete })
}

/// `p/q ∈ Γ₁`; a quotient with a prime outside the basis is not.
pub fn equivalent_values(gamma1: &FinRankGroup, p: &Rational, q: &Rational) -> bool {
    match gamma1.contains(&[p / q]) {
        Ok(w) => w.is_some(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::cover::{min_cover, verify_cover};

    fn two(torsion: bool) -> FinRankGroup {
        FinRankGroup::new(1, vec![vec![int(2)]], torsion).unwrap()
    }

    #[test]
    fn two_by_two_patterns() {
        let id = vec![0, 1];
        let swap = vec![1, 0];
        assert!(f_expand(&PermTuple::new(vec![id.clone(), id.clone()]).unwrap()).is_zero());
        let p = f_expand(&PermTuple::new(vec![id, swap]).unwrap());
        let expected: BTreeMap<Vec<u32>, i64> = [(vec![2, 0], 1), (vec![0, 2], -1)].into_iter().collect();
        assert_eq!(p.monomials, expected);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(PermTuple::new(vec![vec![0, 0], vec![0, 1]]).is_err());
        assert!(PermTuple::new(vec![vec![0, 2], vec![0, 1]]).is_err());
    }

    #[test]
    fn sizes_of_t() {
        let t2 = compute_t(2, DEFAULT_PATTERN_BUDGET).unwrap();
        assert_eq!(t2.ordered_count(), 2);
        let t3 = compute_t(3, DEFAULT_PATTERN_BUDGET).unwrap();
        assert_eq!(t3.sets().len(), 20);
        assert_eq!(t3.ordered_count(), 120);
        let t4 = compute_t(4, DEFAULT_PATTERN_BUDGET).unwrap();
        assert_eq!(t4.sets().len(), 10152);
        assert!(matches!(compute_t(5, DEFAULT_PATTERN_BUDGET), Err(LowerBoundError::BudgetExceeded { .. })));
    }

    #[test]
    fn diagonal_tuples_are_outside_t() {
        let t = compute_t(3, DEFAULT_PATTERN_BUDGET).unwrap();
        for p in permutations(3) {
            assert!(!t.contains(&PermTuple::new(vec![p.clone(); 3]).unwrap()));
        }
    }

    #[test]
    fn rows_sending_i_to_one_give_f_one() {
        // σᵢ(i) = 1 for every i puts X₁ on the diagonal.
        let t = compute_t(3, DEFAULT_PATTERN_BUDGET).unwrap();
        let perms = permutations(3);
        let e1 = vec![int(1), int(0), int(0)];
        for a in perms.iter().filter(|p| p[0] == 0) {
            for b in perms.iter().filter(|p| p[1] == 0) {
                for c in perms.iter().filter(|p| p[2] == 0) {
                    let pt = PermTuple::new(vec![a.clone(), b.clone(), c.clone()]).unwrap();
                    assert_eq!(f_expand(&pt).eval(&e1), int(1));
                    assert!(t.contains(&pt));
                }
            }
        }
    }

    #[test]
    fn threshold_small_n() {
        let t2 = compute_t(2, DEFAULT_PATTERN_BUDGET).unwrap();
        let r = verify_subset_threshold(&t2, &SubsetMode::Exhaustive, DEFAULT_SUBSET_BUDGET).unwrap();
        assert_eq!((r.subsets_checked, r.failures.len()), (1, 0));
        assert_eq!(r.first_witness, Some((vec![0, 1], vec![0, 1])));
        let t3 = compute_t(3, DEFAULT_PATTERN_BUDGET).unwrap();
        let r = verify_subset_threshold(&t3, &SubsetMode::Exhaustive, DEFAULT_SUBSET_BUDGET).unwrap();
        assert_eq!((r.subset_size, r.subsets_checked, r.failures.len()), (3, 20, 0));
        let t4 = compute_t(4, DEFAULT_PATTERN_BUDGET).unwrap();
        assert!(matches!(
            verify_subset_threshold(&t4, &SubsetMode::Exhaustive, DEFAULT_SUBSET_BUDGET),
            Err(LowerBoundError::BudgetExceeded { .. })
        ));
        let r = verify_subset_threshold(&t4, &SubsetMode::Sampled { count: 2000, seed: 0 }, 0).unwrap();
        assert_eq!((r.subset_size, r.subsets_checked, r.failures.len()), (7, 2000, 0));
    }

    #[test]
    fn generic_check_examples() {
        let t = compute_t(3, DEFAULT_PATTERN_BUDGET).unwrap();
        assert_eq!(check_generic(&[int(1), int(-1), int(4)], &t), Err(GenericFailure::ZeroSubsum(vec![0, 1])));
        assert_eq!(check_generic(&[int(1), int(2), int(4)], &t), Ok(()));
        assert!(matches!(check_generic(&[int(1), int(1), int(4)], &t), Err(GenericFailure::VanishingPattern(_))));
    }

    #[test]
    fn first_examples_in_scan_order() {
        let t3 = compute_t(3, DEFAULT_PATTERN_BUDGET).unwrap();
        let inst = generate_example(&two(false), &t3, 3).unwrap();
        assert_eq!(inst.u, vec![rat(1, 2), int(1), int(2)]);
        assert_eq!(inst.b, rat(7, 2));
        assert_eq!(inst.solutions.len(), 6);
        let t4 = compute_t(4, DEFAULT_PATTERN_BUDGET).unwrap();
        let inst = generate_example(&two(false), &t4, 3).unwrap();
        assert_eq!(inst.u, vec![rat(1, 4), rat(1, 2), int(1), int(4)]);
        assert!(matches!(generate_example(&two(false), &t4, 1), Err(LowerBoundError::NotFound { box_size: 1 })));
    }

    #[test]
    fn n_two_instance() {
        let t2 = compute_t(2, DEFAULT_PATTERN_BUDGET).unwrap();
        let inst = generate_example(&two(true), &t2, 2).unwrap();
        assert_eq!(inst.solutions.len(), 2);
        assert_eq!(max_points_per_subspace(&inst), 1);
        assert_eq!(min_cover(&inst.solutions, None).unwrap().cover.size(), 2);
    }

    #[test]
    fn explicit_cover_for_one_two_four() {
        let inst = ExampleInstance::from_u(&two(false), vec![int(1), int(2), int(4)]).unwrap();
        assert_eq!(inst.b, int(7));
        let hs = explicit_n_cover(&inst);
        assert_eq!(hs[0].normal(), &[BigInt::from(1), BigInt::from(1), BigInt::from(-6)]);
        assert_eq!(verify_cover(&inst.solutions, &hs), Ok(()));
        for h in &hs {
            assert_eq!(inst.solutions.iter().filter(|x| h.contains(x)).count(), 2);
        }
        assert_eq!(max_points_per_subspace(&inst), 2);
        assert_eq!(min_cover(&inst.solutions, None).unwrap().cover.size(), 3);
    }

    #[test]
    fn b_values_are_inequivalent() {
        let t3 = compute_t(3, DEFAULT_PATTERN_BUDGET).unwrap();
        let g = two(true);
        let s = b_inequivalence_sample(&g, &t3, 5, 3).unwrap();
        assert!(s.complete);
        for (i, p) in s.values.iter().enumerate() {
            assert!(!p.is_zero());
            for q in &s.values[..i] {
                assert!(!equivalent_values(&g, p, q));
            }
        }
        assert!(equivalent_values(&g, &int(7), &rat(-7, 4)));
        assert!(!equivalent_values(&g, &int(7), &int(11)));
    }

    #[test]
    fn sharpness_small_n() {
        let t3 = compute_t(3, DEFAULT_PATTERN_BUDGET).unwrap();
        let r = explore_sharpness(&t3, DEFAULT_SUBSET_BUDGET, 3).unwrap();
        // Two permutations never give three distinct rows.
        assert_eq!((r.subsets_checked, r.vanishing), (15, 15));
    }
}
