//! Finitely generated subgroups of (ℚ*)ⁿ as integer lattices of exponent
//! vectors over a fixed prime basis, plus sign torsion.

mod hnf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::rational::{pow_i64, Rational};

pub use hnf::Hnf;

/// Trial division bound used when building a basis from generators.
const TRIAL_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("prime factor {factor} lies outside the basis")]
    OutsideBasis { factor: BigInt },
    #[error("zero is not an element of ℚ*")]
    ZeroCoordinate,
    #[error("expected a tuple of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("could not factor {0} by trial division")]
    FactorizationTooHard(BigInt),
    #[error("exponent witness does not fit in 64 bits")]
    WitnessOverflow,
}

/// Strictly increasing list of primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrimeBasis {
    primes: Vec<u64>,
}

impl PrimeBasis {
    /// Sorts and deduplicates; callers supply primes.
    pub fn new(mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        primes.dedup();
        debug_assert!(primes.iter().all(|&p| is_prime(p)));
        PrimeBasis { primes }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Prime factors of `|m|` (without multiplicity).
fn prime_support(m: &BigInt) -> Result<Vec<u64>, LatticeError> {
    let mut m = m.abs();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT && BigInt::from(d) * BigInt::from(d) <= m {
        let bd = BigInt::from(d);
        if (&m % &bd).is_zero() {
            out.push(d);
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        // Anything left is prime once it is below the square of the bound.
        if m < BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) {
            out.push(m.to_u64().ok_or_else(|| LatticeError::FactorizationTooHard(m.clone()))?);
        } else {
            return Err(LatticeError::FactorizationTooHard(m));
        }
    }
    Ok(out)
}

/// Smallest prime factor of `m > 1` (or `m` itself when trial division gives up).
fn smallest_factor(m: &BigInt) -> BigInt {
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT && BigInt::from(d) * BigInt::from(d) <= *m {
        if (m % BigInt::from(d)).is_zero() {
            return BigInt::from(d);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    m.clone()
}

/// `sign · ∏ pᵢ^{eᵢ}` over a [`PrimeBasis`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub negative: bool,
    pub exponents: Vec<i64>,
}

impl GroupElement {
    pub fn one(basis_len: usize) -> Self {
        GroupElement { negative: false, exponents: vec![0; basis_len] }
    }

    pub fn to_rational(&self, basis: &PrimeBasis) -> Rational {
        let mut q = Rational::one();
        for (&p, &e) in basis.primes.iter().zip(&self.exponents) {
            if e != 0 {
                q *= pow_i64(&Rational::from_integer(BigInt::from(p)), e);
            }
        }
        if self.negative {
            -q
        } else {
            q
        }
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            negative: self.negative ^ other.negative,
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn pow(&self, z: i64) -> GroupElement {
        GroupElement {
            negative: self.negative && z.rem_euclid(2) == 1,
            exponents: self.exponents.iter().map(|e| e * z).collect(),
        }
    }
}

pub fn factorize(q: &Rational, basis: &PrimeBasis) -> Result<GroupElement, LatticeError> {
    let (e, rest) = split_basis(q, basis)?;
    for part in [rest.numer(), rest.denom()] {
        if !part.is_one() {
            return Err(LatticeError::OutsideBasis { factor: smallest_factor(part) });
        }
    }
    Ok(e)
}

/// `q = e · rest` with `e` over the basis (carrying the sign) and `rest > 0`
/// free of basis primes.
fn split_basis(q: &Rational, basis: &PrimeBasis) -> Result<(GroupElement, Rational), LatticeError> {
    if q.is_zero() {
        return Err(LatticeError::ZeroCoordinate);
    }
    let mut exponents = vec![0i64; basis.len()];
    let mut num = q.numer().abs();
    let mut den = q.denom().clone();
    for (k, &p) in basis.primes.iter().enumerate() {
        let bp = BigInt::from(p);
        while (&num % &bp).is_zero() {
            num /= &bp;
            exponents[k] += 1;
        }
        while (&den % &bp).is_zero() {
            den /= &bp;
            exponents[k] -= 1;
        }
    }
    Ok((GroupElement { negative: q.is_negative(), exponents }, Rational::new(num, den)))
}

/// Exponents of the generators together with torsion signs: the element
/// `t · ∏ g_k^{z_k}` where `t_i = -1` exactly when `flip[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Witness {
    pub z: Vec<i64>,
    pub flip: Vec<bool>,
}

/// A tuple of nonzero rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffTuple(Vec<Rational>);

impl CoeffTuple {
    pub fn new(a: Vec<Rational>) -> Result<Self, LatticeError> {
        if a.iter().any(Zero::is_zero) {
            return Err(LatticeError::ZeroCoordinate);
        }
        Ok(CoeffTuple(a))
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinatewise product.
    pub fn mul(&self, u: &[Rational]) -> CoeffTuple {
        CoeffTuple(self.0.iter().zip(u).map(|(a, b)| a * b).collect())
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }
}

impl fmt::Display for CoeffTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(crate::arith::format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Subgroup of (ℚ*)ⁿ generated by finitely many tuples, optionally
/// containing every sign pattern {±1}ⁿ.
///
/// Elements are encoded as vectors in ℤ^{n·m + n}: for each coordinate the
/// exponent vector over the m basis primes, followed by the n sign bits.
/// The lattice is spanned by the encoded generators and by `2·e_sign` for
/// every sign slot (`e_sign` itself with sign torsion), so membership and
/// fundamental-domain reduction are both a single Hermite normal form pass.
#[derive(Clone, Debug)]
pub struct FinRankGroup {
    n: usize,
    basis: PrimeBasis,
    generators: Vec<Vec<Rational>>,
    elements: Vec<Vec<GroupElement>>,
    sign_torsion: bool,
    exponent_matrix: Vec<Vec<BigInt>>,
    hnf: Hnf,
}

impl FinRankGroup {
    /// Builds the group; the prime basis is the support of all generators.
    pub fn new(n: usize, generators: Vec<Vec<Rational>>, sign_torsion: bool) -> Result<Self, LatticeError> {
        let mut primes = Vec::new();
        for g in &generators {
            if g.len() != n {
                return Err(LatticeError::DimensionMismatch { expected: n, found: g.len() });
            }
            for q in g {
                if q.is_zero() {
                    return Err(LatticeError::ZeroCoordinate);
                }
                primes.extend(prime_support(q.numer())?);
                primes.extend(prime_support(q.denom())?);
            }
        }
        Self::with_basis(n, PrimeBasis::new(primes), generators, sign_torsion)
    }

    /// Builds the group over a caller-chosen basis, which must cover the generators.
    pub fn with_basis(
        n: usize,
        basis: PrimeBasis,
        generators: Vec<Vec<Rational>>,
        sign_torsion: bool,
    ) -> Result<Self, LatticeError> {
        let elements = generators
            .iter()
            .map(|g| {
                if g.len() != n {
                    return Err(LatticeError::DimensionMismatch { expected: n, found: g.len() });
                }
                g.iter().map(|q| factorize(q, &basis)).collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = basis.len();
        let dim = n * m + n;
        let mut columns: Vec<Vec<BigInt>> = elements.iter().map(|e| encode(e, m)).collect();
        let exponent_matrix = columns.clone();
        let torsion_step = if sign_torsion { 1 } else { 2 };
        for i in 0..n {
            let mut c = vec![BigInt::zero(); dim];
            c[n * m + i] = BigInt::from(torsion_step);
            columns.push(c);
        }
        let hnf = Hnf::new(dim, &columns);
        Ok(FinRankGroup { n, basis, generators, elements, sign_torsion, exponent_matrix, hnf })
    }

    /// Γ₁ⁿ for a subgroup Γ₁ ⊆ ℚ* (a dimension-1 group).
    pub fn power(gamma1: &FinRankGroup, n: usize) -> Result<Self, LatticeError> {
        assert_eq!(gamma1.n, 1, "power expects a subgroup of ℚ*");
        let mut gens = Vec::new();
        for g in &gamma1.generators {
            for i in 0..n {
                let mut t = vec![Rational::one(); n];
                t[i] = g[0].clone();
                gens.push(t);
            }
        }
        Self::with_basis(n, gamma1.basis.clone(), gens, gamma1.sign_torsion)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &PrimeBasis {
        &self.basis
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    pub fn generator_elements(&self) -> &[Vec<GroupElement>] {
        &self.elements
    }

    /// Number of generators (an upper bound for the rank).
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Rank of Γ: the sign columns always contribute exactly n to the
    /// lattice rank, the generators the rest.
    pub fn rank(&self) -> usize {
        self.hnf.rank() - self.n
    }

    pub fn sign_torsion(&self) -> bool {
        self.sign_torsion
    }

    /// Encoded generator columns, one per generator.
    pub fn exponent_matrix(&self) -> &[Vec<BigInt>] {
        &self.exponent_matrix
    }

    pub fn hnf(&self) -> &Hnf {
        &self.hnf
    }

    /// Whether the group has an element of infinite order.
    pub fn is_infinite(&self) -> bool {
        self.elements.iter().any(|g| g.iter().any(|e| e.exponents.iter().any(|&x| x != 0)))
    }

    fn check_len(&self, x: &[Rational]) -> Result<(), LatticeError> {
        if x.len() != self.n {
            return Err(LatticeError::DimensionMismatch { expected: self.n, found: x.len() });
        }
        Ok(())
    }

    fn encode_tuple(&self, x: &[Rational]) -> Result<Vec<BigInt>, LatticeError> {
        self.check_len(x)?;
        let els = x.iter().map(|q| factorize(q, &self.basis)).collect::<Result<Vec<_>, _>>()?;
        Ok(encode(&els, self.basis.len()))
    }

    /// Membership test with an exponent witness.
    pub fn contains(&self, x: &[Rational]) -> Result<Option<Witness>, LatticeError> {
        let v = self.encode_tuple(x)?;
        let Some(coeffs) = self.hnf.solve(&v) else {
            return Ok(None);
        };
        let r = self.generators.len();
        let z = coeffs[..r]
            .iter()
            .map(|c| c.to_i64().ok_or(LatticeError::WitnessOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        let product = self.element(&Witness { z: z.clone(), flip: vec![false; self.n] });
        let flip = x.iter().zip(&product).map(|(a, b)| a.is_negative() != b.is_negative()).collect();
        Ok(Some(Witness { z, flip }))
    }

    /// `t · ∏ g_k^{z_k}` as rationals.
    pub fn element(&self, w: &Witness) -> Vec<Rational> {
        let m = self.basis.len();
        (0..self.n)
            .map(|i| {
                let mut e = GroupElement::one(m);
                for (g, &z) in self.elements.iter().zip(&w.z) {
                    if z != 0 {
                        e = e.mul(&g[i].pow(z));
                    }
                }
                if w.flip.get(i).copied().unwrap_or(false) {
                    e.negative = !e.negative;
                }
                e.to_rational(&self.basis)
            })
            .collect()
    }

    /// Whether `b = u·a` for some `u ∈ Γ`; a quotient with a prime outside
    /// the basis is never in Γ.
    pub fn gamma_equivalent(&self, a: &CoeffTuple, b: &CoeffTuple) -> Result<bool, LatticeError> {
        self.check_len(a.as_slice())?;
        self.check_len(b.as_slice())?;
        let q: Vec<Rational> = b.as_slice().iter().zip(a.as_slice()).map(|(x, y)| x / y).collect();
        match self.contains(&q) {
            Ok(w) => Ok(w.is_some()),
            Err(LatticeError::OutsideBasis { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Representative of the class `Γ·a`: the basis part of `a` is reduced
    /// into the fundamental domain of the lattice, and prime factors outside
    /// the basis (which Γ cannot change) are kept as they are.
    pub fn canonical_rep(&self, a: &CoeffTuple) -> Result<CoeffTuple, LatticeError> {
        self.check_len(a.as_slice())?;
        let m = self.basis.len();
        let (inside, outside): (Vec<GroupElement>, Vec<Rational>) = a
            .as_slice()
            .iter()
            .map(|q| split_basis(q, &self.basis))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .unzip();
        let red = self.hnf.reduce(&encode(&inside, m));
        let out = (0..self.n)
            .map(|i| {
                let e = GroupElement {
                    negative: red[self.n * m + i].is_odd(),
                    exponents: red[i * m..(i + 1) * m]
                        .iter()
                        .map(|x| x.to_i64().ok_or(LatticeError::WitnessOverflow))
                        .collect::<Result<Vec<_>, _>>()?,
                };
                Ok(e.to_rational(&self.basis) * &outside[i])
            })
            .collect::<Result<Vec<_>, LatticeError>>()?;
        CoeffTuple::new(out)
    }
}

fn encode(tuple: &[GroupElement], m: usize) -> Vec<BigInt> {
    let n = tuple.len();
    let mut v = vec![BigInt::zero(); n * m + n];
    for (i, e) in tuple.iter().enumerate() {
        for (k, &x) in e.exponents.iter().enumerate() {
            v[i * m + k] = BigInt::from(x);
        }
        if e.negative {
            v[n * m + i] = BigInt::one();
        }
    }
    v
}
