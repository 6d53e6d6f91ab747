//! Fraction-free exact linear algebra over ℚ and ℚ[λ].

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::rational::{denominator_lcm, Rational};
use super::ArithError;

/// A commutative ring with exact division, enough for Bareiss elimination.
pub trait ExactDomain: Clone {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    /// `self / d`, where `d` is known to divide `self`.
    fn div_exact(&self, d: &Self) -> Self;
}

impl ExactDomain for BigInt {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn div_exact(&self, d: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % d)));
        self / d
    }
}

impl ExactDomain for UniPoly {
    fn zero_elem() -> Self {
        UniPoly::zero()
    }
    fn one_elem() -> Self {
        UniPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn div_exact(&self, d: &Self) -> Self {
        self.exact_div(d).expect("Bareiss step produced an inexact polynomial division")
    }
}

/// Result of fraction-free elimination: the first `pivots.len()` rows of
/// `rows` are in echelon form, with row `k` having its leading entry in
/// column `pivots[k]`.
pub struct Echelon<T> {
    pub rows: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
    /// Parity of the row swaps performed.
    pub swaps_odd: bool,
}

/// Bareiss elimination. Every intermediate entry is a minor of the input,
/// so all divisions are exact.
pub fn bareiss<T: ExactDomain>(mut a: Vec<Vec<T>>, cols: usize) -> Echelon<T> {
    let nrows = a.len();
    let mut prev = T::one_elem();
    let mut pivots = Vec::new();
    let mut swaps_odd = false;
    let mut r = 0;
    for col in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][col].is_zero_elem()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps_odd = !swaps_odd;
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            for j in col + 1..cols {
                let v = pivot_row[col].mul_elem(&row[j]).sub_elem(&row[col].mul_elem(&pivot_row[j]));
                row[j] = v.div_exact(&prev);
            }
            row[col] = T::zero_elem();
        }
        prev = a[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    Echelon { rows: a, pivots, swaps_odd }
}

/// Determinant of a square matrix given by rows.
pub fn det_exact<T: ExactDomain>(a: Vec<Vec<T>>) -> T {
    let n = a.len();
    if n == 0 {
        return T::one_elem();
    }
    let e = bareiss(a, n);
    if e.pivots.len() < n {
        return T::zero_elem();
    }
    let d = e.rows[n - 1][n - 1].clone();
    if e.swaps_odd {
        T::zero_elem().sub_elem(&d)
    } else {
        d
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, ArithError> {
        if entries.len() != rows * cols {
            return Err(ArithError::ShapeMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    /// Builds from row vectors; `cols` is required so empty inputs are well-formed.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self, ArithError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ArithError::ShapeMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(RatMatrix { rows: rows.len(), cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rows scaled by their denominator lcm; same rank and kernel.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let r = self.row(i);
                let l = denominator_lcm(r);
                r.iter().map(|q| (q * &l).to_integer()).collect()
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn det(&self) -> Result<Rational, ArithError> {
        if self.rows != self.cols {
            return Err(ArithError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut scale = BigInt::one();
        for i in 0..self.rows {
            scale *= denominator_lcm(self.row(i));
        }
        let d = det_exact(self.integer_rows());
        Ok(Rational::new(d, scale))
    }
}

pub fn rank_of(m: &RatMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    bareiss(m.integer_rows(), m.cols).pivots.len()
}

/// Basis of the right kernel, one vector per non-pivot column (in column
/// order), each scaled so its first nonzero entry is positive.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let cols = m.cols;
    if m.rows == 0 {
        return (0..cols)
            .map(|f| (0..cols).map(|j| if j == f { Rational::one() } else { Rational::zero() }).collect())
            .collect();
    }
    let e = bareiss(m.integer_rows(), cols);
    let r = e.pivots.len();
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    free.into_iter()
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for k in (0..r).rev() {
                let p = e.pivots[k];
                let row = &e.rows[k];
                let s: Rational = (p + 1..cols)
                    .filter(|&j| !row[j].is_zero() && !v[j].is_zero())
                    .map(|j| Rational::from_integer(row[j].clone()) * &v[j])
                    .sum();
                v[p] = -s / Rational::from_integer(row[p].clone());
            }
            if v.iter().find(|q| !q.is_zero()).is_some_and(|q| q.is_negative()) {
                for q in v.iter_mut() {
                    *q = -&*q;
                }
            }
            v
        })
        .collect()
}
