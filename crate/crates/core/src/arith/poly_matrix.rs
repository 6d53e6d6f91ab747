//! Matrices over ℚ[λ, λ⁻¹]: exact minors and polynomial kernel vectors.

use num_traits::One;

use super::laurent::LaurentPoly;
use super::matrix::{bareiss, det_exact};
use super::poly::{poly_gcd, UniPoly};
use super::rational::Rational;
use super::ArithError;

/// Row-major matrix of Laurent polynomials.
pub type LaurentMatrix = Vec<Vec<LaurentPoly>>;

/// Largest size for which minors are expanded by cofactors; larger ones go
/// through fraction-free elimination over ℚ[λ].
pub const COFACTOR_LIMIT: usize = 5;

/// Exact determinant of a square Laurent matrix.
pub fn laurent_det(a: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = a.len();
    if n <= COFACTOR_LIMIT {
        let cols: Vec<usize> = (0..n).collect();
        cofactor(a, 0, &cols)
    } else {
        let (rows, shift) = shift_to_polys(a);
        LaurentPoly::new(-shift, det_exact(rows))
    }
}

fn cofactor(a: &[Vec<LaurentPoly>], row: usize, cols: &[usize]) -> LaurentPoly {
    if cols.is_empty() {
        return LaurentPoly::one();
    }
    let mut acc = LaurentPoly::zero();
    for (k, &c) in cols.iter().enumerate() {
        let e = &a[row][c];
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e * &cofactor(a, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Multiplies each row by the power of λ that clears its negative
/// exponents. Returns the polynomial rows and the total exponent added.
fn shift_to_polys(a: &[Vec<LaurentPoly>]) -> (Vec<Vec<UniPoly>>, i64) {
    let mut total = 0;
    let rows = a
        .iter()
        .map(|row| {
            let k = -row.iter().filter(|e| !e.is_zero()).map(LaurentPoly::offset).min().unwrap_or(0);
            total += k;
            row.iter().map(|e| e.to_poly_shifted(k)).collect()
        })
        .collect();
    (rows, total)
}

pub fn eval_matrix(a: &[Vec<LaurentPoly>], x: &Rational) -> Vec<Vec<Rational>> {
    a.iter().map(|r| r.iter().map(|e| e.eval(x)).collect()).collect()
}

/// A nonzero polynomial vector `v` with `a·v = 0` identically, its entries
/// coprime (no common zero) and its first nonzero entry monic.
pub fn poly_kernel_vector(a: &[Vec<LaurentPoly>], cols: usize) -> Result<Vec<UniPoly>, ArithError> {
    let (rows, _) = shift_to_polys(a);
    let e = bareiss(rows, cols);
    let r = e.pivots.len();
    let Some(free) = (0..cols).find(|c| !e.pivots.contains(c)) else {
        return Err(ArithError::FullRank);
    };
    let mut support: Vec<usize> = e.pivots.clone();
    support.push(free);
    support.sort_unstable();

    // Generalized Cramer rule on the r × (r+1) block of pivot rows.
    let mut v = vec![UniPoly::zero(); cols];
    for (j, &col) in support.iter().enumerate() {
        let minor: Vec<Vec<UniPoly>> = e.rows[..r]
            .iter()
            .map(|row| support.iter().filter(|&&c| c != col).map(|&c| row[c].clone()).collect())
            .collect();
        let d = det_exact(minor);
        v[col] = if j % 2 == 0 { d } else { -&d };
    }

    let g = v.iter().fold(UniPoly::zero(), |acc, p| poly_gcd(&acc, p));
    debug_assert!(!g.is_zero());
    let mut v: Vec<UniPoly> = v.iter().map(|p| p.exact_div(&g).expect("gcd divides")).collect();
    let lead = v
        .iter()
        .find(|p| !p.is_zero())
        .and_then(|p| p.leading().cloned())
        .unwrap_or_else(Rational::one);
    let inv = lead.recip();
    for p in v.iter_mut() {
        *p = p.scale(&inv);
    }
    Ok(v)
}

/// `a·v` as Laurent polynomials.
pub fn apply(a: &[Vec<LaurentPoly>], v: &[UniPoly]) -> Vec<LaurentPoly> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(LaurentPoly::zero(), |acc, (e, p)| &acc + &(e * &LaurentPoly::from_poly(p.clone())))
        })
        .collect()
}

pub fn is_zero_vector(v: &[LaurentPoly]) -> bool {
    v.iter().all(LaurentPoly::is_zero)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn mono(c: i64, k: i64) -> LaurentPoly {
        LaurentPoly::monomial(int(c), k)
    }

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(poly_kernel_vector(&[vec![mono(1, 1), mono(1, 1)]], 2).unwrap(), vec![poly(&[1]), poly(&[-1])]);
        assert_eq!(poly_kernel_vector(&[vec![mono(1, 1), mono(1, 0)]], 2).unwrap(), vec![poly(&[1]), poly(&[0, -1])]);
        let m = vec![vec![mono(1, 1), mono(1, 0)], vec![mono(1, 2), mono(1, 1)]];
        let v = poly_kernel_vector(&m, 2).unwrap();
        assert_eq!(v, vec![poly(&[1]), poly(&[0, -1])]);
        assert!(is_zero_vector(&apply(&m, &v)));
    }

    #[test]
    fn full_rank_is_reported() {
        let m = vec![vec![mono(1, 1), mono(1, 0)], vec![mono(1, 0), mono(1, 1)]];
        assert!(matches!(poly_kernel_vector(&m, 2), Err(ArithError::FullRank)));
    }

    #[test]
    fn determinant_routes_agree() {
        // 6×6 goes through elimination; compare with its cofactor expansion.
        let m: LaurentMatrix = (0..6)
            .map(|i| (0..6).map(|j| mono(((i * 7 + j * 3) % 5) as i64 - 2, (i as i64 - j as i64) % 3)).collect())
            .collect();
        let cols: Vec<usize> = (0..6).collect();
        assert_eq!(laurent_det(&m), cofactor(&m, 0, &cols));
        let x = crate::arith::rational::rat(3, 2);
        let numeric = crate::arith::matrix::RatMatrix::from_rows(6, &eval_matrix(&m, &x)).unwrap().det().unwrap();
        assert_eq!(laurent_det(&m).eval(&x), numeric);
    }
}
