//! Laurent polynomials `λ^offset · body(λ)` with a normalized body.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::rational::{pow_i64, Rational};

/// `body` has a nonzero constant term; the zero polynomial has offset 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    offset: i64,
    body: UniPoly,
}

impl LaurentPoly {
    pub fn new(offset: i64, body: UniPoly) -> Self {
        if body.is_zero() {
            return Self::zero();
        }
        let k = body.low_order();
        LaurentPoly { offset: offset + k as i64, body: body.unshift(k) }
    }

    pub fn zero() -> Self {
        LaurentPoly { offset: 0, body: UniPoly::zero() }
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    /// `c·λ^k`
    pub fn monomial(c: Rational, k: i64) -> Self {
        Self::new(k, UniPoly::constant(c))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self::new(0, p)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn body(&self) -> &UniPoly {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Coefficient of `λ^k`.
    pub fn coeff(&self, k: i64) -> Rational {
        let idx = k - self.offset;
        if idx < 0 {
            return Rational::zero();
        }
        self.body.coeffs().get(idx as usize).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.body
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.offset + i as i64, c))
    }

    /// Evaluation at a nonzero rational.
    pub fn eval(&self, x: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        self.body.eval(x) * pow_i64(x, self.offset)
    }

    /// `λ^k · self` as an ordinary polynomial; requires `k + offset ≥ 0`.
    pub fn to_poly_shifted(&self, k: i64) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let s = self.offset + k;
        assert!(s >= 0, "shift leaves negative powers of λ");
        self.body.shift(s as usize)
    }
}

pub fn laurent_is_zero(p: &LaurentPoly) -> bool {
    p.is_zero()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let base = self.offset.min(rhs.offset);
        let a = self.body.shift((self.offset - base) as usize);
        let b = rhs.body.shift((rhs.offset - base) as usize);
        LaurentPoly::new(base, &a + &b)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { offset: self.offset, body: -&self.body }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(self.offset + rhs.offset, &self.body * &rhs.body)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset == 0 {
            write!(f, "{}", self.body)
        } else {
            write!(f, "λ^{}·({})", self.offset, self.body)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn lam() -> LaurentPoly {
        LaurentPoly::monomial(int(1), 1)
    }

    #[test]
    fn zero_tests() {
        assert!(laurent_is_zero(&(&lam() - &lam())));
        let inv_plus_one = &LaurentPoly::monomial(int(1), -1) + &LaurentPoly::one();
        assert!(!laurent_is_zero(&inv_plus_one));
        // (λ²−1) − (λ−1)(λ+1)
        let sq = &(&lam() * &lam()) - &LaurentPoly::one();
        let prod = &(&lam() - &LaurentPoly::one()) * &(&lam() + &LaurentPoly::one());
        assert!(laurent_is_zero(&(&sq - &prod)));
    }

    #[test]
    fn normalization_factors_out_min_exponent() {
        let p = LaurentPoly::new(-3, UniPoly::new(vec![int(0), int(0), int(5), int(1)]));
        assert_eq!(p.offset(), -1);
        assert_eq!(p.coeff(-1), int(5));
        assert_eq!(p.coeff(0), int(1));
        assert_eq!(LaurentPoly::zero().offset(), 0);
        assert_eq!(&p - &p, LaurentPoly::zero());
    }

    #[test]
    fn evaluation_handles_negative_powers() {
        let p = &LaurentPoly::monomial(int(3), -2) + &lam();
        assert_eq!(p.eval(&int(2)), crate::arith::rational::rat(3, 4) + int(2));
    }
}
