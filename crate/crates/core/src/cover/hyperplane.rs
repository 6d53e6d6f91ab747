use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::rational::{primitive_integer_vector, Rational};

/// Hyperplane through the origin, stored by its primitive integer normal
/// with first nonzero entry positive; the form is unique per hyperplane.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<BigInt>,
}

impl Hyperplane {
    /// `None` when the normal is zero.
    pub fn from_normal(normal: &[Rational]) -> Option<Self> {
        if normal.iter().all(Zero::is_zero) {
            return None;
        }
        Some(Hyperplane { normal: primitive_integer_vector(normal) })
    }

    pub fn from_integer_normal(normal: &[BigInt]) -> Option<Self> {
        let q: Vec<Rational> = normal.iter().cloned().map(Rational::from_integer).collect();
        Self::from_normal(&q)
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        self.eval(point).is_zero()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(point)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, x)| x * c)
            .sum()
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.normal.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let coef = if mag == BigInt::from(1) { String::new() } else { mag.to_string() };
            if first {
                write!(f, "{sign}{coef}X{}", i + 1)?;
            } else {
                write!(f, " {sign} {coef}X{}", i + 1)?;
            }
            first = false;
        }
        write!(f, " = 0")
    }
}
