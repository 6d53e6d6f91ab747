//! Exact rationals and the string form used by every file format.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational string")]
    Empty,
    #[error("malformed rational {0:?}: expected an integer or p/q")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"12"`, `"-8/9"` or `"−8/9"` (unicode minus). Decimals and floats
/// are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim().replace('\u{2212}', "-");
    if t.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(s.to_string());
    let parse_int = |p: &str| -> Result<BigInt, ParseRationalError> {
        let p = p.trim();
        let digits = p.strip_prefix(['-', '+']).unwrap_or(p);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        p.parse::<BigInt>().map_err(|_| malformed())
    };
    match t.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(&t)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise, ASCII minus.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Least common multiple of the denominators of `v` (1 for an empty slice).
pub fn denominator_lcm(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a rational vector to the primitive integer vector on the same
/// line through the origin, with its first nonzero entry positive.
/// The zero vector maps to itself.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(v);
    let mut ints: Vec<BigInt> = v.iter().map(|q| (q * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let flip = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in ints.iter_mut() {
        *x = &*x / &g;
        if flip {
            *x = -&*x;
        }
    }
    ints
}

pub fn pow_i64(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}
