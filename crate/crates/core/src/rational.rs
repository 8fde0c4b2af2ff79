//! Exact rational helpers.
//!
//! [`ExactRational`] is `num_rational::BigRational`: arbitrary precision,
//! always gcd-reduced with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub type ExactRational = BigRational;

pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_big(n: BigInt) -> ExactRational {
    BigRational::from_integer(n)
}

/// `base^exp` as a big integer.
pub fn big_pow(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `base^exp` for a possibly negative exponent.
pub fn rat_pow(base: u64, exp: i64) -> ExactRational {
    let magnitude = big_pow(base, exp.unsigned_abs());
    if exp >= 0 {
        BigRational::from_integer(magnitude)
    } else {
        BigRational::new(BigInt::one(), magnitude)
    }
}

/// Returns the integer value of `r`, or `None` when the denominator is not 1.
pub fn as_integer(r: &ExactRational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Falling factorial `n (n-1) ... (n-r+1)`, zero when `r > n`.
pub fn falling(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    ((n - r + 1)..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Wire form of a rational: decimal strings, never floating point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&ExactRational> for RationalJson {
    fn from(r: &ExactRational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl RationalJson {
    pub fn parse(&self) -> Option<ExactRational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    }
}
