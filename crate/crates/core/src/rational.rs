//! Arbitrary-precision rational scalars.
//!
//! Thin wrapper around `num_rational::BigRational` that fixes the engine's
//! conventions: always normalized (coprime, positive denominator), checked
//! division, a total order, and hashing so rationals can key tables.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ArithError;

/// An exact rational number. Normalization is maintained by construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// Builds `num/den`, normalizing sign and common factors.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self, ArithError> {
        Self::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }

    pub fn neg(&self) -> Self {
        Rational(-self.0.clone())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Checked division; `Err(DivisionByZero)` when `other` is zero.
    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    /// Checked multiplicative inverse.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // BigRational is kept reduced with positive denominator, so the
        // (numer, denom) pair is canonical.
        self.0.numer().hash(state);
        self.0.denom().hash(state);
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    /// Parses `p` or `p/q` with optional leading minus.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n = BigInt::from_str(num.trim()).map_err(|_| ArithError::DivisionByZero)?;
            let d = BigInt::from_str(den.trim()).map_err(|_| ArithError::DivisionByZero)?;
            Rational::new(n, d)
        } else {
            let n = BigInt::from_str(s).map_err(|_| ArithError::DivisionByZero)?;
            Ok(Rational::from_bigint(n))
        }
    }
}

/// Integer square root, rounded up. Used for coefficient bounds.
pub fn sqrt_ceil(n: &BigInt) -> BigInt {
    assert!(n.sign() != Sign::Minus, "sqrt of negative");
    let r = n.sqrt();
    if &r * &r == *n {
        r
    } else {
        r + 1
    }
}
