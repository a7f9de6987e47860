//! Exact rational scores.
//!
//! Every node of a scoring game carries a [`Score`]: Left's points minus
//! Right's points at that position. Outcome classification hinges on exact
//! sign tests, so scores are arbitrary-precision rationals in lowest terms —
//! never floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

/// An exact rational score, stored in lowest terms with positive denominator.
///
/// Cloning is cheap (shared allocation); all arithmetic produces fresh
/// values. `Ord` is the usual numeric order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Score(Arc<BigRational>);

impl Score {
    pub fn new(numerator: i64, denominator: i64) -> Score {
        assert!(denominator != 0, "zero denominator");
        Score(Arc::new(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        )))
    }

    pub fn integer(n: i64) -> Score {
        Score(Arc::new(BigRational::from_integer(BigInt::from(n))))
    }

    pub fn zero() -> Score {
        Score(Arc::new(BigRational::zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Sign of the score relative to zero.
    pub fn sign(&self) -> Ordering {
        if self.0.is_zero() {
            Ordering::Equal
        } else if self.0.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Score {
    type Output = Score;
    fn add(self, rhs: &Score) -> Score {
        Score(Arc::new(&*self.0 + &*rhs.0))
    }
}

impl Sub for &Score {
    type Output = Score;
    fn sub(self, rhs: &Score) -> Score {
        Score(Arc::new(&*self.0 - &*rhs.0))
    }
}

impl Neg for &Score {
    type Output = Score;
    fn neg(self) -> Score {
        Score(Arc::new(-&*self.0))
    }
}

/// Error produced when a rational literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal: {0}")]
pub struct ScoreParseError(pub String);

impl FromStr for Score {
    type Err = ScoreParseError;

    /// Accepts integers (`-3`), fractions (`1/2`, `-7/4`) and terminating
    /// decimals (`2.5`, `-0.125`). Anything else — including a zero
    /// denominator — is rejected.
    fn from_str(s: &str) -> Result<Score, ScoreParseError> {
        let bad = || ScoreParseError(s.to_string());
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((numer, denom)) = s.split_once('/') {
            let n = BigInt::from_str(numer).map_err(|_| bad())?;
            let d = BigInt::from_str(denom).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Score(Arc::new(BigRational::new(n, d))));
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = whole.starts_with('-');
            let digits = whole.strip_prefix(['-', '+']).unwrap_or(whole);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let whole_part = BigInt::from_str(whole).map_err(|_| bad())?;
            let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
            let mut denom = BigInt::one();
            for _ in 0..frac.len() {
                denom *= 10;
            }
            let magnitude = whole_part.abs() * &denom + frac_part;
            let signed = if negative { -magnitude } else { magnitude };
            return Ok(Score(Arc::new(BigRational::new(signed, denom))));
        }
        let n = BigInt::from_str(s).map_err(|_| bad())?;
        Ok(Score(Arc::new(BigRational::from_integer(n))))
    }
}
