//! Coefficient fields.
//!
//! Everything that touches coefficients (algebra elements, incidence
//! matrices) is written against [`Scalar`]. The verifiers only ever
//! instantiate it with [`crate::Rational`]; the floating point impls exist
//! for quick numerical exploration and give approximate answers.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Num + Neg<Output = Self> + Clone + Debug + Display + PartialEq + Send + Sync + 'static
{
    /// Whether arithmetic is exact. Exact scalars make rank and
    /// unitriangularity checks decisive.
    const EXACT: bool;

    fn from_bigint(n: &BigInt) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_bigint(&BigInt::from(num)) / Self::from_bigint(&BigInt::from(den))
    }

    /// Zero test used by elimination. Exact scalars compare against zero;
    /// floats use an absolute tolerance.
    fn negligible(&self) -> bool {
        self.is_zero()
    }

    /// Returns the value as an integer if it is one.
    fn to_integer(&self) -> Option<BigInt>;

    /// Parses `p`, `p/q` or (for floats) a decimal literal.
    fn parse_scalar(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().ok()?;
                let q: BigInt = q.trim().parse().ok()?;
                (!q.is_zero()).then(|| Self::from_bigint(&p) / Self::from_bigint(&q))
            }
            None => s.parse::<BigInt>().ok().map(|n| Self::from_bigint(&n)),
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(num.into(), den.into())
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer()
            .then(|| num_rational::Ratio::to_integer(self))
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_bigint(n: &BigInt) -> Self {
                n.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn negligible(&self) -> bool {
                self.abs() < $eps
            }

            fn parse_scalar(s: &str) -> Option<Self> {
                s.trim().parse::<$t>().ok().or_else(|| {
                    let (p, q) = s.split_once('/')?;
                    Some(p.trim().parse::<$t>().ok()? / q.trim().parse::<$t>().ok()?)
                })
            }

            fn to_integer(&self) -> Option<BigInt> {
                let r = self.round();
                ((self - r).abs() < $eps).then(|| BigInt::from(r as i64))
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);

/// Nonnegative integer test, used when asserting structure constants.
pub fn is_nonnegative_integer<K: Scalar>(x: &K) -> bool {
    x.to_integer().is_some_and(|n| !n.is_negative())
}
