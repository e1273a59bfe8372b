use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// An exact element of (1/4)ℤ, stored as its numerator over 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QuarterInt(i128);

impl QuarterInt {
    pub const ZERO: QuarterInt = QuarterInt(0);

    /// The value `quarters / 4`.
    pub const fn from_quarters(quarters: i128) -> Self {
        QuarterInt(quarters)
    }

    pub const fn from_int(value: i128) -> Self {
        QuarterInt(4 * value)
    }

    pub const fn from_halves(halves: i128) -> Self {
        QuarterInt(2 * halves)
    }

    /// Numerator over 4, i.e. `4t`.
    pub const fn quarters(self) -> i128 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 4 == 0
    }

    pub fn abs(self) -> Self {
        QuarterInt(self.0.abs())
    }

    /// `self / d` if the quotient is again a quarter-integer.
    pub fn div_exact(self, d: i128) -> Option<Self> {
        if d != 0 && self.0 % d == 0 {
            Some(QuarterInt(self.0 / d))
        } else {
            None
        }
    }

    pub fn checked_mul(self, k: i128) -> Option<Self> {
        self.0.checked_mul(k).map(QuarterInt)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 4.0
    }

    /// The exact quarter-integer equal to `x`, if there is one.
    pub fn from_f64(x: f64) -> Option<Self> {
        let q = x * 4.0;
        // 2^100 keeps the cast inside i128 with room for later arithmetic.
        if q.is_finite() && q.fract() == 0.0 && q.abs() < 2f64.powi(100) {
            Some(QuarterInt(q as i128))
        } else {
            None
        }
    }
}

impl Add for QuarterInt {
    type Output = QuarterInt;
    fn add(self, rhs: QuarterInt) -> QuarterInt {
        QuarterInt(self.0 + rhs.0)
    }
}

impl Sub for QuarterInt {
    type Output = QuarterInt;
    fn sub(self, rhs: QuarterInt) -> QuarterInt {
        QuarterInt(self.0 - rhs.0)
    }
}

impl Neg for QuarterInt {
    type Output = QuarterInt;
    fn neg(self) -> QuarterInt {
        QuarterInt(-self.0)
    }
}

impl Mul<i128> for QuarterInt {
    type Output = QuarterInt;
    fn mul(self, rhs: i128) -> QuarterInt {
        QuarterInt(self.0 * rhs)
    }
}

impl Mul<QuarterInt> for i128 {
    type Output = QuarterInt;
    fn mul(self, rhs: QuarterInt) -> QuarterInt {
        QuarterInt(self * rhs.0)
    }
}

/// Lowest terms: `5`, `-3/2`, `1/4`.
impl fmt::Display for QuarterInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.0;
        if q % 4 == 0 {
            write!(f, "{}", q / 4)
        } else if q % 2 == 0 {
            write!(f, "{}/2", q / 2)
        } else {
            write!(f, "{}/4", q)
        }
    }
}

impl Serialize for QuarterInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Accepts integers and fractions `a/b` whose value lies in (1/4)ℤ.
impl FromStr for QuarterInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| Error::ParseFrequency {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s_trim = s.trim();
        let (num, den) = match s_trim.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s_trim, "1"),
        };
        let num: i128 = num
            .parse()
            .map_err(|_| fail("numerator is not an integer"))?;
        let den: i128 = den
            .parse()
            .map_err(|_| fail("denominator is not an integer"))?;
        if den == 0 {
            return Err(fail("zero denominator"));
        }
        let scaled = num
            .checked_mul(4)
            .ok_or_else(|| fail("value out of range"))?;
        if scaled % den != 0 {
            return Err(fail("value is not a multiple of 1/4"));
        }
        Ok(QuarterInt(scaled / den))
    }
}

/// A frequency argument of μ̂: either exact in (1/4)ℤ or an arbitrary real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frequency {
    Exact(QuarterInt),
    Real(f64),
}

impl Frequency {
    pub fn to_f64(self) -> f64 {
        match self {
            Frequency::Exact(q) => q.to_f64(),
            Frequency::Real(x) => x,
        }
    }
}

impl From<QuarterInt> for Frequency {
    fn from(q: QuarterInt) -> Self {
        Frequency::Exact(q)
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Frequency::Exact(q) => write!(f, "{q}"),
            Frequency::Real(x) => write!(f, "{x}"),
        }
    }
}

/// Integers and `a/b` fractions parse exactly; anything with a decimal point
/// or exponent is a real frequency and only takes numeric paths.
impl FromStr for Frequency {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(q) = s.parse::<QuarterInt>() {
            return Ok(Frequency::Exact(q));
        }
        if s.contains('/') {
            // a fraction that is not a quarter-integer
            let (a, b) = s.split_once('/').unwrap_or((s, "1"));
            let a: f64 = a.trim().parse().map_err(|_| Error::ParseFrequency {
                input: s.to_string(),
                reason: "numerator is not a number".into(),
            })?;
            let b: f64 = b.trim().parse().map_err(|_| Error::ParseFrequency {
                input: s.to_string(),
                reason: "denominator is not a number".into(),
            })?;
            let x = a / b;
            return if x.is_finite() {
                Ok(Frequency::Real(x))
            } else {
                Err(Error::ParseFrequency {
                    input: s.to_string(),
                    reason: "not finite".into(),
                })
            };
        }
        match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Frequency::Real(x)),
            _ => Err(Error::ParseFrequency {
                input: s.to_string(),
                reason: "not an integer, quarter fraction or finite decimal".into(),
            }),
        }
    }
}
