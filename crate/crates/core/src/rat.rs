//! Exact rational truth degrees.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number, always kept in lowest terms.
///
/// Semantic values live in `[0, 1]`; the type itself does not enforce the
/// range so that intermediate grid arithmetic stays convenient. Use
/// [`Rat::parse_unit`] when reading values that must be truth degrees.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(Ratio<i64>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("value `{0}` lies outside [0, 1]")]
    OutOfRange(String),
}

impl Rat {
    pub const ZERO: Rat = Rat(Ratio::new_raw(0, 1));
    pub const ONE: Rat = Rat(Ratio::new_raw(1, 1));

    /// `numer / denom`, reduced. Panics on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Rat {
        Rat(Ratio::new(numer, denom))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn in_unit_interval(&self) -> bool {
        *self >= Rat::ZERO && *self <= Rat::ONE
    }

    /// Parses a rational and checks that it is a truth degree.
    pub fn parse_unit(s: &str) -> Result<Rat, RatError> {
        let r: Rat = s.parse()?;
        if r.in_unit_interval() {
            Ok(r)
        } else {
            Err(RatError::OutOfRange(s.to_string()))
        }
    }

    pub fn half(self) -> Rat {
        Rat(self.0 / 2)
    }
}

impl std::ops::Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}

impl std::ops::Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl std::ops::Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        Rat(self.0 / rhs.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = RatError;

    fn from_str(s: &str) -> Result<Rat, RatError> {
        let t = s.trim();
        let parse_int = |x: &str| -> Result<i64, RatError> {
            let x = x.trim();
            if x.is_empty() || !x.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) {
                return Err(RatError::Malformed(s.to_string()));
            }
            x.parse().map_err(|_| RatError::Malformed(s.to_string()))
        };
        match t.split_once('/') {
            None => Ok(Rat::from_int(parse_int(t)?)),
            Some((n, d)) => {
                let (n, d) = (parse_int(n)?, parse_int(d)?);
                if d == 0 {
                    return Err(RatError::ZeroDenominator(s.to_string()));
                }
                Ok(Rat::new(n, d))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rat::parse_unit(&s).map_err(serde::de::Error::custom)
    }
}
