//! Half-integers stored as doubled integers.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A half-integer `n/2`, stored as `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Half(i64);

impl Half {
    /// Zero.
    pub const ZERO: Half = Half(0);

    /// The value `d/2`.
    pub const fn from_doubled(d: i64) -> Half {
        Half(d)
    }

    /// The integer `n`.
    pub const fn from_int(n: i64) -> Half {
        Half(2 * n)
    }

    /// Twice the value.
    pub const fn doubled(self) -> i64 {
        self.0
    }

    /// True when the value is an integer.
    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The value as an integer, when it is one.
    pub const fn to_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    /// Absolute value.
    pub const fn abs(self) -> Half {
        Half(self.0.abs())
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Half {
    type Err = Error;

    /// Parses `3`, `-1/2`, `3/2`, `4/2` or `1.5`.
    fn from_str(s: &str) -> Result<Half> {
        let t = s.trim();
        let bad = || Error::Parse(format!("invalid half-integer '{s}'"));
        if let Some((n, d)) = t.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            return match d.trim() {
                "1" => Ok(Half(2 * n)),
                "2" => Ok(Half(n)),
                _ => Err(bad()),
            };
        }
        if let Some(stripped) = t.strip_suffix(".5") {
            let neg = stripped.starts_with('-');
            let whole: i64 = if stripped == "-" || stripped.is_empty() {
                0
            } else {
                stripped.parse().map_err(|_| bad())?
            };
            let d = 2 * whole.abs() + 1;
            return Ok(Half(if neg { -d } else { d }));
        }
        let t = t.strip_suffix(".0").unwrap_or(t);
        t.parse::<i64>().map(|n| Half(2 * n)).map_err(|_| bad())
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Half {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
