//! Exact half-integers stored as twice their value.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A half-integer `value = twice / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "f64", try_from = "f64")]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// Parses values like `1.5`, `3/2` or `2`.
    pub fn from_f64(x: f64) -> Result<Self, Error> {
        let t = 2.0 * x;
        if !t.is_finite() || (t - t.round()).abs() > 1e-9 {
            return Err(Error::Parse(format!("{x} is not a half-integer")));
        }
        Ok(HalfInt(t.round() as i64))
    }

    /// `self + n` for integer offsets.
    pub fn add_int(self, n: i64) -> Self {
        HalfInt(self.0 + 2 * n)
    }

    /// Integer distance `self - other`; both must differ by an integer.
    pub fn int_diff(self, other: HalfInt) -> Option<i64> {
        let d = self.0 - other.0;
        (d % 2 == 0).then_some(d / 2)
    }

    /// The ladder `-self, -self + 1, ..., self`.
    pub fn ladder(self) -> impl Iterator<Item = HalfInt> {
        let j = self.0;
        (0..=j).map(move |i| HalfInt(-j + 2 * i))
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl From<HalfInt> for f64 {
    fn from(h: HalfInt) -> f64 {
        h.value()
    }
}

impl TryFrom<f64> for HalfInt {
    type Error = Error;
    fn try_from(x: f64) -> Result<Self, Error> {
        HalfInt::from_f64(x)
    }
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            return match den.trim() {
                "2" => Ok(HalfInt(num)),
                "1" => Ok(HalfInt(2 * num)),
                _ => Err(Error::Parse(format!("{s} is not a half-integer"))),
            };
        }
        let x: f64 = s.parse().map_err(|_| Error::Parse(s.to_string()))?;
        HalfInt::from_f64(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert_eq!("1.5".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert_eq!("-2".parse::<HalfInt>().unwrap(), HalfInt::from_int(-2));
        assert!("0.3".parse::<HalfInt>().is_err());
        assert!("1/3".parse::<HalfInt>().is_err());
    }

    #[test]
    fn ladder_and_display() {
        let j = HalfInt::from_twice(3);
        let v: Vec<_> = j.ladder().map(|m| m.to_string()).collect();
        assert_eq!(v, ["-3/2", "-1/2", "1/2", "3/2"]);
        assert_eq!(HalfInt::from_twice(3).int_diff(HalfInt::from_twice(-1)), Some(2));
        assert_eq!(HalfInt::from_twice(3).int_diff(HalfInt::from_twice(0)), None);
    }
}
