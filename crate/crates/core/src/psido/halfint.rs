use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::ring::{rat, Rat};

/// A value in `½ℤ`, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const ONE: HalfInt = HalfInt(2);
    pub const HALF: HalfInt = HalfInt(1);

    pub fn int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// `n/2`.
    pub fn halves(n: i64) -> Self {
        HalfInt(n)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Round up to the nearest integer.
    pub fn ceil(self) -> i64 {
        self.0.div_euclid(2) + self.0.rem_euclid(2)
    }

    pub fn floor_int(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn to_rat(self) -> Rat {
        rat(self.0, 2)
    }

    /// Multiply by an integer.
    pub fn times(self, k: i64) -> Self {
        HalfInt(self.0 * k)
    }

    /// `2 * self` as a half-integer (an integer).
    pub fn double(self) -> Self {
        HalfInt(self.0 * 2)
    }

    /// Generalized binomial `self (self-1) ... (self-j+1) / j!`.
    pub fn binom(self, j: u32) -> Rat {
        let mut num = Rat::one();
        for i in 0..j as i64 {
            num *= rat(self.0 - 2 * i, 2);
        }
        let mut fact = BigInt::one();
        for i in 2..=j as i64 {
            fact *= i;
        }
        num / Rat::from_integer(fact)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl std::str::FromStr for HalfInt {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| format!("bad half-integer {s}"))?;
            match d.trim() {
                "2" => Ok(HalfInt(n)),
                "1" => Ok(HalfInt::int(n)),
                _ => Err(format!("{s} is not in 1/2 Z")),
            }
        } else {
            s.parse::<i64>().map(HalfInt::int).map_err(|_| format!("bad half-integer {s}"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_int;

    #[test]
    fn binomials() {
        assert_eq!(HalfInt::HALF.binom(1), rat(1, 2));
        assert_eq!(HalfInt::HALF.binom(2), rat(-1, 8));
        assert_eq!(HalfInt::int(3).binom(4), rat_int(0));
        assert_eq!(HalfInt::int(-1).binom(3), rat_int(-1));
    }

    #[test]
    fn rounding_and_text() {
        assert_eq!(HalfInt::halves(-7).ceil(), -3);
        assert_eq!(HalfInt::halves(-7).floor_int(), -4);
        assert_eq!(HalfInt::halves(-7).to_string(), "-7/2");
        assert_eq!("-7/2".parse::<HalfInt>().unwrap(), HalfInt::halves(-7));
        assert_eq!("3".parse::<HalfInt>().unwrap(), HalfInt::int(3));
        assert!("1/3".parse::<HalfInt>().is_err());
    }
}
