use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactpoly::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn both() -> [Parity; 2] {
        [Parity::Even, Parity::Odd]
    }

    /// `(-1)^{|a||b|}`: negative only when both are odd.
    pub fn sign(a: Parity, b: Parity) -> Rational {
        if a.is_odd() && b.is_odd() {
            -Rational::one()
        } else {
            Rational::one()
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "even" | "0" => Ok(Parity::Even),
            "odd" | "1" => Ok(Parity::Odd),
            other => Err(Error::ParityMismatch(format!("unknown parity `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    #[test]
    fn sign_rule() {
        assert_eq!(Parity::sign(Parity::Odd, Parity::Odd), rat(-1));
        assert_eq!(Parity::sign(Parity::Odd, Parity::Even), rat(1));
        assert_eq!(Parity::sign(Parity::Even, Parity::Even), rat(1));
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Odd + Parity::Even, Parity::Odd);
    }
}
