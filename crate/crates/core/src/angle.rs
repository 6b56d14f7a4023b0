//! Angles that are rational multiples of π, with exact cosine and sine
//! where those live in ℚ(√2) or ℚ(√3).

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{QSqrt2, QSqrt3, Scalar};

/// `θ = num/den · π`, stored reduced with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Angle {
    num: i64,
    den: i64,
}

/// Exact `(cos θ, sin θ)` in whichever field contains them.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactTrig {
    Sqrt2(QSqrt2, QSqrt2),
    Sqrt3(QSqrt3, QSqrt3),
}

impl Angle {
    pub fn pi_times(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::BadAngle(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        let s = if den < 0 { -1 } else { 1 };
        Ok(Angle { num: s * num / g, den: s * den / g })
    }

    pub fn zero() -> Self {
        Angle { num: 0, den: 1 }
    }

    pub fn radians(&self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }

    /// True for θ = nπ/2, where the certified point degenerates.
    pub fn is_half_pi_multiple(&self) -> bool {
        (2 * self.num) % self.den == 0
    }

    pub fn exact_trig(&self) -> Result<ExactTrig> {
        let (c, s) = (self.radians().cos(), self.radians().sin());
        let sgn = |v: f64| -> i64 {
            if v.abs() < 1e-9 {
                0
            } else if v > 0.0 {
                1
            } else {
                -1
            }
        };
        let (sc, ss) = (sgn(c), sgn(s));
        match self.den {
            1 | 2 => Ok(ExactTrig::Sqrt2(QSqrt2::from_i64(sc), QSqrt2::from_i64(ss))),
            4 => Ok(ExactTrig::Sqrt2(QSqrt2::from_parts(0, 1, sc, 2), QSqrt2::from_parts(0, 1, ss, 2))),
            3 => Ok(ExactTrig::Sqrt3(QSqrt3::from_parts(sc, 2, 0, 1), QSqrt3::from_parts(0, 1, ss, 2))),
            6 => Ok(ExactTrig::Sqrt3(QSqrt3::from_parts(0, 1, sc, 2), QSqrt3::from_parts(ss, 2, 0, 1))),
            _ => Err(Error::UnsupportedAngle(self.to_string())),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match self.num {
            0 => return write!(f, "0"),
            1 => "pi".to_string(),
            -1 => "-pi".to_string(),
            k => format!("{k}pi"),
        };
        if self.den == 1 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{}", self.den)
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `0`, `pi`, `-pi/6`, `3pi/4`, `3*pi/4`, `π/3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadAngle(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('π', "pi");
        if t == "0" {
            return Ok(Angle::zero());
        }
        let (head, den) = match t.split_once('/') {
            Some((h, d)) => (h.to_string(), d.parse::<i64>().map_err(|_| bad())?),
            None => (t.clone(), 1),
        };
        let coeff = head.strip_suffix("pi").ok_or_else(bad)?;
        let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
        let num = match coeff {
            "" | "+" => 1,
            "-" => -1,
            c => c.parse::<i64>().map_err(|_| bad())?,
        };
        Angle::pi_times(num, den)
    }
}

impl From<Angle> for String {
    fn from(a: Angle) -> String {
        a.to_string()
    }
}

impl TryFrom<String> for Angle {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("pi/4".parse::<Angle>().unwrap(), Angle::pi_times(1, 4).unwrap());
        assert_eq!("3*pi/4".parse::<Angle>().unwrap(), Angle::pi_times(3, 4).unwrap());
        assert_eq!("-pi/6".parse::<Angle>().unwrap(), Angle::pi_times(-1, 6).unwrap());
        assert_eq!("2pi/6".parse::<Angle>().unwrap().to_string(), "pi/3");
        assert_eq!("0".parse::<Angle>().unwrap(), Angle::zero());
        assert!("1.2".parse::<Angle>().is_err());
        assert!("pi/0".parse::<Angle>().is_err());
    }

    #[test]
    fn exact_values_match_floats() {
        for s in ["pi/4", "3pi/4", "-pi/4", "pi/3", "2pi/3", "pi/6", "5pi/6", "-pi/3"] {
            let a: Angle = s.parse().unwrap();
            let (c, sn) = match a.exact_trig().unwrap() {
                ExactTrig::Sqrt2(c, s) => (c.to_f64(), s.to_f64()),
                ExactTrig::Sqrt3(c, s) => (c.to_f64(), s.to_f64()),
            };
            assert!((c - a.radians().cos()).abs() < 1e-12, "{s}");
            assert!((sn - a.radians().sin()).abs() < 1e-12, "{s}");
        }
        assert!(matches!("pi/5".parse::<Angle>().unwrap().exact_trig(), Err(Error::UnsupportedAngle(_))));
    }

    #[test]
    fn half_pi_multiples() {
        assert!("0".parse::<Angle>().unwrap().is_half_pi_multiple());
        assert!("3pi/2".parse::<Angle>().unwrap().is_half_pi_multiple());
        assert!(!"pi/4".parse::<Angle>().unwrap().is_half_pi_multiple());
    }
}
