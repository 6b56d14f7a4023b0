//! Scalars used throughout the crate.
//!
//! Two arithmetic modes share one trait: `f64` for the randomized searches,
//! and the quadratic fields `Quad<D>` = ℚ(√D) for exact replays. The points
//! that get certified have coordinates in {0, ±1, ±1/√2, cos θ, sin θ}; for
//! θ a multiple of π/4 those live in ℚ(√2), for multiples of π/6 in ℚ(√3).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Field operations plus the one query that differs between exact and
/// floating arithmetic: deciding whether a value is zero.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when `is_zero_within` ignores its tolerance.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Exact zero test in exact mode; `|x| <= tol` in floating mode.
    fn is_zero_within(&self, tol: f64) -> bool;

    /// Sign of the value: -1, 0 or 1. Floating values within `tol` of zero
    /// report 0.
    fn sign_within(&self, tol: f64) -> i32;

    /// Size used to choose elimination pivots.
    fn pivot_weight(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero_within(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
    fn sign_within(&self, tol: f64) -> i32 {
        if self.abs() <= tol {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }
}

/// An element `a + b√D` of the quadratic field ℚ(√D).
///
/// `D` must be a positive square-free integer other than 1; the type is only
/// instantiated with 2 and 3 in this crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad<const D: i64> {
    pub a: BigRational,
    pub b: BigRational,
}

/// ℚ(√2), which contains the dyadic ring ℤ[1/2, √2].
pub type QSqrt2 = Quad<2>;
/// ℚ(√3), needed for angles that are multiples of π/6.
pub type QSqrt3 = Quad<3>;

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl<const D: i64> Quad<D> {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Quad { a, b }
    }

    /// `(an/ad) + (bn/bd)√D`
    pub fn from_parts(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Quad { a: rat(an, ad), b: rat(bn, bd) }
    }

    pub fn rational(v: BigRational) -> Self {
        Quad { a: v, b: BigRational::zero() }
    }

    /// √D itself.
    pub fn sqrt_d() -> Self {
        Quad { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn conj(&self) -> Self {
        Quad { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² − D b²`, a rational that vanishes only at zero.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(D)) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn signum(&self) -> i32 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: the larger of a² and D b² wins.
        let a2 = &self.a * &self.a;
        let db2 = BigRational::from_integer(BigInt::from(D)) * &self.b * &self.b;
        if a2 > db2 {
            sa
        } else {
            sb
        }
    }
}

fn sgn(v: &BigRational) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

impl<const D: i64> fmt::Debug for Quad<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<const D: i64> fmt::Display for Quad<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√{}", self.b, D),
            (false, false) => write!(f, "{} + {}√{}", self.a, self.b, D),
        }
    }
}

impl<const D: i64> Add for Quad<D> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Quad { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl<const D: i64> Sub for Quad<D> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Quad { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl<const D: i64> Mul for Quad<D> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = BigRational::from_integer(BigInt::from(D));
        Quad {
            a: &self.a * &rhs.a + d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl<const D: i64> Div for Quad<D> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt {D})");
        let num = self * rhs.conj();
        Quad { a: num.a / &n, b: num.b / n }
    }
}

impl<const D: i64> Neg for Quad<D> {
    type Output = Self;
    fn neg(self) -> Self {
        Quad { a: -self.a, b: -self.b }
    }
}

impl<const D: i64> Scalar for Quad<D> {
    const EXACT: bool = true;

    fn zero() -> Self {
        Quad { a: BigRational::zero(), b: BigRational::zero() }
    }
    fn one() -> Self {
        Quad { a: BigRational::one(), b: BigRational::zero() }
    }
    fn from_i64(v: i64) -> Self {
        Quad::rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Quad::rational(rat(num, den))
    }
    fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (D as f64).sqrt()
    }
    fn is_zero_within(&self, _tol: f64) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn sign_within(&self, _tol: f64) -> i32 {
        self.signum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let r = QSqrt2::sqrt_d();
        assert_eq!(r.clone() * r, QSqrt2::from_i64(2));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = QSqrt3::from_parts(3, 7, -5, 2);
        let y = QSqrt3::one() / x.clone();
        assert_eq!(x * y, QSqrt3::one());
    }

    #[test]
    fn signum_compares_irrational_parts() {
        // 1 - √2 < 0, 3 - 2√2 > 0, -3/2 + √3 > 0
        assert_eq!(QSqrt2::from_parts(1, 1, -1, 1).signum(), -1);
        assert_eq!(QSqrt2::from_parts(3, 1, -2, 1).signum(), 1);
        assert_eq!(QSqrt3::from_parts(-3, 2, 1, 1).signum(), 1);
        assert_eq!(QSqrt3::zero().signum(), 0);
    }

    #[test]
    fn to_f64_matches() {
        let x = QSqrt2::from_parts(1, 2, 1, 2);
        assert!((x.to_f64() - (0.5 + 0.5 * 2f64.sqrt())).abs() < 1e-15);
    }
}
