//! Integer polynomials in degree-2 generators.
//!
//! The s̄-variables satisfy `s̄₁ + s̄₂ + s̄₃ = 0`; polynomials in them are kept
//! in `ℤ[s̄₁, s̄₂]` with `s̄₃ = −s̄₁ − s̄₂` substituted, which makes equality
//! of stored terms equality in the quotient ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VarSet {
    /// t̄₁..t̄₄, the maximal torus of SO(8).
    T,
    /// s̄₁, s̄₂, s̄₃ with zero sum, the maximal torus of G2.
    S,
    /// ū, the circle or the SO(3) torus.
    U,
    /// w̄.
    W,
}

impl VarSet {
    /// Generators a user can name.
    pub fn generators(self) -> usize {
        match self {
            VarSet::T => 4,
            VarSet::S => 3,
            VarSet::U | VarSet::W => 1,
        }
    }

    /// Variables actually stored.
    pub fn stored(self) -> usize {
        match self {
            VarSet::S => 2,
            v => v.generators(),
        }
    }

    fn letter(self) -> &'static str {
        match self {
            VarSet::T => "t",
            VarSet::S => "s",
            VarSet::U => "u",
            VarSet::W => "w",
        }
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

/// Exponent vector of a monomial in the stored variables.
pub type Monomial = Vec<u32>;

/// Every generator has degree 2, so a monomial of total exponent d sits in
/// degree 2d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, BigInt>,
    modulus: Option<u64>,
}

impl GradedPoly {
    pub fn zero(vars: VarSet) -> Self {
        GradedPoly { vars, terms: BTreeMap::new(), modulus: None }
    }

    pub fn constant(vars: VarSet, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.insert(vec![0; vars.stored()], c.into());
        p
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, 1)
    }

    /// Generator `i` (0-based). For s̄, index 2 is `−s̄₁ − s̄₂`.
    pub fn var(vars: VarSet, i: usize) -> Result<Self> {
        if i >= vars.generators() {
            return Err(Error::Precondition(format!("{vars}{} does not exist", i + 1)));
        }
        if vars == VarSet::S && i == 2 {
            return Ok(-(Self::var(vars, 0)? + Self::var(vars, 1)?));
        }
        let mut e = vec![0; vars.stored()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.insert(e, BigInt::one());
        Ok(p)
    }

    /// `Σ cᵢ xᵢ` over the generators.
    pub fn linear(vars: VarSet, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() != vars.generators() {
            return Err(Error::Precondition(format!("{} coefficients for {} generators", coeffs.len(), vars.generators())));
        }
        let mut p = Self::zero(vars);
        for (i, &c) in coeffs.iter().enumerate() {
            p = p + Self::var(vars, i)?.scale(c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, m: &[u32]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, m: Monomial, c: BigInt) {
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if let Some(p) = self.modulus {
            *entry = entry.mod_floor(&BigInt::from(p));
        }
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Degrees present, each already doubled.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|m| 2 * m.iter().sum::<u32>()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Cohomological degree when homogeneous; `None` for zero or mixed.
    pub fn degree(&self) -> Option<u32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        for (m, v) in &self.terms {
            out.insert(m.clone(), v * &c);
        }
        out
    }

    /// Exact division of every coefficient.
    pub fn div_exact(&self, d: i64) -> Result<Self> {
        let d = BigInt::from(d);
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        for (m, v) in &self.terms {
            let (q, r) = v.div_rem(&d);
            if !r.is_zero() {
                return Err(Error::Precondition(format!("coefficient {v} is not divisible by {d}")));
            }
            out.insert(m.clone(), q);
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self { modulus: self.modulus, ..Self::one(self.vars) };
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Reduces coefficients into `[0, p)`. The prime must be at least 3.
    pub fn reduce_mod(&self, p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Precondition(format!("modulus {p} is not a prime >= 3")));
        }
        let mut out = Self { vars: self.vars, terms: BTreeMap::new(), modulus: Some(p) };
        for (m, v) in &self.terms {
            out.insert(m.clone(), v.clone());
        }
        Ok(out)
    }

    /// The ring map sending stored variable i to `images[i]`; an s̄ source
    /// takes images of s̄₁, s̄₂ only. All images share one variable set.
    pub fn substitute(&self, images: &[GradedPoly]) -> Result<Self> {
        if images.len() != self.vars.stored() {
            return Err(Error::Precondition(format!("{} images for {} variables", images.len(), self.vars.stored())));
        }
        let target = images[0].vars;
        if let Some(bad) = images.iter().find(|g| g.vars != target) {
            return Err(Error::WrongVariables { expected: target.to_string(), got: bad.vars.to_string() });
        }
        let mut out = Self::zero(target);
        out.modulus = self.modulus;
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            t.modulus = self.modulus;
            for (img, &e) in images.iter().zip(m) {
                t = &t * &img.pow(e);
            }
            out = out + t;
        }
        Ok(out)
    }

    fn check_same(&self, o: &Self) {
        assert_eq!(self.vars, o.vars, "mixing {} and {} polynomials", self.vars, o.vars);
    }

    fn merged_modulus(&self, o: &Self) -> Option<u64> {
        match (self.modulus, o.modulus) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "mixing moduli {a} and {b}");
                Some(a)
            }
            (a, b) => a.or(b),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(self, o: GradedPoly) -> GradedPoly {
        &self + &o
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, o: &GradedPoly) -> GradedPoly {
        self.check_same(o);
        let mut out = self.clone();
        out.modulus = self.merged_modulus(o);
        if out.modulus != self.modulus {
            out = out.scale(1);
        }
        for (m, c) in &o.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(-1)
    }
}

impl Sub for GradedPoly {
    type Output = GradedPoly;
    fn sub(self, o: GradedPoly) -> GradedPoly {
        &self + &(-o)
    }
}

// Exponents add under multiplication.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, o: &GradedPoly) -> GradedPoly {
        self.check_same(o);
        let mut out = GradedPoly::zero(self.vars);
        out.modulus = self.merged_modulus(o);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.insert(m, c1 * c2);
            }
        }
        out
    }
}

impl Mul for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, o: GradedPoly) -> GradedPoly {
        &self * &o
    }
}

/// Graded lexicographic: higher total degree first, then lexicographically
/// larger exponents first.
fn grlex_desc(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut monos: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        monos.sort_by(|a, b| grlex_desc(a.0, b.0));
        let single = self.vars.stored() == 1;
        for (k, (m, c)) in monos.into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let constant = m.iter().all(|&e| e == 0);
            if !a.is_one() || constant {
                write!(f, "{a}")?;
            }
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if single {
                    f.write_str(self.vars.letter())?;
                } else {
                    write!(f, "{}{}", self.vars.letter(), i + 1)?;
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        if let Some(p) = self.modulus {
            write!(f, " (mod {p})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize) -> GradedPoly {
        GradedPoly::var(VarSet::T, i).unwrap()
    }
    fn s(i: usize) -> GradedPoly {
        GradedPoly::var(VarSet::S, i).unwrap()
    }

    #[test]
    fn s_generators_sum_to_zero() {
        assert!((s(0) + s(1) + s(2)).is_zero());
    }

    #[test]
    fn degrees_add_under_products() {
        let a = t(0) * t(1) + t(2) * t(2);
        let b = t(3).pow(3);
        assert_eq!(a.degree(), Some(4));
        assert_eq!(b.degree(), Some(6));
        assert_eq!((&a * &b).degree(), Some(10));
        assert_eq!((a.clone() + b).degree(), None);
        assert_eq!(GradedPoly::zero(VarSet::T).degree(), None);
    }

    #[test]
    fn display_is_graded_lex() {
        let p = t(1) * t(1) - t(0).scale(3) * t(3) + GradedPoly::constant(VarSet::T, 2);
        assert_eq!(p.to_string(), "-3t1t4 + t2^2 + 2");
        let u = GradedPoly::var(VarSet::U, 0).unwrap().pow(2).scale(6);
        assert_eq!(u.to_string(), "6u^2");
        assert_eq!(GradedPoly::zero(VarSet::S).to_string(), "0");
    }

    #[test]
    fn reduction_mod_p() {
        let p = t(0).scale(7) + t(1).scale(-1);
        let r = p.reduce_mod(7).unwrap();
        assert_eq!(r.to_string(), "6t2 (mod 7)");
        assert!(p.reduce_mod(2).is_err());
        assert!(p.reduce_mod(9).is_err());
        assert!((&r * &r).coeff(&[0, 2, 0, 0]) == BigInt::from(1));
    }

    #[test]
    fn substitution_is_multiplicative() {
        let u = GradedPoly::var(VarSet::U, 0).unwrap();
        let imgs: Vec<GradedPoly> = [1, 0, -2, 3].iter().map(|&q| u.scale(q)).collect();
        let a = t(0) + t(2);
        let b = t(3) * t(1) - t(2);
        let lhs = (&a * &b).substitute(&imgs).unwrap();
        let rhs = &a.substitute(&imgs).unwrap() * &b.substitute(&imgs).unwrap();
        assert_eq!(lhs, rhs);
        assert!(a.substitute(&imgs[..2]).is_err());
    }

    #[test]
    fn exact_division() {
        let p = t(0).scale(4) + t(1).scale(2);
        assert_eq!(p.div_exact(2).unwrap(), t(0).scale(2) + t(1));
        assert!(p.div_exact(4).is_err());
    }

    #[test]
    fn linear_forms() {
        let r = GradedPoly::linear(VarSet::S, &[1, 0, -1]).unwrap();
        assert_eq!(r, s(0).scale(2) + s(1));
        assert!(GradedPoly::linear(VarSet::S, &[1, 0]).is_err());
        assert!(GradedPoly::var(VarSet::U, 1).is_err());
    }
}
