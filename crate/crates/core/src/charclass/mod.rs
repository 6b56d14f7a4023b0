//! First Pontrjagin class arithmetic for the SO(8) quotients.
//!
//! Rational cohomology of a classifying space is the Weyl-invariant part of
//! the polynomial ring on the torus, so everything below is integer
//! polynomial algebra in degree-2 generators: t̄ for SO(8), s̄ for G2, ū
//! for the circle or SO(3). The first Pontrjagin class of a quotient is the
//! pullback of the sum of squared positive roots of the big group minus
//! that of the acting group.

pub mod poly;

use std::collections::BTreeSet;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::action::Family;
use crate::error::{Error, Result};
pub use poly::{GradedPoly, VarSet};

/// What σ_k needs from its arguments.
pub trait Ring: Clone + Add<Output = Self> + Mul<Output = Self> {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
}

impl Ring for GradedPoly {
    fn zero_like(&self) -> Self {
        GradedPoly::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        GradedPoly::one(self.vars())
    }
}

/// `σ_k(values)`, for `1 <= k <= values.len()`.
pub fn elementary_symmetric<T: Ring>(k: usize, values: &[T]) -> Result<T> {
    if k == 0 || k > values.len() {
        return Err(Error::SymmetricIndex { k, len: values.len() });
    }
    let mut e = vec![values[0].zero_like(); k + 1];
    e[0] = values[0].one_like();
    for v in values {
        for j in (1..=k).rev() {
            e[j] = e[j].clone() + e[j - 1].clone() * v.clone();
        }
    }
    Ok(e.swap_remove(k))
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `σ_k(q₁², …, q_n²)`.
pub fn sigma_of_squares(k: usize, q: &[i64]) -> Result<BigInt> {
    let sq: Vec<BigInt> = big(q).into_iter().map(|x| &x * &x).collect();
    elementary_symmetric(k, &sq)
}

/// Checks `σ₁(r²) = −2σ₂(r)` and `σ₂(r²) = σ₂(r)²` on a zero-sum triple.
pub fn nicetrick_check(r: [i64; 3]) -> Result<(bool, bool)> {
    if r.iter().sum::<i64>() != 0 {
        return Err(Error::Precondition(format!("{r:?} does not sum to zero")));
    }
    let s2 = elementary_symmetric(2, &big(&r))?;
    let first = sigma_of_squares(1, &r)? == BigInt::from(-2) * &s2;
    let second = sigma_of_squares(2, &r)? == &s2 * &s2;
    Ok((first, second))
}

fn gens(vars: VarSet) -> Vec<GradedPoly> {
    (0..vars.generators()).map(|i| GradedPoly::var(vars, i).expect("index in range")).collect()
}

fn squares(vars: VarSet) -> Vec<GradedPoly> {
    gens(vars).iter().map(|g| g * g).collect()
}

/// `σ_i(x̄²)` in the given generators.
pub fn sigma_sq_poly(vars: VarSet, i: usize) -> Result<GradedPoly> {
    elementary_symmetric(i, &squares(vars))
}

/// ȳ₁, ȳ₂, ȳ₃ are `σ_i(t̄²)`; ȳ₄ is `t̄₁t̄₂t̄₃t̄₄`.
pub fn y(i: usize) -> Result<GradedPoly> {
    match i {
        1..=3 => sigma_sq_poly(VarSet::T, i),
        4 => elementary_symmetric(4, &gens(VarSet::T)),
        _ => Err(Error::SymmetricIndex { k: i, len: 4 }),
    }
}

/// x̄₁ = σ₁(s̄²).
pub fn x1() -> GradedPoly {
    sigma_sq_poly(VarSet::S, 1).expect("index in range")
}

/// x̄₂ = σ₃(s̄²).
pub fn x2() -> GradedPoly {
    sigma_sq_poly(VarSet::S, 3).expect("index in range")
}

/// x̄ = ½σ₁(s̄²), an integral class.
pub fn x_half() -> GradedPoly {
    x1().div_exact(2).expect("σ₁(s̄²) has even coefficients")
}

/// z̄ = σ₁(t̄²).
pub fn z() -> GradedPoly {
    y(1).expect("index in range")
}

fn require(p: &GradedPoly, vars: VarSet) -> Result<()> {
    if p.vars() != vars {
        return Err(Error::WrongVariables { expected: vars.to_string(), got: p.vars().to_string() });
    }
    Ok(())
}

/// Pullback along the circle `u ↦ (q₁u, …, q₄u)` in the SO(8) torus:
/// `t̄_i ↦ q_i ū`.
pub fn pullback_bfq(p: &GradedPoly, q: [i64; 4]) -> Result<GradedPoly> {
    require(p, VarSet::T)?;
    let u = GradedPoly::var(VarSet::U, 0)?;
    let images: Vec<GradedPoly> = q.iter().map(|&c| u.scale(c)).collect();
    p.substitute(&images)
}

/// Pullback along the G2 torus `(s₁,s₂,s₃) ↦ (0, s₁, s₂, −s₃)`.
pub fn pullback_bg(p: &GradedPoly) -> Result<GradedPoly> {
    require(p, VarSet::T)?;
    let s = gens(VarSet::S);
    let images = vec![GradedPoly::zero(VarSet::S), s[0].clone(), s[1].clone(), -s[2].clone()];
    p.substitute(&images)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    pub name: String,
    pub vars: VarSet,
    /// Positive roots as integer combinations of the generators.
    pub positive: Vec<Vec<i64>>,
}

impl RootSystem {
    /// `t_i ± t_j`, `i < j`.
    pub fn so8() -> Self {
        let mut positive = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                for sign in [1, -1] {
                    let mut r = vec![0; 4];
                    r[i] = 1;
                    r[j] = sign;
                    positive.push(r);
                }
            }
        }
        RootSystem { name: "SO(8)".into(), vars: VarSet::T, positive }
    }

    /// `s₁, s₂, −s₃, s₁ − s₃, s₂ − s₁, s₂ − s₃`.
    pub fn g2() -> Self {
        let positive = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, -1],
            vec![1, 0, -1],
            vec![-1, 1, 0],
            vec![0, 1, -1],
        ];
        RootSystem { name: "G2".into(), vars: VarSet::S, positive }
    }

    pub fn so3() -> Self {
        RootSystem { name: "SO(3)".into(), vars: VarSet::U, positive: vec![vec![1]] }
    }

    /// Number of positive roots the group must have.
    pub fn expected_count(&self) -> Option<usize> {
        match self.name.as_str() {
            "SO(8)" => Some(12),
            "G2" => Some(6),
            "SO(3)" => Some(1),
            _ => None,
        }
    }
}

/// `Σ γ̄²` over positive roots.
pub fn sum_squared_positive_roots(rs: &RootSystem) -> Result<GradedPoly> {
    if let Some(n) = rs.expected_count() {
        if rs.positive.len() != n {
            return Err(Error::Precondition(format!("{} has {} positive roots, expected {n}", rs.name, rs.positive.len())));
        }
    }
    let mut out = GradedPoly::zero(rs.vars);
    for r in &rs.positive {
        let g = GradedPoly::linear(rs.vars, r)?;
        out = out + &g * &g;
    }
    Ok(out)
}

/// The integer c with `a = c·b`, when there is one.
pub fn multiple_of(a: &GradedPoly, b: &GradedPoly) -> Option<BigInt> {
    let (m, lead) = b.terms().iter().next()?;
    let c = a.coeff(m) / lead;
    (&b.scale(c.clone()) == a).then_some(c)
}

fn check_q(q: &[i64]) -> Result<[i64; 4]> {
    let arr: [i64; 4] = q
        .try_into()
        .map_err(|_| Error::Precondition(format!("need four weights, got {}", q.len())))?;
    if arr.iter().all(|&v| v == 0) {
        return Err(Error::Precondition("weights are all zero".into()));
    }
    Ok(arr)
}

/// Coefficient of `φ*(ū²)` in the first Pontrjagin class, the circle or
/// SO(3) sitting in the SO(8) torus with weights q. Nonzero modulo every
/// odd prime exactly when no odd prime divides it.
pub fn p1_mod_p(family: Family, q: &[i64]) -> Result<BigInt> {
    let q = check_q(q)?;
    let u2 = GradedPoly::var(VarSet::U, 0)?.pow(2);
    let ratio = |p: &GradedPoly| -> Result<BigInt> {
        multiple_of(p, &u2).ok_or_else(|| Error::Precondition(format!("{p} is not a multiple of u^2")))
    };
    // G on the left contributes its roots pulled back to ū.
    let so8 = ratio(&pullback_bfq(&sum_squared_positive_roots(&RootSystem::so8())?, q)?)?;
    // G2 roots, written in x̄₁ = g*(ȳ₁); ȳ₁ pulls back to σ₁(q²)ū².
    let g2_sum = sum_squared_positive_roots(&RootSystem::g2())?;
    let c = multiple_of(&g2_sum, &pullback_bg(&y(1)?)?)
        .ok_or_else(|| Error::Precondition("G2 root sum is not a multiple of x1".into()))?;
    let g2 = c * ratio(&pullback_bfq(&y(1)?, q)?)?;
    match family {
        Family::S1xG2 => Ok(so8 - g2),
        Family::So3xG2 => Ok(so8 - g2 - ratio(&sum_squared_positive_roots(&RootSystem::so3())?)?),
        Family::Eschenburg => Err(Error::Precondition("no Pontrjagin computation for Eschenburg spaces".into())),
    }
}

/// Values of the classifying maps on the integral generators, read off the
/// spectral sequences of the defining fibrations: `φ_G*(z̄) = ±g·y²` with
/// unknown sign and `φ_U*(x̄) = step·k·y²` with unknown integer k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralFixtures {
    pub g: i64,
    pub step: i64,
    /// k ranges over `−k_bound..=k_bound`.
    pub k_bound: i64,
}

impl Default for IntegralFixtures {
    fn default() -> Self {
        IntegralFixtures { g: 4, step: 2, k_bound: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralP1 {
    /// |p₁| in units of y².
    pub magnitude: BigInt,
    /// Admissible k, sorted.
    pub ks: Vec<i64>,
    /// Admissible (sign of φ_G*(z̄), k) pairs.
    pub solutions: Vec<(i64, i64)>,
    /// p₁ = a·φ_G*(z̄) − b·φ_U*(x̄).
    pub a: BigInt,
    pub b: BigInt,
}

fn odd_part_is_one(v: &BigInt) -> bool {
    if v.is_zero() {
        return false;
    }
    let mut v = v.abs();
    let two = BigInt::from(2);
    while (&v % &two).is_zero() {
        v /= &two;
    }
    v.is_one()
}

/// |p₁(M¹³)| from the fixtures and the fact that p₁ is nonzero modulo every
/// odd prime.
pub fn p1_integral_m13(fx: &IntegralFixtures) -> Result<IntegralP1> {
    // p₁ = Σ SO(8) roots − Σ G2 roots = a·z̄ − b·x̄ upstairs.
    let a = multiple_of(&sum_squared_positive_roots(&RootSystem::so8())?, &z())
        .ok_or_else(|| Error::Precondition("SO(8) root sum is not a multiple of z".into()))?;
    let b = multiple_of(&sum_squared_positive_roots(&RootSystem::g2())?, &x_half())
        .ok_or_else(|| Error::Precondition("G2 root sum is not a multiple of x".into()))?;
    let mut solutions = Vec::new();
    let mut mags = BTreeSet::new();
    for sign in [1i64, -1] {
        for k in -fx.k_bound..=fx.k_bound {
            let v = &a * BigInt::from(sign * fx.g) - &b * BigInt::from(fx.step * k);
            if odd_part_is_one(&v) {
                solutions.push((sign, k));
                mags.insert(v.abs());
            }
        }
    }
    if mags.len() != 1 {
        return Err(Error::NonUniqueMagnitude(mags.len()));
    }
    let mut ks: Vec<i64> = solutions.iter().map(|&(_, k)| k).collect();
    ks.sort_unstable();
    ks.dedup();
    Ok(IntegralP1 { magnitude: mags.into_iter().next().expect("one magnitude"), ks, solutions, a, b })
}
