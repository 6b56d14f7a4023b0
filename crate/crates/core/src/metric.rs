//! One- and two-step Cheeger deformations of the bi-invariant metric.
//!
//! One step on (G, K): `Φ₁(Y) = Y_p + λ₁ Y_k`.
//! Two steps on (G, K, H): `Φ₂(Y) = Y_p + λ₁ Y_m + λ₁λ₂ Y_h`, and
//! `Ψ = Φ₁⁻¹Φ₂ = Y_p + Y_m + λ₂ Y_h`.
//!
//! Zero curvature is decided through bracket conditions on "criterion
//! variables": the plane spanned by `L⁻¹X, L⁻¹Y` is flat iff the brackets
//! returned by [`DeformedMetric::brackets`] vanish, with `L = Φ₁` for one
//! step and `L = Ψ` for two.

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{ChainSpec, Components, LieVector};
use crate::matrix::Mat;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformedMetric {
    pub chain: ChainSpec,
    lambda1: (i64, i64),
    lambda2: Option<(i64, i64)>,
}

fn check_lambda(l: Rational64) -> Result<(i64, i64)> {
    if l <= Rational64::zero() || l >= Rational64::from_integer(1) {
        return Err(Error::InvalidLambda(l.to_f64().unwrap_or(f64::NAN)));
    }
    Ok((*l.numer(), *l.denom()))
}

fn approx(l: f64) -> Result<Rational64> {
    if !(l > 0.0 && l < 1.0) {
        return Err(Error::InvalidLambda(l));
    }
    Rational64::approximate_float(l).ok_or(Error::InvalidLambda(l))
}

impl DeformedMetric {
    pub fn one_step(chain: ChainSpec, lambda1: Rational64) -> Result<Self> {
        Ok(DeformedMetric { chain, lambda1: check_lambda(lambda1)?, lambda2: None })
    }

    pub fn two_step(chain: ChainSpec, lambda1: Rational64, lambda2: Rational64) -> Result<Self> {
        if !chain.supports_two_step() {
            return Err(Error::TwoStepUnsupported(chain.to_string()));
        }
        Ok(DeformedMetric { chain, lambda1: check_lambda(lambda1)?, lambda2: Some(check_lambda(lambda2)?) })
    }

    /// Floating parameters are replaced by a nearby rational.
    pub fn one_step_f64(chain: ChainSpec, lambda1: f64) -> Result<Self> {
        Self::one_step(chain, approx(lambda1)?)
    }

    pub fn two_step_f64(chain: ChainSpec, lambda1: f64, lambda2: f64) -> Result<Self> {
        Self::two_step(chain, approx(lambda1)?, approx(lambda2)?)
    }

    /// λ₁ = 1/2 (and λ₂ = 1/2 when two-step).
    pub fn default_one_step(chain: ChainSpec) -> Self {
        DeformedMetric { chain, lambda1: (1, 2), lambda2: None }
    }

    pub fn default_two_step(chain: ChainSpec) -> Result<Self> {
        Self::two_step(chain, Rational64::new(1, 2), Rational64::new(1, 2))
    }

    pub fn is_two_step(&self) -> bool {
        self.lambda2.is_some()
    }

    pub fn lambda1<F: Scalar>(&self) -> F {
        F::from_ratio(self.lambda1.0, self.lambda1.1)
    }

    pub fn lambda2<F: Scalar>(&self) -> Option<F> {
        self.lambda2.map(|(a, b)| F::from_ratio(a, b))
    }

    /// `t = λ₁ / (1 − λ₁)`.
    pub fn t(&self) -> f64 {
        let l: f64 = self.lambda1();
        l / (1.0 - l)
    }

    /// `s = λ₂ / (1 − λ₂)`.
    pub fn s(&self) -> Option<f64> {
        self.lambda2::<f64>().map(|l| l / (1.0 - l))
    }

    fn scaled<F: Scalar>(&self, x: &Mat<F>, cp: F, cm: F, ch: F) -> Mat<F> {
        let c = self.chain.split(x);
        c.p.scale(&cp).add(&c.m.scale(&cm)).add(&c.h.scale(&ch))
    }

    pub fn phi_mat<F: Scalar>(&self, x: &Mat<F>) -> Mat<F> {
        let l1: F = self.lambda1();
        let lh = match self.lambda2::<F>() {
            Some(l2) => l1.clone() * l2,
            None => l1.clone(),
        };
        self.scaled(x, F::one(), l1, lh)
    }

    pub fn phi_inv_mat<F: Scalar>(&self, x: &Mat<F>) -> Mat<F> {
        let l1: F = self.lambda1();
        let lh = match self.lambda2::<F>() {
            Some(l2) => l1.clone() * l2,
            None => l1.clone(),
        };
        self.scaled(x, F::one(), F::one() / l1, F::one() / lh)
    }

    /// The one-step part `Φ₁` of either metric.
    pub fn phi1_mat<F: Scalar>(&self, x: &Mat<F>) -> Mat<F> {
        let l1: F = self.lambda1();
        self.scaled(x, F::one(), l1.clone(), l1)
    }

    pub fn phi1_inv_mat<F: Scalar>(&self, x: &Mat<F>) -> Mat<F> {
        let l1: F = self.lambda1();
        self.scaled(x, F::one(), F::one() / l1.clone(), F::one() / l1)
    }

    /// `Ψ`; the identity for a one-step metric.
    pub fn psi_mat<F: Scalar>(&self, x: &Mat<F>) -> Mat<F> {
        match self.lambda2::<F>() {
            Some(l2) => self.scaled(x, F::one(), F::one(), l2),
            None => x.clone(),
        }
    }

    pub fn psi_inv_mat<F: Scalar>(&self, x: &Mat<F>) -> Mat<F> {
        match self.lambda2::<F>() {
            Some(l2) => self.scaled(x, F::one(), F::one(), F::one() / l2),
            None => x.clone(),
        }
    }

    /// Map from criterion variables to actual tangent vectors: `Φ₁⁻¹` for
    /// one step, `Ψ⁻¹` for two.
    pub fn plane_lift_mat<F: Scalar>(&self, x: &Mat<F>) -> Mat<F> {
        if self.is_two_step() {
            self.psi_inv_mat(x)
        } else {
            self.phi1_inv_mat(x)
        }
    }

    fn tagged<F: Scalar>(&self, x: &LieVector<F>, f: impl Fn(&Mat<F>) -> Mat<F>) -> Result<LieVector<F>> {
        self.chain.check(x)?;
        Ok(LieVector::unchecked(x.algebra, f(&x.mat)))
    }

    pub fn phi<F: Scalar>(&self, x: &LieVector<F>) -> Result<LieVector<F>> {
        self.tagged(x, |m| self.phi_mat(m))
    }

    pub fn phi_inv<F: Scalar>(&self, x: &LieVector<F>) -> Result<LieVector<F>> {
        self.tagged(x, |m| self.phi_inv_mat(m))
    }

    pub fn psi<F: Scalar>(&self, x: &LieVector<F>) -> Result<LieVector<F>> {
        self.tagged(x, |m| self.psi_mat(m))
    }

    pub fn psi_inv<F: Scalar>(&self, x: &LieVector<F>) -> Result<LieVector<F>> {
        self.tagged(x, |m| self.psi_inv_mat(m))
    }

    /// `⟨X, Φ(Y)⟩₀`.
    pub fn inner<F: Scalar>(&self, x: &LieVector<F>, y: &LieVector<F>) -> Result<F> {
        self.chain.check(x)?;
        self.chain.check(y)?;
        Ok(self.inner_mat(&x.mat, &y.mat))
    }

    pub fn inner_mat<F: Scalar>(&self, x: &Mat<F>, y: &Mat<F>) -> F {
        self.chain.inner0(x, &self.phi_mat(y))
    }

    /// The brackets whose simultaneous vanishing characterizes flatness:
    /// `[X,Y]`, `[X_k,Y_k]`, `[X_p,Y_p]`, and for two steps also
    /// `[X_m,Y_m]`, `[X_h,Y_h]`.
    pub fn brackets<F: Scalar>(&self, x: &Mat<F>, y: &Mat<F>) -> Vec<Mat<F>> {
        let cx = self.chain.split(x);
        let cy = self.chain.split(y);
        self.brackets_split(x, y, &cx, &cy)
    }

    pub fn brackets_split<F: Scalar>(
        &self,
        x: &Mat<F>,
        y: &Mat<F>,
        cx: &Components<F>,
        cy: &Components<F>,
    ) -> Vec<Mat<F>> {
        let mut out = vec![x.bracket(y), cx.k().bracket(&cy.k()), cx.p.bracket(&cy.p)];
        if self.is_two_step() {
            out.push(cx.m.bracket(&cy.m));
            out.push(cx.h.bracket(&cy.h));
        }
        out
    }

    /// Gram matrix entries of the plane `span{L⁻¹X, L⁻¹Y}` in the deformed
    /// metric, returned as `(g11, g12, g22)`.
    pub fn plane_gram<F: Scalar>(&self, x: &Mat<F>, y: &Mat<F>) -> (F, F, F) {
        let lx = self.plane_lift_mat(x);
        let ly = self.plane_lift_mat(y);
        let px = self.phi1_mat(x);
        let py = self.phi1_mat(y);
        let c = self.chain;
        (c.inner0(&lx, &px), c.inner0(&lx, &py), c.inner0(&ly, &py))
    }

    /// Sum of squared ⟨·,·⟩₀-norms of [`Self::brackets`], divided by the
    /// Gram determinant of the plane so that any frame of the same plane
    /// gives the same value. For an orthonormal frame this is the plain sum.
    pub fn flat_residual<F: Scalar>(&self, x: &LieVector<F>, y: &LieVector<F>) -> Result<F> {
        self.chain.check(x)?;
        self.chain.check(y)?;
        self.flat_residual_mat(&x.mat, &y.mat)
    }

    pub fn flat_residual_mat<F: Scalar>(&self, x: &Mat<F>, y: &Mat<F>) -> Result<F> {
        let (g11, g12, g22) = self.plane_gram(x, y);
        let det = g11.clone() * g22.clone() - g12.clone() * g12;
        let scale = g11.to_f64().abs() * g22.to_f64().abs();
        if det.is_zero_within(1e-12 * scale) || scale == 0.0 {
            return Err(Error::Degenerate);
        }
        let total = self
            .brackets(x, y)
            .iter()
            .fold(F::zero(), |acc, b| acc + self.chain.norm0_sq(b));
        Ok(total / det)
    }
}
