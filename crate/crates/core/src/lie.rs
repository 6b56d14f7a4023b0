//! Matrix Lie algebras, the two symmetric-pair chains, and their reductive
//! decompositions g = p ⊕ m ⊕ h.
//!
//! Complex matrices are realified: the entry `a + ib` at `(r, c)` becomes the
//! block `[[a, −b], [b, a]]` at rows `2r, 2r+1` and columns `2c, 2c+1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cayley::{embed_so7, m_basis};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    So8,
    So7,
    G2,
    M7,
    /// u(n + 1), realified to size 2(n + 1).
    Unitary { n: usize },
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::So8 => write!(f, "so8"),
            Algebra::So7 => write!(f, "so7"),
            Algebra::G2 => write!(f, "g2"),
            Algebra::M7 => write!(f, "m7"),
            Algebra::Unitary { n } => write!(f, "u({})", n + 1),
        }
    }
}

impl Algebra {
    /// Size of the (realified) matrices.
    pub fn matrix_size(&self) -> usize {
        match self {
            Algebra::So8 => 8,
            Algebra::So7 | Algebra::G2 | Algebra::M7 => 7,
            Algebra::Unitary { n } => 2 * (n + 1),
        }
    }
}

/// G ⊃ K ⊃ H.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainSpec {
    /// SO(8) ⊃ SO(7) ⊃ G2.
    So8G2,
    /// U(n+1) ⊃ U(1)U(n) ⊃ U(1)U(1)U(n−1).
    Unitary { n: usize },
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainSpec::So8G2 => write!(f, "so(8) > so(7) > g2"),
            ChainSpec::Unitary { n } => write!(f, "u({}) > u(1)u({n}) > u(1)u(1)u({})", n + 1, n - 1),
        }
    }
}

impl ChainSpec {
    pub fn top(&self) -> Algebra {
        match *self {
            ChainSpec::So8G2 => Algebra::So8,
            ChainSpec::Unitary { n } => Algebra::Unitary { n },
        }
    }

    /// Only chains made of two symmetric pairs carry a two-step deformation.
    pub fn supports_two_step(&self) -> bool {
        matches!(self, ChainSpec::Unitary { .. })
    }

    pub fn matrix_size(&self) -> usize {
        self.top().matrix_size()
    }

    /// Real dimension of the top algebra.
    pub fn dim(&self) -> usize {
        match *self {
            ChainSpec::So8G2 => 28,
            ChainSpec::Unitary { n } => (n + 1) * (n + 1),
        }
    }

    /// ⟨X, Y⟩₀: `−tr(XY)` for real skew matrices, `−Re tr(XY)` for
    /// skew-Hermitian ones (half the realified trace).
    pub fn inner0<F: Scalar>(&self, x: &Mat<F>, y: &Mat<F>) -> F {
        let d = x.frobenius_dot(y);
        match self {
            ChainSpec::So8G2 => d,
            ChainSpec::Unitary { .. } => d * F::from_ratio(1, 2),
        }
    }

    pub fn norm0_sq<F: Scalar>(&self, x: &Mat<F>) -> F {
        self.inner0(x, x)
    }

    /// Splits a matrix of the top algebra into its p, m and h parts.
    pub fn split<F: Scalar>(&self, x: &Mat<F>) -> Components<F> {
        match *self {
            ChainSpec::So8G2 => split_so8(x),
            ChainSpec::Unitary { n } => split_unitary(x, n),
        }
    }

    pub fn check(&self, x: &LieVector<impl Scalar>) -> Result<()> {
        if x.algebra != self.top() {
            return Err(Error::ChainMismatch { expected: self.top().to_string(), got: x.algebra.to_string() });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Components<F> {
    pub p: Mat<F>,
    pub m: Mat<F>,
    pub h: Mat<F>,
}

impl<F: Scalar> Components<F> {
    /// k = m ⊕ h.
    pub fn k(&self) -> Mat<F> {
        self.m.add(&self.h)
    }

    pub fn sum(&self) -> Mat<F> {
        self.p.add(&self.m).add(&self.h)
    }
}

fn split_so8<F: Scalar>(x: &Mat<F>) -> Components<F> {
    let mut p = Mat::zeros(8, 8);
    for j in 1..8 {
        p[(0, j)] = x[(0, j)].clone();
        p[(j, 0)] = x[(j, 0)].clone();
    }
    let k = x.sub(&p);
    // Each m basis matrix has six nonzero entries ±1 and the seven have
    // disjoint supports, so projection is a scaled dot product.
    let mut m = Mat::zeros(8, 8);
    let sixth = F::from_ratio(1, 6);
    for b in m_basis::<F>() {
        let b8 = embed_so7(&b);
        let c = k.frobenius_dot(&b8) * sixth.clone();
        if !c.is_zero_within(0.0) {
            m = m.add(&b8.scale(&c));
        }
    }
    let h = k.sub(&m);
    Components { p, m, h }
}

fn split_unitary<F: Scalar>(x: &Mat<F>, n: usize) -> Components<F> {
    let size = n + 1;
    let part = |keep: &dyn Fn(usize, usize) -> bool| {
        Mat::from_fn(2 * size, 2 * size, |r, c| if keep(r / 2, c / 2) { x[(r, c)].clone() } else { F::zero() })
    };
    let in_p = |i: usize, j: usize| (i == 0) != (j == 0);
    let in_m = |i: usize, j: usize| !in_p(i, j) && i != j && (i == 1 || j == 1);
    let p = part(&in_p);
    let m = part(&in_m);
    let h = part(&|i, j| !in_p(i, j) && !in_m(i, j));
    Components { p, m, h }
}

/// A matrix tagged with the algebra it lives in.
#[derive(Clone, Debug, PartialEq)]
pub struct LieVector<F> {
    pub algebra: Algebra,
    pub mat: Mat<F>,
}

impl<F: Scalar> LieVector<F> {
    /// Checks size and skewness; realified matrices must also have the
    /// complex block shape.
    pub fn new(algebra: Algebra, mat: Mat<F>, tol: f64) -> Result<Self> {
        let s = algebra.matrix_size();
        if (mat.rows(), mat.cols()) != (s, s) {
            return Err(Error::WrongSize { expected: format!("{s}x{s}"), got: format!("{}x{}", mat.rows(), mat.cols()) });
        }
        let skew = mat.skew_residual();
        if skew > tol {
            return Err(Error::Precondition(format!("matrix is not skew (residual {skew:e})")));
        }
        if let Algebra::Unitary { .. } = algebra {
            if !is_complex_form(&mat, tol) {
                return Err(Error::Precondition("matrix is not a realified complex matrix".into()));
            }
        }
        Ok(LieVector { algebra, mat })
    }

    pub fn unchecked(algebra: Algebra, mat: Mat<F>) -> Self {
        LieVector { algebra, mat }
    }

    /// so(7), g2 or m vectors placed in so(8).
    pub fn embed(&self) -> Result<Self> {
        match self.algebra {
            Algebra::So7 | Algebra::G2 | Algebra::M7 => Ok(LieVector { algebra: Algebra::So8, mat: embed_so7(&self.mat) }),
            Algebra::So8 | Algebra::Unitary { .. } => Ok(self.clone()),
        }
    }
}

/// `(X_p, X_m, X_h)`, checked against the chain.
pub fn decompose<F: Scalar>(x: &LieVector<F>, chain: ChainSpec) -> Result<Components<F>> {
    chain.check(x)?;
    Ok(chain.split(&x.mat))
}

pub fn bracket<F: Scalar>(x: &Mat<F>, y: &Mat<F>) -> Mat<F> {
    x.bracket(y)
}

/// `Ad_A X = A X A⁻¹` for orthogonal (or realified unitary) `A`.
pub fn ad<F: Scalar>(a: &Mat<F>, x: &Mat<F>) -> Mat<F> {
    a.mul(x).mul(&a.transpose())
}

pub fn is_complex_form<F: Scalar>(m: &Mat<F>, tol: f64) -> bool {
    if !m.rows().is_multiple_of(2) || !m.cols().is_multiple_of(2) {
        return false;
    }
    for r in 0..m.rows() / 2 {
        for c in 0..m.cols() / 2 {
            let (r0, c0) = (2 * r, 2 * c);
            let same = m[(r0, c0)].clone() - m[(r0 + 1, c0 + 1)].clone();
            let opp = m[(r0, c0 + 1)].clone() + m[(r0 + 1, c0)].clone();
            if !same.is_zero_within(tol) || !opp.is_zero_within(tol) {
                return false;
            }
        }
    }
    true
}

/// Complex square matrix of size `size` realified; `f` returns `(re, im)`.
pub fn realify<F: Scalar>(size: usize, f: impl Fn(usize, usize) -> (F, F)) -> Mat<F> {
    let mut m = Mat::zeros(2 * size, 2 * size);
    for r in 0..size {
        for c in 0..size {
            let (a, b) = f(r, c);
            m[(2 * r, 2 * c)] = a.clone();
            m[(2 * r + 1, 2 * c + 1)] = a;
            m[(2 * r, 2 * c + 1)] = -b.clone();
            m[(2 * r + 1, 2 * c)] = b;
        }
    }
    m
}

/// The complex entry `(re, im)` at `(r, c)` of a realified matrix.
pub fn cx_entry<F: Scalar>(m: &Mat<F>, r: usize, c: usize) -> (F, F) {
    (m[(2 * r, 2 * c)].clone(), m[(2 * r + 1, 2 * c)].clone())
}

/// Basis of skew-symmetric `n × n` matrices `E_ij − E_ji`, `i < j`.
pub fn so_basis<F: Scalar>(n: usize) -> Vec<Mat<F>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut m = Mat::zeros(n, n);
            m[(i, j)] = F::one();
            m[(j, i)] = -F::one();
            out.push(m);
        }
    }
    out
}

/// Basis of u(size) realified: `i E_kk`, then `E_kl − E_lk` and
/// `i (E_kl + E_lk)` for `k < l`.
pub fn u_basis<F: Scalar>(size: usize) -> Vec<Mat<F>> {
    let mut out = Vec::new();
    for k in 0..size {
        out.push(realify(size, |r, c| if r == k && c == k { (F::zero(), F::one()) } else { (F::zero(), F::zero()) }));
    }
    for k in 0..size {
        for l in k + 1..size {
            out.push(realify(size, |r, c| {
                if (r, c) == (k, l) {
                    (F::one(), F::zero())
                } else if (r, c) == (l, k) {
                    (-F::one(), F::zero())
                } else {
                    (F::zero(), F::zero())
                }
            }));
            out.push(realify(size, |r, c| {
                if (r, c) == (k, l) || (r, c) == (l, k) {
                    (F::zero(), F::one())
                } else {
                    (F::zero(), F::zero())
                }
            }));
        }
    }
    out
}

/// Basis of the top algebra of a chain.
pub fn chain_basis<F: Scalar>(chain: ChainSpec) -> Vec<Mat<F>> {
    match chain {
        ChainSpec::So8G2 => so_basis(8),
        ChainSpec::Unitary { n } => u_basis(n + 1),
    }
}
