//! Two-sided actions U ⊂ G × G: freeness, simple connectivity, and the
//! horizontal space at a point `(A, I)` of G × G.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cayley::{embed_so7, g2_basis};
use crate::config::TOLERANCES;
use crate::error::{Error, Result};
use crate::lie::{ad, chain_basis, realify, ChainSpec};
use crate::matrix::Mat;
use crate::metric::DeformedMetric;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "s1xg2")]
    S1xG2,
    #[serde(rename = "so3xg2")]
    So3xG2,
    #[serde(rename = "eschenburg")]
    Eschenburg,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::S1xG2 => "s1xg2",
            Family::So3xG2 => "so3xg2",
            Family::Eschenburg => "eschenburg",
        })
    }
}

/// For the SO(8) families `p` holds the circle weights `(p1, p2, p3)` and
/// `q` the weights `(0, p1, p2, p3)` of the circle inside SO(8). For
/// Eschenburg spaces `p` has length n + 1 and `q` length 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiquotientSpec {
    pub family: Family,
    pub p: Vec<i64>,
    pub q: Vec<i64>,
}

impl BiquotientSpec {
    pub fn s1xg2(p: [i64; 3]) -> Self {
        BiquotientSpec { family: Family::S1xG2, p: p.to_vec(), q: vec![0, p[0], p[1], p[2]] }
    }

    /// The free S¹ × G2 action; its quotient is 13-dimensional.
    pub fn m13() -> Self {
        Self::s1xg2([0, 0, 1])
    }

    /// SO(3) × G2, the SO(3) containing the circle of [`Self::m13`].
    pub fn n11() -> Self {
        BiquotientSpec { family: Family::So3xG2, p: vec![0, 0, 1], q: vec![0, 0, 0, 1] }
    }

    pub fn eschenburg(p: Vec<i64>, q: [i64; 2]) -> Result<Self> {
        let s = BiquotientSpec { family: Family::Eschenburg, p, q: q.to_vec() };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.family {
            Family::S1xG2 => {
                self.p.len() == 3 && self.q.len() == 4 && self.q[0] == 0 && self.q[1..] == self.p[..]
            }
            Family::So3xG2 => self.p == [0, 0, 1] && self.q == [0, 0, 0, 1],
            Family::Eschenburg => self.p.len() >= 3 && self.q.len() == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Precondition(format!("malformed {} weights p = {:?}, q = {:?}", self.family, self.p, self.q)))
        }
    }

    /// n for U(n + 1); only meaningful for Eschenburg specs.
    pub fn n(&self) -> usize {
        self.p.len().saturating_sub(1)
    }

    pub fn chain(&self) -> ChainSpec {
        match self.family {
            Family::S1xG2 | Family::So3xG2 => ChainSpec::So8G2,
            Family::Eschenburg => ChainSpec::Unitary { n: self.n() },
        }
    }

    /// Metrics on the two factors of G × G: one step on both for SO(8), one
    /// then two steps for U(n + 1).
    pub fn default_metrics(&self) -> (DeformedMetric, DeformedMetric) {
        let c = self.chain();
        match self.family {
            Family::S1xG2 | Family::So3xG2 => (DeformedMetric::default_one_step(c), DeformedMetric::default_one_step(c)),
            Family::Eschenburg => (
                DeformedMetric::default_one_step(c),
                DeformedMetric::default_two_step(c).expect("unitary chain carries two steps"),
            ),
        }
    }

    pub fn dim_u(&self) -> usize {
        match self.family {
            Family::S1xG2 => 15,
            Family::So3xG2 => 17,
            Family::Eschenburg => 1 + (self.n() - 1) * (self.n() - 1),
        }
    }

    /// Lie algebra of U as pairs `(Y1, Y2)` in g ⊕ g.
    pub fn vertical_generators<F: Scalar>(&self) -> Vec<(Mat<F>, Mat<F>)> {
        let chain = self.chain();
        let size = chain.matrix_size();
        let zero = || Mat::<F>::zeros(size, size);
        let mut out = Vec::new();
        match self.family {
            Family::S1xG2 => out.push((circle_generator(&self.p), zero())),
            Family::So3xG2 => {
                for (i, j) in [(5, 6), (5, 7), (6, 7)] {
                    out.push((rotation_generator(8, i, j), zero()));
                }
            }
            Family::Eschenburg => {
                let n = self.n();
                let p = &self.p;
                let q = &self.q;
                let pm = realify(n + 1, |r, c| if r == c { (F::zero(), F::from_i64(p[r])) } else { (F::zero(), F::zero()) });
                let qm = realify(n + 1, |r, c| {
                    if r == c && r < 2 {
                        (F::zero(), F::from_i64(q[r]))
                    } else {
                        (F::zero(), F::zero())
                    }
                });
                out.push((pm, qm));
                for z in crate::lie::u_basis::<F>(n - 1) {
                    let emb = Mat::from_fn(size, size, |r, c| if r >= 4 && c >= 4 { z[(r - 4, c - 4)].clone() } else { F::zero() });
                    out.push((zero(), emb));
                }
            }
        }
        if matches!(self.family, Family::S1xG2 | Family::So3xG2) {
            for g in g2_basis().matrices::<F>() {
                out.push((zero(), embed_so7(&g)));
            }
        }
        out
    }

    /// Whether the action is free, where a decision procedure exists.
    pub fn is_free(&self) -> Result<bool> {
        match self.family {
            Family::S1xG2 => s1_g2_free(self.p[0], self.p[1], self.p[2]),
            Family::So3xG2 => Ok(true),
            Family::Eschenburg => eschenburg_free(&self.p, &self.q),
        }
    }
}

/// `E_ij − E_ji` in so(size).
pub fn rotation_generator<F: Scalar>(size: usize, i: usize, j: usize) -> Mat<F> {
    let mut m = Mat::zeros(size, size);
    m[(i, j)] = -F::one();
    m[(j, i)] = F::one();
    m
}

/// Infinitesimal generator of `diag(I₂, R(p1θ), R(p2θ), R(p3θ))`.
pub fn circle_generator<F: Scalar>(p: &[i64]) -> Mat<F> {
    let mut m = Mat::zeros(8, 8);
    for (b, &w) in p.iter().enumerate() {
        let r = 2 + 2 * b;
        m[(r, r + 1)] = -F::from_i64(w);
        m[(r + 1, r)] = F::from_i64(w);
    }
    m
}

/// `gcd(a, b)` with `gcd(0, 0) = 0`.
fn gcd0(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// `gcd(p_i − q1, p_j − q2) = 1` for every ordered pair `i ≠ j`.
pub fn eschenburg_free(p: &[i64], q: &[i64]) -> Result<bool> {
    if p.len() < 3 || q.len() != 2 {
        return Err(Error::Precondition(format!("need |p| >= 3 and |q| = 2, got {} and {}", p.len(), q.len())));
    }
    for i in 0..p.len() {
        for j in 0..p.len() {
            if i != j && gcd0(p[i] - q[0], p[j] - q[1]) != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First pair `i < j` with `p_i ≠ p_j` and `p_i + p_j ∉ {2q1, 2q2, q1 + q2}`.
pub fn qp_witness(p: &[i64], q: &[i64]) -> Result<Option<(usize, usize)>> {
    if p.len() < 3 || q.len() != 2 {
        return Err(Error::Precondition(format!("need |p| >= 3 and |q| = 2, got {} and {}", p.len(), q.len())));
    }
    let bad = [2 * q[0], 2 * q[1], q[0] + q[1]];
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] != p[j] && !bad.contains(&(p[i] + p[j])) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn qp_hypothesis(p: &[i64], q: &[i64]) -> Result<bool> {
    Ok(qp_witness(p, q)?.is_some())
}

/// Sum of the embedding weights is odd.
pub fn simply_connected_parity(q: &[i64]) -> Result<bool> {
    if q.iter().all(|&v| v == 0) {
        return Err(Error::Precondition("weights are all zero".into()));
    }
    Ok(q.iter().sum::<i64>().rem_euclid(2) == 1)
}

/// Diagonalizes an integer matrix by unimodular row and column operations,
/// returning `(D, V)` with `U M V = D` for some unimodular `U`.
fn diagonalize(mut m: Vec<Vec<i64>>) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let rows = m.len();
    let cols = m[0].len();
    let mut v: Vec<Vec<i64>> = (0..cols).map(|r| (0..cols).map(|c| i64::from(r == c)).collect()).collect();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    if m[r][c] != 0 && best.is_none_or(|(br, bc)| m[r][c].abs() < m[br][bc].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else { return (m, v) };
            m.swap(t, br);
            for row in m.iter_mut() {
                row.swap(t, bc);
            }
            for row in v.iter_mut() {
                row.swap(t, bc);
            }
            let piv = m[t][t];
            let mut clean = true;
            for r in t + 1..rows {
                let f = m[r][t].div_euclid(piv);
                for c in t..cols {
                    m[r][c] -= f * m[t][c];
                }
                clean &= m[r][t] == 0;
            }
            for c in t + 1..cols {
                let f = m[t][c].div_euclid(piv);
                for r in t..rows {
                    m[r][c] -= f * m[r][t];
                }
                for row in v.iter_mut() {
                    row[c] -= f * row[t];
                }
                clean &= m[t][c] == 0;
            }
            if clean {
                break;
            }
        }
    }
    (m, v)
}

/// For the system `M x ≡ 0 (mod 1)` on the torus `(ℝ/ℤ)^k`, whether every
/// solution has `x_0 ≡ 0`.
fn forces_first_coordinate(m: Vec<Vec<i64>>) -> bool {
    let cols = m[0].len();
    let (d, v) = diagonalize(m);
    (0..cols).all(|j| {
        let dj = if j < d.len() { d[j][j] } else { 0 };
        if dj == 0 {
            v[0][j] == 0
        } else {
            v[0][j] % dj == 0
        }
    })
}

/// All 4! · 8 signed permutations of four blocks with an even number of
/// sign changes.
fn so8_weyl_patterns() -> Vec<([usize; 4], [i64; 4])> {
    let mut perms = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&i| !std::mem::replace(&mut seen[i], true)) {
                        perms.push(p);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for perm in perms {
        for mask in 0..16u32 {
            if mask.count_ones() % 2 == 0 {
                let signs = std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 });
                out.push((perm, signs));
            }
        }
    }
    out
}

/// Freeness of `A ↦ R̃(θ) A g⁻¹` on SO(8) with circle weights `(p1, p2, p3)`.
///
/// A nontrivial circle element must never be conjugate to an element of the
/// maximal torus `{1, R(a), R(b), R(a + b)}` of G2. Conjugate torus
/// elements differ by a Weyl group element, so each signed block permutation
/// gives a linear congruence system in `(θ, a, b)`; the action is free iff
/// each system forces θ ≡ 0.
pub fn s1_g2_free(p1: i64, p2: i64, p3: i64) -> Result<bool> {
    if p1 == 0 && p2 == 0 && p3 == 0 {
        return Err(Error::Precondition("circle weights are all zero".into()));
    }
    let circle = [0, p1, p2, p3];
    // Torus blocks as coefficients of (a, b).
    let torus = [[0, 0], [1, 0], [0, 1], [1, 1]];
    for (perm, signs) in so8_weyl_patterns() {
        let rows: Vec<Vec<i64>> = (0..4)
            .map(|i| {
                let t = torus[perm[i]];
                vec![circle[i], -signs[i] * t[0], -signs[i] * t[1]]
            })
            .collect();
        if !forces_first_coordinate(rows) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The point `(A, I)` of G × G together with the metrics on both factors.
#[derive(Clone, Debug)]
pub struct PointSetup<F> {
    pub spec: BiquotientSpec,
    pub a: Mat<F>,
    pub left: DeformedMetric,
    pub right: DeformedMetric,
}

/// `diag(R(θ), I₆)` from exact or floating `cos θ`, `sin θ`.
pub fn so8_point<F: Scalar>(c: F, s: F) -> Mat<F> {
    let mut a = Mat::identity(8);
    a[(0, 0)] = c.clone();
    a[(1, 1)] = c;
    a[(0, 1)] = -s.clone();
    a[(1, 0)] = s;
    a
}

/// The rotation by π/4 in the first two complex coordinates, realified.
pub fn eschenburg_point<F: Scalar>(n: usize, inv_sqrt2: F) -> Mat<F> {
    let h = inv_sqrt2;
    realify(n + 1, |r, c| match (r, c) {
        (0, 0) | (1, 0) | (1, 1) => (h.clone(), F::zero()),
        (0, 1) => (-h.clone(), F::zero()),
        _ if r == c => (F::one(), F::zero()),
        _ => (F::zero(), F::zero()),
    })
}

impl<F: Scalar> PointSetup<F> {
    pub fn new(spec: BiquotientSpec, a: Mat<F>, metrics: (DeformedMetric, DeformedMetric)) -> Result<Self> {
        spec.validate()?;
        let size = spec.chain().matrix_size();
        if (a.rows(), a.cols()) != (size, size) {
            return Err(Error::WrongSize { expected: format!("{size}x{size}"), got: format!("{}x{}", a.rows(), a.cols()) });
        }
        let res = a.orthogonality_residual();
        let ok = if F::EXACT { res == 0.0 || a.transpose().mul(&a) == Mat::identity(size) } else { res <= TOLERANCES.derived };
        if !ok {
            return Err(Error::NotInGroup(res));
        }
        if metrics.0.chain != spec.chain() || metrics.1.chain != spec.chain() {
            return Err(Error::ChainMismatch { expected: spec.chain().to_string(), got: metrics.0.chain.to_string() });
        }
        Ok(PointSetup { spec, a, left: metrics.0, right: metrics.1 })
    }

    pub fn chain(&self) -> ChainSpec {
        self.spec.chain()
    }

    /// `Ad_A Y1 − Y2` for each generator of U; W is horizontal iff it is
    /// ⟨·,·⟩₀-orthogonal to all of them.
    pub fn constraint_vectors(&self) -> Vec<Mat<F>> {
        self.spec
            .vertical_generators::<F>()
            .into_iter()
            .map(|(y1, y2)| ad(&self.a, &y1).sub(&y2))
            .collect()
    }

    /// Basis (not orthonormal) of the space of admissible W.
    pub fn w_space(&self, tol: f64) -> Vec<Mat<F>> {
        let chain = self.chain();
        let basis = chain_basis::<F>(chain);
        let cons = self.constraint_vectors();
        let rows: Vec<Vec<F>> = cons.iter().map(|v| basis.iter().map(|b| chain.inner0(v, b)).collect()).collect();
        let m = Mat::from_rows(rows);
        m.kernel(tol)
            .into_iter()
            .map(|coef| {
                basis
                    .iter()
                    .zip(&coef)
                    .fold(Mat::zeros(chain.matrix_size(), chain.matrix_size()), |acc, (b, c)| acc.add(&b.scale(c)))
            })
            .collect()
    }

    /// Tangent vector at `(A, I)`, left-translated to the identity:
    /// `(−Ω₁⁻¹ Ad_{A⁻¹} W, Ω₂⁻¹ W)`.
    pub fn tangent(&self, w: &Mat<F>) -> (Mat<F>, Mat<F>) {
        let at = self.a.transpose();
        (self.left.phi_inv_mat(&ad(&at, w)).neg(), self.right.phi_inv_mat(w))
    }

    /// Criterion variables on each factor: the plane on factor i is flat iff
    /// the brackets of the i-th metric vanish on these.
    pub fn criterion(&self, w: &Mat<F>) -> (Mat<F>, Mat<F>) {
        let at = self.a.transpose();
        let x1 = ad(&at, w);
        let x2 = if self.right.is_two_step() { self.right.phi1_inv_mat(w) } else { w.clone() };
        (x1, x2)
    }

    /// Product-metric inner product of the tangent vectors of `w` and `v`.
    pub fn product_inner(&self, w: &Mat<F>, v: &Mat<F>) -> F {
        let (w1, w2) = self.tangent(w);
        let (v1, v2) = self.tangent(v);
        self.left.inner_mat(&w1, &v1) + self.right.inner_mat(&w2, &v2)
    }

    /// Horizontality defect of a tangent pair: largest |⟨⟨T, vertical⟩⟩|.
    pub fn vertical_defect(&self, t: &(Mat<F>, Mat<F>)) -> f64 {
        let chain = self.chain();
        let at = self.a.transpose();
        let mut worst = 0.0f64;
        let mut check = |v1: Mat<F>, v2: Mat<F>| {
            let val = self.left.inner_mat(&v1, &t.0) + self.right.inner_mat(&v2, &t.1);
            worst = worst.max(val.to_f64().abs());
        };
        // Orbit of ΔG: (Ad_{A⁻¹} X, X).
        for x in chain_basis::<F>(chain) {
            check(ad(&at, &x), x);
        }
        // Orbit of U: (Y1, Y2).
        for (y1, y2) in self.spec.vertical_generators::<F>() {
            check(y1, y2);
        }
        worst
    }
}

/// Orthonormal (product metric) basis of the horizontal space at `(A, I)`.
#[derive(Clone, Debug)]
pub struct HorizontalBasis {
    pub setup: PointSetup<f64>,
    /// Generators W, orthonormal for the product metric on their tangents.
    pub w: Vec<Mat<f64>>,
}

impl HorizontalBasis {
    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn tangents(&self) -> Vec<(Mat<f64>, Mat<f64>)> {
        self.w.iter().map(|w| self.setup.tangent(w)).collect()
    }
}

pub fn horizontal_basis(spec: &BiquotientSpec, a: &Mat<f64>, metrics: (DeformedMetric, DeformedMetric)) -> Result<HorizontalBasis> {
    let setup = PointSetup::new(spec.clone(), a.clone(), metrics)?;
    let raw = setup.w_space(1e-10);
    let mut w: Vec<Mat<f64>> = Vec::new();
    for v in raw {
        let mut u = v;
        for _ in 0..2 {
            for e in &w {
                let c = setup.product_inner(&u, e);
                u = u.sub(&e.scale(&c));
            }
        }
        let nrm = setup.product_inner(&u, &u).sqrt();
        if nrm > 1e-10 {
            w.push(u.scale(&(1.0 / nrm)));
        }
    }
    Ok(HorizontalBasis { setup, w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QSqrt2;

    #[test]
    fn eschenburg_free_examples() {
        assert!(eschenburg_free(&[1, 2, 3], &[0, 0]).unwrap());
        assert!(!eschenburg_free(&[0, 2, 4], &[0, 0]).unwrap());
        assert!(!eschenburg_free(&[1, 1, 1], &[1, 1]).unwrap());
        assert!(eschenburg_free(&[1, 2], &[0, 0]).is_err());
    }

    #[test]
    fn hypothesis_examples() {
        assert!(qp_hypothesis(&[1, 2, 3], &[0, 0]).unwrap());
        assert_eq!(qp_witness(&[1, 2, 3], &[0, 0]).unwrap(), Some((0, 1)));
        assert!(!qp_hypothesis(&[0, 0, 0], &[-1, 1]).unwrap());
        assert!(!qp_hypothesis(&[0, 0, 0, 0], &[-1, 1]).unwrap());
        assert!(qp_hypothesis(&[1, 1], &[0, 0]).is_err());
    }

    #[test]
    fn parity_examples() {
        assert!(simply_connected_parity(&[0, 0, 0, 1]).unwrap());
        assert!(!simply_connected_parity(&[1, 1, 0, 0]).unwrap());
        assert!(simply_connected_parity(&[1, 1, 1, 2]).unwrap());
        assert!(simply_connected_parity(&[0, 0, 0, 0]).is_err());
    }

    #[test]
    fn s1_g2_examples() {
        assert!(s1_g2_free(0, 0, 1).unwrap());
        assert!(s1_g2_free(0, 1, 0).unwrap());
        assert!(s1_g2_free(0, 0, -1).unwrap());
        assert!(!s1_g2_free(1, 1, 1).unwrap());
        assert!(!s1_g2_free(0, 0, 2).unwrap());
        assert!(s1_g2_free(0, 0, 0).is_err());
    }

    #[test]
    fn diagonalize_tracks_columns() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16], vec![1, 0, 3]];
        let (d, v) = diagonalize(m.clone());
        for r in 0..4 {
            for c in 0..3 {
                if r != c {
                    assert_eq!(d[r][c], 0);
                }
            }
        }
        // M V has the same row lattice image as D: check |det V| = 1.
        let det = v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) - v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0])
            + v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]);
        assert_eq!(det.abs(), 1);
    }

    #[test]
    fn m13_horizontal_dimension() {
        let spec = BiquotientSpec::m13();
        let t = std::f64::consts::FRAC_PI_4;
        let a = so8_point(t.cos(), t.sin());
        let hb = horizontal_basis(&spec, &a, spec.default_metrics()).unwrap();
        assert_eq!(hb.dim(), 13);
        assert_eq!(hb.dim(), 28 - spec.dim_u());
        for tv in hb.tangents() {
            assert!(hb.setup.vertical_defect(&tv) < 1e-10);
        }
        for i in 0..hb.dim() {
            for j in 0..hb.dim() {
                let g = hb.setup.product_inner(&hb.w[i], &hb.w[j]);
                assert!((g - f64::from(u8::from(i == j))).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn n11_and_eschenburg_dimensions() {
        let t = std::f64::consts::FRAC_PI_4;
        let spec = BiquotientSpec::n11();
        let hb = horizontal_basis(&spec, &so8_point(t.cos(), t.sin()), spec.default_metrics()).unwrap();
        assert_eq!(hb.dim(), 11);
        for n in [2, 3] {
            let p: Vec<i64> = (1..=n as i64 + 1).collect();
            let spec = BiquotientSpec::eschenburg(p, [0, 0]).unwrap();
            let a = eschenburg_point(n, 0.5f64.sqrt());
            let hb = horizontal_basis(&spec, &a, spec.default_metrics()).unwrap();
            assert_eq!(hb.dim(), 4 * n - 1);
            for tv in hb.tangents() {
                assert!(hb.setup.vertical_defect(&tv) < 1e-10);
            }
        }
    }

    #[test]
    fn exact_w_space_matches_float() {
        let spec = BiquotientSpec::eschenburg(vec![1, 2, 3], [0, 0]).unwrap();
        let h = QSqrt2::from_parts(0, 1, 1, 2);
        let setup = PointSetup::new(spec.clone(), eschenburg_point(2, h), spec.default_metrics()).unwrap();
        assert_eq!(setup.w_space(0.0).len(), 7);
    }

    #[test]
    fn non_orthogonal_point_rejected() {
        let spec = BiquotientSpec::m13();
        let a = so8_point(1.0, 1.0);
        assert!(matches!(horizontal_basis(&spec, &a, spec.default_metrics()), Err(Error::NotInGroup(_))));
    }

    #[test]
    fn spec_json_shape() {
        let s = BiquotientSpec::eschenburg(vec![1, 2, 3], [0, 0]).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"family":"eschenburg","p":[1,2,3],"q":[0,0]}"#);
    }
}
