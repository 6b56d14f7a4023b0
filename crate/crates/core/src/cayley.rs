//! Cayley numbers, the derivation algebra g2 ⊂ so(7), and its complement m.
//!
//! Basis of Ca: e0 = 1, e1 = i, e2 = j, e3 = k, e4 = ℓ, e5 = iℓ, e6 = jℓ,
//! e7 = kℓ. The multiplication table below is the ground truth; the
//! Cayley–Dickson formula is only used as a test oracle.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Scalar;

/// `TABLE[a][b] = (sign, index)` with `e_{a+1} * e_{b+1} = sign * e_index`.
const TABLE: [[(i8, u8); 7]; 7] = [
    [(-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
    [(-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (-1, 4), (-1, 5)],
    [(1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (-1, 4)],
    [(-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 4), (-1, 7), (1, 6), (-1, 1), (-1, 0), (-1, 3), (1, 2)],
    [(1, 7), (1, 4), (-1, 5), (-1, 2), (1, 3), (-1, 0), (-1, 1)],
    [(-1, 6), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1), (-1, 0)],
];

/// Product of basis elements `e_a * e_b` as `(sign, index)`.
pub fn basis_product(a: usize, b: usize) -> (i8, usize) {
    match (a, b) {
        (0, _) => (1, b),
        (_, 0) => (1, a),
        _ => {
            let (s, i) = TABLE[a - 1][b - 1];
            (s, i as usize)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Octonion<F> {
    pub coords: [F; 8],
}

impl<F: Scalar> Octonion<F> {
    pub fn new(coords: [F; 8]) -> Self {
        Octonion { coords }
    }

    pub fn zero() -> Self {
        Octonion { coords: std::array::from_fn(|_| F::zero()) }
    }

    pub fn basis(i: usize) -> Self {
        let mut o = Self::zero();
        o.coords[i] = F::one();
        o
    }

    pub fn conj(&self) -> Self {
        Octonion {
            coords: std::array::from_fn(|i| {
                if i == 0 {
                    self.coords[0].clone()
                } else {
                    -self.coords[i].clone()
                }
            }),
        }
    }

    pub fn norm_sq(&self) -> F {
        self.coords.iter().fold(F::zero(), |acc, c| acc + c.clone() * c.clone())
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().to_f64().sqrt()
    }

    pub fn scale(&self, s: &F) -> Self {
        Octonion { coords: std::array::from_fn(|i| self.coords[i].clone() * s.clone()) }
    }

    pub fn max_abs(&self) -> f64 {
        self.coords.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }
}

/// Bilinear extension of the basis table, row element on the left.
pub fn oct_mul<F: Scalar>(a: &Octonion<F>, b: &Octonion<F>) -> Octonion<F> {
    let mut out = Octonion::<F>::zero();
    for i in 0..8 {
        if a.coords[i].is_zero_within(0.0) {
            continue;
        }
        for j in 0..8 {
            let (s, k) = basis_product(i, j);
            let term = a.coords[i].clone() * b.coords[j].clone();
            let acc = out.coords[k].clone();
            out.coords[k] = if s > 0 { acc + term } else { acc - term };
        }
    }
    out
}

impl<F: Scalar> Mul for &Octonion<F> {
    type Output = Octonion<F>;
    fn mul(self, rhs: Self) -> Octonion<F> {
        oct_mul(self, rhs)
    }
}

impl<F: Scalar> Add for &Octonion<F> {
    type Output = Octonion<F>;
    fn add(self, rhs: Self) -> Octonion<F> {
        Octonion { coords: std::array::from_fn(|i| self.coords[i].clone() + rhs.coords[i].clone()) }
    }
}

impl<F: Scalar> Sub for &Octonion<F> {
    type Output = Octonion<F>;
    fn sub(self, rhs: Self) -> Octonion<F> {
        Octonion { coords: std::array::from_fn(|i| self.coords[i].clone() - rhs.coords[i].clone()) }
    }
}

impl<F: Scalar> Neg for &Octonion<F> {
    type Output = Octonion<F>;
    fn neg(self) -> Octonion<F> {
        Octonion { coords: std::array::from_fn(|i| -self.coords[i].clone()) }
    }
}

/// Names of the g2 parameters in basis order.
pub const G2_PARAMS: [&str; 14] = [
    "x1", "x2", "x3", "x4", "x5", "x6", "y1", "y2", "y3", "y4", "y5", "y6", "alpha1", "alpha2",
];

/// The 7×7 matrix of g2 with parameters `(x1..x6, y1..y6, α1, α2)`.
///
/// Row and column `r` correspond to `e_{r+1}`.
pub fn g2_matrix<F: Scalar>(params: &[F; 14]) -> Mat<F> {
    let x = |i: usize| params[i - 1].clone();
    let y = |i: usize| params[5 + i].clone();
    let a1 = params[12].clone();
    let a2 = params[13].clone();
    let z = F::zero;
    let upper = [
        [z(), x(1) + x(2), y(1) + y(2), x(3) + x(4), y(3) + y(4), x(5) + x(6), y(5) + y(6)],
        [z(), z(), a1.clone(), -y(5), x(5), -y(3), x(3)],
        [z(), z(), z(), x(6), y(6), -x(4), -y(4)],
        [z(), z(), z(), z(), a2.clone(), y(1), -x(1)],
        [z(), z(), z(), z(), z(), x(2), y(2)],
        [z(), z(), z(), z(), z(), z(), a1 + a2],
        [z(), z(), z(), z(), z(), z(), z()],
    ];
    Mat::from_fn(7, 7, |r, c| {
        if r < c {
            upper[r][c].clone()
        } else if r > c {
            -upper[c][r].clone()
        } else {
            F::zero()
        }
    })
}

/// The seven linear relations cut out by g2 inside so(7), evaluated on a
/// 7×7 matrix. Entries `a_ij` use 1-based indices matching `e_i`.
pub fn g2_relations<F: Scalar>(m: &Mat<F>) -> [F; 7] {
    let a = |i: usize, j: usize| m[(i - 1, j - 1)].clone();
    [
        a(2, 3) + a(4, 5) + a(7, 6),
        a(1, 2) + a(4, 7) + a(6, 5),
        a(1, 3) + a(6, 4) + a(7, 5),
        a(1, 4) + a(7, 2) + a(3, 6),
        a(1, 5) + a(2, 6) + a(3, 7),
        a(1, 6) + a(5, 2) + a(4, 3),
        a(1, 7) + a(2, 4) + a(5, 3),
    ]
}

/// Integer basis of g2 in the order of [`G2_PARAMS`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct G2Basis {
    pub elements: Vec<[[i64; 7]; 7]>,
}

impl G2Basis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn matrix<F: Scalar>(&self, k: usize) -> Mat<F> {
        let e = &self.elements[k];
        Mat::from_fn(7, 7, |r, c| F::from_i64(e[r][c]))
    }

    pub fn matrices<F: Scalar>(&self) -> Vec<Mat<F>> {
        (0..self.len()).map(|k| self.matrix(k)).collect()
    }
}

pub fn g2_basis() -> G2Basis {
    let elements = (0..14)
        .map(|k| {
            let params: [i64; 14] = std::array::from_fn(|i| i64::from(i == k));
            let m = g2_matrix::<f64>(&params.map(|v| v as f64));
            std::array::from_fn(|r| std::array::from_fn(|c| m[(r, c)] as i64))
        })
        .collect();
    G2Basis { elements }
}

/// The 7×7 complement m of g2 in so(7), parameters `v1..v7`.
pub fn m_matrix<F: Scalar>(v: &[F; 7]) -> Mat<F> {
    let p = |i: usize| v[i - 1].clone();
    let z = F::zero;
    let upper = [
        [z(), p(1), p(2), p(3), p(4), p(5), p(6)],
        [z(), z(), p(7), p(6), -p(5), p(4), -p(3)],
        [z(), z(), z(), -p(5), -p(6), p(3), p(4)],
        [z(), z(), z(), z(), p(7), -p(2), p(1)],
        [z(), z(), z(), z(), z(), -p(1), -p(2)],
        [z(), z(), z(), z(), z(), z(), -p(7)],
        [z(), z(), z(), z(), z(), z(), z()],
    ];
    Mat::from_fn(7, 7, |r, c| {
        if r < c {
            upper[r][c].clone()
        } else if r > c {
            -upper[c][r].clone()
        } else {
            F::zero()
        }
    })
}

pub fn m_basis<F: Scalar>() -> Vec<Mat<F>> {
    (0..7)
        .map(|k| m_matrix(&std::array::from_fn(|i| if i == k { F::one() } else { F::zero() })))
        .collect()
}

/// The 8×8 matrix of p ⊂ so(8): first row `(0, w)`, first column `−w`.
pub fn p_matrix<F: Scalar>(w: &[F; 7]) -> Mat<F> {
    let mut m = Mat::zeros(8, 8);
    for j in 0..7 {
        m[(0, j + 1)] = w[j].clone();
        m[(j + 1, 0)] = -w[j].clone();
    }
    m
}

/// Places a 7×7 matrix in the lower-right block of an 8×8 matrix.
pub fn embed_so7<F: Scalar>(m: &Mat<F>) -> Mat<F> {
    assert_eq!((m.rows(), m.cols()), (7, 7));
    Mat::from_fn(8, 8, |r, c| if r > 0 && c > 0 { m[(r - 1, c - 1)].clone() } else { F::zero() })
}

fn apply_to_imaginary<F: Scalar>(d: &Mat<F>, x: &Octonion<F>) -> Octonion<F> {
    let mut out = Octonion::zero();
    for (i, o) in out.coords.iter_mut().enumerate().skip(1) {
        *o = (1..8).fold(F::zero(), |acc, j| acc + d[(i - 1, j - 1)].clone() * x.coords[j].clone());
    }
    out
}

/// Largest violation of `D(xy) = D(x) y + x D(y)` over basis pairs, with D
/// acting on span{e1..e7} by columns and killing e0.
pub fn derivation_defect<F: Scalar>(d: &Mat<F>) -> Result<f64> {
    if (d.rows(), d.cols()) != (7, 7) {
        return Err(Error::WrongSize { expected: "7x7".into(), got: format!("{}x{}", d.rows(), d.cols()) });
    }
    let mut worst = 0.0f64;
    for i in 1..8 {
        for j in 1..8 {
            let ei = Octonion::<F>::basis(i);
            let ej = Octonion::<F>::basis(j);
            let lhs = apply_to_imaginary(d, &oct_mul(&ei, &ej));
            let rhs = &oct_mul(&apply_to_imaginary(d, &ei), &ej) + &oct_mul(&ei, &apply_to_imaginary(d, &ej));
            worst = worst.max((&lhs - &rhs).max_abs());
        }
    }
    Ok(worst)
}

pub fn is_derivation<F: Scalar>(d: &Mat<F>, tol: f64) -> Result<bool> {
    let defect = derivation_defect(d)?;
    Ok(if F::EXACT { defect == 0.0 } else { defect < tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Cayley–Dickson on quaternion pairs: (a + bℓ)(c + dℓ) = (ac − d̄b) + (da + bc̄)ℓ.
    fn dickson(x: &[f64; 8], y: &[f64; 8]) -> [f64; 8] {
        fn qmul(p: [f64; 4], q: [f64; 4]) -> [f64; 4] {
            [
                p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
                p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
                p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
                p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
            ]
        }
        fn qconj(p: [f64; 4]) -> [f64; 4] {
            [p[0], -p[1], -p[2], -p[3]]
        }
        let a = [x[0], x[1], x[2], x[3]];
        let b = [x[4], x[5], x[6], x[7]];
        let c = [y[0], y[1], y[2], y[3]];
        let d = [y[4], y[5], y[6], y[7]];
        let re = {
            let u = qmul(a, c);
            let v = qmul(qconj(d), b);
            [u[0] - v[0], u[1] - v[1], u[2] - v[2], u[3] - v[3]]
        };
        let im = {
            let u = qmul(d, a);
            let v = qmul(b, qconj(c));
            [u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3]]
        };
        [re[0], re[1], re[2], re[3], im[0], im[1], im[2], im[3]]
    }

    #[test]
    fn table_matches_dickson_formula() {
        for i in 0..8 {
            for j in 0..8 {
                let mut x = [0.0; 8];
                let mut y = [0.0; 8];
                x[i] = 1.0;
                y[j] = 1.0;
                let expect = dickson(&x, &y);
                let got = oct_mul(&Octonion::new(x), &Octonion::new(y));
                assert_eq!(got.coords, expect, "e{i} * e{j}");
            }
        }
    }

    #[test]
    fn table_spot_values() {
        assert_eq!(basis_product(1, 2), (1, 3));
        assert_eq!(basis_product(2, 7), (-1, 5));
        assert_eq!(basis_product(4, 4), (-1, 0));
    }

    #[test]
    fn non_associative_witness() {
        let e = |i| Octonion::<f64>::basis(i);
        let left = oct_mul(&oct_mul(&e(1), &e(2)), &e(4));
        let right = oct_mul(&e(1), &oct_mul(&e(2), &e(4)));
        assert_eq!(left, e(7));
        assert_eq!(right, -&e(7));
    }

    #[test]
    fn identity_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = Octonion::new(std::array::from_fn(|_| rng.random_range(-1.0..1.0)));
        assert_eq!(oct_mul(&Octonion::basis(0), &x), x);
        assert_eq!(oct_mul(&x, &Octonion::basis(0)), x);
    }

    #[test]
    fn g2_basis_elements_are_derivations() {
        let b = g2_basis();
        assert_eq!(b.len(), 14);
        for k in 0..14 {
            let m = b.matrix::<f64>(k);
            assert_eq!(derivation_defect(&m).unwrap(), 0.0, "{}", G2_PARAMS[k]);
            assert!(g2_relations(&m).iter().all(|&r| r == 0.0));
        }
    }

    #[test]
    fn zero_is_derivation_and_lone_a23_is_not() {
        assert!(is_derivation(&Mat::<f64>::zeros(7, 7), 1e-12).unwrap());
        let mut d = Mat::<f64>::zeros(7, 7);
        d[(1, 2)] = 1.0;
        d[(2, 1)] = -1.0;
        assert!(!is_derivation(&d, 1e-12).unwrap());
        // D e2 = -e3, D e3 = e2. D(e2 e4) = D(e6) = 0 but D(e2) e4 = -e7.
        let e = |i| Octonion::<f64>::basis(i);
        let d_apply = |x: &Octonion<f64>| apply_to_imaginary(&d, x);
        let lhs = d_apply(&oct_mul(&e(2), &e(4)));
        let rhs = &oct_mul(&d_apply(&e(2)), &e(4)) + &oct_mul(&e(2), &d_apply(&e(4)));
        assert_eq!(lhs, Octonion::zero());
        assert_eq!(rhs, -&e(7));
    }

    #[test]
    fn wrong_size_rejected() {
        assert!(derivation_defect(&Mat::<f64>::zeros(8, 8)).is_err());
    }

    #[test]
    fn m_is_orthogonal_to_g2() {
        let g = g2_basis().matrices::<f64>();
        for mk in m_basis::<f64>() {
            assert!(mk.skew_residual() == 0.0);
            for gk in &g {
                assert_eq!(mk.frobenius_dot(gk), 0.0);
            }
        }
    }

    #[test]
    fn basis_json_roundtrip() {
        let b = g2_basis();
        let s = serde_json::to_string(&b).unwrap();
        assert!(s.starts_with("[[[0,1,0,0,0,0,0]"));
        let back: G2Basis = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
    }
}
