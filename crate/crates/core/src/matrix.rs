//! Small dense matrices over any [`Scalar`].

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl<F> Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Scalar> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Mat { rows: n, cols: m, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Mat<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero_within(0.0) {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out[(i, j)].clone() + a.clone() * o[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    /// Matrix commutator `[A, B] = AB − BA`.
    pub fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// `tr(Aᵀ B)`, computed without forming the product.
    pub fn frobenius_dot(&self, o: &Self) -> F {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        self.data.iter().zip(&o.data).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.data.iter().all(|v| v.is_zero_within(tol))
    }

    /// Largest entry of `Aᵀ + A`.
    pub fn skew_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.add(&self.transpose()).max_abs()
    }

    /// Largest entry of `AᵀA − I`.
    pub fn orthogonality_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.transpose().mul(self).sub(&Self::identity(self.rows)).max_abs()
    }

    pub fn row(&self, r: usize) -> Vec<F> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(F::zero(), |acc, c| acc + self[(r, c)].clone() * v[c].clone())
            })
            .collect()
    }

    /// Row echelon reduction in place; returns pivot columns.
    ///
    /// Floating mode pivots on the largest available entry and treats
    /// entries below `tol` (relative to the largest input entry) as zero.
    fn reduce(&mut self, tol: f64) -> Vec<usize> {
        let scale = self.max_abs().max(1.0);
        let cut = tol * scale;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let best = (row..self.rows)
                .filter(|&r| !self[(r, col)].is_zero_within(cut))
                .max_by(|&a, &b| {
                    self[(a, col)].pivot_weight().total_cmp(&self[(b, col)].pivot_weight())
                });
            let Some(p) = best else { continue };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = F::one() / self[(row, col)].clone();
            for c in col..self.cols {
                self[(row, c)] = self[(row, c)].clone() * inv.clone();
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero_within(0.0) {
                    continue;
                }
                let f = self[(r, col)].clone();
                for c in col..self.cols {
                    let v = self[(r, c)].clone() - f.clone() * self[(row, c)].clone();
                    self[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.clone().reduce(tol).len()
    }

    /// Basis of `{x : A x = 0}` from the reduced row echelon form.
    pub fn kernel(&self, tol: f64) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.reduce(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `A x = b` for square nonsingular `A`.
    pub fn solve(&self, b: &[F], tol: f64) -> Option<Vec<F>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::from_fn(n, n + 1, |r, c| if c < n { self[(r, c)].clone() } else { b[r].clone() });
        let pivots = aug.reduce(tol);
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some((0..n).map(|r| aug[(r, n)].clone()).collect())
    }

    pub fn inverse(&self, tol: f64) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        let pivots = aug.reduce(tol);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| aug[(r, c + n)].clone()))
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero_within(0.0)) else {
                return F::zero();
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det = det * piv.clone();
            for r in col + 1..n {
                let f = m[(r, col)].clone() / piv.clone();
                if f.is_zero_within(0.0) {
                    continue;
                }
                for c in col..n {
                    let v = m[(r, c)].clone() - f.clone() * m[(col, c)].clone();
                    m[(r, c)] = v;
                }
            }
        }
        det
    }

    /// Signs of the diagonal of `D` in a symmetric `L D Lᵀ` factorization
    /// without pivoting. Returns `None` when a zero pivot appears before the
    /// end, in which case Sylvester's criterion is inconclusive.
    pub fn ldl_pivot_signs(&self, tol: f64) -> Option<Vec<i32>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut signs = Vec::with_capacity(n);
        for k in 0..n {
            let piv = m[(k, k)].clone();
            let s = piv.sign_within(tol);
            signs.push(s);
            if s == 0 {
                return if k + 1 == n { Some(signs) } else { None };
            }
            for r in k + 1..n {
                let f = m[(r, k)].clone() / piv.clone();
                for c in k..n {
                    let v = m[(r, c)].clone() - f.clone() * m[(k, c)].clone();
                    m[(r, c)] = v;
                }
            }
        }
        Some(signs)
    }
}
