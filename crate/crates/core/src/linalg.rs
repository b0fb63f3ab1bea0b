//! Dense linear algebra for tiny (d ≤ 3) symmetric positive-definite matrices.
//!
//! Everything here is stack-allocated and `Copy`. The dimension cap keeps the
//! tensor-product quadrature in [`crate::quadrature`] tractable and lets the
//! eigen-solvers use closed forms or a handful of Jacobi sweeps.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: usize = 3;

/// Cholesky pivots below this fraction of the largest diagonal entry are
/// treated as singular.
pub const PIVOT_RATIO: f64 = 1e-10;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::Domain(format!(
            "dimension {dim} outside supported range 1..={MAX_DIM}"
        )));
    }
    Ok(())
}

/// A real d-vector, d ≤ 3.
#[derive(Clone, Copy, PartialEq)]
pub struct Vector {
    dim: usize,
    data: [f64; MAX_DIM],
}

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1 && dim <= MAX_DIM, "dimension {dim} out of range");
        Self {
            dim,
            data: [0.0; MAX_DIM],
        }
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        check_dim(values.len())?;
        let mut v = Self::zeros(values.len());
        v.data[..values.len()].copy_from_slice(values);
        Ok(v)
    }

    /// Panicking constructor for literals in tests and examples.
    pub fn new(values: &[f64]) -> Self {
        Self::from_slice(values).expect("vector dimension out of range")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data[..self.dim]
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.as_slice().iter().all(|&x| x == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }

    pub fn scale(&self, s: f64) -> Vector {
        let mut out = *self;
        out.data.iter_mut().for_each(|x| *x *= s);
        out
    }

    /// Outer product `self · otherᵀ`.
    pub fn outer(&self, other: &Vector) -> Matrix {
        debug_assert_eq!(self.dim, other.dim);
        let mut m = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self.data[i] * other.data[j];
            }
        }
        m
    }

    pub(crate) fn check_same_dim(&self, dim: usize) -> Result<()> {
        if self.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim,
            });
        }
        Ok(())
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        let dim = self.dim;
        &mut self.data[..dim][i]
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(mut self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..self.dim {
            self.data[i] += rhs.data[i];
        }
        self
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(mut self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..self.dim {
            self.data[i] -= rhs.data[i];
        }
        self
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim))?;
        for x in self.as_slice() {
            seq.serialize_element(x)?;
        }
        seq.end()
    }
}

/// A square d×d real matrix, d ≤ 3. Not necessarily symmetric.
#[derive(Clone, Copy, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: [[f64; MAX_DIM]; MAX_DIM],
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1 && dim <= MAX_DIM, "dimension {dim} out of range");
        Self {
            dim,
            data: [[0.0; MAX_DIM]; MAX_DIM],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i][i] = 1.0;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        check_dim(values.len())?;
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.data[i][i] = v;
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Domain(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            m.data[i][..dim].copy_from_slice(row);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| self.data[i][..self.dim].to_vec())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.data[j][i] = self.data[i][j];
            }
        }
        t
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.data[i][i]).sum()
    }

    pub fn scale(&self, s: f64) -> Matrix {
        let mut out = *self;
        for row in out.data.iter_mut() {
            row.iter_mut().for_each(|x| *x *= s);
        }
        out
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        debug_assert_eq!(self.dim, v.dim());
        let mut out = Vector::zeros(self.dim);
        for i in 0..self.dim {
            out[i] = (0..self.dim).map(|j| self.data[i][j] * v[j]).sum();
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[i][j] = (0..n).map(|k| self.data[i][k] * other.data[k][j]).sum();
            }
        }
        out
    }

    /// Quadratic form `vᵀ M v`.
    pub fn quad(&self, v: &Vector) -> f64 {
        v.dot(&self.mul_vec(v))
    }

    pub fn max_abs(&self) -> f64 {
        let n = self.dim;
        self.data[..n]
            .iter()
            .flat_map(|r| r[..n].iter())
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        let n = self.dim;
        self.data[..n]
            .iter()
            .flat_map(|r| r[..n].iter())
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        let n = self.dim;
        self.data[..n]
            .iter()
            .flat_map(|r| r[..n].iter())
            .all(|x| x.is_finite())
    }

    /// `(M + Mᵀ)/2`.
    pub fn symmetrized(&self) -> Matrix {
        (*self + self.transpose()).scale(0.5)
    }

    /// Eigenvalues of the symmetric part, sorted ascending.
    pub fn symmetric_eigenvalues(&self) -> Vec<f64> {
        let s = self.symmetrized();
        let mut ev = match self.dim {
            1 => vec![s.data[0][0]],
            2 => {
                let (a, b, c) = (s.data[0][0], s.data[0][1], s.data[1][1]);
                let mean = 0.5 * (a + c);
                let r = (0.5 * (a - c)).hypot(b);
                vec![mean - r, mean + r]
            }
            _ => jacobi_eigenvalues(&s),
        };
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    /// Solves `M x = b` by Gaussian elimination with partial pivoting.
    /// Returns `None` when a pivot vanishes relative to the matrix scale.
    pub fn solve(&self, b: &Vector) -> Option<Vector> {
        let n = self.dim;
        let mut a = self.data;
        let mut x = *b;
        let scale = self.max_abs();
        if scale == 0.0 || !scale.is_finite() {
            return None;
        }
        for col in 0..n {
            let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
            if a[piv][col].abs() <= 1e-14 * scale {
                return None;
            }
            a.swap(col, piv);
            let tmp = x[col];
            x[col] = x[piv];
            x[piv] = tmp;
            for row in col + 1..n {
                let f = a[row][col] / a[col][col];
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                x[row] -= f * x[col];
            }
        }
        for row in (0..n).rev() {
            let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
            x[row] = (x[row] - s) / a[row][row];
        }
        Some(x)
    }
}

/// Cyclic Jacobi sweeps on a symmetric matrix; returns the diagonal after
/// convergence (unsorted).
fn jacobi_eigenvalues(m: &Matrix) -> Vec<f64> {
    let n = m.dim;
    let mut a = m.data;
    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let diag: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum();
        if off <= 1e-32 * diag.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        assert!(i < self.dim && j < self.dim);
        &self.data[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        assert!(i < self.dim && j < self.dim);
        &mut self.data[i][j]
    }
}

impl Add for Matrix {
    type Output = Matrix;
    fn add(mut self, rhs: Matrix) -> Matrix {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                self.data[i][j] += rhs.data[i][j];
            }
        }
        self
    }
}

impl Sub for Matrix {
    type Output = Matrix;
    fn sub(mut self, rhs: Matrix) -> Matrix {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                self.data[i][j] -= rhs.data[i][j];
            }
        }
        self
    }
}

impl Neg for Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Matrix {
    type Output = Matrix;
    fn mul(self, s: f64) -> Matrix {
        self.scale(s)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

/// Symmetric positive-definite matrix with its Cholesky factor cached.
///
/// Construction mirrors the lower triangle onto the upper one, then factors.
/// Matrices whose pivots fall below `PIVOT_RATIO` times the largest diagonal
/// entry are rejected.
#[derive(Clone, Copy, PartialEq)]
pub struct SpdMatrix {
    entries: Matrix,
    chol: Matrix,
}

impl SpdMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        let n = m.dim;
        let mut entries = m;
        for i in 0..n {
            for j in 0..i {
                entries.data[j][i] = entries.data[i][j];
            }
        }
        if !entries.is_finite() {
            return Err(Error::NotPositiveDefinite(
                "matrix has non-finite entries".into(),
            ));
        }
        let max_diag = (0..n).fold(0.0_f64, |acc, i| acc.max(entries.data[i][i]));
        if max_diag <= 0.0 {
            return Err(Error::NotPositiveDefinite(
                "no positive diagonal entry".into(),
            ));
        }
        let mut l = Matrix::zeros(n);
        for j in 0..n {
            let pivot = entries.data[j][j] - (0..j).map(|k| l.data[j][k].powi(2)).sum::<f64>();
            if pivot <= PIVOT_RATIO * max_diag {
                return Err(Error::NotPositiveDefinite(format!(
                    "Cholesky pivot {pivot:e} at column {j} below {PIVOT_RATIO:e} × max diagonal {max_diag:e}"
                )));
            }
            let d = pivot.sqrt();
            l.data[j][j] = d;
            for i in j + 1..n {
                let s = entries.data[i][j] - (0..j).map(|k| l.data[i][k] * l.data[j][k]).sum::<f64>();
                l.data[i][j] = s / d;
            }
        }
        Ok(Self { entries, chol: l })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(Matrix::identity(dim)).expect("identity is positive definite")
    }

    pub fn scalar(c: f64) -> Result<Self> {
        Self::new(Matrix::diagonal(&[c])?)
    }

    /// The 2×2 matrix `[[σ², ρσ²], [ρσ², σ²]]`.
    pub fn from_sigma_rho(sigma: f64, rho: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::Domain(format!("sigma must be > 0, got {sigma}")));
        }
        if !(rho.abs() < 1.0) {
            return Err(Error::Domain(format!("|rho| must be < 1, got {rho}")));
        }
        let s2 = sigma * sigma;
        Self::new(Matrix::from_rows(&[vec![s2, rho * s2], vec![rho * s2, s2]])?)
    }

    pub fn dim(&self) -> usize {
        self.entries.dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    /// Lower-triangular `L` with `C = L Lᵀ`.
    pub fn cholesky(&self) -> &Matrix {
        &self.chol
    }

    pub fn log_det(&self) -> f64 {
        2.0 * (0..self.dim()).map(|i| self.chol.data[i][i].ln()).sum::<f64>()
    }

    pub fn det(&self) -> f64 {
        self.log_det().exp()
    }

    /// `tᵀ C t`.
    pub fn quad_form(&self, t: &Vector) -> Result<f64> {
        t.check_same_dim(self.dim())?;
        Ok(self.quad_unchecked(t))
    }

    /// `‖Lᵀ t‖²`, always ≥ 0 and exactly 0 at t = 0.
    pub(crate) fn quad_unchecked(&self, t: &Vector) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for j in 0..n {
            let y: f64 = (j..n).map(|i| self.chol.data[i][j] * t[i]).sum();
            s += y * y;
        }
        s
    }

    /// Solves `C x = b` using the cached factor.
    pub fn solve(&self, b: &Vector) -> Vector {
        let n = self.dim();
        let l = &self.chol.data;
        let mut y = *b;
        for i in 0..n {
            let s: f64 = (0..i).map(|k| l[i][k] * y[k]).sum();
            y[i] = (y[i] - s) / l[i][i];
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| l[k][i] * y[k]).sum();
            y[i] = (y[i] - s) / l[i][i];
        }
        y
    }

    /// `C⁻¹ A`, column by column.
    pub fn solve_matrix(&self, a: &Matrix) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n);
        for j in 0..n {
            let mut col = Vector::zeros(n);
            for i in 0..n {
                col[i] = a[(i, j)];
            }
            let x = self.solve(&col);
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        out
    }

    /// `tr(C⁻¹ A)` via triangular solves.
    pub fn trace_inverse_product(&self, a: &Matrix) -> Result<f64> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.dim(),
            });
        }
        Ok(self.solve_matrix(a).trace())
    }

    pub fn inverse(&self) -> Matrix {
        self.solve_matrix(&Matrix::identity(self.dim()))
    }

    /// Eigenvalues sorted ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries.symmetric_eigenvalues()
    }
}

/// `λ₁ C₁ + (1 − λ₁) C₂`.
pub fn convex_combine(c1: &SpdMatrix, c2: &SpdMatrix, lambda1: f64) -> Result<SpdMatrix> {
    if c1.dim() != c2.dim() {
        return Err(Error::DimensionMismatch {
            expected: c1.dim(),
            found: c2.dim(),
        });
    }
    if !(0.0..=1.0).contains(&lambda1) {
        return Err(Error::Domain(format!("lambda1 must lie in [0, 1], got {lambda1}")));
    }
    if c1 == c2 {
        return Ok(*c1);
    }
    let lambda2 = 1.0 - lambda1;
    SpdMatrix::new(c1.matrix().scale(lambda1) + c2.matrix().scale(lambda2))
}

impl fmt::Debug for SpdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.entries, f)
    }
}

impl Serialize for SpdMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn sigma_rho_shapes() {
        let id = SpdMatrix::from_sigma_rho(1.0, 0.0).unwrap();
        assert_eq!(id.matrix().rows(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let d = SpdMatrix::from_sigma_rho(2.0, 0.0).unwrap();
        assert_eq!(d.matrix().rows(), vec![vec![4.0, 0.0], vec![0.0, 4.0]]);
        let c = SpdMatrix::from_sigma_rho(1.0, 0.5).unwrap();
        assert_eq!(c.matrix().rows(), vec![vec![1.0, 0.5], vec![0.5, 1.0]]);
        // σ⁴(1 − ρ²)
        assert!(close(c.det(), 0.75, 1e-14));
    }

    #[test]
    fn sigma_rho_domain_errors() {
        assert!(matches!(SpdMatrix::from_sigma_rho(0.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(SpdMatrix::from_sigma_rho(-1.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(SpdMatrix::from_sigma_rho(1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(SpdMatrix::from_sigma_rho(1.0, -1.5), Err(Error::Domain(_))));
        assert!(matches!(SpdMatrix::from_sigma_rho(1.0, f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn construction_mirrors_lower_triangle() {
        let m = SpdMatrix::from_rows(&[vec![2.0, 99.0], vec![0.5, 1.0]]).unwrap();
        assert_eq!(m.matrix()[(0, 1)], 0.5);
    }

    #[test]
    fn rejects_singular_and_indefinite() {
        let sing = SpdMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        assert!(matches!(sing, Err(Error::NotPositiveDefinite(_))));
        let near = SpdMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1e-11]]);
        assert!(matches!(near, Err(Error::NotPositiveDefinite(_))));
        let indef = SpdMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(indef.is_err());
        assert!(SpdMatrix::from_rows(&vec![vec![1.0; 4]; 4]).is_err());
    }

    #[test]
    fn convex_combine_cases() {
        let a = SpdMatrix::from_sigma_rho(1.3, 0.4).unwrap();
        let b = SpdMatrix::from_sigma_rho(0.7, -0.2).unwrap();
        for l in [0.0, 0.3, 1.0] {
            let same = convex_combine(&a, &a, l).unwrap();
            assert!((*same.matrix() - *a.matrix()).max_abs() < 1e-15);
        }
        assert_eq!(convex_combine(&a, &b, 1.0).unwrap().matrix(), a.matrix());
        let s = convex_combine(&SpdMatrix::scalar(1.0).unwrap(), &SpdMatrix::scalar(3.0).unwrap(), 0.5).unwrap();
        assert_eq!(s.matrix()[(0, 0)], 2.0);
        assert!(matches!(
            convex_combine(&a, &SpdMatrix::identity(3), 0.5),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(convex_combine(&a, &b, 1.5).is_err());
    }

    #[test]
    fn log_det_examples() {
        for d in 1..=3 {
            assert_eq!(SpdMatrix::identity(d).log_det(), 0.0);
        }
        let c = SpdMatrix::from_sigma_rho(1.0, 0.5).unwrap();
        assert!(close(c.log_det(), 0.75_f64.ln(), 1e-14));
        assert!(close(c.log_det(), -0.287682, 1e-6));
        let e = SpdMatrix::scalar(std::f64::consts::E).unwrap();
        assert!(close(e.log_det(), 1.0, 1e-15));
    }

    #[test]
    fn quad_form_examples() {
        let c = SpdMatrix::from_sigma_rho(1.0, 0.5).unwrap();
        assert_eq!(c.quad_form(&Vector::zeros(2)).unwrap(), 0.0);
        let i2 = SpdMatrix::identity(2);
        assert!(close(i2.quad_form(&Vector::new(&[1.0, 1.0])).unwrap(), 2.0, 1e-15));
        assert!(close(c.quad_form(&Vector::new(&[1.0, -1.0])).unwrap(), 1.0, 1e-15));
        assert!(matches!(
            c.quad_form(&Vector::new(&[1.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn trace_inverse_product_examples() {
        let c = SpdMatrix::from_sigma_rho(1.7, -0.3).unwrap();
        assert!(close(c.trace_inverse_product(c.matrix()).unwrap(), 2.0, 1e-14));
        let four = SpdMatrix::from_sigma_rho(2.0, 0.0).unwrap();
        assert!(close(
            SpdMatrix::identity(2).trace_inverse_product(four.matrix()).unwrap(),
            8.0,
            1e-15
        ));
        let two = SpdMatrix::scalar(2.0).unwrap();
        assert!(close(two.trace_inverse_product(&Matrix::diagonal(&[3.0]).unwrap()).unwrap(), 1.5, 1e-15));
        assert!(c.trace_inverse_product(&Matrix::identity(3)).is_err());
    }

    #[test]
    fn eigenvalues_closed_form_and_jacobi() {
        let c = SpdMatrix::from_sigma_rho(1.0, 0.5).unwrap();
        let ev = c.eigenvalues();
        assert!(close(ev[0], 0.5, 1e-15) && close(ev[1], 1.5, 1e-15));
        let m = Matrix::from_rows(&[
            vec![2.0, -1.0, 0.0],
            vec![-1.0, 2.0, -1.0],
            vec![0.0, -1.0, 2.0],
        ])
        .unwrap();
        let ev = m.symmetric_eigenvalues();
        let s2 = 2.0_f64.sqrt();
        for (got, want) in ev.iter().zip([2.0 - s2, 2.0, 2.0 + s2]) {
            assert!(close(*got, want, 1e-13), "{ev:?}");
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = SpdMatrix::from_rows(&[
            vec![4.0, 1.0, 0.5],
            vec![1.0, 3.0, 0.2],
            vec![0.5, 0.2, 2.0],
        ])
        .unwrap();
        let prod = m.matrix().matmul(&m.inverse());
        assert!((prod - Matrix::identity(3)).max_abs() < 1e-14);
        let b = Vector::new(&[1.0, -2.0, 0.5]);
        let x = m.matrix().solve(&b).unwrap();
        assert!((m.matrix().mul_vec(&x) - b).max_abs() < 1e-14);
        assert!(Matrix::zeros(2).solve(&Vector::new(&[1.0, 1.0])).is_none());
    }
}
