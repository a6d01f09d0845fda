//! Small dense linear algebra.
//!
//! Everything here works on row-major `d × d` matrices with `d` in the low
//! hundreds at most. The ridge estimator only ever needs symmetric positive
//! definite solves (Cholesky); the general LU path exists for the non-symmetric
//! factor `I + B A^{-1}` in [`harville_residual`].

use crate::error::{Error, Result};

/// Relative tolerance for symmetry checks on accumulated matrices.
pub const SYMMETRY_TOL: f64 = 1e-12;

const POWER_ITER_MAX: usize = 10_000;
const POWER_ITER_TOL: f64 = 1e-12;

pub type RealVector = Vec<f64>;

#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("matrix dimension must be positive"));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: data.len() });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(dim, data)
    }

    /// `v vᵀ`.
    pub fn outer(v: &[f64]) -> Self {
        let d = v.len();
        let mut m = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.data[i * d + j] = v[i] * v[j];
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (i + 1..d).all(|j| {
                let a = self.get(i, j);
                (a - self.get(j, i)).abs() <= SYMMETRY_TOL * a.abs().max(1.0)
            })
        })
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut t = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                t.data[j * d + i] = self.data[i * d + j];
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { dim: self.dim, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { dim: self.dim, data }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn add_diagonal(&self, shift: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            m.data[i * self.dim + i] += shift;
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<RealVector> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok(self.data.chunks_exact(self.dim).map(|row| dot(row, v)).collect())
    }

    /// Frobenius norm, an upper bound on the operator norm.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Cholesky factor `L` of a symmetric positive definite matrix, `A = L Lᵀ`.
#[derive(Clone, Debug)]
pub struct Cholesky {
    dim: usize,
    lower: Vec<f64>,
}

impl Cholesky {
    pub fn factor(a: &SquareMatrix) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::NonFinite("matrix"));
        }
        let d = a.dim;
        let mut l = vec![0.0; d * d];
        for j in 0..d {
            let mut diag = a.get(j, j);
            for k in 0..j {
                diag -= l[j * d + k] * l[j * d + k];
            }
            if diag.is_nan() || diag <= 0.0 {
                return Err(Error::Singular);
            }
            let ljj = diag.sqrt();
            l[j * d + j] = ljj;
            for i in j + 1..d {
                let mut s = a.get(i, j);
                for k in 0..j {
                    s -= l[i * d + k] * l[j * d + k];
                }
                l[i * d + j] = s / ljj;
            }
        }
        Ok(Self { dim: d, lower: l })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn solve(&self, b: &[f64]) -> Result<RealVector> {
        let d = self.dim;
        if b.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: b.len() });
        }
        let l = &self.lower;
        let mut y = b.to_vec();
        for i in 0..d {
            let mut s = y[i];
            for k in 0..i {
                s -= l[i * d + k] * y[k];
            }
            y[i] = s / l[i * d + i];
        }
        for i in (0..d).rev() {
            let mut s = y[i];
            for k in i + 1..d {
                s -= l[k * d + i] * y[k];
            }
            y[i] = s / l[i * d + i];
        }
        Ok(y)
    }

    /// Ratio of extreme squared pivots; a cheap lower estimate of the condition number.
    pub fn condition_estimate(&self) -> f64 {
        let d = self.dim;
        let diag = (0..d).map(|i| self.lower[i * d + i] * self.lower[i * d + i]);
        let (lo, hi) = diag.fold((f64::INFINITY, 0.0_f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
        hi / lo
    }
}

/// LU factorisation with partial pivoting, `P A = L U`.
#[derive(Clone, Debug)]
pub struct Lu {
    dim: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &SquareMatrix) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::NonFinite("matrix"));
        }
        let d = a.dim;
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..d).collect();
        let scale = a.data.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        for k in 0..d {
            let (p, pivot) = (k..d)
                .map(|i| (i, lu[i * d + k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot <= 1e-14 * scale {
                return Err(Error::Singular);
            }
            if p != k {
                for j in 0..d {
                    lu.swap(k * d + j, p * d + j);
                }
                perm.swap(k, p);
            }
            let pkk = lu[k * d + k];
            for i in k + 1..d {
                let f = lu[i * d + k] / pkk;
                lu[i * d + k] = f;
                for j in k + 1..d {
                    lu[i * d + j] -= f * lu[k * d + j];
                }
            }
        }
        Ok(Self { dim: d, lu, perm })
    }

    pub fn solve(&self, b: &[f64]) -> Result<RealVector> {
        let d = self.dim;
        if b.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: b.len() });
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..d {
            for k in 0..i {
                x[i] -= self.lu[i * d + k] * x[k];
            }
        }
        for i in (0..d).rev() {
            for k in i + 1..d {
                x[i] -= self.lu[i * d + k] * x[k];
            }
            x[i] /= self.lu[i * d + i];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> SquareMatrix {
        let d = self.dim;
        let mut inv = SquareMatrix::zeros(d);
        let mut e = vec![0.0; d];
        for j in 0..d {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            let col = self.solve(&e).expect("dimension checked");
            for (i, &v) in col.iter().enumerate() {
                inv.set(i, j, v);
            }
        }
        inv
    }
}

pub fn inverse(a: &SquareMatrix) -> Result<SquareMatrix> {
    Ok(Lu::factor(a)?.inverse())
}

/// Solves `(S + λI) v = b` for symmetric positive semidefinite `S`.
pub fn solve_regularized(s: &SquareMatrix, lambda: f64, b: &[f64]) -> Result<RealVector> {
    if b.len() != s.dim {
        return Err(Error::DimensionMismatch { expected: s.dim, got: b.len() });
    }
    if !s.is_finite() {
        return Err(Error::NonFinite("matrix"));
    }
    if !b.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("right-hand side"));
    }
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::invalid(format!("regularisation must be positive and finite, got {lambda}")));
    }
    if !s.is_symmetric() {
        return Err(Error::invalid("matrix is not symmetric"));
    }
    let a = s.add_diagonal(lambda);
    let chol = Cholesky::factor(&a)?;
    let mut v = chol.solve(b)?;
    // one step of iterative refinement
    let av = a.mul_vec(&v)?;
    let r: Vec<f64> = b.iter().zip(&av).map(|(bi, ai)| bi - ai).collect();
    let dv = chol.solve(&r)?;
    v.iter_mut().zip(&dv).for_each(|(vi, di)| *vi += di);
    Ok(v)
}

/// Largest singular value, by power iteration on `MᵀM` from the normalised
/// all-ones vector.
pub fn operator_norm(m: &SquareMatrix) -> Result<f64> {
    if !m.is_finite() {
        return Err(Error::NonFinite("matrix"));
    }
    let d = m.dim;
    let mtm = m.transpose().matmul(m);
    // ‖M e_j‖ is a lower bound on σ_max; used to detect a start vector with no
    // component along the top singular direction.
    let (best_col, col_bound) = (0..d)
        .map(|j| (j, (0..d).map(|i| m.get(i, j).powi(2)).sum::<f64>().sqrt()))
        .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    if col_bound == 0.0 {
        return Ok(0.0);
    }

    let start = vec![1.0 / (d as f64).sqrt(); d];
    let est = power_iterate(&mtm, start);
    if est.sqrt() >= col_bound * (1.0 - 1e-10) {
        return Ok(est.sqrt());
    }
    let mut e = vec![0.0; d];
    e[best_col] = 1.0;
    let restart = power_iterate(&mtm, e);
    Ok(restart.max(est).sqrt())
}

fn power_iterate(sym: &SquareMatrix, mut v: Vec<f64>) -> f64 {
    let mut prev = f64::NAN;
    let mut est = 0.0;
    for _ in 0..POWER_ITER_MAX {
        let w = sym.mul_vec(&v).expect("square");
        let nw = norm2(&w);
        if nw == 0.0 {
            return 0.0;
        }
        est = dot(&v, &w);
        v = w.into_iter().map(|x| x / nw).collect();
        if (est - prev).abs() <= POWER_ITER_TOL * est.abs() {
            break;
        }
        prev = est;
    }
    est
}

/// Operator norm of `A^{-1} - (A+B)^{-1} - A^{-1} B A^{-1} (I + B A^{-1})^{-1}`.
pub fn harville_residual(a: &SquareMatrix, b: &SquareMatrix) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, got: b.dim });
    }
    let a_inv = inverse(a)?;
    let apb_inv = inverse(&a.add(b))?;
    let lhs = a_inv.sub(&apb_inv);
    let inner = SquareMatrix::identity(a.dim).add(&b.matmul(&a_inv));
    let inner_inv = inverse(&inner)?;
    let rhs = a_inv.matmul(b).matmul(&a_inv).matmul(&inner_inv);
    operator_norm(&lhs.sub(&rhs))
}
