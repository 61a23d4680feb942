//! Dense square complex matrices, the universal operand of this crate.
//!
//! `CMatrix` wraps a `DMatrix<Complex64>` and guarantees two invariants at
//! construction: the matrix is square and every entry is finite.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::ops::Deref;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dense square complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    m: DMatrix<C64>,
}

impl CMatrix {
    /// Validates squareness and finiteness.
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::domain(format!(
                "matrix must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.nrows() == 0 {
            return Err(Error::domain("matrix must be nonempty"));
        }
        if !m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::domain("matrix entries must be finite"));
        }
        Ok(CMatrix { m })
    }

    /// Wraps a matrix produced by internal kernels. Debug builds re-check the
    /// invariants.
    pub(crate) fn from_dense(m: DMatrix<C64>) -> Self {
        debug_assert!(m.is_square() && m.nrows() > 0);
        debug_assert!(m.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        CMatrix { m }
    }

    pub fn zeros(dim: usize) -> Self {
        CMatrix { m: DMatrix::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        CMatrix { m: DMatrix::identity(dim, dim) }
    }

    /// Builds from a row-major slice of complex entries; length must be dim².
    pub fn from_row_major(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::domain(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Builds from a row-major slice of real entries.
    pub fn from_real_row_major(dim: usize, entries: &[f64]) -> Result<Self> {
        let complex: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_row_major(dim, &complex)
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        CMatrix { m: DMatrix::from_fn(dim, dim, f) }
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let dim = entries.len();
        CMatrix {
            m: DMatrix::from_fn(dim, dim, |i, j| if i == j { entries[i] } else { C64::new(0.0, 0.0) }),
        }
    }

    pub fn real_diagonal(entries: &[f64]) -> Self {
        let complex: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diagonal(&complex)
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.m
    }

    pub fn adjoint_mat(&self) -> CMatrix {
        CMatrix { m: self.m.adjoint() }
    }

    /// Max entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.norm()
    }

    /// ‖M − M*‖_max ≤ tol_rel · ‖M‖_max, the crate-wide Hermiticity test.
    pub fn is_hermitian_within(&self, tol_rel: f64) -> bool {
        let scale = self.max_norm().max(1e-300);
        let dev = (&self.m - self.m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        dev <= tol_rel * scale
    }

    /// ‖M*M − MM*‖_max ≤ tol_rel · ‖M‖_max², the normality test.
    pub fn is_normal_within(&self, tol_rel: f64) -> bool {
        let scale = self.max_norm().max(1e-300).powi(2);
        let comm = self.m.adjoint() * &self.m - &self.m * self.m.adjoint();
        let dev = comm.iter().map(|z| z.norm()).fold(0.0, f64::max);
        dev <= tol_rel * scale
    }

    /// Entries as row-major `[re, im]` pairs, the JSON wire format used for
    /// serialized failure instances and Jacobi specs.
    pub fn to_wire(&self) -> Vec<[f64; 2]> {
        let mut out = Vec::with_capacity(self.dim() * self.dim());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let z = self.m[(i, j)];
                out.push([z.re, z.im]);
            }
        }
        out
    }

    pub fn from_wire(dim: usize, entries: &[[f64; 2]]) -> Result<Self> {
        let complex: Vec<C64> = entries.iter().map(|&[re, im]| C64::new(re, im)).collect();
        Self::from_row_major(dim, &complex)
    }
}

impl Deref for CMatrix {
    type Target = DMatrix<C64>;

    fn deref(&self) -> &DMatrix<C64> {
        &self.m
    }
}

/// Eigenvalue list with algebraic multiplicities, clustered from the Schur
/// diagonal.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// `(eigenvalue, algebraic multiplicity)`, ordered by descending modulus
    /// then ascending argument.
    pub items: Vec<(C64, usize)>,
    pub cluster_tol: f64,
}

impl Spectrum {
    /// Total multiplicity; equals the dimension of the source matrix.
    pub fn total_multiplicity(&self) -> usize {
        self.items.iter().map(|&(_, m)| m).sum()
    }

    /// Flat eigenvalue list, each value repeated by multiplicity.
    pub fn with_multiplicity(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for &(z, m) in &self.items {
            out.extend(std::iter::repeat(z).take(m));
        }
        out
    }
}

/// Unitary Schur triangularization `M = Q T Q*` with a deterministic
/// enumeration of the diagonal.
#[derive(Debug, Clone)]
pub struct SchurForm {
    pub q: CMatrix,
    pub t: CMatrix,
    /// Diagonal of `T` in storage order: clustered eigenvalues occupy
    /// consecutive positions, clusters sorted by descending modulus then
    /// ascending argument.
    pub ordering: Vec<C64>,
}

impl SchurForm {
    pub fn reconstruction_error(&self, original: &CMatrix) -> f64 {
        (self.q.inner() * self.t.inner() * self.q.inner().adjoint() - original.inner()).norm()
    }

    /// Largest modulus in the strict lower triangle of `T`.
    pub fn lower_triangle_residual(&self) -> f64 {
        let n = self.t.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..i {
                worst = worst.max(self.t.inner()[(i, j)].norm());
            }
        }
        worst
    }

    /// ‖Q*Q − I‖_max.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.q.dim();
        let qq = self.q.inner().adjoint() * self.q.inner();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                worst = worst.max((qq[(i, j)] - target).norm());
            }
        }
        worst
    }
}

/// Nonincreasing list of singular values.
#[derive(Debug, Clone)]
pub struct SingularValues {
    pub values: Vec<f64>,
}

impl SingularValues {
    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

/// Unit vector helper: v / ‖v‖, used when extracting numerical-range points.
pub(crate) fn normalize(v: &DVector<C64>) -> DVector<C64> {
    let n = v.norm();
    if n == 0.0 {
        v.clone()
    } else {
        v / C64::new(n, 0.0)
    }
}
