//! Singular values, Schatten (quasi-)norms, Hermitian eigendecomposition,
//! positive/negative parts and the Hermitian matrix exponential.

use nalgebra::DMatrix;

use crate::cmatrix::{C64, CMatrix, SingularValues};
use crate::error::{Error, Result};

/// Crate-wide Hermiticity tolerance: ‖M − M*‖_max ≤ HERMITICITY_TOL · ‖M‖_max.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Relative floor below which singular values are treated as numerical rank
/// noise. Without this, exact zeros of low-rank matrices surface as ~1e-16
/// garbage that a p < 1 quasi-norm amplifies to ~1e-8.
const RANK_FLOOR: f64 = 64.0 * f64::EPSILON;

/// Singular values in nonincreasing order.
pub fn singular_values(m: &CMatrix) -> SingularValues {
    let sv = m.inner().clone().singular_values();
    let mut values: Vec<f64> = sv.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    SingularValues { values }
}

/// Schatten p-(quasi-)norm `(Σ sₙ^p)^{1/p}` for `p > 0`.
///
/// For p < 1 this is the quasi-norm; no triangle inequality is implied.
pub fn schatten_norm(m: &CMatrix, p: f64) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::domain(format!("Schatten norm requires p > 0, got {p}")));
    }
    let sv = singular_values(m);
    Ok(schatten_of_values(&sv.values, p))
}

/// `(Σ sₙ^p)^{1/p}` over an explicit singular value list, with the numerical
/// rank floor applied relative to the largest value.
pub fn schatten_of_values(values: &[f64], p: f64) -> f64 {
    let smax = values.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0.0;
    }
    let floor = smax * (values.len() as f64).max(1.0) * RANK_FLOOR;
    let sum: f64 = values.iter().filter(|&&s| s > floor).map(|&s| s.powf(p)).sum();
    sum.powf(1.0 / p)
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// matching orthonormal eigenvectors (as columns).
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<C64>,
}

pub fn hermitian_eigen(m: &CMatrix) -> Result<HermitianEigen> {
    require_hermitian(m)?;
    let se = nalgebra::SymmetricEigen::new(m.inner().clone());
    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = DMatrix::<C64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    Ok(HermitianEigen { values, vectors })
}

/// Ascending eigenvalues of a Hermitian matrix (no eigenvectors).
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    require_hermitian(m)?;
    let mut values: Vec<f64> = m.inner().clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

pub fn require_hermitian(m: &CMatrix) -> Result<()> {
    if !m.is_hermitian_within(HERMITICITY_TOL) {
        return Err(Error::domain("matrix is not Hermitian within tolerance"));
    }
    Ok(())
}

/// Positive and negative parts `(M₊, M₋) = (½(|M| + M), ½(|M| − M))` of a
/// Hermitian matrix. Both parts are positive semidefinite, `M₊ − M₋ = M` and
/// `M₊ + M₋ = |M|`.
pub fn pos_neg_parts(m: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let eig = hermitian_eigen(m)?;
    let n = m.dim();
    let spectral_fn = |f: &dyn Fn(f64) -> f64| -> DMatrix<C64> {
        let mut d = DMatrix::<C64>::zeros(n, n);
        for i in 0..n {
            d[(i, i)] = C64::new(f(eig.values[i]), 0.0);
        }
        &eig.vectors * d * eig.vectors.adjoint()
    };
    let pos = spectral_fn(&|x| x.max(0.0));
    let neg = spectral_fn(&|x| (-x).max(0.0));
    Ok((CMatrix::from_dense(hermitize(pos)), CMatrix::from_dense(hermitize(neg))))
}

/// `e^{−tH}` for Hermitian `H` via eigendecomposition. The result is
/// Hermitian positive definite.
pub fn hermitian_expm(h: &CMatrix, t: f64) -> Result<CMatrix> {
    if !t.is_finite() {
        return Err(Error::domain("time parameter must be finite"));
    }
    let eig = hermitian_eigen(h)?;
    let n = h.dim();
    let mut d = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        d[(i, i)] = C64::new((-t * eig.values[i]).exp(), 0.0);
    }
    let out = &eig.vectors * d * eig.vectors.adjoint();
    Ok(CMatrix::from_dense(hermitize(out)))
}

/// Symmetrizes round-off: ½(M + M*). Applied to spectrally constructed
/// matrices that are Hermitian by design.
fn hermitize(m: DMatrix<C64>) -> DMatrix<C64> {
    let adj = m.adjoint();
    (m + adj) * C64::new(0.5, 0.0)
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).largest()
}
