//! Exact constructions with closed-form distance/norm ratios.
//!
//! Each case builds a matrix pair from integer or surd data, computes the
//! eigenvalue-distance ratio numerically, and carries the closed-form value
//! it must reproduce. These are the strongest regression anchors in the
//! crate: any eigensolver or norm regression shows up as a mismatch against
//! an exact expression.
//!
//! The families:
//! - `shift_corner_spectrum_case`: 2×2 truncated shift vs corner
//!   perturbation, distances to the *spectrum*; the ratio `2x^{−p/2}` blows
//!   up as x → 0, which is why spectrum-distance bounds fail for non-normal
//!   operators.
//! - `shift_corner_numrange_case`: the n×n analogue measured against the
//!   numerical range (a disk of radius cos(π/(n+1))); its maximum over x is
//!   explicit and exceeds 1 for exponents below 1 as n grows.
//! - `nonconvex_demo`: swapping the roles (cyclic shift as the unperturbed
//!   operator) gives ratio n against a *non-convex* spectrum, showing the
//!   convexity hypothesis is necessary.
//! - `rank_one_diag_family`: Hermitian diagonal plus x·(rank-one projection
//!   with constant weight 1/n); the ratio tends to n^{1−p}, the sharp
//!   constant for matching bounds below exponent 1.

use nalgebra::DMatrix;

use crate::cmatrix::{C64, CMatrix};
use crate::error::{Error, Result};
use crate::geom;
use crate::linalg::{hermitian_eigenvalues, schatten_norm};
use crate::schur;

/// A named construction with its closed-form expected ratio.
#[derive(Debug, Clone)]
pub struct GalleryCase {
    pub name: String,
    /// Builder parameters in a fixed order, for reporting.
    pub params: Vec<(&'static str, f64)>,
    pub a: CMatrix,
    pub b: CMatrix,
    pub closed_form: f64,
    pub computed: f64,
}

impl GalleryCase {
    pub fn abs_error(&self) -> f64 {
        (self.closed_form - self.computed).abs()
    }

    pub fn rel_error(&self) -> f64 {
        self.abs_error() / self.closed_form.abs().max(f64::MIN_POSITIVE)
    }
}

/// Truncated shift with `x` in the lower-left corner; `x = 0` is the
/// nilpotent Jordan block, `x = 1` the cyclic permutation.
pub fn shift_with_corner(n: usize, x: f64) -> Result<CMatrix> {
    if n < 2 {
        return Err(Error::domain("shift matrix needs dimension >= 2"));
    }
    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 0..n - 1 {
        m[(i, i + 1)] = C64::new(1.0, 0.0);
    }
    m[(n - 1, 0)] = C64::new(x, 0.0);
    CMatrix::new(m)
}

/// 2×2 case with distances to the spectrum {0} of the unperturbed shift:
/// perturbed eigenvalues ±√x give ratio `2 x^{p/2} / x^p = 2 x^{−p/2}`.
pub fn shift_corner_spectrum_case(x: f64, p: f64) -> Result<GalleryCase> {
    if !(x > 0.0) {
        return Err(Error::domain("corner weight x must be positive"));
    }
    if !(p > 0.0) {
        return Err(Error::domain("exponent p must be positive"));
    }
    let a = shift_with_corner(2, 0.0)?;
    let b = shift_with_corner(2, x)?;
    let spec_a = schur::eigenvalues(&a, 0.0)?;
    let eigs_b = schur::eigenvalues(&b, 0.0)?;
    let lhs: f64 = eigs_b.iter().map(|&z| geom::dist_to_point_set(z, &spec_a).powf(p)).sum();
    let rhs = schatten_norm(&CMatrix::from_dense(b.inner() - a.inner()), p)?.powf(p);
    let computed = lhs / rhs;
    let closed_form = 2.0 * x.powf(-p / 2.0);
    Ok(GalleryCase {
        name: "shift_corner_spectrum".into(),
        params: vec![("x", x), ("p", p)],
        a,
        b,
        closed_form,
        computed,
    })
}

/// Radius of the numerical range of the n×n truncated shift.
pub fn shift_numrange_radius(n: usize) -> f64 {
    (std::f64::consts::PI / (n as f64 + 1.0)).cos()
}

/// n×n case with distances to the numerical range of the truncated shift,
/// the closed disk of radius `cos(π/(n+1))`: for `x ≥ cosⁿ` the ratio is
/// `n (x^{1/n} − cos(π/(n+1)))^p / x^p`; smaller x clips distances to 0.
pub fn shift_corner_numrange_case(n: usize, x: f64, p: f64) -> Result<GalleryCase> {
    if n < 2 {
        return Err(Error::domain("dimension must be >= 2"));
    }
    if !(x > 0.0) || !(p > 0.0) {
        return Err(Error::domain("x and p must be positive"));
    }
    let a = shift_with_corner(n, 0.0)?;
    let b = shift_with_corner(n, x)?;
    let radius = shift_numrange_radius(n);
    let eigs_b = schur::eigenvalues(&b, 0.0)?;
    let lhs: f64 = eigs_b
        .iter()
        .map(|&z| {
            let d = (z.norm() - radius).max(0.0);
            if d > 0.0 {
                d.powf(p)
            } else {
                0.0
            }
        })
        .sum();
    let rhs = schatten_norm(&CMatrix::from_dense(b.inner() - a.inner()), p)?.powf(p);
    let computed = lhs / rhs;
    let root = x.powf(1.0 / n as f64);
    let closed_form = (n as f64) * (root - radius).max(0.0).powf(p) / x.powf(p);
    Ok(GalleryCase {
        name: "shift_corner_numrange".into(),
        params: vec![("n", n as f64), ("x", x), ("p", p)],
        a,
        b,
        closed_form,
        computed,
    })
}

/// Closed-form maximizer and maximum of the shift/corner numerical-range
/// ratio over x.
pub fn shift_corner_max_closed(n: usize, p: f64) -> (f64, f64) {
    let nf = n as f64;
    let c = shift_numrange_radius(n);
    let x_star = (nf / (nf - 1.0) * c).powf(nf);
    let max = ((1.0 - 1.0 / nf) / c).powf(p * (nf - 1.0)) * nf.powf(1.0 - p);
    (x_star, max)
}

/// Numeric maximization of the eigensolver-computed ratio over x, cross-
/// validating the closed-form maximizer and maximum.
#[derive(Debug, Clone)]
pub struct RatioMax {
    pub x_star_closed: f64,
    pub max_closed: f64,
    pub x_star_numeric: f64,
    pub max_numeric: f64,
}

pub fn shift_corner_numrange_max(n: usize, p: f64) -> Result<RatioMax> {
    let (x_star_closed, max_closed) = shift_corner_max_closed(n, p);
    let nf = n as f64;
    let c = shift_numrange_radius(n);
    let ratio = |s: f64| -> Result<f64> {
        Ok(shift_corner_numrange_case(n, s.exp(), p)?.computed)
    };
    // golden section on ln x over [ln cⁿ(1+1e-9), n ln 3c]; the ratio is
    // unimodal there
    let mut lo = nf * c.ln() + 1e-9;
    let mut hi = nf * (3.0 * c).ln();
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut m1 = hi - phi * (hi - lo);
    let mut m2 = lo + phi * (hi - lo);
    let mut f1 = ratio(m1)?;
    let mut f2 = ratio(m2)?;
    for _ in 0..70 {
        if f1 < f2 {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + phi * (hi - lo);
            f2 = ratio(m2)?;
        } else {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - phi * (hi - lo);
            f1 = ratio(m1)?;
        }
        if hi - lo < 1e-5 {
            break;
        }
    }
    // parabolic vertex in ln x polishes the flat-top localization
    let t = 0.5 * (lo + hi);
    let h = 1e-4;
    let (fm, f0, fp_) = (ratio(t - h)?.ln(), ratio(t)?.ln(), ratio(t + h)?.ln());
    let denom = fm - 2.0 * f0 + fp_;
    let t_star = if denom.abs() > 1e-300 { t + 0.5 * h * (fm - fp_) / denom } else { t };
    let x_star_numeric = t_star.exp();
    let max_numeric = ratio(t_star)?;
    Ok(RatioMax { x_star_closed, max_closed, x_star_numeric, max_numeric })
}

/// Swapped roles: the (normal) cyclic shift as unperturbed operator, the
/// nilpotent shift as perturbation target. All n perturbed eigenvalues sit
/// at 0, at distance 1 from every n-th root of unity, so the spectrum-
/// distance sum is exactly n while the perturbation norm is 1: convexity of
/// the unperturbed spectrum cannot be dropped.
pub fn nonconvex_demo(n: usize, p: f64) -> Result<GalleryCase> {
    if n < 2 {
        return Err(Error::domain("dimension must be >= 2"));
    }
    let a = shift_with_corner(n, 1.0)?; // normal: a cyclic permutation
    let b = shift_with_corner(n, 0.0)?;
    let spec_a = schur::eigenvalues(&a, 0.0)?;
    let eigs_b = schur::eigenvalues(&b, 0.0)?;
    let lhs: f64 = eigs_b.iter().map(|&z| geom::dist_to_point_set(z, &spec_a).powf(p)).sum();
    let rhs = schatten_norm(&CMatrix::from_dense(b.inner() - a.inner()), p)?.powf(p);
    let computed = lhs / rhs;
    Ok(GalleryCase {
        name: "nonconvex_demo".into(),
        params: vec![("n", n as f64), ("p", p)],
        a,
        b,
        closed_form: n as f64,
        computed,
    })
}

/// Real orthogonal basis whose vectors all have first component 1/√n,
/// built by the explicit prefix-sharing recursion (vectors stored as rows,
/// so the first *column* of the returned matrix is constant 1/√n).
pub fn equal_first_column_basis(n: usize) -> Result<CMatrix> {
    if n < 2 {
        return Err(Error::domain("basis needs dimension >= 2"));
    }
    let nf = n as f64;
    let mut rows = vec![vec![0.0f64; n]; n];
    rows[0][0] = 1.0 / nf.sqrt();
    rows[0][1] = (1.0 - 1.0 / nf).sqrt();
    for i in 1..n - 1 {
        for j in 0..i {
            rows[i][j] = rows[i - 1][j];
        }
        let pivot = rows[i - 1][i];
        if pivot.abs() < 1e-12 {
            return Err(Error::NonConvergence { op: "equal_first_column_basis", iterations: i });
        }
        let prefix: f64 = rows[i - 1][..i].iter().map(|v| v * v).sum();
        rows[i][i] = -prefix / pivot;
        let partial: f64 = rows[i][..=i].iter().map(|v| v * v).sum();
        rows[i][i + 1] = (1.0 - partial).max(0.0).sqrt();
    }
    if n >= 2 {
        for j in 0..n - 1 {
            rows[n - 1][j] = rows[n - 2][j];
        }
        rows[n - 1][n - 1] = -rows[n - 2][n - 1];
    }
    let m = DMatrix::from_fn(n, n, |i, j| C64::new(rows[i][j], 0.0));
    CMatrix::new(m)
}

/// Hermitian family `A = diag(α)`, `B = A + x·P` where `P = U e₁e₁ᵀ U*` is
/// the rank-one projection with constant diagonal 1/n built from the
/// equal-first-column basis. The spectrum-distance ratio tends to `n^{1−p}`
/// as x → 0.
pub fn rank_one_diag_family(n: usize, p: f64, alpha: &[f64], x: f64) -> Result<GalleryCase> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("the rank-one diagonal family targets p in (0,1)"));
    }
    if alpha.len() != n {
        return Err(Error::domain("alpha must have length n"));
    }
    let mut min_gap = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            min_gap = min_gap.min((alpha[i] - alpha[j]).abs());
        }
    }
    if !(min_gap > 0.0) {
        return Err(Error::domain("alpha entries must be pairwise distinct"));
    }
    if !(x > 0.0 && x < min_gap / 4.0) {
        return Err(Error::domain(format!(
            "x = {x} too large for gap {min_gap}: eigenvalue clusters collide; reduce x"
        )));
    }
    let a = CMatrix::real_diagonal(alpha);
    let u = equal_first_column_basis(n)?;
    let mut d = DMatrix::<C64>::zeros(n, n);
    d[(0, 0)] = C64::new(1.0, 0.0);
    let projection = u.inner() * d * u.inner().adjoint();
    let b = CMatrix::from_dense(a.inner() + projection * C64::new(x, 0.0));
    let eigs_b = hermitian_eigenvalues(&b)?;
    let lhs: f64 = eigs_b
        .iter()
        .map(|&mu| {
            alpha.iter().map(|&al| (mu - al).abs()).fold(f64::INFINITY, f64::min).powf(p)
        })
        .sum();
    let rhs = schatten_norm(&CMatrix::from_dense(b.inner() - a.inner()), p)?.powf(p);
    let computed = lhs / rhs;
    Ok(GalleryCase {
        name: "rank_one_diag".into(),
        params: vec![("n", n as f64), ("p", p), ("x", x)],
        a,
        b,
        closed_form: (n as f64).powf(1.0 - p),
        computed,
    })
}

/// Unit-spaced default grid α_k = k − 1... concretely 0, 1, ..., n−1.
pub fn default_alpha(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64).collect()
}

/// Small-x behaviour of the rank-one diagonal family over a halving
/// schedule: first-order eigenvalue shifts x/n and the ratio's approach to
/// its limit n^{1−p}.
#[derive(Debug, Clone)]
pub struct RankOneAsymptotics {
    pub xs: Vec<f64>,
    pub ratios: Vec<f64>,
    /// max over the schedule of max_k |λₖ(x) − αₖ − x/n| / x².
    pub first_order_dev_over_x2: f64,
    pub limit: f64,
    /// |ratio(last x) − limit|.
    pub final_err: f64,
}

pub fn rank_one_diag_asymptotics(n: usize, p: f64, alpha: &[f64]) -> Result<RankOneAsymptotics> {
    let mut sorted = alpha.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut xs = Vec::new();
    let mut ratios = Vec::new();
    let mut dev_over_x2: f64 = 0.0;
    let nf = n as f64;
    let mut x = 1e-2;
    for _ in 0..9 {
        let case = rank_one_diag_family(n, p, alpha, x)?;
        let eigs = hermitian_eigenvalues(&case.b)?;
        for (mu, al) in eigs.iter().zip(&sorted) {
            dev_over_x2 = dev_over_x2.max((mu - al - x / nf).abs() / (x * x));
        }
        xs.push(x);
        ratios.push(case.computed);
        x *= 0.5;
    }
    let limit = nf.powf(1.0 - p);
    let final_err = (ratios.last().unwrap() - limit).abs();
    Ok(RankOneAsymptotics { xs, ratios, first_order_dev_over_x2: dev_over_x2, limit, final_err })
}
