//! Complex Schur triangularization `M = Q T Q*` and eigenvalue clustering.
//!
//! The solver is a classical unblocked Hessenberg reduction followed by an
//! implicit single-shift QR iteration with Wilkinson shifts. Exceptional
//! shifts are injected after runs of stalled iterations; without them the
//! iteration cycles forever on companion-type matrices whose spectrum is a
//! scaled root-of-unity circle (exactly the matrices the gallery builds).
//!
//! After triangularization the diagonal is clustered into algebraic
//! multiplicities and the form is reordered by unitary adjacent swaps so that
//! clusters appear consecutively, sorted by descending modulus then ascending
//! argument. This makes every report reproducible across runs.

use nalgebra::{DMatrix, DVector};


use crate::cmatrix::{C64, CMatrix, SchurForm, Spectrum};
use crate::error::{Error, Result};

const MAX_ITERS_PER_EIGENVALUE: usize = 40;

/// Complex Givens rotation `[[c, s], [-conj(s), c]]` with `c` real.
#[derive(Clone, Copy)]
struct Rotation {
    c: f64,
    s: C64,
}

impl Rotation {
    /// Rotation zeroing the second component of `(f, g)`.
    fn zeroing(f: C64, g: C64) -> Rotation {
        let fa = f.norm();
        let ga = g.norm();
        if ga < f64::MIN_POSITIVE {
            return Rotation { c: 1.0, s: C64::new(0.0, 0.0) };
        }
        // Subnormal f makes the phase f/|f| inaccurate and the rotation
        // visibly non-unitary; at that magnitude a pure phase swap is exact
        // and the residual it leaves is far below every deflation threshold.
        if fa < f64::MIN_POSITIVE || fa < ga * 1e-200 {
            return Rotation { c: 0.0, s: g.conj() / ga };
        }
        let r = fa.hypot(ga);
        let c = fa / r;
        let s = g.conj() * (f / fa) / r;
        Rotation { c, s }
    }

    /// Rows `i, i+1` of `m`, columns `cols`.
    fn apply_left(&self, m: &mut DMatrix<C64>, i: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let a = m[(i, j)];
            let b = m[(i + 1, j)];
            m[(i, j)] = a * self.c + b * self.s;
            m[(i + 1, j)] = -a * self.s.conj() + b * self.c;
        }
    }

    /// Columns `i, i+1` of `m` (right multiplication by the adjoint), rows `rows`.
    fn apply_right(&self, m: &mut DMatrix<C64>, i: usize, rows: std::ops::Range<usize>) {
        for j in rows {
            let a = m[(j, i)];
            let b = m[(j, i + 1)];
            m[(j, i)] = a * self.c + b * self.s.conj();
            m[(j, i + 1)] = -a * self.s + b * self.c;
        }
    }
}

/// Unitary reduction to upper Hessenberg form; returns the accumulated `Q`.
fn hessenberg(h: &mut DMatrix<C64>) -> DMatrix<C64> {
    let n = h.nrows();
    let mut q = DMatrix::<C64>::identity(n, n);
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the subdiagonal.
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm_x = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let alpha = x[0];
        let phase = if alpha.norm() == 0.0 { C64::new(1.0, 0.0) } else { alpha / alpha.norm() };
        let mu = phase * norm_x;
        let mut v = x;
        v[0] += mu;
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sqr;

        // Left: rows k+1.., all columns from k.
        for j in k..n {
            let dot: C64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)]).sum();
            let f = dot * tau;
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= vi * f;
            }
        }
        // Right: columns k+1.., all rows.
        for r in 0..n {
            let dot: C64 = v.iter().enumerate().map(|(i, vi)| h[(r, k + 1 + i)] * vi).sum();
            let f = dot * tau;
            for (i, vi) in v.iter().enumerate() {
                h[(r, k + 1 + i)] -= f * vi.conj();
            }
        }
        // Accumulate Q on the right.
        for r in 0..n {
            let dot: C64 = v.iter().enumerate().map(|(i, vi)| q[(r, k + 1 + i)] * vi).sum();
            let f = dot * tau;
            for (i, vi) in v.iter().enumerate() {
                q[(r, k + 1 + i)] -= f * vi.conj();
            }
        }
        h[(k + 1, k)] = -mu;
        for i in k + 2..n {
            h[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    q
}

/// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to its
/// bottom-right entry.
fn wilkinson_shift(h: &DMatrix<C64>, hi: usize) -> C64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let tr_half = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (tr_half * tr_half - det).sqrt();
    let l1 = tr_half + disc;
    let l2 = tr_half - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn subdiag_negligible(h: &DMatrix<C64>, i: usize, lo: usize, hi: usize) -> bool {
    let eps = f64::EPSILON;
    let smlnum = f64::MIN_POSITIVE * (h.nrows() as f64) / eps;
    let mut tst = h[(i - 1, i - 1)].norm() + h[(i, i)].norm();
    if tst == 0.0 {
        if i >= lo + 2 {
            tst += h[(i - 1, i - 2)].norm();
        }
        if i + 1 <= hi {
            tst += h[(i + 1, i)].norm();
        }
    }
    h[(i, i - 1)].norm() <= smlnum.max(eps * tst)
}

/// Implicit single-shift QR sweep on the active block `[lo, hi]`.
fn qr_sweep(h: &mut DMatrix<C64>, q: &mut DMatrix<C64>, lo: usize, hi: usize, shift: C64) {
    let n = h.nrows();
    let mut f = h[(lo, lo)] - shift;
    let mut g = h[(lo + 1, lo)];
    for k in lo..hi {
        let rot = Rotation::zeroing(f, g);
        let col_start = if k > lo { k - 1 } else { lo };
        rot.apply_left(h, k, col_start..n);
        rot.apply_right(h, k, 0..(k + 2).min(hi) + 1);
        rot.apply_right(q, k, 0..n);
        if k + 1 < hi {
            f = h[(k + 1, k)];
            g = h[(k + 2, k)];
        }
    }
}

/// Triangularizes `m` in place, accumulating the unitary `q`. Returns the
/// iteration count on success.
fn triangularize(h: &mut DMatrix<C64>, q: &mut DMatrix<C64>) -> Result<usize> {
    let n = h.nrows();
    if n == 1 {
        return Ok(0);
    }
    let mut hi = n - 1;
    let mut total_iters = 0usize;
    let mut stall = 0usize;
    let budget = MAX_ITERS_PER_EIGENVALUE * n;
    while hi > 0 {
        // Deflate converged trailing 1x1 blocks and locate the active block.
        if subdiag_negligible(h, hi, 0, hi) {
            h[(hi, hi - 1)] = C64::new(0.0, 0.0);
            hi -= 1;
            stall = 0;
            continue;
        }
        let mut lo = hi;
        while lo > 0 && !subdiag_negligible(h, lo, 0, hi) {
            lo -= 1;
        }
        if lo > 0 {
            h[(lo, lo - 1)] = C64::new(0.0, 0.0);
        }

        if total_iters >= budget {
            return Err(Error::NonConvergence { op: "schur", iterations: total_iters });
        }
        total_iters += 1;
        stall += 1;

        // Exceptional shifts break the cyclic symmetry that stalls the
        // Wilkinson strategy on root-of-unity spectra.
        let shift = if stall % 20 == 0 {
            h[(lo, lo)] + C64::new(0.75 * h[(lo + 1, lo)].norm(), 0.0)
        } else if stall % 10 == 0 {
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h, hi)
        };
        qr_sweep(h, q, lo, hi, shift);
    }
    // Clean residual round-off below the diagonal.
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    Ok(total_iters)
}

/// Groups `values` into clusters of mutual distance ≤ `tol` (single linkage).
/// Returns a cluster id per position.
fn cluster_ids(values: &[C64], tol: f64) -> Vec<usize> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut ids = vec![0usize; n];
    let mut next = 0usize;
    let mut assigned: Vec<(usize, usize)> = Vec::new(); // (root, id)
    for i in 0..n {
        let r = find(&mut parent, i);
        if let Some(&(_, id)) = assigned.iter().find(|&&(root, _)| root == r) {
            ids[i] = id;
        } else {
            assigned.push((r, next));
            ids[i] = next;
            next += 1;
        }
    }
    ids
}

/// Swaps the adjacent diagonal entries `t[i][i]` and `t[i+1][i+1]` of an
/// upper-triangular matrix by a unitary similarity; `q` is updated to keep
/// `Q T Q*` invariant.
fn swap_adjacent(t: &mut DMatrix<C64>, q: &mut DMatrix<C64>, i: usize) {
    let n = t.nrows();
    let a = t[(i, i)];
    let b = t[(i, i + 1)];
    let d = t[(i + 1, i + 1)];
    // Unit eigenvector of [[a, b], [0, d]] for eigenvalue d.
    let x1 = b;
    let x2 = d - a;
    let nrm = (x1.norm_sqr() + x2.norm_sqr()).sqrt();
    if nrm == 0.0 {
        return; // a == d and b == 0: nothing to move
    }
    let u1 = x1 / nrm;
    let u2 = x2 / nrm;
    // G = [[u1, -conj(u2)], [u2, conj(u1)]]; apply T <- G* T G, Q <- Q G.
    for r in 0..n.min(i + 2) {
        let p = t[(r, i)];
        let s = t[(r, i + 1)];
        t[(r, i)] = p * u1 + s * u2;
        t[(r, i + 1)] = -p * u2.conj() + s * u1.conj();
    }
    for c in i..n {
        let p = t[(i, c)];
        let s = t[(i + 1, c)];
        t[(i, c)] = u1.conj() * p + u2.conj() * s;
        t[(i + 1, c)] = -u2 * p + u1 * s;
    }
    for r in 0..n {
        let p = q[(r, i)];
        let s = q[(r, i + 1)];
        q[(r, i)] = p * u1 + s * u2;
        q[(r, i + 1)] = -p * u2.conj() + s * u1.conj();
    }
    t[(i + 1, i)] = C64::new(0.0, 0.0);
}

/// Canonical cluster order: descending modulus, then ascending principal
/// argument of the cluster mean.
fn cluster_sort_key(mean: C64) -> (f64, f64) {
    (-mean.norm(), mean.arg())
}

/// Default clustering tolerance `1e-8 · ‖M‖₂` (largest singular value).
pub fn default_cluster_tol(m: &CMatrix) -> f64 {
    let smax = m
        .inner()
        .clone()
        .singular_values()
        .iter()
        .fold(0.0f64, |acc, &s| acc.max(s));
    (1e-8 * smax).max(1e-300)
}

/// Schur form with clustered, deterministically ordered diagonal.
///
/// Equal eigenvalues (within `cluster_tol`) occupy consecutive diagonal
/// positions; clusters are sorted by descending modulus then ascending
/// argument.
pub fn schur(m: &CMatrix, cluster_tol: f64) -> Result<SchurForm> {
    if cluster_tol < 0.0 || !cluster_tol.is_finite() {
        return Err(Error::domain("cluster_tol must be a nonnegative finite real"));
    }
    let mut t = m.inner().clone();
    let mut q = hessenberg(&mut t);
    triangularize(&mut t, &mut q)?;
    reorder(&mut t, &mut q, cluster_tol);
    let ordering: Vec<C64> = (0..t.nrows()).map(|i| t[(i, i)]).collect();
    Ok(SchurForm {
        q: CMatrix::from_dense(q),
        t: CMatrix::from_dense(t),
        ordering,
    })
}

fn reorder(t: &mut DMatrix<C64>, q: &mut DMatrix<C64>, cluster_tol: f64) {
    let n = t.nrows();
    let diag: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();
    let ids = cluster_ids(&diag, cluster_tol);
    let n_clusters = ids.iter().max().map_or(0, |&m| m + 1);
    let mut means = vec![C64::new(0.0, 0.0); n_clusters];
    let mut counts = vec![0usize; n_clusters];
    for (i, &id) in ids.iter().enumerate() {
        means[id] += diag[i];
        counts[id] += 1;
    }
    for (mean, &count) in means.iter_mut().zip(&counts) {
        *mean /= count as f64;
    }
    let mut order: Vec<usize> = (0..n_clusters).collect();
    order.sort_by(|&a, &b| {
        let (ma, aa) = cluster_sort_key(means[a]);
        let (mb, ab) = cluster_sort_key(means[b]);
        ma.total_cmp(&mb).then(aa.total_cmp(&ab))
    });
    // Target sequence of cluster ids, one entry per diagonal slot.
    let mut target: Vec<usize> = Vec::with_capacity(n);
    for &id in &order {
        target.extend(std::iter::repeat(id).take(counts[id]));
    }
    // Bubble each wanted cluster member to its slot by adjacent swaps.
    let mut current: Vec<usize> = ids;
    for slot in 0..n {
        if current[slot] == target[slot] {
            continue;
        }
        let mut pos = slot + 1;
        while current[pos] != target[slot] {
            pos += 1;
        }
        while pos > slot {
            swap_adjacent(t, q, pos - 1);
            current.swap(pos - 1, pos);
            pos -= 1;
        }
    }
}

/// Eigenvalues with algebraic multiplicities via the ordered Schur form.
pub fn spectrum(m: &CMatrix, cluster_tol: f64) -> Result<Spectrum> {
    let form = schur(m, cluster_tol)?;
    let ids = cluster_ids(&form.ordering, cluster_tol);
    let mut items: Vec<(C64, usize)> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for (i, &id) in ids.iter().enumerate() {
        if seen.contains(&id) {
            let last = items.last_mut().unwrap();
            debug_assert_eq!(seen.last(), Some(&id));
            last.0 += form.ordering[i];
            last.1 += 1;
        } else {
            seen.push(id);
            items.push((form.ordering[i], 1));
        }
    }
    for (z, mult) in items.iter_mut() {
        *z /= *mult as f64;
    }
    Ok(Spectrum { items, cluster_tol })
}

/// Flat eigenvalue list (with multiplicity) in the canonical order.
pub fn eigenvalues(m: &CMatrix, cluster_tol: f64) -> Result<Vec<C64>> {
    Ok(spectrum(m, cluster_tol)?.with_multiplicity())
}

/// Top eigenvector helper used by the numerical-range machinery: unit
/// eigenvector of a Hermitian matrix for its largest eigenvalue.
pub(crate) fn hermitian_top_eigenpair(h: &DMatrix<C64>) -> (f64, DVector<C64>) {
    let se = nalgebra::SymmetricEigen::new(h.clone());
    let mut best = 0;
    for i in 1..se.eigenvalues.len() {
        if se.eigenvalues[i] > se.eigenvalues[best] {
            best = i;
        }
    }
    let v = se.eigenvectors.column(best).into_owned();
    (se.eigenvalues[best], crate::cmatrix::normalize(&v))
}
