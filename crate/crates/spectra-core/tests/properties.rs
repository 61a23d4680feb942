//! Cross-module property tests: algebraic invariants that must hold for any
//! input, exercised on random matrices via proptest.

use nalgebra::DMatrix;
use proptest::prelude::*;
use spectra_core::cmatrix::{C64, CMatrix};
use spectra_core::ensemble::{gue, haar_unitary, trial_rng};
use spectra_core::jacobi::{self, JacobiSpec};
use spectra_core::linalg;
use spectra_core::numrange::nrange_bracket;
use spectra_core::schur;

fn matrix_strategy(max_dim: usize) -> impl Strategy<Value = CMatrix> {
    (2..=max_dim).prop_flat_map(|n| {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n * n).prop_map(move |entries| {
            let data: Vec<C64> = entries.into_iter().map(|(re, im)| C64::new(re, im)).collect();
            CMatrix::from_row_major(n, &data).unwrap()
        })
    })
}

fn hermitian_strategy(max_dim: usize) -> impl Strategy<Value = CMatrix> {
    matrix_strategy(max_dim).prop_map(|m| {
        let h = (m.inner() + m.inner().adjoint()) * C64::new(0.5, 0.0);
        CMatrix::new(h).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Q T Q* reconstructs the input, T is strictly upper triangular below
    /// the diagonal, and the diagonal sums to the trace.
    #[test]
    fn schur_reconstructs_and_preserves_trace(m in matrix_strategy(10)) {
        let form = schur::schur(&m, 1e-8).unwrap();
        let scale = m.frobenius_norm().max(1e-30);
        prop_assert!(form.reconstruction_error(&m) <= 1e-10 * scale);
        prop_assert_eq!(form.lower_triangle_residual(), 0.0);
        prop_assert!(form.unitarity_residual() <= 1e-12);
        let trace_m: C64 = (0..m.dim()).map(|i| m.inner()[(i, i)]).sum();
        let trace_t: C64 = form.ordering.iter().copied().sum();
        prop_assert!((trace_m - trace_t).norm() <= 1e-10 * scale.max(1.0));
    }

    /// Spectrum multiplicities sum to the dimension.
    #[test]
    fn spectrum_multiplicities_sum_to_dim(m in matrix_strategy(9)) {
        let spec = schur::spectrum(&m, schur::default_cluster_tol(&m)).unwrap();
        prop_assert_eq!(spec.total_multiplicity(), m.dim());
    }

    /// Schatten 2-norm equals the Frobenius norm.
    #[test]
    fn schatten_two_is_frobenius(m in matrix_strategy(10)) {
        let s2 = linalg::schatten_norm(&m, 2.0).unwrap();
        let fro = m.frobenius_norm();
        prop_assert!((s2 - fro).abs() <= 1e-12 * fro.max(1e-30));
    }

    /// Schatten norms are unitarily invariant: ‖U M V‖ = ‖M‖.
    #[test]
    fn schatten_unitary_invariance(m in matrix_strategy(8), seed in 0u64..1024) {
        let mut rng = trial_rng(seed, 0);
        let u = haar_unitary(m.dim(), &mut rng);
        let v = haar_unitary(m.dim(), &mut rng);
        let conj = CMatrix::new(u.inner() * m.inner() * v.inner()).unwrap();
        for p in [0.5, 1.0, 2.0, 3.0] {
            let lhs = linalg::schatten_norm(&conj, p).unwrap();
            let rhs = linalg::schatten_norm(&m, p).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1e-30), "p={p}: {lhs} vs {rhs}");
        }
    }

    /// Positive/negative parts: PSD, difference reconstructs, Schatten
    /// powers add up.
    #[test]
    fn pos_neg_part_identities(h in hermitian_strategy(9)) {
        let (pos, neg) = linalg::pos_neg_parts(&h).unwrap();
        let scale = h.frobenius_norm().max(1e-30);
        let recon = (pos.inner() - neg.inner() - h.inner()).norm();
        prop_assert!(recon <= 1e-12 * scale.max(1.0));
        for p in [0.5, 1.0, 2.0] {
            let parts = linalg::schatten_norm(&pos, p).unwrap().powf(p)
                + linalg::schatten_norm(&neg, p).unwrap().powf(p);
            let total = linalg::schatten_norm(&h, p).unwrap().powf(p);
            prop_assert!((parts - total).abs() <= 1e-10 * total.max(1e-12));
        }
    }

    /// Distance brackets sandwich: lo ≤ hi, and every eigenvalue of the
    /// matrix lies (1e-8-inflated) inside the outer polygon.
    #[test]
    fn bracket_sandwich_and_spectrum_containment(
        m in matrix_strategy(7),
        re in -3.0..3.0f64,
        im in -3.0..3.0f64,
    ) {
        let bracket = nrange_bracket(&m, 64).unwrap();
        let (lo, hi) = bracket.dist_bracket(C64::new(re, im));
        prop_assert!(lo <= hi);
        for ev in schur::eigenvalues(&m, 0.0).unwrap() {
            prop_assert!(bracket.outer_excess(ev) <= 1e-8);
        }
    }

    /// Hermitian collapse: the outer polygon of a Hermitian matrix has
    /// imaginary extent at the discretization level.
    #[test]
    fn hermitian_bracket_collapse(h in hermitian_strategy(8)) {
        let n_angles = 256usize;
        let bracket = nrange_bracket(&h, n_angles).unwrap();
        let norm = linalg::spectral_norm(&h);
        let bound = 2.0 * norm * (std::f64::consts::PI / n_angles as f64).sin().powi(2) + 1e-10;
        let extent = bracket
            .outer_polygon()
            .iter()
            .map(|v| v.im.abs())
            .fold(0.0f64, f64::max);
        prop_assert!(extent <= bound, "extent {extent:.3e} vs bound {bound:.3e}");
    }

    /// Raising the spurious-eigenvalue filter never raises a Lieb–Thirring
    /// sum.
    #[test]
    fn lt_sum_monotone_in_filter(beta in 2.0..4.0f64, bump in 0.0..0.5f64) {
        let spec = JacobiSpec::new(
            1,
            vec![C64::new(1.0 + bump, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0)],
            vec![C64::new(0.0, 0.0), C64::new(beta, 0.0), C64::new(0.0, 0.0)],
            vec![C64::new(1.0 + bump, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0)],
            33,
        ).unwrap();
        let low = jacobi::lt_sum_selfadjoint(&spec, 1.0, Some(1e-6)).unwrap();
        let high = jacobi::lt_sum_selfadjoint(&spec, 1.0, Some(1e-1)).unwrap();
        prop_assert!(high.vs_schatten.lhs <= low.vs_schatten.lhs + 1e-15);
    }

    /// Hermitian pairs: the GUE generator really is Hermitian and the edge
    /// bounds hold index by index.
    #[test]
    fn edge_bounds_hold_on_gue_pairs(seed in 0u64..512) {
        let mut rng = trial_rng(seed, 7);
        let a = gue(6, &mut rng);
        let b = gue(6, &mut rng);
        for report in spectra_core::ineq::check_edge_bounds(&a, &b, Default::default()).unwrap() {
            prop_assert!(report.passed(), "{report:?}");
        }
    }
}

#[test]
fn bracket_gap_shrinks_with_resolution() {
    let mut rng = trial_rng(5, 1);
    let m = gue(6, &mut rng);
    let z = C64::new(3.0, 1.0);
    let mut last_gap = f64::INFINITY;
    for n_angles in [16usize, 32, 64, 128, 256] {
        let bracket = nrange_bracket(&m, n_angles).unwrap();
        let (lo, hi) = bracket.dist_bracket(z);
        let gap = hi - lo;
        assert!(gap <= last_gap + 1e-12, "gap {gap:.3e} after {last_gap:.3e}");
        last_gap = gap;
    }
    assert!(last_gap < 1e-3);
}

#[test]
fn free_jacobi_truncation_stays_in_band() {
    let spec = JacobiSpec::free(40).unwrap();
    let (j, _) = jacobi::build_truncation(&spec);
    let eigs = linalg::hermitian_eigenvalues(&j).unwrap();
    assert!(eigs.iter().all(|&x| (-2.0..=2.0).contains(&x)));
}

#[test]
fn schur_handles_repeated_blocks() {
    // direct sum of two identical Jordan blocks: eigenvalue 0 with algebraic
    // multiplicity 4
    let mut m = DMatrix::<C64>::zeros(4, 4);
    m[(0, 1)] = C64::new(1.0, 0.0);
    m[(2, 3)] = C64::new(1.0, 0.0);
    let m = CMatrix::new(m).unwrap();
    let spec = schur::spectrum(&m, 1e-10).unwrap();
    assert_eq!(spec.items.len(), 1);
    assert_eq!(spec.items[0].1, 4);
}
