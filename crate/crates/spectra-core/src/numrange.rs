//! Certified inner/outer approximation of the closed numerical range
//! W(A) = {⟨Av, v⟩ : ‖v‖ = 1} and bracketed point-to-range distances.
//!
//! At each sweep angle θ the largest eigenvalue of the Hermitian part of
//! e^{−iθ}A is the exact support value of W(A) in that direction, and the
//! corresponding top eigenvector realizes a boundary point ⟨Av, v⟩. The
//! attained points span an inner convex polygon, the supporting halfplanes an
//! outer one:
//!
//!   conv(inner points) ⊆ W(A) ⊆ ∩ halfplanes.
//!
//! Distance brackets therefore sandwich the true distance: the outer-polygon
//! distance is a sound lower bound (used by every inequality checker), the
//! inner-hull distance an upper bound reported for tightness diagnostics.

use nalgebra::DVector;
use std::f64::consts::PI;

use crate::cmatrix::{C64, CMatrix};
use crate::error::{Error, Result};
use crate::geom::{self, HalfPlane};
use crate::schur::hermitian_top_eigenpair;

/// Default sweep resolution; at unit norm this gives a Hausdorff gap of
/// roughly 1e-4 between the hulls.
pub const DEFAULT_N_ANGLES: usize = 256;

/// Inner/outer bracket of a numerical range.
#[derive(Debug, Clone)]
pub struct NRangeBracket {
    pub angles: Vec<f64>,
    /// Attained boundary points ⟨A vⱼ, vⱼ⟩ for the stored unit vectors.
    pub inner_pts: Vec<C64>,
    /// Unit vectors realizing the inner points.
    pub inner_vecs: Vec<DVector<C64>>,
    /// Supporting halfplanes {z : Re(e^{−iθ} z) ≤ s}.
    pub outer_halfplanes: Vec<HalfPlane>,
    /// Cached hull of `inner_pts` (counterclockwise).
    inner_hull: Vec<C64>,
    /// Cached vertex list of the outer halfplane intersection.
    outer_polygon: Vec<C64>,
}

/// Sweeps `n_angles` uniform directions and brackets W(A).
pub fn nrange_bracket(a: &CMatrix, n_angles: usize) -> Result<NRangeBracket> {
    if n_angles < 8 {
        return Err(Error::domain("numerical range sweep needs at least 8 angles"));
    }
    let dim = a.dim();
    let mut angles = Vec::with_capacity(n_angles);
    let mut inner_pts = Vec::with_capacity(n_angles);
    let mut inner_vecs = Vec::with_capacity(n_angles);
    let mut outer_halfplanes = Vec::with_capacity(n_angles);
    for j in 0..n_angles {
        let theta = 2.0 * PI * j as f64 / n_angles as f64;
        let rot = C64::new(0.0, -theta).exp() ;
        let rotated = a.inner() * rot;
        let herm = (&rotated + rotated.adjoint()) * C64::new(0.5, 0.0);
        let (support, v) = hermitian_top_eigenpair(&herm);
        let point = (v.adjoint() * a.inner() * &v)[(0, 0)];
        angles.push(theta);
        inner_pts.push(point);
        inner_vecs.push(v);
        outer_halfplanes.push(HalfPlane { theta, support });
    }
    let inner_hull = geom::convex_hull(&inner_pts);
    let outer_polygon = geom::halfplane_intersection(&outer_halfplanes);
    debug_assert!(dim == 0 || !outer_polygon.is_empty());
    Ok(NRangeBracket { angles, inner_pts, inner_vecs, outer_halfplanes, inner_hull, outer_polygon })
}

impl NRangeBracket {
    /// Bracketed distance from `z` to the closed numerical range:
    /// `lo ≤ dist(z, W̄(A)) ≤ hi`. `lo` is the distance to the outer
    /// halfplane intersection, `hi` the distance to the inner hull.
    pub fn dist_bracket(&self, z: C64) -> (f64, f64) {
        let hi = geom::dist_to_convex(z, &self.inner_hull);
        let lo = if self.outer_polygon.len() >= 3 {
            geom::dist_to_convex(z, &self.outer_polygon)
        } else if !self.outer_polygon.is_empty() {
            geom::dist_to_convex(z, &self.outer_polygon)
        } else {
            // numerically empty outer region: fall back to the raw
            // halfplane excess, still a valid lower bound
            self.outer_halfplanes
                .iter()
                .map(|h| h.signed_excess(z).max(0.0))
                .fold(0.0, f64::max)
        };
        // The hulls are nested up to eigensolver round-off; clamping keeps
        // the lower bound sound.
        (lo.min(hi), hi)
    }

    /// Sound lower bound of `dist(z, W̄(A))`.
    pub fn dist_lower(&self, z: C64) -> f64 {
        self.dist_bracket(z).0
    }

    pub fn inner_hull(&self) -> &[C64] {
        &self.inner_hull
    }

    pub fn outer_polygon(&self) -> &[C64] {
        &self.outer_polygon
    }

    /// Largest violation of `Re(e^{−iθ} z) ≤ s` over all stored halfplanes;
    /// nonpositive values certify membership in the outer region.
    pub fn outer_excess(&self, z: C64) -> f64 {
        self.outer_halfplanes
            .iter()
            .map(|h| h.signed_excess(z))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigenvalues;
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    fn randc(rng: &mut impl Rng) -> C64 {
        C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    }

    #[test]
    fn hermitian_collapses_to_spectral_segment() {
        let a = CMatrix::real_diagonal(&[0.0, 1.0]);
        let br = nrange_bracket(&a, 256).unwrap();
        // bracket of dist(2, [0,1]) pinches around 1
        let (lo, hi) = br.dist_bracket(C64::new(2.0, 0.0));
        assert!(lo <= 1.0 + 1e-12 && hi >= 1.0 - 1e-12);
        assert!(hi - lo < 1e-3, "gap {:.3e}", hi - lo);
        // imaginary extent of the outer polygon is at discretization level
        let n_angles = 256.0f64;
        let bound = 2.0 * 1.0 * (PI / n_angles).sin().powi(2) + 1e-10;
        let extent = br
            .outer_polygon()
            .iter()
            .map(|v| v.im.abs())
            .fold(0.0, f64::max);
        assert!(extent <= bound, "extent {extent:.3e} vs bound {bound:.3e}");
    }

    #[test]
    fn jordan_block_disk_radius() {
        // 2x2 nilpotent Jordan block: W(A) is the closed disk of radius 1/2.
        let a = CMatrix::from_real_row_major(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let br = nrange_bracket(&a, 256).unwrap();
        let eps = 1e-3;
        for h in &br.outer_halfplanes {
            assert!((h.support - 0.5).abs() < 1e-12, "support {}", h.support);
        }
        let inner_radius = br.inner_pts.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        assert!(inner_radius >= 0.5 * (1.0 - eps), "inner radius {inner_radius}");
        // dist(1, W(A)) = 0.5
        let (lo, hi) = br.dist_bracket(C64::new(1.0, 0.0));
        assert!(lo <= 0.5 + 1e-12 && hi >= 0.5 - 1e-12);
        assert!((hi - lo).abs() < 1e-3);
    }

    #[test]
    fn scalar_operator_degenerates_to_point() {
        let c = C64::new(0.3, -0.7);
        let a = CMatrix::diagonal(&[c, c, c]);
        let br = nrange_bracket(&a, 64).unwrap();
        let (lo, hi) = br.dist_bracket(c);
        assert!(lo < 1e-10 && hi < 1e-10);
        let (lo, hi) = br.dist_bracket(c + C64::new(2.0, 0.0));
        assert!((lo - 2.0).abs() < 1e-9 && (hi - 2.0).abs() < 1e-9);
    }

    #[test]
    fn interior_point_brackets_to_zero() {
        let a = CMatrix::real_diagonal(&[-1.0, 1.0]);
        let br = nrange_bracket(&a, 64).unwrap();
        let (lo, hi) = br.dist_bracket(C64::new(0.0, 0.0));
        assert_eq!(lo, 0.0);
        assert!(hi < 1e-12);
    }

    #[test]
    fn sandwich_and_refinement() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for &dim in &[3usize, 6, 12] {
            let a = CMatrix::from_fn(dim, |_, _| randc(&mut rng));
            let br_coarse = nrange_bracket(&a, 32).unwrap();
            let br_fine = nrange_bracket(&a, 64).unwrap();
            for _ in 0..20 {
                let z = C64::new(4.0 * (rng.gen::<f64>() - 0.5), 4.0 * (rng.gen::<f64>() - 0.5));
                let (lo_c, hi_c) = br_coarse.dist_bracket(z);
                let (lo_f, hi_f) = br_fine.dist_bracket(z);
                assert!(lo_c <= hi_c && lo_f <= hi_f);
                // doubling the grid can only tighten the bracket
                assert!(hi_f - lo_f <= hi_c - lo_c + 1e-12);
            }
        }
    }

    #[test]
    fn spectrum_inside_outer_polygon() {
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        for &dim in &[4usize, 10] {
            let a = CMatrix::from_fn(dim, |_, _| randc(&mut rng));
            let br = nrange_bracket(&a, 128).unwrap();
            for ev in crate::schur::eigenvalues(&a, 0.0).unwrap() {
                assert!(br.outer_excess(ev) <= 1e-8, "eigenvalue escapes outer polygon");
            }
        }
    }

    #[test]
    fn inner_points_are_realized_by_stored_vectors() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let a = CMatrix::from_fn(5, |_, _| randc(&mut rng));
        let br = nrange_bracket(&a, 32).unwrap();
        for (v, z) in br.inner_vecs.iter().zip(&br.inner_pts) {
            assert!((v.norm() - 1.0).abs() < 1e-12);
            let attained = (v.adjoint() * a.inner() * v)[(0, 0)];
            assert!((attained - z).norm() <= 1e-12);
        }
    }

    #[test]
    fn hermitian_bracket_matches_segment_distance() {
        let mut rng = ChaCha12Rng::seed_from_u64(43);
        let g = CMatrix::from_fn(6, |_, _| randc(&mut rng));
        let h = CMatrix::new((g.inner() + g.inner().adjoint()) * C64::new(0.5, 0.0)).unwrap();
        let ev = hermitian_eigenvalues(&h).unwrap();
        let (min, max) = (ev[0], ev[ev.len() - 1]);
        let br = nrange_bracket(&h, 256).unwrap();
        for _ in 0..30 {
            let z = C64::new(3.0 * (rng.gen::<f64>() - 0.5), 3.0 * (rng.gen::<f64>() - 0.5));
            let exact = geom::dist_to_real_segment(z, min, max);
            let (lo, hi) = br.dist_bracket(z);
            assert!(lo <= exact + 1e-10, "lo {lo} vs exact {exact}");
            assert!(hi >= exact - 1e-10, "hi {hi} vs exact {exact}");
            assert!(hi - lo <= 2e-3 * (1.0 + exact), "bracket too wide: {} {}", lo, hi);
        }
    }
}
