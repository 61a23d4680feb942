//! Closed-form constants for the resolvent-based bounds on operators of
//! Schrödinger type, cross-validated by quadrature, plus the integral chain
//! behind the split-weight estimate.
//!
//! Two independent evaluation routes everywhere: radial/one-dimensional
//! quadrature on one side, Beta/Gamma closed forms on the other. Agreement
//! to 1e-10 relative is an acceptance requirement, so each function returns
//! both values.

use num_complex::Complex64 as C64;
use statrs::function::beta::beta;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::geom;
use crate::quad::{integrate_0_inf, PANEL_TOL};

/// A quantity evaluated by quadrature and by a closed form.
#[derive(Debug, Clone, Copy)]
pub struct DualEval {
    pub quadrature: f64,
    pub closed_form: f64,
}

impl DualEval {
    pub fn rel_err(&self) -> f64 {
        (self.quadrature - self.closed_form).abs() / self.closed_form.abs().max(f64::MIN_POSITIVE)
    }

    /// Canonical value (the closed form).
    pub fn value(&self) -> f64 {
        self.closed_form
    }
}

/// Validates the dimension/exponent region where the defining integrals are
/// finite: `p > d/2` for `d ≥ 2`, `p ≥ 1` for `d = 1`.
pub fn validate_dp(d: u32, p: f64) -> Result<()> {
    if d == 0 {
        return Err(Error::domain("dimension must be >= 1"));
    }
    if !p.is_finite() {
        return Err(Error::domain("p must be finite"));
    }
    if d == 1 {
        if p < 1.0 {
            return Err(Error::domain("d = 1 requires p >= 1"));
        }
    } else if p <= d as f64 / 2.0 {
        return Err(Error::domain(format!("d = {d} requires p > d/2 = {}", d as f64 / 2.0)));
    }
    Ok(())
}

/// `C₀ = (2π)^{−d} ∫ (|x|²+1)^{−p} dx` over ℝ^d, reduced to the radial
/// integral `ω_{d−1} ∫₀^∞ r^{d−1}(1+r²)^{−p} dr` and cross-checked against
/// the closed form `(2π)^{−d} π^{d/2} Γ(p−d/2)/Γ(p)`.
pub fn c0(d: u32, p: f64) -> Result<DualEval> {
    validate_dp(d, p)?;
    if d == 1 && p == 1.0 {
        // boundary of the d=1 region; integrals still converge
    }
    let df = d as f64;
    let sphere_area = 2.0 * std::f64::consts::PI.powf(df / 2.0) / gamma(df / 2.0);
    let radial = integrate_0_inf(|r| r.powf(df - 1.0) * (1.0 + r * r).powf(-p), PANEL_TOL)?;
    let prefactor = (2.0 * std::f64::consts::PI).powf(-df);
    let quadrature = prefactor * sphere_area * radial;
    let closed_form =
        prefactor * std::f64::consts::PI.powf(df / 2.0) * gamma(p - df / 2.0) / gamma(p);
    Ok(DualEval { quadrature, closed_form })
}

/// `C₁` as the ratio of the two one-dimensional integrals
/// `∫₀^∞ s^{κ−1}(1+s)^{−2κ} ds / ∫₀^∞ s^{2p−1−d/2+κ}(1+s)^{−2(p+κ)} ds`,
/// cross-checked against `B(κ, κ) / B(2p − d/2 + κ, d/2 + κ)`.
pub fn c1(d: u32, p: f64, kappa: f64) -> Result<DualEval> {
    validate_dp(d, p)?;
    if !(kappa > 0.0) {
        return Err(Error::domain("kappa must be positive"));
    }
    let df = d as f64;
    let x = 2.0 * p - df / 2.0 + kappa;
    if !(x > 0.0) {
        return Err(Error::domain("need 2p - d/2 + kappa > 0"));
    }
    let numerator = integrate_0_inf(move |s| s.powf(kappa - 1.0) * (1.0 + s).powf(-2.0 * kappa), PANEL_TOL)?;
    let denominator = integrate_0_inf(
        move |s| s.powf(2.0 * p - 1.0 - df / 2.0 + kappa) * (1.0 + s).powf(-2.0 * (p + kappa)),
        PANEL_TOL,
    )?;
    let quadrature = numerator / denominator;
    let closed_form = beta(kappa, kappa) / beta(x, df / 2.0 + kappa);
    Ok(DualEval { quadrature, closed_form })
}

/// The resolvent weight `|Im λ| / |λ+a|²` for `Re λ > 0`, together with the
/// geometric distance of `(a+λ)⁻¹` to the segment `[0, a⁻¹]` it equals.
#[derive(Debug, Clone, Copy)]
pub struct ResolventWeight {
    pub weight: f64,
    pub geometric: f64,
}

impl ResolventWeight {
    pub fn deviation(&self) -> f64 {
        (self.weight - self.geometric).abs()
    }
}

pub fn resolvent_weight(lambda: C64, a: f64) -> Result<ResolventWeight> {
    if !(a > 0.0) {
        return Err(Error::domain("a must be positive"));
    }
    if !(lambda.re > 0.0) {
        return Err(Error::domain("the identity is asserted on Re(lambda) > 0 only"));
    }
    let weight = lambda.im.abs() / (lambda + C64::new(a, 0.0)).norm_sqr();
    let mapped = C64::new(1.0, 0.0) / (lambda + C64::new(a, 0.0));
    let geometric = geom::dist_to_real_segment(mapped, 0.0, 1.0 / a);
    Ok(ResolventWeight { weight, geometric })
}

/// The split weight `|Im λ|^p / |λ|^{d/2∓κ}` (minus branch inside the unit
/// disk, plus branch outside).
pub fn split_weight(lambda: C64, d: u32, p: f64, kappa: f64) -> f64 {
    let df = d as f64;
    let modulus = lambda.norm();
    let exponent = if modulus < 1.0 { df / 2.0 - kappa } else { df / 2.0 + kappa };
    lambda.im.abs().powf(p) / modulus.powf(exponent)
}

/// Open-question weight `dist(λ, [0,∞))^p / |λ|^{d/2}`, computed for
/// tabulation only; no inequality against it is asserted anywhere.
pub fn conjectured_weight(lambda: C64, d: u32, p: f64) -> f64 {
    let dist = if lambda.re >= 0.0 { lambda.im.abs() } else { lambda.norm() };
    dist.powf(p) / lambda.norm().powf(d as f64 / 2.0)
}

/// Numeric verification of the integral chain that produces the split
/// weight: the substitution identity, the max-factor lower bound, and the
/// end-to-end weight reproduction.
#[derive(Debug, Clone)]
pub struct ChainReport {
    /// ∫₀^∞ a^{2p−d/2−1+κ} / ((|λ|+a)^{2p} (1+a)^{2κ}) da.
    pub shift_integral: f64,
    /// The same integral after substituting a = |λ|s.
    pub substituted: f64,
    pub identity_rel_err: f64,
    /// Lower bound with the (1+|λ|s) factor replaced by max(|λ|,1)(1+s).
    pub lower_bound: f64,
    /// substituted / lower_bound; ≥ 1 up to round-off.
    pub bound_ratio: f64,
    /// The split weight reproduced through the chain.
    pub chain_weight: f64,
    /// The split weight evaluated directly.
    pub direct_weight: f64,
}

pub fn chain_check(lambda: C64, d: u32, p: f64, kappa: f64) -> Result<ChainReport> {
    validate_dp(d, p)?;
    if !(kappa > 0.0) {
        return Err(Error::domain("kappa must be positive"));
    }
    if lambda.im == 0.0 && lambda.re >= 0.0 {
        return Err(Error::domain("lambda must lie off the half-line [0, inf)"));
    }
    let df = d as f64;
    let modulus = lambda.norm();
    let exponent = 2.0 * p - df / 2.0 - 1.0 + kappa;
    let shift_integral = integrate_0_inf(
        move |a| a.powf(exponent) / ((modulus + a).powf(2.0 * p) * (1.0 + a).powf(2.0 * kappa)),
        PANEL_TOL,
    )?;
    let inner = integrate_0_inf(
        move |s| {
            s.powf(exponent) / ((1.0 + s).powf(2.0 * p) * (1.0 + modulus * s).powf(2.0 * kappa))
        },
        PANEL_TOL,
    )?;
    let substituted = modulus.powf(kappa - df / 2.0) * inner;
    let identity_rel_err =
        (shift_integral - substituted).abs() / shift_integral.abs().max(f64::MIN_POSITIVE);
    let tail_beta = integrate_0_inf(
        move |s| s.powf(exponent) * (1.0 + s).powf(-2.0 * (p + kappa)),
        PANEL_TOL,
    )?;
    let lower_bound =
        modulus.powf(kappa - df / 2.0) * modulus.max(1.0).powf(-2.0 * kappa) * tail_beta;
    let bound_ratio = substituted / lower_bound;
    // multiplying the chain by |Im λ|^p / tail_beta reproduces the split
    // weight exactly
    let chain_weight = lambda.im.abs().powf(p) * lower_bound / tail_beta;
    let direct_weight = split_weight(lambda, d, p, kappa);
    Ok(ChainReport {
        shift_integral,
        substituted,
        identity_rel_err,
        lower_bound,
        bound_ratio,
        chain_weight,
        direct_weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gamma_anchor_values() {
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        for n in 1..8 {
            let fact: f64 = (1..n).map(|k| k as f64).product();
            assert!((gamma(n as f64) - fact).abs() <= 1e-12 * fact);
        }
        assert!((beta(0.5, 0.5) - PI).abs() < 1e-13);
    }

    #[test]
    fn c0_one_dimensional() {
        // d = 1, p = 1: (2π)^{-1}·√π·Γ(1/2)/Γ(1) = 1/2
        let v = c0(1, 1.0).unwrap();
        assert!((v.closed_form - 0.5).abs() < 1e-14);
        assert!(v.rel_err() < 1e-10, "rel err {:.3e}", v.rel_err());
    }

    #[test]
    fn c0_three_dimensional() {
        // d = 3, p = 2: (2π)^{-3}·π^{3/2}·Γ(1/2)/Γ(2) = (2π)^{-3} π²
        let v = c0(3, 2.0).unwrap();
        let expect = (2.0 * PI).powi(-3) * PI * PI;
        assert!((v.closed_form - expect).abs() < 1e-15);
        assert!(v.rel_err() < 1e-10);
    }

    #[test]
    fn c0_diverges_at_the_pole() {
        assert!(c0(2, 1.0).is_err());
        assert!(c0(3, 1.5).is_err());
        assert!(c0(1, 0.9).is_err());
        // approaching the pole the value grows without bound and the
        // quadrature tracks the growth
        let mut prev = 0.0;
        for &gap in &[0.4, 0.2, 0.1, 0.05] {
            let v = c0(2, 1.0 + gap).unwrap();
            assert!(v.closed_form > prev, "no growth at gap {gap}");
            assert!(v.rel_err() < 1e-8, "rel err {:.3e} at gap {gap}", v.rel_err());
            prev = v.closed_form;
        }
    }

    #[test]
    fn c0_decreasing_in_p() {
        for d in 1..=3u32 {
            let mut prev = f64::INFINITY;
            for i in 0..6 {
                let p = d as f64 / 2.0 + 0.6 + 0.5 * i as f64;
                let v = c0(d, p.max(1.0)).unwrap().value();
                assert!(v < prev, "c0 not decreasing at d={d} p={p}");
                prev = v;
            }
        }
    }

    #[test]
    fn c1_reference_value() {
        // d = 1, p = 1, κ = 1/2: B(1/2,1/2)/B(2,1) = π/(1/2) = 2π
        let v = c1(1, 1.0, 0.5).unwrap();
        assert!((v.closed_form - 2.0 * PI).abs() < 1e-13);
        assert!(v.rel_err() < 1e-10, "rel err {:.3e}", v.rel_err());
    }

    #[test]
    fn c1_unit_kappa() {
        // κ = 1: numerator ∫ (1+s)^{-2} = 1
        let v = c1(1, 1.5, 1.0).unwrap();
        let expect = 1.0 / beta(2.0 * 1.5 - 0.5 + 1.0, 0.5 + 1.0);
        assert!((v.closed_form - expect).abs() < 1e-12);
        assert!(v.rel_err() < 1e-10);
    }

    #[test]
    fn resolvent_weight_examples() {
        // λ = i, a = 1 → 1/2, matching the projection of (0.5, −0.5) on [0,1]
        let w = resolvent_weight(C64::new(0.0, 1.0), 1.0);
        assert!(w.is_err(), "Re λ = 0 is outside the asserted half-plane");
        let w = resolvent_weight(C64::new(1e-9, 1.0), 1.0).unwrap();
        assert!((w.weight - 0.5).abs() < 1e-8);
        assert!(w.deviation() < 1e-12);

        let w = resolvent_weight(C64::new(1.0, 1.0), 2.0).unwrap();
        assert!((w.weight - 0.1).abs() < 1e-15);
        assert!(w.deviation() < 1e-15);

        let w = resolvent_weight(C64::new(0.7, 0.0), 1.0).unwrap();
        assert_eq!(w.weight, 0.0);
        assert!(w.geometric < 1e-15);
    }

    #[test]
    fn chain_identity_and_bound() {
        for &(lam, d, p, kappa) in &[
            (C64::new(0.0, 4.0), 1u32, 1.0, 0.5),
            (C64::new(0.0, 0.25), 1, 1.0, 0.5),
            (C64::new(-1.0, 0.5), 2, 1.6, 0.25),
            (C64::new(0.3, -0.8), 3, 2.2, 1.0),
        ] {
            let r = chain_check(lam, d, p, kappa).unwrap();
            assert!(r.identity_rel_err < 1e-8, "identity err {:.3e}", r.identity_rel_err);
            assert!(r.bound_ratio >= 1.0 - 1e-10, "bound ratio {}", r.bound_ratio);
            let weight_err = (r.chain_weight - r.direct_weight).abs()
                / r.direct_weight.abs().max(f64::MIN_POSITIVE);
            assert!(weight_err < 1e-12, "weight err {:.3e}", weight_err);
        }
    }

    #[test]
    fn chain_branch_boundary() {
        // |λ| = 1: the max factor is 1 and both branch weights coincide
        let lam = C64::new(0.0, 1.0);
        let r = chain_check(lam, 1, 1.0, 0.5).unwrap();
        let small = lam.im.abs().powf(1.0) / lam.norm().powf(0.0);
        let large = lam.im.abs().powf(1.0) / lam.norm().powf(1.0);
        assert!((small - large).abs() < 1e-15);
        assert!((r.direct_weight - small).abs() < 1e-15);
    }

    #[test]
    fn chain_rejects_half_line() {
        assert!(chain_check(C64::new(2.0, 0.0), 1, 1.0, 0.5).is_err());
    }

    #[test]
    fn conjectured_weight_is_pure_tabulation() {
        let w = conjectured_weight(C64::new(0.0, 1.0), 1, 1.0);
        assert!((w - 1.0).abs() < 1e-15);
        // dist(−4, [0,∞))^{3/2} / |−4| = 8/4 = 2
        let w = conjectured_weight(C64::new(-4.0, 0.0), 2, 1.5);
        assert!((w - 2.0).abs() < 1e-12);
    }
}
