//! Seeded random-matrix ensembles and the trial driver for the inequality
//! checkers.
//!
//! Reproducibility contract: every trial derives its own ChaCha stream from
//! `(seed, trial index)`, so results are independent of execution order and
//! identical across runs and thread counts. Trials fan out over a rayon pool;
//! the summary is folded in trial order.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{C64, CMatrix};
use crate::error::{Error, Result};
use crate::ineq::{self, CheckOpts};
use crate::report::IneqReport;
use crate::report::Verdict;

/// Matrix-pair distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    /// A Ginibre, B = A + ½·Ginibre′ (dense non-normal perturbation).
    Ginibre,
    /// A GUE, B = A + ½·GUE′ (dense Hermitian perturbation).
    Gue,
    /// Independent GUE pair (A, B).
    HermitianPair,
    /// Independent unitary-conjugated complex diagonals (both normal).
    NormalPair,
    /// A Ginibre, B = A + Σ_{k≤r} σₖ uₖ vₖ* with r ≤ 4, σₖ ∈ (0,1].
    LowRankPerturbation,
}

impl EnsembleKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ginibre" => Ok(Self::Ginibre),
            "gue" => Ok(Self::Gue),
            "hermitian_pair" => Ok(Self::HermitianPair),
            "normal_pair" => Ok(Self::NormalPair),
            "low_rank_perturbation" => Ok(Self::LowRankPerturbation),
            other => Err(Error::config(format!("unknown ensemble kind '{other}'"))),
        }
    }

    fn hermitian_output(self) -> bool {
        matches!(self, EnsembleKind::Gue | EnsembleKind::HermitianPair)
    }

    fn normal_output(self) -> bool {
        self.hermitian_output() || self == EnsembleKind::NormalPair
    }
}

/// Checkers an ensemble can drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckerKind {
    /// Distance to the numerical range of A, p ≥ 1, arbitrary pair.
    NumrangeBound,
    /// Distance to the (segment) hull of a normal A's spectrum, p ≥ 1.
    ConvexSpectrumBound,
    /// Hermitian pair, spectral interval, p ∈ (0, 1].
    SelfadjointBound,
    /// Hermitian pair, per-index edge bounds.
    EdgeBounds,
    /// Hermitian pair, optimal matching (violations expected for p < 1).
    MatchingBound,
    /// Normal pair, point-set distances, p ≥ 2.
    PointsetBound,
    /// Variational frame bound on a single matrix, p ≥ 1.
    FrameBound,
    /// H0 PSD, H = H0 + i·(low-rank PSD): resolvent-difference bound, p ≥ 1.
    ResolventBound,
    /// H0 PSD, H Hermitian: semigroup-difference bounds, p > 0.
    HeatBounds,
}

impl CheckerKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "numrange" => Ok(Self::NumrangeBound),
            "convex" => Ok(Self::ConvexSpectrumBound),
            "selfadjoint" => Ok(Self::SelfadjointBound),
            "edge" => Ok(Self::EdgeBounds),
            "matching" => Ok(Self::MatchingBound),
            "pointset" => Ok(Self::PointsetBound),
            "frame" => Ok(Self::FrameBound),
            "resolvent" => Ok(Self::ResolventBound),
            "heat" => Ok(Self::HeatBounds),
            other => Err(Error::config(format!("unknown checker '{other}'"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::NumrangeBound => "numrange",
            Self::ConvexSpectrumBound => "convex",
            Self::SelfadjointBound => "selfadjoint",
            Self::EdgeBounds => "edge",
            Self::MatchingBound => "matching",
            Self::PointsetBound => "pointset",
            Self::FrameBound => "frame",
            Self::ResolventBound => "resolvent",
            Self::HeatBounds => "heat",
        }
    }

    /// Whether the ensemble produces pairs this checker accepts.
    pub fn accepts(self, kind: EnsembleKind) -> bool {
        match self {
            Self::NumrangeBound => true,
            Self::ConvexSpectrumBound | Self::SelfadjointBound | Self::EdgeBounds
            | Self::MatchingBound => kind.hermitian_output(),
            Self::PointsetBound => kind.normal_output(),
            // these three generate their own structured inputs; any kind tag
            // is accepted and only the dimension/exponent are used
            Self::FrameBound | Self::ResolventBound | Self::HeatBounds => true,
        }
    }

    /// Whether a violation is a regression for this checker at exponent `p`.
    pub fn guaranteed(self, p: f64) -> bool {
        match self {
            Self::MatchingBound => p >= 1.0,
            _ => true,
        }
    }
}

/// Ensemble configuration; `seed` is mandatory and fully determines the run.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub dim: usize,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::config("trials must be >= 1"));
        }
        if self.dim < 2 {
            return Err(Error::config("dim must be >= 2"));
        }
        if !(self.p > 0.0) || !self.p.is_finite() {
            return Err(Error::config("p must be a positive finite real"));
        }
        Ok(())
    }
}

/// A serialized failing (or demonstrating) instance: matrices row-major as
/// `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailInstance {
    pub checker: String,
    pub dim: usize,
    pub p: f64,
    pub seed: u64,
    pub trial: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub matrix_a: Vec<[f64; 2]>,
    pub matrix_b: Vec<[f64; 2]>,
}

/// Aggregated ensemble outcome.
#[derive(Debug, Clone, Serialize)]
pub struct EnsembleSummary {
    pub checker: CheckerKind,
    pub spec: EnsembleSpec,
    pub trials: usize,
    pub passes: usize,
    pub expected_violations: usize,
    pub failures: usize,
    pub worst_ratio: f64,
    pub worst_trial: u64,
    /// Maximizing FAIL instance, serialized for replay; None when no
    /// genuine failure occurred.
    pub failure: Option<FailInstance>,
}

impl EnsembleSummary {
    /// Every trial behaved as the theory predicts (passes plus expected
    /// violations account for everything).
    pub fn clean(&self) -> bool {
        self.failures == 0
    }
}

/// Per-trial RNG derived by seed splitting: same key, stream = trial index.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn gauss(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Standard complex Gaussian entry: variance 1 (½ per component).
pub fn complex_gauss(rng: &mut impl Rng) -> C64 {
    C64::new(gauss(rng) / 2f64.sqrt(), gauss(rng) / 2f64.sqrt())
}

/// Ginibre matrix: i.i.d. complex Gaussian entries scaled by 1/√dim, so the
/// spectral radius concentrates near 1.
pub fn ginibre(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let scale = 1.0 / (dim as f64).sqrt();
    CMatrix::from_fn(dim, |_, _| complex_gauss(rng) * scale)
}

/// GUE-type Hermitian matrix `(G + G*)/(2√dim)·√2`, spectrum concentrating
/// on roughly [−2, 2].
pub fn gue(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let g = DMatrix::from_fn(dim, dim, |_, _| complex_gauss(rng));
    let h = (&g + g.adjoint()) * C64::new(1.0 / (2.0 * (dim as f64)).sqrt(), 0.0) * C64::new(2f64.sqrt(), 0.0);
    CMatrix::from_dense(h)
}

/// Haar-distributed unitary via QR of a Ginibre matrix with the standard
/// phase fix on the R diagonal.
pub fn haar_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let g = DMatrix::from_fn(dim, dim, |_, _| complex_gauss(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 { C64::new(1.0, 0.0) } else { d / d.norm() };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    CMatrix::from_dense(q)
}

/// Random unit vector.
pub fn random_unit_vector(dim: usize, rng: &mut impl Rng) -> DVector<C64> {
    let v = DVector::from_fn(dim, |_, _| complex_gauss(rng));
    crate::cmatrix::normalize(&v)
}

/// PSD matrix `G G*/dim` from a Ginibre factor.
pub fn psd_from_gue(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let g = DMatrix::from_fn(dim, dim, |_, _| complex_gauss(rng));
    let h = (&g * g.adjoint()) * C64::new(1.0 / dim as f64, 0.0);
    let h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
    CMatrix::from_dense(h)
}

/// PSD matrix of rank ≤ r: Σ σₖ uₖ uₖ* with σₖ ∈ (0, 1].
pub fn psd_low_rank(dim: usize, rank: usize, rng: &mut impl Rng) -> CMatrix {
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for _ in 0..rank {
        let u = random_unit_vector(dim, rng);
        let sigma = C64::new(rng.gen_range(1e-3..=1.0), 0.0);
        m += &u * u.adjoint() * sigma;
    }
    let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    CMatrix::from_dense(m)
}

/// Unitary-conjugated random complex diagonal: a generic normal matrix.
pub fn random_normal_matrix(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let u = haar_unitary(dim, rng);
    let mut d = DMatrix::<C64>::zeros(dim, dim);
    for i in 0..dim {
        d[(i, i)] = complex_gauss(rng);
    }
    CMatrix::from_dense(u.inner() * d * u.inner().adjoint())
}

/// Draws the matrix pair for one trial.
pub fn draw_pair(kind: EnsembleKind, dim: usize, rng: &mut impl Rng) -> (CMatrix, CMatrix) {
    match kind {
        EnsembleKind::Ginibre => {
            let a = ginibre(dim, rng);
            let e = ginibre(dim, rng);
            let b = CMatrix::from_dense(a.inner() + e.inner() * C64::new(0.5, 0.0));
            (a, b)
        }
        EnsembleKind::Gue => {
            let a = gue(dim, rng);
            let e = gue(dim, rng);
            let b = CMatrix::from_dense(a.inner() + e.inner() * C64::new(0.5, 0.0));
            (a, b)
        }
        EnsembleKind::HermitianPair => (gue(dim, rng), gue(dim, rng)),
        EnsembleKind::NormalPair => (random_normal_matrix(dim, rng), random_normal_matrix(dim, rng)),
        EnsembleKind::LowRankPerturbation => {
            let a = ginibre(dim, rng);
            let rank = rng.gen_range(1..=4usize);
            let mut b = a.inner().clone();
            for _ in 0..rank {
                let u = random_unit_vector(dim, rng);
                let v = random_unit_vector(dim, rng);
                let sigma = C64::new(rng.gen_range(1e-3..=1.0), 0.0);
                b += &u * v.adjoint() * sigma;
            }
            (a, CMatrix::from_dense(b))
        }
    }
}

struct TrialOutcome {
    trial: u64,
    worst_report: IneqReport,
    matrices: (CMatrix, CMatrix),
}

fn run_trial(
    checker: CheckerKind,
    spec: &EnsembleSpec,
    trial: u64,
    opts: CheckOpts,
) -> Result<TrialOutcome> {
    let mut rng = trial_rng(spec.seed, trial);
    let (a, b, reports) = match checker {
        CheckerKind::FrameBound => {
            let k = ginibre(spec.dim, &mut rng);
            let frame_seed = rng.gen::<u64>();
            let rep = ineq::check_frame_bound(&k, spec.p, 16, frame_seed, opts)?;
            let z = CMatrix::zeros(spec.dim);
            (k, z, vec![rep])
        }
        CheckerKind::ResolventBound => {
            let h0 = psd_from_gue(spec.dim, &mut rng);
            let rank = rng.gen_range(1..=2usize);
            let w = psd_low_rank(spec.dim, rank, &mut rng);
            let h = CMatrix::from_dense(h0.inner() + w.inner() * C64::new(0.0, 1.0));
            let rep = ineq::check_resolvent_bound(&h0, &h, 1.0, spec.p, opts)?;
            (h0, h, vec![rep.report])
        }
        CheckerKind::HeatBounds => {
            let h0 = psd_from_gue(spec.dim, &mut rng);
            let h = gue(spec.dim, &mut rng);
            let rep = ineq::check_heat(&h0, &h, 1.0, spec.p, opts)?;
            (h0, h, vec![rep.semigroup, rep.moment])
        }
        _ => {
            let (a, b) = draw_pair(spec.kind, spec.dim, &mut rng);
            let reports = match checker {
                CheckerKind::NumrangeBound => {
                    vec![ineq::check_numrange_bound(&a, &b, spec.p, opts)?]
                }
                CheckerKind::ConvexSpectrumBound => {
                    vec![ineq::check_convex_spectrum_bound(&a, &b, spec.p, opts)?]
                }
                CheckerKind::SelfadjointBound => {
                    vec![ineq::check_selfadjoint_bound(&a, &b, spec.p, opts)?]
                }
                CheckerKind::EdgeBounds => ineq::check_edge_bounds(&a, &b, opts)?,
                CheckerKind::MatchingBound => {
                    vec![ineq::check_matching_bound(&a, &b, spec.p, opts)?]
                }
                CheckerKind::PointsetBound => {
                    vec![ineq::check_pointset_bound(&a, &b, spec.p, opts)?]
                }
                _ => unreachable!(),
            };
            (a, b, reports)
        }
    };
    // vacuous trials (e.g. no eigenvalue escapes) count as passes
    let worst_report = reports
        .into_iter()
        .max_by(|x, y| x.ratio.total_cmp(&y.ratio))
        .unwrap_or_else(|| IneqReport::judge("vacuous", 0.0, 0.0, spec.p, opts.slack, true));
    Ok(TrialOutcome { trial, worst_report, matrices: (a, b) })
}

/// Runs `spec.trials` seeded trials of `checker`. Deterministic for a given
/// seed; the maximizing genuine failure, if any, is serialized into the
/// summary.
pub fn run_ensemble(spec: &EnsembleSpec, checker: CheckerKind) -> Result<EnsembleSummary> {
    run_ensemble_with(spec, checker, CheckOpts::default())
}

pub fn run_ensemble_with(
    spec: &EnsembleSpec,
    checker: CheckerKind,
    opts: CheckOpts,
) -> Result<EnsembleSummary> {
    spec.validate()?;
    if !checker.accepts(spec.kind) {
        return Err(Error::config(format!(
            "checker '{}' does not accept ensemble kind {:?}",
            checker.name(),
            spec.kind
        )));
    }
    let outcomes: Vec<Result<TrialOutcome>> = (0..spec.trials as u64)
        .into_par_iter()
        .map(|trial| run_trial(checker, spec, trial, opts))
        .collect();

    let mut passes = 0usize;
    let mut expected_violations = 0usize;
    let mut failures = 0usize;
    let mut worst: Option<(f64, u64)> = None;
    let mut failure: Option<(f64, FailInstance)> = None;
    for outcome in outcomes {
        let TrialOutcome { trial, worst_report: report, matrices } = outcome?;
        match report.verdict {
            Verdict::Pass => passes += 1,
            Verdict::ViolationExpected => expected_violations += 1,
            Verdict::Fail => failures += 1,
        }
        let better = match worst {
            None => true,
            Some((r, t)) => report.ratio > r || (report.ratio == r && trial < t),
        };
        if better {
            worst = Some((report.ratio, trial));
        }
        if report.verdict == Verdict::Fail {
            let dominates = failure.as_ref().map_or(true, |(r, _)| report.ratio > *r);
            if dominates {
                failure = Some((
                    report.ratio,
                    FailInstance {
                        checker: checker.name().to_string(),
                        dim: spec.dim,
                        p: spec.p,
                        seed: spec.seed,
                        trial,
                        lhs: report.lhs,
                        rhs: report.rhs,
                        matrix_a: matrices.0.to_wire(),
                        matrix_b: matrices.1.to_wire(),
                    },
                ));
            }
        }
    }
    let (worst_ratio, worst_trial) = worst.unwrap_or((0.0, 0));
    Ok(EnsembleSummary {
        checker,
        spec: *spec,
        trials: spec.trials,
        passes,
        expected_violations,
        failures,
        worst_ratio,
        worst_trial,
        failure: failure.map(|(_, f)| f),
    })
}
