//! Numerical laboratory for eigenvalue-perturbation inequalities of
//! (generally non-selfadjoint) matrices.
//!
//! The crate provides, at matrix scale:
//!
//! - dense complex linear-algebra kernels (Schur triangularization with
//!   clustered eigenvalue ordering, singular values, Schatten quasi-norms,
//!   positive/negative parts, Hermitian matrix exponentials) — [`linalg`],
//!   [`schur`];
//! - certified inner/outer brackets of the numerical range with sound
//!   point-to-range distance bounds — [`numrange`];
//! - checkers for the perturbation inequalities that relate eigenvalue
//!   distance sums to Schatten norms of the perturbation, plus seeded random
//!   ensembles driving them — [`ineq`], [`ensemble`];
//! - exact constructions whose closed-form ratios anchor the regression
//!   suite (perturbed Jordan blocks, cyclic swaps, rank-one diagonal
//!   families) — [`gallery`];
//! - finite-section Jacobi operators with finitely supported perturbations
//!   and their Lieb–Thirring-type sums — [`jacobi`];
//! - quadrature/closed-form cross-validated constants for the resolvent
//!   bounds of Schrödinger type — [`consts`].

pub mod assignment;
pub mod cmatrix;
pub mod consts;
pub mod ensemble;
pub mod error;
pub mod gallery;
pub mod geom;
pub mod ineq;
pub mod jacobi;
pub mod linalg;
pub mod numrange;
pub mod quad;
pub mod report;
pub mod schur;

pub use cmatrix::{C64, CMatrix, SchurForm, SingularValues, Spectrum};
pub use ensemble::{run_ensemble, CheckerKind, EnsembleKind, EnsembleSpec, EnsembleSummary};
pub use error::{Error, Result};
pub use ineq::CheckOpts;
pub use jacobi::{DSeq, JacobiSpec};
pub use numrange::{nrange_bracket, NRangeBracket};
pub use report::{IneqReport, SlackPolicy, Verdict};
pub use schur::{default_cluster_tol, eigenvalues, schur, spectrum};
