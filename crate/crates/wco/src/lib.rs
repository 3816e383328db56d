//! Weighted composition operators `W f = psi (f . phi)` on the Hardy space
//! of the unit disc.
//!
//! The crate classifies linear fractional selfmaps of the disc, synthesizes
//! the weight/symbol pairs that make `W` unitary or normal, certifies
//! normality and unitarity by exact rational-function algebra where possible
//! (falling back to finite-section defects), and computes finite-section
//! spectra against the predicted eigenvalue orbits.
//!
//! Modules follow the pipeline:
//! - [`mobius`]: linear fractional maps, disc geometry, Denjoy-Wolff classification
//! - [`hardy`]: truncated Maclaurin arithmetic and reproducing kernels
//! - [`operator`]: finite sections, adjoint actions, normality/unitarity tests
//! - [`synthesis`]: constructors for unitary and normal pairs, exact form checks
//! - [`spectrum`]: spectrum predictions, eigenvalues, the boundary residual
//! - [`verify`]: the named theorem battery behind the `verify` command

pub mod hardy;
pub mod mobius;
pub mod operator;
pub mod serial;
pub mod spectrum;
pub mod synthesis;
pub mod verify;

pub use hardy::{KernelCombo, TaylorPoly};
pub use mobius::{MapClass, MobiusMap};
pub use operator::{FiniteSection, NormalityReport, Symbol, WcoSpec};
pub use spectrum::SpectrumPrediction;
pub use synthesis::LftWco;
