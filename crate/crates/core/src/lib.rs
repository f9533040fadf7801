//! Two coupled spins under the anisotropic Heisenberg and
//! Dzyaloshinskii-Moriya Hamiltonians in a uniform longitudinal field.
//!
//! The crate provides closed-form propagators and evolved states, the
//! Fubini-Study metric of the evolution manifold (analytic, from generator
//! variances, and by finite differences), manifold classification, and
//! concurrence dynamics. [`oracle`] bundles cross-checks of each closed form
//! against an independent computation.

pub mod algebra;
pub mod entanglement;
pub mod error;
pub mod evolution;
pub mod geometry;
pub mod model;
pub mod oracle;
pub mod par;

pub use algebra::{ComplexScalar, Operator4, Vector4};
pub use entanglement::{
    concurrence, concurrence_evolved, product_state, ProductPattern, ProductStateAngles,
};
pub use error::{Error, Result};
pub use evolution::{
    detect_case, evolve, propagator, verify_periodicity, EvolutionParams, PeriodicityCase,
    PeriodicityReport, TwoSpinState,
};
pub use geometry::{
    classify_manifold, invariants_of, metric_analytic, metric_finite_difference,
    metric_from_variances, ManifoldClass, MetricTensor, StateInvariants,
};
pub use model::{build_hamiltonian, Anisotropy, ModelKind, ModelParams};
pub use par::Execution;
