//! Coherence-based quantumness measures for orthogonal product-state
//! ensembles, and success probabilities for restricted one-way LOCC
//! discrimination.
//!
//! The library quantifies how "quantum" a set of mutually orthogonal
//! bipartite product states is, through basis-dependent coherence:
//!
//! - **total local coherence** `tau`: the minimum, over local unitaries on
//!   each party, of the summed single-party coherences of all members;
//! - **minimum ensemble coherence (MEC)**: the coherence of the equal
//!   superposition of the members after rotation by the tau-minimizing
//!   local unitaries, with a dimension-free normalized variant;
//! - **coherence deficit**: |tau - MEC|;
//! - **relative local coherence** `C_r`: for two-block 2 tensor d ensembles,
//!   the average coherence of one Bob basis measured in the other.
//!
//! For two-block ensembles it also computes the best success probability of
//! the restricted protocol in which Bob measures rank-1 projectors first,
//! communicates once, and Alice finishes in the computational basis, plus a
//! grid-search oracle to validate the optimizer.
//!
//! Everything is deterministic for a fixed seed; optimizer restarts run in
//! parallel and merge in a fixed order.

pub mod coherence;
pub mod ensembles;
pub mod error;
pub mod locc;
pub mod optim;
pub mod qcore;
pub mod unitary_opt;

#[doc(hidden)]
pub mod testutil;

pub use coherence::{c_l1, c_rel, coherence, max_coherence, pure_coherence, CoherenceMeasure};
pub use ensembles::{DistinguishabilityClass, ProductEnsemble, TwoBlockForm};
pub use error::{Error, Result};
pub use locc::{
    brute_force_oracle, find_configuration, optimize_projectors, success_probability,
    Configuration, DiscriminationResult, ProjectorSet, ReducedSet,
};
pub use qcore::{
    apply_unitary, dephase, hermitian_eigenvalues, inner_product, is_orthonormal_set,
    tensor_product, von_neumann_entropy, DensityMatrix, Ket, Operator,
};
pub use unitary_opt::{
    check_observation1, mec, minimize_tau, total_local_coherence, unitary_from_params,
    CoherenceReport, OptimizerConfig, TauMinimization, UnitaryParams, DEFAULT_SEED,
};
