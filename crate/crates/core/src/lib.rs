//! Step graphons and bounded symmetric kernels on `[0,1]²`, the four norms
//! that measure them, and machine verification of the inequalities tying
//! those norms together.
//!
//! The library models block-constant kernels exactly (weights + value
//! matrix) so every quantity of interest has a finite, certifiable form:
//!
//! * [`norms::cut_norm_exact`] — the cut norm as a bilinear maximization
//!   over indicator vertices, enumerated in Gray-code order with a
//!   maximizer certificate;
//! * [`norms::op_norm_inf1_exact`] — the `L∞ → L1` operator norm (equal to
//!   the type-2 cut norm), enumerated over sign vertices;
//! * [`norms::op_norm_22`] — the `L2 → L2` operator norm as a spectral norm
//!   (Jacobi, or power iteration for large block counts);
//! * [`norms::hs_norm`] — the Hilbert–Schmidt norm in closed form;
//! * [`homomorphism::hom_density`] — exact homomorphism densities of simple
//!   undirected motifs, with an independent spectral route for cycles;
//! * [`verify`] — per-kernel and family-level checks that the cut norm,
//!   ∞,1 norm, and 2,2 norm sandwich each other with constants 4, √2, √8,
//!   and that `t(C₂, W)` is the edge density rather than the squared
//!   Hilbert–Schmidt norm.
//!
//! Everything stochastic (graph sampling, random kernels, heuristic
//! restarts) runs off an explicit seed through one named generator, so
//! reports and files reproduce bit-identically.

// Index loops over square matrices read better than iterator chains here.
#![allow(clippy::needless_range_loop)]

pub mod eigen;
pub mod error;
pub mod homomorphism;
pub mod io;
pub mod kernel;
pub mod norms;
pub mod rng;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
pub use homomorphism::{
    cycle_density_spectral, edge_density, errata_gap, hom_density, ErrataWitness, Motif,
};
pub use kernel::{AdjacencyGraph, BlockSignal, GraphonFamily, StepGraphon, StepKernel};
pub use norms::{
    cut_norm_exact, cut_norm_heuristic, full_norm_report, hs_norm, op_norm_22,
    op_norm_inf1_exact, op_norm_inf1_heuristic, CutCertificate, MethodTag, NormConfig,
    NormReport, SignCertificate,
};
pub use verify::{
    check_cut_norm_lemma, check_operator_norm_lemma, check_proposition, random_step_kernel,
    verify_family, verify_kernel, FamilyKind, FamilyReport, FamilySpec, KernelVerification,
    LemmaReport, WeightMode,
};
