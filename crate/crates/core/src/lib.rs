//! Exact-arithmetic cohomology and deformation calculus for Leibniz pairs
//! and Poisson algebras.
//!
//! A Leibniz pair is an associative algebra `A` together with a Lie algebra
//! `L` acting on `A` by derivations. The crate materializes the associated
//! double complex (Hochschild in one direction, Chevalley-Eilenberg in the
//! other), computes total-complex cohomology over exact rationals, and runs
//! the order-by-order formal deformation calculus (infinitesimals,
//! equivalences, obstructions, lifts) that the cohomology controls.
//!
//! All coefficients are arbitrary-precision rationals; there is no floating
//! point anywhere in the crate.

pub mod algebra;
pub mod bicomplex;
pub mod cohomology;
pub mod deform;
pub mod input;
pub mod linalg;
pub mod rational;
pub mod samples;

pub use algebra::{
    validate_associative, validate_lie, validate_module, validate_pair, validate_poisson,
    validate_rinehart, AlgebraKind, LeibnizPair, PairModule, PoissonAlgebra, StructureAlgebra,
    Tensor3, ValidationReport, Violation,
};
pub use bicomplex::{
    AugmentedColumn, Bidegree, Branch, Cochain, Complex, DifferentialMatrix, TotalCochain,
};
pub use cohomology::{
    augmented_column_cohomology, total_cohomology, whitehead_compare, BettiTable, WhiteheadReport,
};
pub use deform::{
    apply_equivalence, assemble1, assemble2, defects, disassemble2, exponentiate_derivation,
    infinitesimal_space, is_infinitesimal, is_infinitesimal_automorphism, lift_to_order,
    obstruction, DefectReport, DeformationJet, EquivalenceJet, InfinitesimalReport, JetBase,
    LiftOutcome,
};
pub use input::{parse_document, to_json, InputDocument, ObjectDef};
pub use linalg::{
    kernel_basis, quotient_dim, reduce_mod_subspace, rref, solve, RationalMatrix, RrefResult,
    SubspaceBasis,
};
pub use rational::Rat;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input data: tensor shapes, bad references, unparsable rationals.
    #[error("structural error: {0}")]
    Structural(String),
    /// An internal invariant failed (e.g. the image of a differential is not
    /// contained in the next kernel). Indicates a bug, surfaced loudly.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A precondition of an operation was not met by the caller.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
