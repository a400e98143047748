#![forbid(unsafe_code)]

//! Exact entropy computations on distance semilattices.
//!
//! The central object is a [`Carrier`](carrier::Carrier): a join-semilattice
//! whose elements also carry a directed distance `d(x, y)` into the
//! nonnegative extended reals. Distances are kept exact at all times (see
//! [`extdist::ExtDist`]); floating point appears only when a report is
//! rendered.
//!
//! On top of a carrier, a [`Flow`](dynamics::Flow) pairs the carrier with a
//! contractive semilattice endomorphism. The [`dynamics`] module computes
//! trajectories, per-element entropy, suprema over probe sets, power-law and
//! conjugacy checks. The [`axioms`] module is a randomized/exhaustive checker
//! for the distance laws a carrier promises.
//!
//! Shipped carriers:
//! * subgroup lattices of finite abelian groups, ordered by sum or by
//!   intersection ([`finite::subgroup`]);
//! * subspace lattices of finite-dimensional spaces over prime fields
//!   ([`finite::subspace`]);
//! * finite subgroups/subspaces of a doubly infinite direct sum, the
//!   "windowed" carriers ([`windowed`]);
//! * open subgroups/subspaces of a countable product, the "profinite"
//!   carriers ([`windowed::profinite`]).
//!
//! The [`functors`] module binds named entropies from the literature
//! (`h_alg`, `h_top`, `ent`, `ent*`, and the intrinsic pair) to a concrete
//! carrier plus a lifted endomorphism.

pub mod axioms;
pub mod carrier;
pub mod crosscheck;
pub mod dynamics;
pub mod extdist;
pub mod finite;
pub mod fixtures;
pub mod functors;
mod intmat;
pub mod oracle;
pub mod windowed;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An element was handed to a carrier it does not belong to.
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    /// Raw input (generators, matrices, moduli) failed validation.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An exhaustive operation would exceed its documented budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    /// A claimed endomorphism failed the flow contract on a sampled witness.
    #[error("flow contract violated: {0}")]
    FlowContract(String),
    /// Entropy was requested at an element with no finite step distance.
    #[error("probe is not inert: {0}")]
    NonInertProbe(String),
    /// A functor kind was bound to an object or endomorphism it cannot act on.
    #[error("incompatible binding: {0}")]
    IncompatibleBinding(String),
}

pub type Result<T> = std::result::Result<T, Error>;
