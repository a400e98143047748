//! Carriers built from finite objects: subgroup lattices of finite abelian
//! groups and subspace lattices of finite-dimensional prime-field spaces.
//!
//! Each lattice yields two carriers. In the sum-ordered carrier the
//! semilattice join is `H + K` and the distance is the log of the index
//! `[H + K : H]`; in the intersection-ordered carrier the join is `H ∩ K`,
//! bottom is the whole object, and the distance is the log of `[H : H ∩ K]`
//! (dimension differences in the field case). All four are finite-valued,
//! order convex, and have well-ordered value sets.

pub mod enumerate;
pub mod subgroup;
pub mod subspace;

pub use enumerate::{enumerate_endomorphisms, enumerate_subgroups, enumerate_subspaces};
pub use subgroup::{
    FiniteAbelianGroup, GroupHom, SubgroupMeetCarrier, SubgroupRep, SubgroupSumCarrier,
};
pub use subspace::{
    LinMap, SubspaceMeetCarrier, SubspaceRep, SubspaceSumCarrier, VectorSpace,
};

/// Largest modulus a group coordinate may have. Keeps all `i128` paths in the
/// lattice arithmetic comfortably inside their overflow bounds.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// Largest number of coordinates (group rank / vector space dimension).
pub const MAX_RANK: usize = 192;
