//! The carrier contract: a join-semilattice with a directed distance.
//!
//! A carrier provides `bottom`, a binary `join`, and a directed distance
//! `dist(x, y)` into [`ExtDist`]. The laws a well-behaved carrier promises
//! (zero separation, triangle, join absorption, monotonicity, joint
//! subadditivity, optional chain additivity) are not assumed here; they are
//! checked by the [`axioms`](crate::axioms) module against whatever the
//! carrier actually computes.
//!
//! Elements are canonical by construction: two elements are equal iff their
//! representations are identical, and every operation returns canonical
//! output. The derived order is read off the distance: `x <= y` iff
//! `dist(y, x) = 0`.

use crate::extdist::ExtDist;
use crate::{Error, Result};
use rand::RngCore;
use std::fmt::{Debug, Display};

/// Capability flags a carrier declares about its distance.
///
/// Flags are promises, not observations; the axiom checker audits them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CarrierFlags {
    /// Along any chain `x <= y <= z` the distance is additive:
    /// `d(x, z) = d(x, y) + d(y, z)`.
    pub order_convex: bool,
    /// The distance never takes the value infinity.
    pub finite_valued: bool,
    /// The set of values the distance takes is well ordered, so a
    /// non-increasing sequence of distances is eventually constant.
    pub well_ordered_values: bool,
}

/// A join-semilattice with bottom and a directed distance.
pub trait Carrier: Send + Sync {
    /// Canonical element representation. `Ord` must be a total order on
    /// canonical forms; it fixes every deterministic iteration order in the
    /// crate (probe closures, report listings, tie breaks).
    type Elem: Clone + Eq + Ord + Debug + Display + Send + Sync + 'static;

    /// A short human-readable description ("subgroups of Z/4 x Z/2 by sum").
    fn describe(&self) -> String;

    /// The least element.
    fn bottom(&self) -> Self::Elem;

    /// Least upper bound. Both inputs must belong to this carrier.
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// Directed distance from `x` to `y`.
    fn dist(&self, x: &Self::Elem, y: &Self::Elem) -> ExtDist;

    /// Whether `x` is an element of this carrier instance (parameters match
    /// and the representation is canonical).
    fn contains(&self, x: &Self::Elem) -> bool;

    /// Draw one element. The distribution is carrier-specific but bounded
    /// (small generator budgets), and depends only on the bytes drawn from
    /// `rng`, never on global state.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Declared capabilities.
    fn flags(&self) -> CarrierFlags;

    /// Membership check that reports a typed error with context.
    fn check_member(&self, x: &Self::Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch(format!(
                "element {x} does not belong to carrier ({})",
                self.describe()
            )))
        }
    }
}

/// `x <= y` in the order induced by the distance: `dist(y, x) = 0`.
pub fn leq<C: Carrier>(carrier: &C, x: &C::Elem, y: &C::Elem) -> Result<bool> {
    carrier.check_member(x)?;
    carrier.check_member(y)?;
    Ok(carrier.dist(y, x).is_zero())
}

/// `x` and `y` are close: both directed distances are finite.
pub fn close<C: Carrier>(carrier: &C, x: &C::Elem, y: &C::Elem) -> Result<bool> {
    carrier.check_member(x)?;
    carrier.check_member(y)?;
    Ok(carrier.dist(x, y).is_finite() && carrier.dist(y, x).is_finite())
}

/// `x` lies at finite distance from bottom, i.e. `dist(bottom, x)` is finite.
/// (The other direction is zero by the carrier laws, so this is exactly
/// closeness to bottom.)
pub fn close_to_bottom<C: Carrier>(carrier: &C, x: &C::Elem) -> Result<bool> {
    carrier.check_member(x)?;
    Ok(carrier.dist(&carrier.bottom(), x).is_finite())
}
