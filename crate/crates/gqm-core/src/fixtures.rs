//! Deliberately broken and adapted carriers for negative-control runs.
//!
//! A healthy test suite needs a subject that is known bad: the corrupted
//! carrier here reports distance zero between the trivial subgroup and the
//! full group of `Z/4 x Z/2` in both directions, which no separating distance
//! can do. Audits run against it must fail, and anything downstream that
//! trusts zero distances (order queries, plateau detection) inherits the
//! breakage in a controlled way.
//!
//! The flags adapter wraps an honest carrier but understates its promises,
//! forcing consumers onto their conservative code paths (general bounds
//! instead of plateau detection).

use crate::carrier::{Carrier, CarrierFlags};
use crate::extdist::ExtDist;
use crate::finite::{FiniteAbelianGroup, SubgroupRep, SubgroupSumCarrier};
use rand::RngCore;

/// The subgroup-sum carrier of `Z/4 x Z/2` with the distance between the
/// trivial subgroup and the full group forced to zero in both directions.
#[derive(Clone, Debug)]
pub struct CorruptedZ4Z2Carrier {
    inner: SubgroupSumCarrier,
    full: SubgroupRep,
}

impl CorruptedZ4Z2Carrier {
    pub fn new() -> Self {
        let group = FiniteAbelianGroup::new(vec![4, 2]).expect("fixed moduli");
        let full = SubgroupRep::full(&group);
        CorruptedZ4Z2Carrier {
            inner: SubgroupSumCarrier::new(group),
            full,
        }
    }

    fn pinned(&self, x: &SubgroupRep, y: &SubgroupRep) -> bool {
        (x.is_trivial() && y == &self.full) || (x == &self.full && y.is_trivial())
    }
}

impl Default for CorruptedZ4Z2Carrier {
    fn default() -> Self {
        CorruptedZ4Z2Carrier::new()
    }
}

impl Carrier for CorruptedZ4Z2Carrier {
    type Elem = SubgroupRep;

    fn describe(&self) -> String {
        format!("{} with corrupted trivial/full distance", self.inner.describe())
    }

    fn bottom(&self) -> SubgroupRep {
        self.inner.bottom()
    }

    fn join(&self, x: &SubgroupRep, y: &SubgroupRep) -> SubgroupRep {
        self.inner.join(x, y)
    }

    fn dist(&self, x: &SubgroupRep, y: &SubgroupRep) -> ExtDist {
        if self.pinned(x, y) {
            ExtDist::zero()
        } else {
            self.inner.dist(x, y)
        }
    }

    fn contains(&self, x: &SubgroupRep) -> bool {
        self.inner.contains(x)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> SubgroupRep {
        self.inner.sample(rng)
    }

    fn flags(&self) -> CarrierFlags {
        // Keeps the honest carrier's claims; the audit is what catches them.
        self.inner.flags()
    }
}

/// An honest carrier with its capability flags replaced.
#[derive(Clone, Debug)]
pub struct OverrideFlags<C: Carrier> {
    inner: C,
    flags: CarrierFlags,
}

impl<C: Carrier> OverrideFlags<C> {
    pub fn new(inner: C, flags: CarrierFlags) -> Self {
        OverrideFlags { inner, flags }
    }

    pub fn inner(&self) -> &C {
        &self.inner
    }
}

/// Drop the plateau guarantees (chain additivity, well-ordered values) from a
/// carrier so consumers fall back to their general-bound paths.
pub fn strip_stabilization_promises<C: Carrier>(inner: C) -> OverrideFlags<C> {
    let finite_valued = inner.flags().finite_valued;
    OverrideFlags::new(
        inner,
        CarrierFlags {
            order_convex: false,
            finite_valued,
            well_ordered_values: false,
        },
    )
}

impl<C: Carrier> Carrier for OverrideFlags<C> {
    type Elem = C::Elem;

    fn describe(&self) -> String {
        format!("{} (flags overridden)", self.inner.describe())
    }

    fn bottom(&self) -> Self::Elem {
        self.inner.bottom()
    }

    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.inner.join(x, y)
    }

    fn dist(&self, x: &Self::Elem, y: &Self::Elem) -> ExtDist {
        self.inner.dist(x, y)
    }

    fn contains(&self, x: &Self::Elem) -> bool {
        self.inner.contains(x)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        self.inner.sample(rng)
    }

    fn flags(&self) -> CarrierFlags {
        self.flags
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_axioms, Law};

    #[test]
    fn corrupted_carrier_fails_zero_separation() {
        let c = CorruptedZ4Z2Carrier::new();
        let report = check_axioms(&c, 500, 1);
        assert!(!report.passed());
        let zs = report.result(Law::ZeroSeparation).unwrap();
        assert!(zs.violations > 0, "{report}");
        assert!(zs.first_counterexample.is_some());
    }

    #[test]
    fn uncorrupted_pairs_keep_their_distance() {
        let c = CorruptedZ4Z2Carrier::new();
        let h = SubgroupRep::from_generators(&FiniteAbelianGroup::new(vec![4, 2]).unwrap(), &[
            vec![2, 0],
        ])
        .unwrap();
        assert_eq!(c.dist(&h, &c.bottom()), ExtDist::zero());
        assert_eq!(c.dist(&c.bottom(), &h), ExtDist::log_int(2));
    }

    #[test]
    fn flag_stripping_keeps_the_distance() {
        let inner = SubgroupSumCarrier::new(FiniteAbelianGroup::new(vec![4, 2]).unwrap());
        let stripped = strip_stabilization_promises(inner.clone());
        assert!(!stripped.flags().order_convex);
        assert!(!stripped.flags().well_ordered_values);
        assert!(stripped.flags().finite_valued);
        let x = stripped.bottom();
        assert_eq!(stripped.dist(&x, &x), inner.dist(&x, &x));
    }
}
