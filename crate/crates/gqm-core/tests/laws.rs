//! Distance and join laws as property tests, instantiated for every
//! shipped carrier through one macro.
//!
//! Elements are drawn through the carrier's own sampler from a seed the
//! framework controls, so failures shrink toward small seeds (and small
//! sampler draws) while staying inside the carrier's invariants.

use gqm_core::carrier::Carrier;
use gqm_core::finite::{
    FiniteAbelianGroup, SubgroupMeetCarrier, SubgroupSumCarrier, SubspaceMeetCarrier,
    SubspaceSumCarrier, VectorSpace,
};
use gqm_core::windowed::profinite::{FieldProfiniteCarrier, GroupProfiniteCarrier};
use gqm_core::windowed::{FieldWindowCarrier, GroupWindowCarrier};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn elem<C: Carrier>(c: &C, seed: u64) -> C::Elem {
    c.sample(&mut ChaCha8Rng::seed_from_u64(seed))
}

macro_rules! carrier_laws {
    ($name:ident, $carrier:expr) => {
        mod $name {
            use super::*;

            fn k() -> impl Carrier {
                $carrier
            }

            proptest! {
                #[test]
                fn join_is_idempotent(a in any::<u64>()) {
                    let c = k();
                    let x = elem(&c, a);
                    prop_assert_eq!(c.join(&x, &x), x);
                }

                #[test]
                fn join_is_commutative(a in any::<u64>(), b in any::<u64>()) {
                    let c = k();
                    let x = elem(&c, a);
                    let y = elem(&c, b);
                    prop_assert_eq!(c.join(&x, &y), c.join(&y, &x));
                }

                #[test]
                fn join_is_associative(a in any::<u64>(), b in any::<u64>(), e in any::<u64>()) {
                    let c = k();
                    let x = elem(&c, a);
                    let y = elem(&c, b);
                    let z = elem(&c, e);
                    prop_assert_eq!(
                        c.join(&c.join(&x, &y), &z),
                        c.join(&x, &c.join(&y, &z))
                    );
                }

                #[test]
                fn bottom_is_neutral_and_at_distance_zero(a in any::<u64>()) {
                    let c = k();
                    let x = elem(&c, a);
                    prop_assert_eq!(c.join(&c.bottom(), &x), x.clone());
                    prop_assert!(c.dist(&x, &c.bottom()).is_zero());
                }

                #[test]
                fn distance_separates_points(a in any::<u64>(), b in any::<u64>()) {
                    let c = k();
                    let x = elem(&c, a);
                    let y = elem(&c, b);
                    prop_assert!(c.dist(&x, &x).is_zero());
                    if c.dist(&x, &y).is_zero() && c.dist(&y, &x).is_zero() {
                        prop_assert_eq!(x, y);
                    }
                }

                #[test]
                fn triangle_inequality(a in any::<u64>(), b in any::<u64>(), e in any::<u64>()) {
                    let c = k();
                    let x = elem(&c, a);
                    let y = elem(&c, b);
                    let z = elem(&c, e);
                    prop_assert!(c.dist(&x, &z).le(&c.dist(&x, &y).add(&c.dist(&y, &z))));
                }

                #[test]
                fn join_absorbs_the_target(a in any::<u64>(), b in any::<u64>()) {
                    let c = k();
                    let x = elem(&c, a);
                    let y = elem(&c, b);
                    prop_assert_eq!(c.dist(&x, &y), c.dist(&x, &c.join(&x, &y)));
                }

                #[test]
                fn raising_the_start_shrinks_the_distance(
                    a in any::<u64>(), b in any::<u64>(), e in any::<u64>()
                ) {
                    let c = k();
                    let x = elem(&c, a);
                    let y = elem(&c, b);
                    let x_up = c.join(&x, &elem(&c, e));
                    prop_assert!(c.dist(&x_up, &y).le(&c.dist(&x, &y)));
                }

                #[test]
                fn raising_the_target_grows_the_distance(
                    a in any::<u64>(), b in any::<u64>(), e in any::<u64>()
                ) {
                    let c = k();
                    let x = elem(&c, a);
                    let y = elem(&c, b);
                    let y_up = c.join(&y, &elem(&c, e));
                    prop_assert!(c.dist(&x, &y).le(&c.dist(&x, &y_up)));
                }

                #[test]
                fn distance_of_joins_is_subadditive(
                    a in any::<u64>(), b in any::<u64>(), e in any::<u64>(), f in any::<u64>()
                ) {
                    let c = k();
                    let x = elem(&c, a);
                    let y = elem(&c, b);
                    let u = elem(&c, e);
                    let v = elem(&c, f);
                    prop_assert!(
                        c.dist(&c.join(&x, &u), &c.join(&y, &v))
                            .le(&c.dist(&x, &y).add(&c.dist(&u, &v)))
                    );
                }

                #[test]
                fn distance_adds_along_chains(
                    a in any::<u64>(), b in any::<u64>(), e in any::<u64>()
                ) {
                    let c = k();
                    let x = elem(&c, a);
                    let mid = c.join(&x, &elem(&c, b));
                    let top = c.join(&mid, &elem(&c, e));
                    prop_assert_eq!(
                        c.dist(&x, &top),
                        c.dist(&x, &mid).add(&c.dist(&mid, &top))
                    );
                }
            }
        }
    };
}

fn z4z2() -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(vec![4, 2]).unwrap()
}

fn z12z2() -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(vec![12, 2]).unwrap()
}

carrier_laws!(subgroup_sum_z4z2, SubgroupSumCarrier::new(z4z2()));
carrier_laws!(subgroup_meet_z4z2, SubgroupMeetCarrier::new(z4z2()));
carrier_laws!(subgroup_sum_z12z2, SubgroupSumCarrier::new(z12z2()));
carrier_laws!(
    subspace_sum_f3_4,
    SubspaceSumCarrier::new(VectorSpace::new(3, 4).unwrap())
);
carrier_laws!(
    subspace_meet_f2_5,
    SubspaceMeetCarrier::new(VectorSpace::new(2, 5).unwrap())
);
carrier_laws!(window_group_z6, GroupWindowCarrier::new(6).unwrap());
carrier_laws!(window_field_f5, FieldWindowCarrier::new(5).unwrap());
carrier_laws!(profinite_group_z4, GroupProfiniteCarrier::new(4).unwrap());
carrier_laws!(profinite_field_f3, FieldProfiniteCarrier::new(3).unwrap());
