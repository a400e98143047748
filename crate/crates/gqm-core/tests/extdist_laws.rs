//! Arithmetic laws of the exact distance values: an ordered commutative
//! monoid saturating at infinity, with `log` and `dim` unit systems that
//! are never silently mixed.

use std::cmp::Ordering;

use gqm_core::extdist::ExtDist;
use num_bigint::BigUint;
use proptest::prelude::*;

fn log_valued() -> impl Strategy<Value = ExtDist> {
    prop_oneof![
        1 => Just(ExtDist::Infinite),
        7 => (1u64..1 << 40).prop_map(ExtDist::log_int),
    ]
}

fn dim_valued() -> impl Strategy<Value = ExtDist> {
    prop_oneof![
        1 => Just(ExtDist::Infinite),
        7 => (0u64..1 << 32).prop_map(ExtDist::dim),
    ]
}

macro_rules! monoid_laws {
    ($name:ident, $arb:expr, $zero:expr) => {
        mod $name {
            use super::*;

            proptest! {
                #[test]
                fn add_is_commutative(a in $arb, b in $arb) {
                    prop_assert_eq!(a.add(&b), b.add(&a));
                }

                #[test]
                fn add_is_associative(a in $arb, b in $arb, c in $arb) {
                    prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                }

                #[test]
                fn zero_is_neutral(a in $arb) {
                    prop_assert_eq!($zero.add(&a), a);
                }

                #[test]
                fn add_is_monotone(a in $arb, b in $arb, c in $arb) {
                    if a.le(&b) {
                        prop_assert!(a.add(&c).le(&b.add(&c)));
                    }
                }

                #[test]
                fn times_is_iterated_add(a in $arb, k in 0u64..6) {
                    let mut sum = $zero;
                    for _ in 0..k {
                        sum = sum.add(&a);
                    }
                    // An empty sum is the log-unit zero; both zeros compare
                    // equal, so compare by order rather than representation.
                    prop_assert_eq!(a.times(k).cmp_same_unit(&sum), Ordering::Equal);
                }

                #[test]
                fn infinity_saturates_and_dominates(a in $arb) {
                    prop_assert_eq!(a.add(&ExtDist::Infinite), ExtDist::Infinite);
                    prop_assert!(a.le(&ExtDist::Infinite));
                    if a != ExtDist::Infinite {
                        prop_assert_eq!(
                            a.cmp_same_unit(&ExtDist::Infinite),
                            Ordering::Less
                        );
                    }
                }

                #[test]
                fn order_is_total_and_antisymmetric(a in $arb, b in $arb) {
                    match a.cmp_same_unit(&b) {
                        Ordering::Less => prop_assert_eq!(b.cmp_same_unit(&a), Ordering::Greater),
                        Ordering::Greater => prop_assert_eq!(b.cmp_same_unit(&a), Ordering::Less),
                        Ordering::Equal => prop_assert_eq!(b.cmp_same_unit(&a), Ordering::Equal),
                    }
                }
            }
        }
    };
}

monoid_laws!(log_units, log_valued(), ExtDist::zero());
monoid_laws!(dim_units, dim_valued(), ExtDist::zero_dim());

proptest! {
    #[test]
    fn log_turns_products_into_sums(a in 1u64..1 << 32, b in 1u64..1 << 32) {
        prop_assert_eq!(
            ExtDist::log_int(a).add(&ExtDist::log_int(b)),
            ExtDist::log_big(BigUint::from(a) * BigUint::from(b))
        );
    }

    #[test]
    fn log_embeds_the_integer_order(a in 1u64..1 << 40, b in 1u64..1 << 40) {
        prop_assert_eq!(a <= b, ExtDist::log_int(a).le(&ExtDist::log_int(b)));
    }

    #[test]
    fn dim_embeds_the_integer_order_additively(a in 0u64..1 << 31, b in 0u64..1 << 31) {
        prop_assert_eq!(
            ExtDist::dim(a).add(&ExtDist::dim(b)),
            ExtDist::dim(a + b)
        );
        prop_assert_eq!(a <= b, ExtDist::dim(a).le(&ExtDist::dim(b)));
    }

    // Rendering is the one place floats appear; pin it to the exact value
    // within f64 rounding (1e-12 relative).
    #[test]
    fn rendering_matches_the_exact_value(a in 1u64..1 << 40, n in 0u64..1 << 20) {
        let log = ExtDist::log_int(a).to_nats();
        prop_assert!((log - (a as f64).ln()).abs() <= 1e-12 * log.max(1.0));
        prop_assert_eq!(ExtDist::dim(n).to_nats(), n as f64);
        prop_assert_eq!(ExtDist::Infinite.to_nats(), f64::INFINITY);
    }
}

#[test]
fn the_two_zeros_agree() {
    assert!(ExtDist::zero().is_zero() && ExtDist::zero_dim().is_zero());
    assert_eq!(
        ExtDist::zero().cmp_same_unit(&ExtDist::zero_dim()),
        Ordering::Equal
    );
}
