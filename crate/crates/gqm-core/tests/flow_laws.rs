//! Endomorphism and trajectory laws for the shipped flow bindings: every
//! lifted map must preserve joins and bottom, never increase distances,
//! and drive a trajectory whose increments only shrink.

use std::sync::OnceLock;

use gqm_core::carrier::Carrier;
use gqm_core::dynamics::trajectory;
use gqm_core::extdist::ExtDist;
use gqm_core::functors::{build_flow, BuiltFlow, EndoSpec, LatticeSide, SpaceObject};
use gqm_core::with_built_flow;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn elem<C: Carrier>(c: &C, seed: u64) -> C::Elem {
    c.sample(&mut ChaCha8Rng::seed_from_u64(seed))
}

macro_rules! flow_laws {
    ($name:ident, $object:expr, $side:expr, $endo:expr) => {
        mod $name {
            use super::*;

            // One contract-validated build per process; the cases below
            // only exercise it.
            fn built() -> &'static BuiltFlow {
                static B: OnceLock<BuiltFlow> = OnceLock::new();
                B.get_or_init(|| build_flow(&$object, $side, &$endo).unwrap())
            }

            proptest! {
                #[test]
                fn map_preserves_joins_and_bottom(a in any::<u64>(), b in any::<u64>()) {
                    with_built_flow!(built(), |flow| {
                        let c = &**flow.carrier();
                        let x = elem(c, a);
                        let y = elem(c, b);
                        prop_assert_eq!(
                            flow.apply(&c.join(&x, &y)),
                            c.join(&flow.apply(&x), &flow.apply(&y))
                        );
                        prop_assert_eq!(flow.apply(&c.bottom()), c.bottom());
                    });
                }

                #[test]
                fn map_never_increases_distances(a in any::<u64>(), b in any::<u64>()) {
                    with_built_flow!(built(), |flow| {
                        let c = &**flow.carrier();
                        let x = elem(c, a);
                        let y = elem(c, b);
                        prop_assert!(
                            c.dist(&flow.apply(&x), &flow.apply(&y)).le(&c.dist(&x, &y))
                        );
                    });
                }

                #[test]
                fn trajectory_is_a_chain_with_shrinking_increments(a in any::<u64>()) {
                    with_built_flow!(built(), |flow| {
                        let c = &**flow.carrier();
                        let x = elem(c, a);
                        let traj = trajectory(flow, &x, 12).unwrap();
                        let mut prev: Option<ExtDist> = None;
                        for n in 0..12 {
                            prop_assert!(c.dist(&traj[n + 1], &traj[n]).is_zero());
                            let delta = c.dist(&traj[n], &traj[n + 1]);
                            if let Some(p) = &prev {
                                prop_assert!(delta.le(p));
                            }
                            prev = Some(delta);
                        }
                    });
                }
            }
        }
    };
}

flow_laws!(
    doubling_on_subgroups,
    SpaceObject::FiniteAbelian {
        moduli: vec![4, 2]
    },
    LatticeSide::Sum,
    EndoSpec::Matrix {
        rows: vec![vec![2, 0], vec![0, 1]]
    }
);

flow_laws!(
    nilpotent_on_subspaces_meet,
    SpaceObject::FiniteVector { p: 3, dim: 3 },
    LatticeSide::Intersection,
    EndoSpec::Matrix {
        rows: vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]
    }
);

flow_laws!(
    shift_on_group_windows,
    SpaceObject::DirectSumGroup { m: 4 },
    LatticeSide::Sum,
    EndoSpec::Band {
        terms: vec![(1, 1)]
    }
);

flow_laws!(
    two_term_band_on_field_windows,
    SpaceObject::DirectSumField { p: 3 },
    LatticeSide::Sum,
    EndoSpec::Band {
        terms: vec![(-1, 2), (1, 1)]
    }
);

flow_laws!(
    causal_shift_on_profinite_group,
    SpaceObject::ProfiniteGroup { m: 2 },
    LatticeSide::Intersection,
    EndoSpec::CausalBand { coeffs: vec![0, 1] }
);

flow_laws!(
    causal_band_on_profinite_field,
    SpaceObject::ProfiniteField { p: 5 },
    LatticeSide::Intersection,
    EndoSpec::CausalBand { coeffs: vec![2, 1] }
);
