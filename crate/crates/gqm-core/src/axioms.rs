//! Law checking for carriers: randomized tuple sampling and exhaustive
//! verification over enumerated element lists.
//!
//! The randomized checker draws an independent random tuple per sample index
//! from its own seeded stream, so results are identical for any worker count
//! and the first counterexample is the one at the smallest index. Monotonicity
//! and chain laws are exercised in constructed form (the hypothesis is forced
//! by taking joins); the exhaustive checker uses the hypothesis form directly
//! since every ordered pair shows up.

use crate::carrier::Carrier;
use crate::extdist::ExtDist;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;

/// The laws a carrier is audited against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    /// `x ∨ x = x`.
    JoinIdempotent,
    /// `x ∨ y = y ∨ x`.
    JoinCommutative,
    /// `(x ∨ y) ∨ z = x ∨ (y ∨ z)`.
    JoinAssociative,
    /// `⊥ ∨ x = x` and `d(x, ⊥) = 0`.
    BottomIdentity,
    /// `d(x, x) = 0`, and `d(x, y) = d(y, x) = 0` forces `x = y`.
    ZeroSeparation,
    /// `d(x, z) <= d(x, y) + d(y, z)`.
    Triangle,
    /// `d(x, y) = d(x, x ∨ y)`.
    JoinAbsorption,
    /// Raising the start lowers the distance: `x <= x'` gives
    /// `d(x', y) <= d(x, y)`.
    StartMonotone,
    /// Raising the target raises the distance: `y <= y'` gives
    /// `d(x, y) <= d(x, y')`.
    TargetMonotone,
    /// `d(x ∨ x', y ∨ y') <= d(x, y) + d(x', y')`.
    JointSubadditive,
    /// Along chains `x <= y <= z` the distance adds exactly:
    /// `d(x, z) = d(x, y) + d(y, z)`. Only audited when the carrier claims it.
    ChainAdditive,
}

impl Law {
    pub const ALL: [Law; 11] = [
        Law::JoinIdempotent,
        Law::JoinCommutative,
        Law::JoinAssociative,
        Law::BottomIdentity,
        Law::ZeroSeparation,
        Law::Triangle,
        Law::JoinAbsorption,
        Law::StartMonotone,
        Law::TargetMonotone,
        Law::JointSubadditive,
        Law::ChainAdditive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::JoinIdempotent => "join_idempotent",
            Law::JoinCommutative => "join_commutative",
            Law::JoinAssociative => "join_associative",
            Law::BottomIdentity => "bottom_identity",
            Law::ZeroSeparation => "zero_separation",
            Law::Triangle => "triangle",
            Law::JoinAbsorption => "join_absorption",
            Law::StartMonotone => "start_monotone",
            Law::TargetMonotone => "target_monotone",
            Law::JointSubadditive => "joint_subadditive",
            Law::ChainAdditive => "chain_additive",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of auditing one law.
#[derive(Clone, Debug)]
pub struct LawResult {
    pub law: Law,
    /// Tuples the law was actually tested on (hypothesis satisfied).
    pub checked: u64,
    pub violations: u64,
    /// Rendered witness for the earliest violation, if any.
    pub first_counterexample: Option<String>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Full audit outcome for one carrier.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub carrier: String,
    /// How the tuples were produced ("sampled ..." or "exhaustive ...").
    pub mode: String,
    pub results: Vec<LawResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(LawResult::passed)
    }

    pub fn total_violations(&self) -> u64 {
        self.results.iter().map(|r| r.violations).sum()
    }

    pub fn result(&self, law: Law) -> Option<&LawResult> {
        self.results.iter().find(|r| r.law == law)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "carrier: {}", self.carrier)?;
        writeln!(f, "mode: {}", self.mode)?;
        for r in &self.results {
            if r.passed() {
                writeln!(f, "  {:<18} ok   ({} checks)", r.law.name(), r.checked)?;
            } else {
                writeln!(
                    f,
                    "  {:<18} FAIL ({} of {} checks): {}",
                    r.law.name(),
                    r.violations,
                    r.checked,
                    r.first_counterexample.as_deref().unwrap_or("")
                )?;
            }
        }
        Ok(())
    }
}

struct Tally {
    violations: u64,
    first: Option<(u64, String)>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            violations: 0,
            first: None,
        }
    }

    fn record(&mut self, index: u64, msg: String) {
        self.violations += 1;
        if self.first.as_ref().is_none_or(|(i, _)| index < *i) {
            self.first = Some((index, msg));
        }
    }
}

fn assemble(
    carrier: String,
    mode: String,
    laws: &[Law],
    checked: impl Fn(Law) -> u64,
    violations: Vec<(u64, Law, String)>,
) -> AxiomReport {
    let mut tallies: Vec<(Law, Tally)> = laws.iter().map(|&l| (l, Tally::new())).collect();
    for (idx, law, msg) in violations {
        if let Some((_, t)) = tallies.iter_mut().find(|(l, _)| *l == law) {
            t.record(idx, msg);
        }
    }
    let results = tallies
        .into_iter()
        .map(|(law, t)| LawResult {
            law,
            checked: checked(law),
            violations: t.violations,
            first_counterexample: t.first.map(|(_, m)| m),
        })
        .collect();
    AxiomReport {
        carrier,
        mode,
        results,
    }
}

/// Check every law on one sampled tuple, constructed-hypothesis style.
fn check_tuple<C: Carrier>(
    c: &C,
    x: &C::Elem,
    y: &C::Elem,
    z: &C::Elem,
    w: &C::Elem,
    chain: bool,
) -> Vec<(Law, String)> {
    let mut out = Vec::new();
    let bot = c.bottom();

    let xx = c.join(x, x);
    if &xx != x {
        out.push((
            Law::JoinIdempotent,
            format!("x ∨ x = {xx} differs from x = {x}"),
        ));
    }

    let xy = c.join(x, y);
    let yx = c.join(y, x);
    if xy != yx {
        out.push((
            Law::JoinCommutative,
            format!("x ∨ y = {xy} but y ∨ x = {yx} for x = {x}, y = {y}"),
        ));
    }

    let left = c.join(&xy, z);
    let right = c.join(x, &c.join(y, z));
    if left != right {
        out.push((
            Law::JoinAssociative,
            format!("(x∨y)∨z = {left} but x∨(y∨z) = {right} for x = {x}, y = {y}, z = {z}"),
        ));
    }

    let bx = c.join(&bot, x);
    let d_x_bot = c.dist(x, &bot);
    if &bx != x || !d_x_bot.is_zero() {
        out.push((
            Law::BottomIdentity,
            format!("⊥ ∨ x = {bx}, d(x, ⊥) = {d_x_bot} for x = {x}"),
        ));
    }

    let dxx = c.dist(x, x);
    if !dxx.is_zero() {
        out.push((Law::ZeroSeparation, format!("d(x, x) = {dxx} for x = {x}")));
    } else {
        let dxy = c.dist(x, y);
        let dyx = c.dist(y, x);
        if dxy.is_zero() && dyx.is_zero() && x != y {
            out.push((
                Law::ZeroSeparation,
                format!("d(x, y) = d(y, x) = 0 but x = {x} differs from y = {y}"),
            ));
        }
    }

    let dxz = c.dist(x, z);
    let via = c.dist(x, y).add(&c.dist(y, z));
    if !dxz.le(&via) {
        out.push((
            Law::Triangle,
            format!("d(x, z) = {dxz} exceeds d(x, y) + d(y, z) = {via} for x = {x}, y = {y}, z = {z}"),
        ));
    }

    let dxy = c.dist(x, y);
    let dxj = c.dist(x, &xy);
    if dxy != dxj {
        out.push((
            Law::JoinAbsorption,
            format!("d(x, y) = {dxy} but d(x, x ∨ y) = {dxj} for x = {x}, y = {y}"),
        ));
    }

    // x' = x ∨ z forces x <= x'.
    let x_up = c.join(x, z);
    let d_up = c.dist(&x_up, y);
    if !d_up.le(&dxy) {
        out.push((
            Law::StartMonotone,
            format!(
                "d(x ∨ z, y) = {d_up} exceeds d(x, y) = {dxy} for x = {x}, y = {y}, z = {z}"
            ),
        ));
    }

    // y' = y ∨ z forces y <= y'.
    let y_up = c.join(y, z);
    let d_to_up = c.dist(x, &y_up);
    if !dxy.le(&d_to_up) {
        out.push((
            Law::TargetMonotone,
            format!(
                "d(x, y) = {dxy} exceeds d(x, y ∨ z) = {d_to_up} for x = {x}, y = {y}, z = {z}"
            ),
        ));
    }

    let dj = c.dist(&c.join(x, z), &c.join(y, w));
    let sum = c.dist(x, y).add(&c.dist(z, w));
    if !dj.le(&sum) {
        out.push((
            Law::JointSubadditive,
            format!(
                "d(x∨x', y∨y') = {dj} exceeds d(x, y) + d(x', y') = {sum} for x = {x}, y = {y}, x' = {z}, y' = {w}"
            ),
        ));
    }

    if chain {
        // a <= b <= c by construction.
        let a = x;
        let b = c.join(x, y);
        let top = c.join(&b, z);
        let d_ac = c.dist(a, &top);
        let parts = c.dist(a, &b).add(&c.dist(&b, &top));
        if d_ac != parts {
            out.push((
                Law::ChainAdditive,
                format!(
                    "d(a, c) = {d_ac} but d(a, b) + d(b, c) = {parts} along a = {a}, b = {b}, c = {top}"
                ),
            ));
        }
    }

    out
}

fn sampled_laws(chain: bool) -> Vec<Law> {
    Law::ALL
        .iter()
        .copied()
        .filter(|&l| chain || l != Law::ChainAdditive)
        .collect()
}

/// Audit a carrier on `samples` independent random tuples.
///
/// Sample `i` is drawn from stream `i` of a [`ChaCha8Rng`] seeded with `seed`,
/// so the report is byte-identical for any rayon worker count.
pub fn check_axioms<C: Carrier>(c: &C, samples: u64, seed: u64) -> AxiomReport {
    let chain = c.flags().order_convex;
    let violations: Vec<(u64, Law, String)> = (0..samples)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let x = c.sample(&mut rng);
            let y = c.sample(&mut rng);
            let z = c.sample(&mut rng);
            let w = c.sample(&mut rng);
            check_tuple(c, &x, &y, &z, &w, chain)
                .into_iter()
                .map(move |(law, msg)| (i, law, msg))
                .collect::<Vec<_>>()
        })
        .collect();
    assemble(
        c.describe(),
        format!("sampled ({samples} tuples, seed {seed})"),
        &sampled_laws(chain),
        |_| samples,
        violations,
    )
}

/// Audit a carrier over an explicit element list: all pairs and triples, plus
/// all quadruples for the joint subadditivity law. Monotonicity and chain
/// laws run in hypothesis form over every tuple that satisfies the premise.
pub fn check_axioms_exhaustive<C: Carrier>(c: &C, elems: &[C::Elem]) -> AxiomReport {
    let chain = c.flags().order_convex;
    let n = elems.len() as u64;
    let bot = c.bottom();
    let mut violations: Vec<(u64, Law, String)> = Vec::new();
    let mut idx: u64 = 0;
    let mut hypothesis_hits = [0u64; 3]; // start_monotone, target_monotone, chain

    // Distance table: d[i][j] = d(elems[i], elems[j]).
    let d: Vec<Vec<ExtDist>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| c.dist(a, b)).collect())
        .collect();
    // leq[i][j]: elems[i] <= elems[j].
    let le: Vec<Vec<bool>> = (0..elems.len())
        .map(|i| (0..elems.len()).map(|j| d[j][i].is_zero()).collect())
        .collect();

    for (i, x) in elems.iter().enumerate() {
        let xx = c.join(x, x);
        if &xx != x {
            violations.push((idx, Law::JoinIdempotent, format!("x ∨ x = {xx} for x = {x}")));
        }
        let bx = c.join(&bot, x);
        if &bx != x {
            violations.push((idx, Law::BottomIdentity, format!("⊥ ∨ x = {bx} for x = {x}")));
        }
        if !c.dist(x, &bot).is_zero() {
            violations.push((
                idx,
                Law::BottomIdentity,
                format!("d(x, ⊥) = {} for x = {x}", c.dist(x, &bot)),
            ));
        }
        if !d[i][i].is_zero() {
            violations.push((
                idx,
                Law::ZeroSeparation,
                format!("d(x, x) = {} for x = {x}", d[i][i]),
            ));
        }
        idx += 1;
    }

    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let xy = c.join(x, y);
            let yx = c.join(y, x);
            if xy != yx {
                violations.push((
                    idx,
                    Law::JoinCommutative,
                    format!("x ∨ y = {xy}, y ∨ x = {yx} for x = {x}, y = {y}"),
                ));
            }
            if d[i][j].is_zero() && d[j][i].is_zero() && x != y {
                violations.push((
                    idx,
                    Law::ZeroSeparation,
                    format!("d(x, y) = d(y, x) = 0 but x = {x} differs from y = {y}"),
                ));
            }
            let dxj = c.dist(x, &xy);
            if d[i][j] != dxj {
                violations.push((
                    idx,
                    Law::JoinAbsorption,
                    format!("d(x, y) = {} but d(x, x ∨ y) = {dxj} for x = {x}, y = {y}", d[i][j]),
                ));
            }
            idx += 1;
        }
    }

    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            for (k, z) in elems.iter().enumerate() {
                let left = c.join(&c.join(x, y), z);
                let right = c.join(x, &c.join(y, z));
                if left != right {
                    violations.push((
                        idx,
                        Law::JoinAssociative,
                        format!(
                            "(x∨y)∨z = {left}, x∨(y∨z) = {right} for x = {x}, y = {y}, z = {z}"
                        ),
                    ));
                }
                let via = d[i][j].add(&d[j][k]);
                if !d[i][k].le(&via) {
                    violations.push((
                        idx,
                        Law::Triangle,
                        format!(
                            "d(x, z) = {} exceeds d(x, y) + d(y, z) = {via} for x = {x}, y = {y}, z = {z}",
                            d[i][k]
                        ),
                    ));
                }
                // x <= y: d(y, z) <= d(x, z).
                if le[i][j] {
                    hypothesis_hits[0] += 1;
                    if !d[j][k].le(&d[i][k]) {
                        violations.push((
                            idx,
                            Law::StartMonotone,
                            format!(
                                "x <= x' but d(x', y) = {} exceeds d(x, y) = {} for x = {x}, x' = {y}, y = {z}",
                                d[j][k], d[i][k]
                            ),
                        ));
                    }
                    // z -> x -> y with x <= y: d(z, x) <= d(z, y).
                    hypothesis_hits[1] += 1;
                    if !d[k][i].le(&d[k][j]) {
                        violations.push((
                            idx,
                            Law::TargetMonotone,
                            format!(
                                "y <= y' but d(x, y) = {} exceeds d(x, y') = {} for x = {z}, y = {x}, y' = {y}",
                                d[k][i], d[k][j]
                            ),
                        ));
                    }
                }
                if chain && le[i][j] && le[j][k] {
                    hypothesis_hits[2] += 1;
                    let parts = d[i][j].add(&d[j][k]);
                    if d[i][k] != parts {
                        violations.push((
                            idx,
                            Law::ChainAdditive,
                            format!(
                                "d(a, c) = {} but d(a, b) + d(b, c) = {parts} along a = {x}, b = {y}, c = {z}",
                                d[i][k]
                            ),
                        ));
                    }
                }
                idx += 1;
            }
        }
    }

    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            for (k, xp) in elems.iter().enumerate() {
                for (l, yp) in elems.iter().enumerate() {
                    let dj = c.dist(&c.join(x, xp), &c.join(y, yp));
                    let sum = d[i][j].add(&d[k][l]);
                    if !dj.le(&sum) {
                        violations.push((
                            idx,
                            Law::JointSubadditive,
                            format!(
                                "d(x∨x', y∨y') = {dj} exceeds d(x, y) + d(x', y') = {sum} for x = {x}, y = {y}, x' = {xp}, y' = {yp}"
                            ),
                        ));
                    }
                    idx += 1;
                }
            }
        }
    }

    let n2 = n * n;
    let n3 = n2 * n;
    let n4 = n3 * n;
    assemble(
        c.describe(),
        format!("exhaustive ({n} elements)"),
        &sampled_laws(chain),
        |law| match law {
            Law::JoinIdempotent | Law::BottomIdentity => n,
            Law::JoinCommutative | Law::JoinAbsorption | Law::ZeroSeparation => n2,
            Law::JoinAssociative | Law::Triangle => n3,
            Law::StartMonotone => hypothesis_hits[0],
            Law::TargetMonotone => hypothesis_hits[1],
            Law::ChainAdditive => hypothesis_hits[2],
            Law::JointSubadditive => n4,
        },
        violations,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::subgroup::SubgroupSumCarrier;
    use crate::finite::subspace::SubspaceMeetCarrier;
    use crate::finite::{enumerate_subgroups, FiniteAbelianGroup, VectorSpace};

    #[test]
    fn sampled_audit_passes_on_subgroup_carrier() {
        let c = SubgroupSumCarrier::new(FiniteAbelianGroup::new(vec![4, 2]).unwrap());
        let report = check_axioms(&c, 300, 7);
        assert!(report.passed(), "{report}");
        // Order-convex carrier: the chain law must be present.
        assert!(report.result(Law::ChainAdditive).is_some());
    }

    #[test]
    fn exhaustive_audit_passes_on_small_carriers() {
        let g = FiniteAbelianGroup::new(vec![4, 2]).unwrap();
        let subs = enumerate_subgroups(&g, 1 << 16).unwrap();
        let c = SubgroupSumCarrier::new(g);
        let report = check_axioms_exhaustive(&c, &subs);
        assert!(report.passed(), "{report}");
        // Each of the 8 subgroups is comparable to itself and to the ends.
        assert!(report.result(Law::ChainAdditive).unwrap().checked >= 8);
    }

    #[test]
    fn sampled_audit_passes_on_meet_carrier() {
        let c = SubspaceMeetCarrier::new(VectorSpace::new(2, 3).unwrap());
        let report = check_axioms(&c, 300, 11);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn report_is_stable_across_worker_counts() {
        let c = SubgroupSumCarrier::new(FiniteAbelianGroup::new(vec![6]).unwrap());
        let base = format!("{}", check_axioms(&c, 200, 3));
        for workers in [1usize, 2, 8] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .unwrap();
            let got = pool.install(|| format!("{}", check_axioms(&c, 200, 3)));
            assert_eq!(got, base, "worker count {workers}");
        }
    }
}
