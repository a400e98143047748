//! Brute-force cross-checks of the representation-level arithmetic.
//!
//! Every carrier in this crate computes joins, distances, and lifted maps on
//! compact representations (generator matrices, window bodies, cylinder
//! bodies). The functions here redo those computations by enumerating actual
//! element sets and report every disagreement. The enumeration route shares
//! no arithmetic with the fast route beyond elementwise vector addition, so
//! a bug in the matrix code cannot hide by cancelling itself out.

use crate::carrier::Carrier;
use crate::dynamics::{entropy_at, EntropyConfig, EntropyReport, Flow};
use crate::extdist::ExtDist;
use crate::finite::{
    enumerate_subgroups, enumerate_subspaces, FiniteAbelianGroup, GroupHom, LinMap,
    SubgroupMeetCarrier, SubgroupRep, SubgroupSumCarrier, SubspaceMeetCarrier, SubspaceRep,
    SubspaceSumCarrier, VectorSpace,
};
use crate::oracle::{set_of_subgroup, set_of_subspace, ElemSet};
use crate::windowed::profinite::{BandedCausalEndo, OpenSubgroup, ProfiniteCarrier};
use crate::windowed::{
    window_as_box_subgroup, window_as_box_subspace, BandedEndo, Block, WindowCarrier,
    WindowElement,
};
use crate::Result;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Tally for one kind of comparison.
#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: &'static str,
    pub checked: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<String>,
}

impl CheckItem {
    fn new(name: &'static str) -> CheckItem {
        CheckItem {
            name,
            checked: 0,
            mismatches: 0,
            first_mismatch: None,
        }
    }

    fn note(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.mismatches += 1;
            if self.first_mismatch.is_none() {
                self.first_mismatch = Some(msg());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Outcome of one cross-check run.
#[derive(Clone, Debug)]
pub struct CrosscheckReport {
    pub carrier: String,
    pub items: Vec<CheckItem>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(CheckItem::passed)
    }

    pub fn total_checked(&self) -> u64 {
        self.items.iter().map(|i| i.checked).sum()
    }

    pub fn total_mismatches(&self) -> u64 {
        self.items.iter().map(|i| i.mismatches).sum()
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

impl fmt::Display for CrosscheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cross-check against element enumeration: {}", self.carrier)?;
        for item in &self.items {
            if item.passed() {
                writeln!(f, "  {} ok ({} checks)", item.name, item.checked)?;
            } else {
                writeln!(
                    f,
                    "  {} MISMATCH ({} of {}): {}",
                    item.name,
                    item.mismatches,
                    item.checked,
                    item.first_mismatch.as_deref().unwrap_or("")
                )?;
            }
        }
        Ok(())
    }
}

fn set_eq(a: &ElemSet, b: &ElemSet) -> bool {
    a.len() == b.len() && a.iter().all(|v| b.contains(v))
}

fn same_entropy<E: fmt::Display + Eq>(a: &EntropyReport<E>, b: &EntropyReport<E>) -> bool {
    a.value == b.value && a.n_used == b.n_used && a.deltas == b.deltas && a.method == b.method
}

/// Compare subgroup arithmetic on a finite abelian group against element
/// enumeration: joins, meets, both distance conventions, and (when an
/// endomorphism is given) image, preimage, and whole entropy ladders on both
/// carrier orders. `elem_budget` bounds every enumerated set.
pub fn crosscheck_subgroups(
    group: &FiniteAbelianGroup,
    endo: Option<&GroupHom>,
    elem_budget: u64,
) -> Result<CrosscheckReport> {
    let budget = elem_budget as usize;
    let subs = enumerate_subgroups(group, elem_budget)?;
    let sets: Vec<ElemSet> = subs
        .iter()
        .map(|r| set_of_subgroup(r, budget))
        .collect::<Result<_>>()?;

    let mut join_item = CheckItem::new("join_sum");
    let mut meet_item = CheckItem::new("meet_intersection");
    let mut dsum_item = CheckItem::new("sum_distance");
    let mut dmeet_item = CheckItem::new("meet_distance");

    let csum = SubgroupSumCarrier::new(group.clone());
    let cmeet = SubgroupMeetCarrier::new(group.clone());
    for (i, x) in subs.iter().enumerate() {
        for (j, y) in subs.iter().enumerate() {
            let sum_rep = x.sum(y);
            let sum_set = sets[i].sum(&sets[j], budget)?;
            join_item.note(set_eq(&set_of_subgroup(&sum_rep, budget)?, &sum_set), || {
                format!("{x} + {y} gave {sum_rep}")
            });

            let meet_rep = x.intersect(y);
            let meet_set = sets[i].intersect(&sets[j]);
            meet_item.note(
                set_eq(&set_of_subgroup(&meet_rep, budget)?, &meet_set),
                || format!("{x} ∩ {y} gave {meet_rep}"),
            );

            let fast = csum.dist(x, y);
            let slow = sets[i].log_index_in(&sum_set);
            dsum_item.note(fast == slow, || format!("d_sum({x},{y}) = {fast} vs {slow}"));

            let fast = cmeet.dist(x, y);
            let slow = meet_set.log_index_in(&sets[i]);
            dmeet_item.note(fast == slow, || format!("d_meet({x},{y}) = {fast} vs {slow}"));
        }
    }

    let mut items = vec![join_item, meet_item, dsum_item, dmeet_item];

    if let Some(h) = endo {
        let full = ElemSet::full_box(group.moduli(), budget)?;
        let mut image_item = CheckItem::new("image");
        let mut preimage_item = CheckItem::new("preimage");
        for (i, x) in subs.iter().enumerate() {
            let fast = h.image(x);
            let slow = sets[i].image(group.moduli(), |v| h.apply_vec(v), budget)?;
            image_item.note(set_eq(&set_of_subgroup(&fast, budget)?, &slow), || {
                format!("image of {x} gave {fast}")
            });

            let fast = h.preimage(x);
            let slow = sets[i].preimage_from(&full, |v| h.apply_vec(v));
            preimage_item.note(set_eq(&set_of_subgroup(&fast, budget)?, &slow), || {
                format!("preimage of {x} gave {fast}")
            });
        }
        items.push(image_item);
        items.push(preimage_item);

        // Entropy ladders through a flow whose endomorphism routes every
        // image through element enumeration instead of matrix arithmetic.
        let cfg = EntropyConfig::default();
        let mut ent_sum = CheckItem::new("entropy_sum");
        {
            let carrier = Arc::new(csum.clone());
            let hf = h.clone();
            let fast_flow = Flow::new(
                carrier.clone(),
                "fast",
                Arc::new(move |x: &SubgroupRep| hf.image(x)),
            )?;
            let hs = h.clone();
            let grp = group.clone();
            let slow_flow = Flow::new(
                carrier,
                "enumerated",
                Arc::new(move |x: &SubgroupRep| {
                    let set = set_of_subgroup(x, budget).expect("within budget");
                    let img = set
                        .image(grp.moduli(), |v| hs.apply_vec(v), budget)
                        .expect("within budget");
                    let elems: Vec<Vec<u64>> = img.iter().cloned().collect();
                    SubgroupRep::from_generators(&grp, &elems).expect("members of the group")
                }),
            )?;
            for x in &subs {
                let a = entropy_at(&fast_flow, x, &cfg)?;
                let b = entropy_at(&slow_flow, x, &cfg)?;
                ent_sum.note(same_entropy(&a, &b), || {
                    format!("entropy at {x}: {} vs {}", a.value, b.value)
                });
            }
        }
        items.push(ent_sum);

        let mut ent_meet = CheckItem::new("entropy_meet");
        {
            let carrier = Arc::new(cmeet.clone());
            let hf = h.clone();
            let fast_flow = Flow::new(
                carrier.clone(),
                "fast",
                Arc::new(move |x: &SubgroupRep| hf.preimage(x)),
            )?;
            let hs = h.clone();
            let grp = group.clone();
            let slow_flow = Flow::new(
                carrier,
                "enumerated",
                Arc::new(move |x: &SubgroupRep| {
                    let full = ElemSet::full_box(grp.moduli(), budget).expect("within budget");
                    let set = set_of_subgroup(x, budget).expect("within budget");
                    let pre = set.preimage_from(&full, |v| hs.apply_vec(v));
                    let elems: Vec<Vec<u64>> = pre.iter().cloned().collect();
                    SubgroupRep::from_generators(&grp, &elems).expect("members of the group")
                }),
            )?;
            for x in &subs {
                let a = entropy_at(&fast_flow, x, &cfg)?;
                let b = entropy_at(&slow_flow, x, &cfg)?;
                ent_meet.note(same_entropy(&a, &b), || {
                    format!("entropy at {x}: {} vs {}", a.value, b.value)
                });
            }
        }
        items.push(ent_meet);
    }

    Ok(CrosscheckReport {
        carrier: format!("subgroups of {group}"),
        items,
    })
}

/// The subspace analog of [`crosscheck_subgroups`]: distances are dimension
/// gaps and closures are linear spans, but the enumeration route is the same
/// additive closure (scalar multiples are sums over a prime field).
pub fn crosscheck_subspaces(
    space: &VectorSpace,
    endo: Option<&LinMap>,
    elem_budget: u64,
) -> Result<CrosscheckReport> {
    let budget = elem_budget as usize;
    let p = space.p();
    let moduli = vec![p; space.dim()];
    let subs = enumerate_subspaces(space, elem_budget)?;
    let sets: Vec<ElemSet> = subs
        .iter()
        .map(|r| set_of_subspace(r, budget))
        .collect::<Result<_>>()?;

    let mut join_item = CheckItem::new("join_sum");
    let mut meet_item = CheckItem::new("meet_intersection");
    let mut dsum_item = CheckItem::new("sum_distance");
    let mut dmeet_item = CheckItem::new("meet_distance");

    let csum = SubspaceSumCarrier::new(space.clone());
    let cmeet = SubspaceMeetCarrier::new(space.clone());
    for (i, x) in subs.iter().enumerate() {
        for (j, y) in subs.iter().enumerate() {
            let sum_rep = x.sum(y);
            let sum_set = sets[i].sum(&sets[j], budget)?;
            join_item.note(set_eq(&set_of_subspace(&sum_rep, budget)?, &sum_set), || {
                format!("{x} + {y} gave {sum_rep}")
            });

            let meet_rep = x.intersect(y);
            let meet_set = sets[i].intersect(&sets[j]);
            meet_item.note(
                set_eq(&set_of_subspace(&meet_rep, budget)?, &meet_set),
                || format!("{x} ∩ {y} gave {meet_rep}"),
            );

            let fast = csum.dist(x, y);
            let slow = sets[i].dim_gap_in(&sum_set, p);
            dsum_item.note(fast == slow, || format!("d_sum({x},{y}) = {fast} vs {slow}"));

            let fast = cmeet.dist(x, y);
            let slow = meet_set.dim_gap_in(&sets[i], p);
            dmeet_item.note(fast == slow, || format!("d_meet({x},{y}) = {fast} vs {slow}"));
        }
    }

    let mut items = vec![join_item, meet_item, dsum_item, dmeet_item];

    if let Some(m) = endo {
        let full = ElemSet::full_box(&moduli, budget)?;
        let mut image_item = CheckItem::new("image");
        let mut preimage_item = CheckItem::new("preimage");
        for (i, x) in subs.iter().enumerate() {
            let fast = m.image(x);
            let slow = sets[i].image(&moduli, |v| m.apply_vec(v), budget)?;
            image_item.note(set_eq(&set_of_subspace(&fast, budget)?, &slow), || {
                format!("image of {x} gave {fast}")
            });

            let fast = m.preimage(x);
            let slow = sets[i].preimage_from(&full, |v| m.apply_vec(v));
            preimage_item.note(set_eq(&set_of_subspace(&fast, budget)?, &slow), || {
                format!("preimage of {x} gave {fast}")
            });
        }
        items.push(image_item);
        items.push(preimage_item);

        let cfg = EntropyConfig::default();
        let mut ent_sum = CheckItem::new("entropy_sum");
        {
            let carrier = Arc::new(csum.clone());
            let mf = m.clone();
            let fast_flow = Flow::new(
                carrier.clone(),
                "fast",
                Arc::new(move |x: &SubspaceRep| mf.image(x)),
            )?;
            let ms = m.clone();
            let spc = space.clone();
            let mods = moduli.clone();
            let slow_flow = Flow::new(
                carrier,
                "enumerated",
                Arc::new(move |x: &SubspaceRep| {
                    let set = set_of_subspace(x, budget).expect("within budget");
                    let img = set
                        .image(&mods, |v| ms.apply_vec(v), budget)
                        .expect("within budget");
                    let rows: Vec<Vec<u64>> = img.iter().cloned().collect();
                    SubspaceRep::from_rows(&spc, &rows).expect("members of the space")
                }),
            )?;
            for x in &subs {
                let a = entropy_at(&fast_flow, x, &cfg)?;
                let b = entropy_at(&slow_flow, x, &cfg)?;
                ent_sum.note(same_entropy(&a, &b), || {
                    format!("entropy at {x}: {} vs {}", a.value, b.value)
                });
            }
        }
        items.push(ent_sum);

        let mut ent_meet = CheckItem::new("entropy_meet");
        {
            let carrier = Arc::new(cmeet.clone());
            let mf = m.clone();
            let fast_flow = Flow::new(
                carrier.clone(),
                "fast",
                Arc::new(move |x: &SubspaceRep| mf.preimage(x)),
            )?;
            let ms = m.clone();
            let spc = space.clone();
            let mods = moduli.clone();
            let slow_flow = Flow::new(
                carrier,
                "enumerated",
                Arc::new(move |x: &SubspaceRep| {
                    let full = ElemSet::full_box(&mods, budget).expect("within budget");
                    let set = set_of_subspace(x, budget).expect("within budget");
                    let pre = set.preimage_from(&full, |v| ms.apply_vec(v));
                    let rows: Vec<Vec<u64>> = pre.iter().cloned().collect();
                    SubspaceRep::from_rows(&spc, &rows).expect("members of the space")
                }),
            )?;
            for x in &subs {
                let a = entropy_at(&fast_flow, x, &cfg)?;
                let b = entropy_at(&slow_flow, x, &cfg)?;
                ent_meet.note(same_entropy(&a, &b), || {
                    format!("entropy at {x}: {} vs {}", a.value, b.value)
                });
            }
        }
        items.push(ent_meet);
    }

    Ok(CrosscheckReport {
        carrier: format!("subspaces of F{p}^{}", space.dim()),
        items,
    })
}

/// Bridges a block kind to the element-enumeration world: materializing a
/// body as a set and measuring sub/super gaps in the block's own unit.
pub trait SetOracle: Block {
    fn rep_set(rep: &Self, budget: usize) -> Result<ElemSet>;
    fn boxed(x: &WindowElement<Self>, lo: i64, width: usize) -> Result<Self>;
    fn set_gap(sub: &ElemSet, sup: &ElemSet, unit: u64) -> ExtDist;
}

impl SetOracle for SubgroupRep {
    fn rep_set(rep: &Self, budget: usize) -> Result<ElemSet> {
        set_of_subgroup(rep, budget)
    }

    fn boxed(x: &WindowElement<Self>, lo: i64, width: usize) -> Result<Self> {
        window_as_box_subgroup(x, lo, width).map(|(_, rep)| rep)
    }

    fn set_gap(sub: &ElemSet, sup: &ElemSet, _unit: u64) -> ExtDist {
        sub.log_index_in(sup)
    }
}

impl SetOracle for SubspaceRep {
    fn rep_set(rep: &Self, budget: usize) -> Result<ElemSet> {
        set_of_subspace(rep, budget)
    }

    fn boxed(x: &WindowElement<Self>, lo: i64, width: usize) -> Result<Self> {
        window_as_box_subspace(x, lo, width).map(|(_, rep)| rep)
    }

    fn set_gap(sub: &ElemSet, sup: &ElemSet, unit: u64) -> ExtDist {
        sub.dim_gap_in(sup, unit)
    }
}

fn box_fits(unit: u64, width: usize, elem_budget: u64) -> bool {
    let mut size: u128 = 1;
    for _ in 0..width {
        size = size.saturating_mul(unit as u128);
        if size > elem_budget as u128 {
            return false;
        }
    }
    true
}

fn window_frame<B: Block>(xs: &[&WindowElement<B>]) -> Option<(i64, usize)> {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for x in xs {
        if !x.is_empty() {
            lo = lo.min(x.offset());
            hi = hi.max(x.offset() + x.width() as i64);
        }
    }
    if lo > hi {
        // All empty; any frame works.
        return Some((0, 1));
    }
    Some((lo, (hi - lo) as usize))
}

/// Convolution of one explicit box vector by band terms, into a wider frame.
fn band_apply_vec(
    unit: u64,
    terms: &[(i64, u64)],
    v: &[u64],
    in_lo: i64,
    out_lo: i64,
    out_w: usize,
) -> Vec<u64> {
    let mut out = vec![0u64; out_w];
    for (i, &coeff) in v.iter().enumerate() {
        let pos = in_lo + i as i64;
        for &(j, c) in terms {
            let dst = pos + j - out_lo;
            if (0..out_w as i64).contains(&dst) {
                let slot = &mut out[dst as usize];
                *slot = (*slot + c % unit * (coeff % unit)) % unit;
            }
        }
    }
    out
}

/// Cross-check window joins, distances, and banded images against explicit
/// boxes, over the probes, their pairwise joins, and their trajectories.
/// Pairs whose covering box exceeds `elem_budget` elements are skipped.
pub fn crosscheck_window<B: SetOracle>(
    unit: u64,
    endo: Option<&BandedEndo>,
    probes: &[WindowElement<B>],
    steps: u64,
    elem_budget: u64,
) -> Result<CrosscheckReport> {
    let carrier = WindowCarrier::<B>::new(unit)?;
    let budget = elem_budget as usize;

    let mut elems: BTreeSet<WindowElement<B>> = probes.iter().cloned().collect();
    elems.insert(carrier.bottom());
    for x in probes {
        for y in probes {
            elems.insert(carrier.join(x, y));
        }
        if let Some(band) = endo {
            let mut t = carrier.bottom();
            for _ in 0..steps {
                t = carrier.join(x, &band.apply(&t));
                elems.insert(t.clone());
            }
        }
    }
    let elems: Vec<WindowElement<B>> = elems.into_iter().collect();

    let mut join_item = CheckItem::new("join");
    let mut dist_item = CheckItem::new("distance");
    for x in &elems {
        for y in &elems {
            let join = carrier.join(x, y);
            let Some((lo, w)) = window_frame(&[x, y, &join]) else {
                continue;
            };
            if !box_fits(unit, w, elem_budget) {
                continue;
            }
            let xs = B::rep_set(&B::boxed(x, lo, w)?, budget)?;
            let ys = B::rep_set(&B::boxed(y, lo, w)?, budget)?;
            let js = B::rep_set(&B::boxed(&join, lo, w)?, budget)?;
            let slow = xs.sum(&ys, budget)?;
            join_item.note(set_eq(&js, &slow), || format!("{x} ∨ {y} gave {join}"));

            let fast = carrier.dist(x, y);
            let gap = B::set_gap(&xs, &slow, unit);
            dist_item.note(fast == gap, || format!("d({x},{y}) = {fast} vs {gap}"));
        }
    }

    let mut items = vec![join_item, dist_item];

    if let Some(band) = endo {
        let terms = band.terms();
        let min_j = terms.iter().map(|&(j, _)| j).min().unwrap_or(0);
        let max_j = terms.iter().map(|&(j, _)| j).max().unwrap_or(0);
        let mut image_item = CheckItem::new("band_image");
        for x in &elems {
            if x.is_empty() {
                let fast = band.apply(x);
                image_item.note(fast.is_empty(), || format!("image of empty gave {fast}"));
                continue;
            }
            let fast = band.apply(x);
            let in_lo = x.offset();
            let in_w = x.width();
            let out_lo = in_lo + min_j;
            let out_w = in_w + (max_j - min_j) as usize;
            if !box_fits(unit, in_w.max(out_w), elem_budget) {
                continue;
            }
            let xs = B::rep_set(&B::boxed(x, in_lo, in_w)?, budget)?;
            let out_moduli = vec![unit; out_w];
            let slow = xs.image(
                &out_moduli,
                |v| band_apply_vec(unit, &terms, v, in_lo, out_lo, out_w),
                budget,
            )?;
            let fs = B::rep_set(&B::boxed(&fast, out_lo, out_w)?, budget)?;
            image_item.note(set_eq(&fs, &slow), || format!("image of {x} gave {fast}"));
        }
        items.push(image_item);
    }

    Ok(CrosscheckReport {
        carrier: carrier.describe(),
        items,
    })
}

/// Cross-check cylinder joins, distances, and causal preimages against
/// explicit finite quotient boxes.
pub fn crosscheck_profinite<B: SetOracle>(
    unit: u64,
    endo: Option<&BandedCausalEndo>,
    probes: &[OpenSubgroup<B>],
    steps: u64,
    elem_budget: u64,
) -> Result<CrosscheckReport> {
    let carrier = ProfiniteCarrier::<B>::new(unit)?;
    let budget = elem_budget as usize;

    let mut elems: BTreeSet<OpenSubgroup<B>> = probes.iter().cloned().collect();
    elems.insert(carrier.bottom());
    for x in probes {
        for y in probes {
            elems.insert(carrier.join(x, y));
        }
        if let Some(band) = endo {
            let mut t = carrier.bottom();
            for _ in 0..steps {
                t = carrier.join(x, &band.preimage_of(&t));
                elems.insert(t.clone());
            }
        }
    }
    let elems: Vec<OpenSubgroup<B>> = elems.into_iter().collect();

    let mut join_item = CheckItem::new("join");
    let mut dist_item = CheckItem::new("distance");
    for x in &elems {
        for y in &elems {
            let join = carrier.join(x, y);
            let depth = x.depth().max(y.depth()).max(join.depth()).max(1);
            if !box_fits(unit, depth, elem_budget) {
                continue;
            }
            let xs = B::rep_set(&x.body_at_depth(depth), budget)?;
            let ys = B::rep_set(&y.body_at_depth(depth), budget)?;
            let js = B::rep_set(&join.body_at_depth(depth), budget)?;
            let slow = xs.intersect(&ys);
            join_item.note(set_eq(&js, &slow), || format!("{x} ∨ {y} gave {join}"));

            let fast = carrier.dist(x, y);
            let gap = B::set_gap(&slow, &xs, unit);
            dist_item.note(fast == gap, || format!("d({x},{y}) = {fast} vs {gap}"));
        }
    }

    let mut items = vec![join_item, dist_item];

    if let Some(band) = endo {
        let span = band.coeffs().len().saturating_sub(1);
        let mut pre_item = CheckItem::new("causal_preimage");
        for x in &elems {
            let fast = band.preimage_of(x);
            if x.is_whole() {
                pre_item.note(fast.is_whole(), || {
                    format!("preimage of the whole product gave {fast}")
                });
                continue;
            }
            let k = x.depth();
            let kk = (k + span).max(1);
            if !box_fits(unit, kk, elem_budget) {
                continue;
            }
            let xs = B::rep_set(&x.body_at_depth(k), budget)?;
            let sources = ElemSet::full_box(&vec![unit; kk], budget)?;
            let coeffs = band.coeffs().to_vec();
            let slow = xs.preimage_from(&sources, |v| {
                (0..k)
                    .map(|i| {
                        coeffs
                            .iter()
                            .enumerate()
                            .map(|(j, &c)| c % unit * (v[i + j] % unit) % unit)
                            .sum::<u64>()
                            % unit
                    })
                    .collect()
            });
            let fs = B::rep_set(&fast.body_at_depth(kk), budget)?;
            pre_item.note(set_eq(&fs, &slow), || format!("preimage of {x} gave {fast}"));
        }
        items.push(pre_item);
    }

    Ok(CrosscheckReport {
        carrier: carrier.describe(),
        items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::ProbeCarrier;

    #[test]
    fn item_records_first_mismatch_only() {
        let mut item = CheckItem::new("demo");
        item.note(true, || unreachable!());
        item.note(false, || "first".into());
        item.note(false, || "second".into());
        assert_eq!(item.checked, 3);
        assert_eq!(item.mismatches, 2);
        assert_eq!(item.first_mismatch.as_deref(), Some("first"));
        assert!(!item.passed());
    }

    #[test]
    fn subgroup_arithmetic_matches_enumeration() {
        let g = FiniteAbelianGroup::new(vec![4, 2]).unwrap();
        let h = GroupHom::endo(&g, vec![vec![2, 0], vec![0, 1]]).unwrap();
        let report = crosscheck_subgroups(&g, Some(&h), 1 << 12).unwrap();
        assert!(report.passed(), "{report}");
        // 8 subgroups of Z/4 x Z/2, so 64 ordered pairs per pairwise item.
        assert_eq!(report.item("join_sum").unwrap().checked, 64);
        assert_eq!(report.item("entropy_meet").unwrap().checked, 8);
    }

    #[test]
    fn subspace_arithmetic_matches_enumeration() {
        let v = VectorSpace::new(2, 3).unwrap();
        let m = LinMap::endo(&v, vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let report = crosscheck_subspaces(&v, Some(&m), 1 << 12).unwrap();
        assert!(report.passed(), "{report}");
        // 2 + 2^2 + 2 + ... the F_2^3 lattice has 16 subspaces.
        assert_eq!(report.item("image").unwrap().checked, 16);
    }

    #[test]
    fn window_blocks_match_enumeration() {
        let carrier = WindowCarrier::<SubgroupRep>::new(2).unwrap();
        let band = BandedEndo::new(2, &[(0, 1), (1, 1)]).unwrap();
        let probes = carrier.standard_probes();
        let report = crosscheck_window(2, Some(&band), &probes, 4, 1 << 16).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.item("band_image").unwrap().checked > 0);
    }

    #[test]
    fn cylinders_match_enumeration() {
        let carrier = ProfiniteCarrier::<SubgroupRep>::new(3).unwrap();
        let band = BandedCausalEndo::new(3, &[1, 1]).unwrap();
        let probes = carrier.standard_probes();
        let report = crosscheck_profinite(3, Some(&band), &probes, 4, 1 << 16).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.item("causal_preimage").unwrap().checked > 0);
    }

    #[test]
    fn field_windows_measure_dimension_gaps() {
        let carrier = WindowCarrier::<SubspaceRep>::new(5).unwrap();
        let probes = carrier.standard_probes();
        let report = crosscheck_window::<SubspaceRep>(5, None, &probes, 0, 1 << 16).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.item("distance").unwrap().checked > 0);
    }
}
