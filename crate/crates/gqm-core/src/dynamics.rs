//! Flows on carriers and their entropy.
//!
//! A flow pairs a carrier with an endomorphism that preserves bottom and
//! joins and never expands the distance. The trajectory of an element `x`
//! accumulates its orbit: `T_0 = ⊥`, `T_{n+1} = x ∨ φ(T_n)`, so
//! `T_n = x ∨ φx ∨ … ∨ φ^{n-1}x` for `n >= 1`.
//!
//! The per-step increments `δ_n = d(T_n, T_{n+1})` never increase. On a
//! carrier that promises chain additivity and well-ordered distance values
//! the increments reach a plateau, and the plateau value is exactly the
//! per-element entropy (the limiting per-step growth). Without those
//! promises the entropy is approached from above by the subadditive ladder
//! `c_n = d(x, T_{n+1})` via the minimum of `c_n / n` up to the step budget.
//!
//! The entropy of a flow is the supremum of per-element entropies over an
//! evaluation set grown from user probes: trajectory points (including, for
//! a power flow, trajectory points of the base flow) plus a few rounds of
//! join closure, all capped and fully deterministic.

use crate::carrier::{close, Carrier};
use crate::extdist::ExtDist;
use crate::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A semilattice endomorphism as a shareable closure.
pub type EndoFn<C> = dyn Fn(&<C as Carrier>::Elem) -> <C as Carrier>::Elem + Send + Sync;

/// Sampling budget for validating a claimed endomorphism or isomorphism.
#[derive(Clone, Debug)]
pub struct FlowCheckConfig {
    pub samples: u64,
    pub seed: u64,
}

impl Default for FlowCheckConfig {
    fn default() -> Self {
        FlowCheckConfig {
            samples: 64,
            seed: 0xF10F,
        }
    }
}

/// A carrier together with a contractive semilattice endomorphism.
///
/// Construction validates the endomorphism on sampled elements: it must fix
/// bottom, commute with joins, stay inside the carrier, and never expand the
/// distance. A flow built as a power of another remembers the base
/// endomorphism so evaluation sets can reach base-trajectory elements.
pub struct Flow<C: Carrier> {
    carrier: Arc<C>,
    name: String,
    endo: Arc<EndoFn<C>>,
    base: Option<(Arc<EndoFn<C>>, u32)>,
}

impl<C: Carrier> Clone for Flow<C> {
    fn clone(&self) -> Self {
        Flow {
            carrier: self.carrier.clone(),
            name: self.name.clone(),
            endo: self.endo.clone(),
            base: self.base.clone(),
        }
    }
}

impl<C: Carrier> fmt::Debug for Flow<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Flow")
            .field("name", &self.name)
            .field("carrier", &self.carrier.describe())
            .field("power_of_base", &self.base.as_ref().map(|(_, k)| *k))
            .finish()
    }
}

impl<C: Carrier> Flow<C> {
    /// Build and validate with the default sampling budget.
    pub fn new(carrier: Arc<C>, name: impl Into<String>, endo: Arc<EndoFn<C>>) -> Result<Flow<C>> {
        Flow::with_check(carrier, name, endo, &FlowCheckConfig::default())
    }

    /// Build and validate with an explicit sampling budget.
    pub fn with_check(
        carrier: Arc<C>,
        name: impl Into<String>,
        endo: Arc<EndoFn<C>>,
        check: &FlowCheckConfig,
    ) -> Result<Flow<C>> {
        let flow = Flow {
            carrier,
            name: name.into(),
            endo,
            base: None,
        };
        flow.validate_contract(check)?;
        Ok(flow)
    }

    /// The identity flow; trivially lawful, so no sampling.
    pub fn identity(carrier: Arc<C>) -> Flow<C> {
        Flow {
            carrier,
            name: "id".into(),
            endo: Arc::new(|x: &C::Elem| x.clone()),
            base: None,
        }
    }

    /// Re-check the endomorphism contract on sampled elements.
    pub fn validate_contract(&self, check: &FlowCheckConfig) -> Result<()> {
        let c = &*self.carrier;
        let bot = c.bottom();
        let fbot = (self.endo)(&bot);
        if fbot != bot {
            return Err(Error::FlowContract(format!(
                "{}: bottom moves to {fbot}",
                self.name
            )));
        }
        for i in 0..check.samples {
            let mut rng = ChaCha8Rng::seed_from_u64(check.seed);
            rng.set_stream(i);
            let x = c.sample(&mut rng);
            let y = c.sample(&mut rng);
            let fx = (self.endo)(&x);
            let fy = (self.endo)(&y);
            if !c.contains(&fx) {
                return Err(Error::FlowContract(format!(
                    "{}: image {fx} of {x} leaves the carrier",
                    self.name
                )));
            }
            let fj = (self.endo)(&c.join(&x, &y));
            let jf = c.join(&fx, &fy);
            if fj != jf {
                return Err(Error::FlowContract(format!(
                    "{}: φ(x ∨ y) = {fj} but φx ∨ φy = {jf} for x = {x}, y = {y}",
                    self.name
                )));
            }
            let dxy = c.dist(&x, &y);
            let dfxy = c.dist(&fx, &fy);
            if !dfxy.le(&dxy) {
                return Err(Error::FlowContract(format!(
                    "{}: distance expands, d(φx, φy) = {dfxy} > d(x, y) = {dxy} for x = {x}, y = {y}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &Arc<C> {
        &self.carrier
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, x: &C::Elem) -> C::Elem {
        (self.endo)(x)
    }

    /// `φ^k x` by repeated application.
    pub fn iterate(&self, x: &C::Elem, k: u64) -> C::Elem {
        let mut cur = x.clone();
        for _ in 0..k {
            cur = (self.endo)(&cur);
        }
        cur
    }

    pub fn endo(&self) -> Arc<EndoFn<C>> {
        self.endo.clone()
    }

    /// For a flow built by [`power_flow`]: the base endomorphism and the
    /// exponent relative to it.
    pub fn power_base(&self) -> Option<(Arc<EndoFn<C>>, u32)> {
        self.base.clone()
    }
}

/// The `k`-th power flow `φ^k`, remembering `φ` as its base.
pub fn power_flow<C: Carrier>(flow: &Flow<C>, k: u32) -> Result<Flow<C>> {
    if k == 0 {
        return Err(Error::InvalidInput(
            "power exponent must be at least 1".into(),
        ));
    }
    if k == 1 {
        return Ok(flow.clone());
    }
    let (base_endo, base_exp) = match &flow.base {
        Some((base, j)) => (base.clone(), j.checked_mul(k).expect("exponent overflow")),
        None => (flow.endo.clone(), k),
    };
    let inner = flow.endo.clone();
    let powered: Arc<EndoFn<C>> = Arc::new(move |x: &C::Elem| {
        let mut cur = x.clone();
        for _ in 0..k {
            cur = inner(&cur);
        }
        cur
    });
    let f = Flow {
        carrier: flow.carrier.clone(),
        name: format!("{}^{}", flow.name, k),
        endo: powered,
        base: Some((base_endo, base_exp)),
    };
    f.validate_contract(&FlowCheckConfig::default())?;
    Ok(f)
}

/// How an element sits under a flow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeClass {
    /// `φx = x`.
    Invariant,
    /// `x` and `φx` are at finite distance in both directions.
    Inert,
    /// Some direction of `d(x, φx)` is infinite.
    NonInert,
}

impl fmt::Display for ProbeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProbeClass::Invariant => "invariant",
            ProbeClass::Inert => "inert",
            ProbeClass::NonInert => "non-inert",
        })
    }
}

pub fn classify<C: Carrier>(flow: &Flow<C>, x: &C::Elem) -> Result<ProbeClass> {
    flow.carrier.check_member(x)?;
    let fx = flow.apply(x);
    if &fx == x {
        return Ok(ProbeClass::Invariant);
    }
    if close(&*flow.carrier, x, &fx)? {
        Ok(ProbeClass::Inert)
    } else {
        Ok(ProbeClass::NonInert)
    }
}

/// `T_0 .. T_n` for the flow's own endomorphism.
pub fn trajectory<C: Carrier>(flow: &Flow<C>, x: &C::Elem, n: u64) -> Result<Vec<C::Elem>> {
    flow.carrier.check_member(x)?;
    Ok(trajectory_under(&*flow.carrier, &*flow.endo, x, n))
}

fn trajectory_under<C: Carrier>(
    c: &C,
    endo: &(dyn Fn(&C::Elem) -> C::Elem + Send + Sync),
    x: &C::Elem,
    n: u64,
) -> Vec<C::Elem> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(c.bottom());
    for _ in 0..n {
        let next = c.join(x, &endo(out.last().unwrap()));
        out.push(next);
    }
    out
}

/// Budgets for entropy computation and evaluation-set growth.
#[derive(Clone, Debug)]
pub struct EntropyConfig {
    /// Largest trajectory step index examined.
    pub n_max: u64,
    /// Consecutive equal increments required to accept a plateau.
    pub confirm_window: u64,
    /// Rounds of pairwise join closure when growing an evaluation set.
    pub closure_depth: u32,
    /// Hard cap on evaluation-set size.
    pub closure_cap: usize,
}

impl Default for EntropyConfig {
    fn default() -> Self {
        EntropyConfig {
            n_max: 512,
            confirm_window: 8,
            closure_depth: 2,
            closure_cap: 64,
        }
    }
}

/// An exact entropy value: a distance divided by a step count.
///
/// Comparisons cross-multiply (`a/p <= b/q` iff `a*q <= b*p` with exact
/// integer arithmetic), so `log 16 / 4` and `log 2 / 1` compare equal.
#[derive(Clone, Debug)]
pub struct EntropyValue {
    pub dist: ExtDist,
    pub per_steps: u64,
}

impl EntropyValue {
    pub fn new(dist: ExtDist, per_steps: u64) -> EntropyValue {
        assert!(per_steps >= 1, "entropy step count must be >= 1");
        EntropyValue { dist, per_steps }
    }

    pub fn zero() -> EntropyValue {
        EntropyValue::new(ExtDist::zero(), 1)
    }

    pub fn per_step(dist: ExtDist) -> EntropyValue {
        EntropyValue::new(dist, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.dist.is_zero()
    }

    /// Exact comparison by cross multiplication.
    pub fn cmp(&self, other: &EntropyValue) -> Ordering {
        self.dist
            .times(other.per_steps)
            .cmp_same_unit(&other.dist.times(self.per_steps))
    }

    /// `k` times this value (numerator scaling).
    pub fn times(&self, k: u64) -> EntropyValue {
        EntropyValue {
            dist: self.dist.times(k),
            per_steps: self.per_steps,
        }
    }

    pub fn to_nats(&self) -> f64 {
        self.dist.to_nats() / self.per_steps as f64
    }
}

impl PartialEq for EntropyValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for EntropyValue {}

impl fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.per_steps == 1 {
            self.dist.fmt(f)
        } else {
            write!(f, "({})/{}", self.dist, self.per_steps)
        }
    }
}

/// How a per-element entropy was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntropyMethod {
    /// Increment plateau located and confirmed; the value is exact.
    Plateau,
    /// Minimum of `c_n / n` up to the step budget; an upper bound.
    CappedMinimum,
}

impl fmt::Display for EntropyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntropyMethod::Plateau => "plateau",
            EntropyMethod::CappedMinimum => "capped-minimum",
        })
    }
}

/// Per-element entropy with its derivation trail.
#[derive(Clone, Debug)]
pub struct EntropyReport<E> {
    pub probe: E,
    pub class: ProbeClass,
    pub method: EntropyMethod,
    pub value: EntropyValue,
    /// Plateau onset (plateau method) or the minimizing step (capped method).
    pub n_used: u64,
    /// True only when a plateau was located and held for the whole
    /// confirmation window.
    pub stabilization_confirmed: bool,
    /// The increments `δ_0, δ_1, …` as far as they were computed.
    pub deltas: Vec<ExtDist>,
}

/// Per-element entropy of `flow` at `x`.
///
/// Errors with [`Error::NonInertProbe`] if `x` is not inert. On carriers
/// promising chain additivity and well-ordered values this locates the
/// increment plateau (exact); otherwise it minimizes `c_n / n` (upper
/// bound, never marked confirmed).
pub fn entropy_at<C: Carrier>(
    flow: &Flow<C>,
    x: &C::Elem,
    cfg: &EntropyConfig,
) -> Result<EntropyReport<C::Elem>> {
    let c = &*flow.carrier;
    let class = classify(flow, x)?;
    if class == ProbeClass::NonInert {
        let fx = flow.apply(x);
        return Err(Error::NonInertProbe(format!(
            "{x} under {}: d(x, φx) = {}, d(φx, x) = {}",
            flow.name,
            c.dist(x, &fx),
            c.dist(&fx, x)
        )));
    }
    let flags = c.flags();
    let plateau_ok = flags.order_convex && flags.well_ordered_values;

    let mut deltas: Vec<ExtDist> = Vec::new();
    let mut prev = c.bottom();
    let mut cur = c.join(x, &flow.apply(&prev));

    if plateau_ok {
        let mut onset: u64 = 0;
        let mut n: u64 = 0;
        loop {
            let delta = c.dist(&prev, &cur);
            if deltas.last().is_some_and(|last| *last != delta) {
                onset = n;
            }
            deltas.push(delta);
            if n >= onset + cfg.confirm_window {
                let value = EntropyValue::per_step(deltas[onset as usize].clone());
                return Ok(EntropyReport {
                    probe: x.clone(),
                    class,
                    method: EntropyMethod::Plateau,
                    value,
                    n_used: onset,
                    stabilization_confirmed: true,
                    deltas,
                });
            }
            if n >= cfg.n_max {
                let value = EntropyValue::per_step(deltas.last().unwrap().clone());
                return Ok(EntropyReport {
                    probe: x.clone(),
                    class,
                    method: EntropyMethod::Plateau,
                    value,
                    n_used: onset,
                    stabilization_confirmed: false,
                    deltas,
                });
            }
            let next = c.join(x, &flow.apply(&cur));
            prev = cur;
            cur = next;
            n += 1;
        }
    }

    // General route: c_n = d(x, T_{n+1}) is subadditive, so the limit of
    // c_n / n exists and equals its infimum; minimize up to the budget.
    let mut best: Option<(EntropyValue, u64)> = None;
    let mut n: u64 = 0;
    loop {
        deltas.push(c.dist(&prev, &cur));
        if n >= 1 {
            let c_n = c.dist(x, &cur);
            let candidate = EntropyValue::new(c_n, n);
            let better = match &best {
                None => true,
                Some((b, _)) => candidate.cmp(b) == Ordering::Less,
            };
            if better {
                best = Some((candidate, n));
            }
            if best.as_ref().is_some_and(|(b, _)| b.is_zero()) {
                break;
            }
        }
        if n >= cfg.n_max {
            break;
        }
        let next = c.join(x, &flow.apply(&cur));
        prev = cur;
        cur = next;
        n += 1;
    }
    let (value, n_used) = best.unwrap_or((EntropyValue::zero(), 0));
    Ok(EntropyReport {
        probe: x.clone(),
        class,
        method: EntropyMethod::CappedMinimum,
        value,
        n_used,
        stabilization_confirmed: false,
        deltas,
    })
}

/// Supremum of per-element entropies over an explicit element list.
#[derive(Clone, Debug)]
pub struct SupReport<E> {
    pub flow: String,
    pub value: EntropyValue,
    pub witness: E,
    pub witness_report: EntropyReport<E>,
    /// Elements evaluated (inert or invariant).
    pub evaluated: usize,
    /// Elements skipped because they are not inert.
    pub skipped_non_inert: usize,
    /// Every evaluated element reached a confirmed plateau.
    pub all_confirmed: bool,
}

/// Grow the evaluation set for a flow from user probes: bottom, the probes,
/// trajectory points (under the flow's endomorphism and, for a power flow,
/// its base), then `closure_depth` rounds of pairwise joins. Deterministic
/// and capped at `closure_cap` elements.
pub fn evaluation_set<C: Carrier>(
    flow: &Flow<C>,
    probes: &[C::Elem],
    cfg: &EntropyConfig,
) -> Result<Vec<C::Elem>> {
    let c = &*flow.carrier;
    for p in probes {
        c.check_member(p)?;
    }
    let mut set: BTreeSet<C::Elem> = probes.iter().cloned().collect();
    set.insert(c.bottom());

    let traj_steps = cfg.closure_depth as u64 + 1;
    let mut endos: Vec<(Arc<EndoFn<C>>, u64)> = vec![(flow.endo.clone(), traj_steps)];
    if let Some((base, k)) = &flow.base {
        endos.push((base.clone(), traj_steps.max(*k as u64)));
    }
    for (endo, steps) in &endos {
        for p in probes {
            for t in trajectory_under(c, &**endo, p, *steps) {
                if set.len() >= cfg.closure_cap {
                    break;
                }
                set.insert(t);
            }
        }
    }

    for _ in 0..cfg.closure_depth {
        if set.len() >= cfg.closure_cap {
            break;
        }
        let snapshot: Vec<C::Elem> = set.iter().cloned().collect();
        'round: for (i, a) in snapshot.iter().enumerate() {
            for b in snapshot.iter().skip(i + 1) {
                set.insert(c.join(a, b));
                if set.len() >= cfg.closure_cap {
                    break 'round;
                }
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// Supremum of per-element entropies over exactly the given elements.
///
/// Non-inert elements are skipped (counted). Evaluation runs in parallel but
/// the scan order is the input order, so the witness is the earliest element
/// attaining the maximum regardless of worker count.
pub fn entropy_sup_over<C: Carrier>(
    flow: &Flow<C>,
    elems: &[C::Elem],
    cfg: &EntropyConfig,
) -> Result<SupReport<C::Elem>> {
    let mut evaluable: Vec<&C::Elem> = Vec::new();
    let mut skipped = 0usize;
    for x in elems {
        match classify(flow, x)? {
            ProbeClass::NonInert => skipped += 1,
            _ => evaluable.push(x),
        }
    }
    if evaluable.is_empty() {
        return Err(Error::NonInertProbe(format!(
            "no inert element to evaluate {} on ({} skipped)",
            flow.name, skipped
        )));
    }
    let reports: Result<Vec<EntropyReport<C::Elem>>> = evaluable
        .par_iter()
        .map(|x| entropy_at(flow, x, cfg))
        .collect();
    let reports = reports?;
    let mut best = 0usize;
    for i in 1..reports.len() {
        if reports[i].value.cmp(&reports[best].value) == Ordering::Greater {
            best = i;
        }
    }
    let all_confirmed = reports.iter().all(|r| r.stabilization_confirmed);
    let witness_report = reports[best].clone();
    Ok(SupReport {
        flow: flow.name.clone(),
        value: witness_report.value.clone(),
        witness: witness_report.probe.clone(),
        witness_report,
        evaluated: reports.len(),
        skipped_non_inert: skipped,
        all_confirmed,
    })
}

/// Supremum of per-element entropies over the grown evaluation set.
pub fn entropy_sup<C: Carrier>(
    flow: &Flow<C>,
    probes: &[C::Elem],
    cfg: &EntropyConfig,
) -> Result<SupReport<C::Elem>> {
    let elems = evaluation_set(flow, probes, cfg)?;
    entropy_sup_over(flow, &elems, cfg)
}

/// Verdict of the power-scaling comparison `k · h(φ)` vs `h(φ^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoglawOutcome {
    /// `k · h(φ) = h(φ^k)` on the evaluation set.
    Equality,
    /// `k · h(φ) < h(φ^k)`: the power packs strictly more growth.
    StrictGap,
    /// `k · h(φ) > h(φ^k)`: impossible for exact values; flags either an
    /// unconfirmed plateau or a carrier bug.
    Violation,
}

impl fmt::Display for LoglawOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LoglawOutcome::Equality => "equality",
            LoglawOutcome::StrictGap => "strict-gap",
            LoglawOutcome::Violation => "violation",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LoglawReport<E> {
    pub k: u32,
    pub base: SupReport<E>,
    pub power: SupReport<E>,
    /// `k` times the base supremum.
    pub scaled_base: EntropyValue,
    pub outcome: LoglawOutcome,
    /// Both suprema consist of confirmed plateaus only.
    pub exact: bool,
}

/// Compare `k · h(φ)` against `h(φ^k)` over one shared evaluation set.
///
/// The set is grown for the power flow (so base-trajectory points up to
/// `T_k` are present) and then augmented with the `T_k` trajectory point of
/// every member under the base endomorphism. Evaluating both flows on the
/// same set makes `k · h(φ) <= h(φ^k)` a guarantee whenever the values are
/// exact: the base witness's `T_k` is in the set, and its entropy under
/// `φ^k` is at least `k` times its entropy under `φ`.
pub fn check_loglaw<C: Carrier>(
    flow: &Flow<C>,
    probes: &[C::Elem],
    k: u32,
    cfg: &EntropyConfig,
) -> Result<LoglawReport<C::Elem>> {
    let power = power_flow(flow, k)?;
    let mut set: BTreeSet<C::Elem> = evaluation_set(&power, probes, cfg)?.into_iter().collect();
    let c = &*flow.carrier;
    let snapshot: Vec<C::Elem> = set.iter().cloned().collect();
    for x in &snapshot {
        if set.len() >= 2 * cfg.closure_cap {
            break;
        }
        let traj = trajectory_under(c, &*flow.endo, x, k as u64);
        set.insert(traj[k as usize].clone());
    }
    let elems: Vec<C::Elem> = set.into_iter().collect();

    let base = entropy_sup_over(flow, &elems, cfg)?;
    let power_sup = entropy_sup_over(&power, &elems, cfg)?;
    let scaled_base = base.value.times(k as u64);
    let outcome = match scaled_base.cmp(&power_sup.value) {
        Ordering::Equal => LoglawOutcome::Equality,
        Ordering::Less => LoglawOutcome::StrictGap,
        Ordering::Greater => LoglawOutcome::Violation,
    };
    let exact = base.all_confirmed && power_sup.all_confirmed;
    Ok(LoglawReport {
        k,
        base,
        power: power_sup,
        scaled_base,
        outcome,
        exact,
    })
}

/// A claimed isomorphism between two carriers.
pub struct Iso<C: Carrier, D: Carrier> {
    pub forward: Arc<dyn Fn(&C::Elem) -> D::Elem + Send + Sync>,
    pub inverse: Arc<dyn Fn(&D::Elem) -> C::Elem + Send + Sync>,
}

impl<C: Carrier, D: Carrier> Clone for Iso<C, D> {
    fn clone(&self) -> Self {
        Iso {
            forward: self.forward.clone(),
            inverse: self.inverse.clone(),
        }
    }
}

/// Outcome of comparing one probe across a conjugation.
#[derive(Clone, Debug)]
pub struct ConjugacyProbe {
    pub probe: String,
    pub image: String,
    pub class_left: ProbeClass,
    pub class_right: ProbeClass,
    pub value_left: EntropyValue,
    pub value_right: EntropyValue,
    pub confirmed_left: bool,
    pub confirmed_right: bool,
    /// Full increment ladders agree entry by entry.
    pub ladders_match: bool,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct ConjugacyReport {
    pub flow_left: String,
    pub flow_right: String,
    pub probes: Vec<ConjugacyProbe>,
    pub passed: bool,
}

/// Validate that `iso` intertwines the two flows, then compare
/// classification and entropy ladders at each probe.
///
/// The isomorphism contract (join preservation, isometry, bottom, inverse,
/// equivariance) is checked on sampled elements; any failure is an error,
/// not a report entry. Probe mismatches go into the report.
pub fn check_conjugation<C: Carrier, D: Carrier>(
    left: &Flow<C>,
    right: &Flow<D>,
    iso: &Iso<C, D>,
    probes: &[C::Elem],
    cfg: &EntropyConfig,
    check: &FlowCheckConfig,
) -> Result<ConjugacyReport> {
    let ca = &*left.carrier;
    let cb = &*right.carrier;
    let fwd = &iso.forward;
    let inv = &iso.inverse;

    let bot_img = fwd(&ca.bottom());
    if bot_img != cb.bottom() {
        return Err(Error::IncompatibleBinding(format!(
            "map sends bottom to {bot_img}, not to bottom"
        )));
    }
    for i in 0..check.samples {
        let mut rng = ChaCha8Rng::seed_from_u64(check.seed);
        rng.set_stream(i);
        let x = ca.sample(&mut rng);
        let y = ca.sample(&mut rng);
        let fx = fwd(&x);
        let fy = fwd(&y);
        if !cb.contains(&fx) {
            return Err(Error::IncompatibleBinding(format!(
                "image {fx} of {x} leaves the right carrier"
            )));
        }
        let fj = fwd(&ca.join(&x, &y));
        let jf = cb.join(&fx, &fy);
        if fj != jf {
            return Err(Error::IncompatibleBinding(format!(
                "map is not a join homomorphism at x = {x}, y = {y}"
            )));
        }
        let da = ca.dist(&x, &y);
        let db = cb.dist(&fx, &fy);
        if da != db {
            return Err(Error::IncompatibleBinding(format!(
                "map is not an isometry: d(x, y) = {da} but d(Fx, Fy) = {db} at x = {x}, y = {y}"
            )));
        }
        let back = inv(&fx);
        if back != x {
            return Err(Error::IncompatibleBinding(format!(
                "inverse fails: F^{{-1}}(F({x})) = {back}"
            )));
        }
        let eq_left = fwd(&left.apply(&x));
        let eq_right = right.apply(&fx);
        if eq_left != eq_right {
            return Err(Error::IncompatibleBinding(format!(
                "map does not intertwine the flows at x = {x}: F(φx) = {eq_left}, ψ(Fx) = {eq_right}"
            )));
        }
        // Round trip from the right side as bijectivity evidence.
        let z = cb.sample(&mut rng);
        let zi = inv(&z);
        if !ca.contains(&zi) || fwd(&zi) != z {
            return Err(Error::IncompatibleBinding(format!(
                "inverse image of {z} does not map back"
            )));
        }
    }

    let mut outcomes = Vec::with_capacity(probes.len());
    let mut passed = true;
    for x in probes {
        let y = fwd(x);
        let class_left = classify(left, x)?;
        let class_right = classify(right, &y)?;
        let (value_left, value_right, confirmed_left, confirmed_right, ladders_match) =
            if class_left == ProbeClass::NonInert || class_right == ProbeClass::NonInert {
                (EntropyValue::zero(), EntropyValue::zero(), false, false, true)
            } else {
                let ra = entropy_at(left, x, cfg)?;
                let rb = entropy_at(right, &y, cfg)?;
                let ladders = ra.deltas == rb.deltas;
                (
                    ra.value,
                    rb.value,
                    ra.stabilization_confirmed,
                    rb.stabilization_confirmed,
                    ladders,
                )
            };
        let matches =
            class_left == class_right && value_left == value_right && ladders_match;
        passed &= matches;
        outcomes.push(ConjugacyProbe {
            probe: x.to_string(),
            image: y.to_string(),
            class_left,
            class_right,
            value_left,
            value_right,
            confirmed_left,
            confirmed_right,
            ladders_match,
            matches,
        });
    }
    Ok(ConjugacyReport {
        flow_left: left.name.clone(),
        flow_right: right.name.clone(),
        probes: outcomes,
        passed,
    })
}

/// Worst-case step distances of one element under a family of endomorphisms.
#[derive(Clone, Debug)]
pub struct FamilyProbe<E> {
    pub probe: E,
    /// Per endomorphism: name, `d(x, fx)`, `d(fx, x)`.
    pub per_endo: Vec<(String, ExtDist, ExtDist)>,
    /// The largest of all directed step distances.
    pub worst: ExtDist,
}

#[derive(Clone, Debug)]
pub struct FamilyInertiaReport<E> {
    pub carrier: String,
    pub probes: Vec<FamilyProbe<E>>,
    /// Supremum of `worst` over the probes.
    pub uniform_bound: ExtDist,
    /// Every probe stays at finite distance under every endomorphism.
    pub all_inert: bool,
}

/// Check that each probe is moved only a finite distance by every
/// endomorphism in a family, and report the uniform bound.
pub fn family_inertia<C: Carrier>(
    carrier: &C,
    endos: &[(String, Arc<EndoFn<C>>)],
    probes: &[C::Elem],
) -> Result<FamilyInertiaReport<C::Elem>> {
    let mut out = Vec::with_capacity(probes.len());
    let mut uniform = ExtDist::zero();
    for x in probes {
        carrier.check_member(x)?;
        let mut per_endo = Vec::with_capacity(endos.len());
        let mut worst = ExtDist::zero();
        for (name, endo) in endos {
            let fx = endo(x);
            carrier.check_member(&fx)?;
            let fwd = carrier.dist(x, &fx);
            let back = carrier.dist(&fx, x);
            for d in [&fwd, &back] {
                if worst.cmp_same_unit(d) == Ordering::Less {
                    worst = d.clone();
                }
            }
            per_endo.push((name.clone(), fwd, back));
        }
        if uniform.cmp_same_unit(&worst) == Ordering::Less {
            uniform = worst.clone();
        }
        out.push(FamilyProbe {
            probe: x.clone(),
            per_endo,
            worst,
        });
    }
    let all_inert = uniform.is_finite();
    Ok(FamilyInertiaReport {
        carrier: carrier.describe(),
        probes: out,
        uniform_bound: uniform,
        all_inert,
    })
}

/// Budgets for the trajectory property suite.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Trajectory length for the ladder properties.
    pub n_steps: u64,
    /// Largest inner prefix `m` (and power `i <= m`) for the nested
    /// trajectory identity.
    pub nested_m_max: u64,
    /// Largest outer step count for the nested trajectory identity.
    pub nested_n_max: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_steps: 16,
            nested_m_max: 4,
            nested_n_max: 8,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteCheck {
    pub name: &'static str,
    pub checked: u64,
    pub violations: u64,
    pub first_counterexample: Option<String>,
}

impl SuiteCheck {
    fn new(name: &'static str) -> SuiteCheck {
        SuiteCheck {
            name,
            checked: 0,
            violations: 0,
            first_counterexample: None,
        }
    }

    fn pass(&mut self) {
        self.checked += 1;
    }

    fn fail(&mut self, msg: String) {
        self.checked += 1;
        self.violations += 1;
        if self.first_counterexample.is_none() {
            self.first_counterexample = Some(msg);
        }
    }

    fn assert(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if ok {
            self.pass()
        } else {
            self.fail(msg())
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub flow: String,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(SuiteCheck::passed)
    }

    pub fn check(&self, name: &str) -> Option<&SuiteCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "flow: {}", self.flow)?;
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "  {:<28} ok   ({} checks)", c.name, c.checked)?;
            } else {
                writeln!(
                    f,
                    "  {:<28} FAIL ({} of {}): {}",
                    c.name,
                    c.violations,
                    c.checked,
                    c.first_counterexample.as_deref().unwrap_or("")
                )?;
            }
        }
        Ok(())
    }
}

/// Structural properties of trajectories, checked exactly at each probe:
///
/// * increments `δ_n` never increase;
/// * the ladder `c_n = d(x, T_{n+1})` is subadditive;
/// * (chain-additive carriers) `c_n` equals the sum of the increments;
/// * linear growth: `d(x, T_n) <= (n-1) · d(x, φx)`;
/// * each trajectory point moves at most `d(x, φ^n x) <= n · d(x, φx)`:
///   `d(T_n, φ T_n) <= d(x, φ^n x)`;
/// * entropy is unchanged when the probe is replaced by a trajectory point;
/// * closeness transfers along finite distances:
///   `d(y, φy) <= d(y, x) + d(x, φx) + d(x, y)`;
/// * nested trajectories compose: for `1 <= i <= m`,
///   `T_n(φ^i, T_m(φ, x)) = T_{(n-1)i + m}(φ, x)`.
pub fn property_suite<C: Carrier>(
    flow: &Flow<C>,
    probes: &[C::Elem],
    cfg: &SuiteConfig,
) -> Result<SuiteReport> {
    let c = &*flow.carrier;
    for p in probes {
        c.check_member(p)?;
    }
    let mut delta_mono = SuiteCheck::new("increments_non_increasing");
    let mut subadd = SuiteCheck::new("ladder_subadditive");
    let mut chain = SuiteCheck::new("ladder_sums_increments");
    let mut linear = SuiteCheck::new("linear_growth_bound");
    let mut traj_inert = SuiteCheck::new("trajectory_point_step_bound");
    let mut entropy_shift = SuiteCheck::new("entropy_shift_invariant");
    let mut transfer = SuiteCheck::new("closeness_transfer");
    let mut nested = SuiteCheck::new("nested_trajectory_identity");

    let chain_claimed = c.flags().order_convex;
    let entropy_cfg = EntropyConfig::default();

    for x in probes {
        let traj = trajectory(flow, x, cfg.n_steps + 1)?;
        let deltas: Vec<ExtDist> = traj
            .windows(2)
            .map(|w| c.dist(&w[0], &w[1]))
            .collect();
        let ladder: Vec<ExtDist> = (1..=cfg.n_steps)
            .map(|n| c.dist(x, &traj[n as usize + 1]))
            .collect();
        let step = c.dist(x, &flow.apply(x));

        for n in 1..deltas.len() {
            delta_mono.assert(deltas[n].le(&deltas[n - 1]), || {
                format!(
                    "δ_{n} = {} exceeds δ_{} = {} at probe {x}",
                    deltas[n],
                    n - 1,
                    deltas[n - 1]
                )
            });
        }

        for m in 1..=cfg.n_steps {
            for n in 1..=cfg.n_steps - m {
                let lhs = &ladder[(m + n - 1) as usize];
                let rhs = ladder[(m - 1) as usize].add(&ladder[(n - 1) as usize]);
                subadd.assert(lhs.le(&rhs), || {
                    format!(
                        "c_{} = {lhs} exceeds c_{m} + c_{n} = {rhs} at probe {x}",
                        m + n
                    )
                });
            }
        }

        if chain_claimed {
            let mut acc = ExtDist::zero();
            for n in 1..=cfg.n_steps {
                acc = acc.add(&deltas[n as usize]);
                let direct = &ladder[(n - 1) as usize];
                chain.assert(direct == &acc, || {
                    format!(
                        "c_{n} = {direct} but the first {n} increments sum to {acc} at probe {x}"
                    )
                });
            }
        }

        for n in 1..=cfg.n_steps {
            let d = c.dist(x, &traj[n as usize]);
            let bound = step.times(n - 1);
            linear.assert(d.le(&bound), || {
                format!("d(x, T_{n}) = {d} exceeds (n-1)·d(x, φx) = {bound} at probe {x}")
            });
        }

        for n in 1..=cfg.n_steps.min(8) {
            let tn = &traj[n as usize];
            let d_tn = c.dist(tn, &flow.apply(tn));
            let d_pow = c.dist(x, &flow.iterate(x, n));
            traj_inert.assert(d_tn.le(&d_pow), || {
                format!(
                    "d(T_{n}, φT_{n}) = {d_tn} exceeds d(x, φ^{n} x) = {d_pow} at probe {x}"
                )
            });
        }

        if classify(flow, x)? != ProbeClass::NonInert {
            let base_report = entropy_at(flow, x, &entropy_cfg)?;
            for k in 2..=3u64 {
                let tk = &traj[k as usize];
                let shifted = entropy_at(flow, tk, &entropy_cfg)?;
                if base_report.stabilization_confirmed && shifted.stabilization_confirmed {
                    entropy_shift.assert(base_report.value == shifted.value, || {
                        format!(
                            "entropy {} at probe {x} but {} at its trajectory point T_{k} = {tk}",
                            base_report.value, shifted.value
                        )
                    });
                }
            }
        }

        for y in probes {
            if y == x {
                continue;
            }
            let lhs = c.dist(y, &flow.apply(y));
            let rhs = c
                .dist(y, x)
                .add(&step)
                .add(&c.dist(x, y));
            transfer.assert(lhs.le(&rhs), || {
                format!(
                    "d(y, φy) = {lhs} exceeds d(y, x) + d(x, φx) + d(x, y) = {rhs} at x = {x}, y = {y}"
                )
            });
        }

        for m in 1..=cfg.nested_m_max {
            let inner = trajectory(flow, x, m)?;
            let tm = &inner[m as usize];
            for i in 1..=m {
                let endo = flow.endo.clone();
                let pow_endo = move |e: &C::Elem| {
                    let mut cur = e.clone();
                    for _ in 0..i {
                        cur = endo(&cur);
                    }
                    cur
                };
                for n in 1..=cfg.nested_n_max {
                    let lhs = trajectory_under(c, &pow_endo, tm, n)
                        .pop()
                        .unwrap();
                    let target = (n - 1) * i + m;
                    let rhs = trajectory(flow, x, target)?.pop().unwrap();
                    nested.assert(lhs == rhs, || {
                        format!(
                            "T_{n}(φ^{i}, T_{m}(φ, x)) = {lhs} but T_{target}(φ, x) = {rhs} at probe {x}"
                        )
                    });
                }
            }
        }
    }

    let mut checks = vec![delta_mono, subadd];
    if chain_claimed {
        checks.push(chain);
    }
    checks.extend([linear, traj_inert, entropy_shift, transfer, nested]);
    Ok(SuiteReport {
        flow: flow.name.clone(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::strip_stabilization_promises;
    use crate::windowed::{group_window_carrier, BandedEndo, WindowElement};

    type GElem = WindowElement<crate::finite::SubgroupRep>;

    fn shift_flow(m: u64) -> Flow<crate::windowed::GroupWindowCarrier> {
        let carrier = Arc::new(group_window_carrier(m).unwrap());
        let band = BandedEndo::shift(m);
        Flow::new(carrier, "shift", Arc::new(move |x: &GElem| band.apply(x))).unwrap()
    }

    fn e0(m: u64) -> GElem {
        WindowElement::span_of_basis_vectors(m, 0, 1).unwrap()
    }

    #[test]
    fn shift_entropy_is_log_of_the_modulus() {
        for m in [2u64, 3, 6] {
            let flow = shift_flow(m);
            let r = entropy_at(&flow, &e0(m), &EntropyConfig::default()).unwrap();
            assert_eq!(r.value, EntropyValue::per_step(ExtDist::log_int(m)));
            assert_eq!(r.n_used, 0);
            assert!(r.stabilization_confirmed);
            assert_eq!(r.method, EntropyMethod::Plateau);
        }
    }

    #[test]
    fn identity_entropy_is_zero() {
        let carrier = Arc::new(group_window_carrier(2).unwrap());
        let flow = Flow::identity(carrier);
        let r = entropy_at(&flow, &e0(2), &EntropyConfig::default()).unwrap();
        assert!(r.value.is_zero());
        assert_eq!(r.n_used, 1);
        assert!(r.stabilization_confirmed);
        assert_eq!(r.class, ProbeClass::Invariant);
    }

    #[test]
    fn capped_minimum_agrees_with_the_plateau_on_the_shift() {
        let carrier = Arc::new(strip_stabilization_promises(
            group_window_carrier(2).unwrap(),
        ));
        let band = BandedEndo::shift(2);
        let flow = Flow::new(carrier, "shift", Arc::new(move |x: &GElem| band.apply(x))).unwrap();
        let cfg = EntropyConfig {
            n_max: 16,
            ..EntropyConfig::default()
        };
        let r = entropy_at(&flow, &e0(2), &cfg).unwrap();
        assert_eq!(r.method, EntropyMethod::CappedMinimum);
        assert!(!r.stabilization_confirmed);
        // c_n / n = log(2^n) / n, exactly log 2 at every n.
        assert_eq!(r.value, EntropyValue::per_step(ExtDist::log_int(2)));
    }

    #[test]
    fn power_flow_entropy_needs_base_trajectory_probes() {
        let flow = shift_flow(2);
        let sq = power_flow(&flow, 2).unwrap();
        let sup = entropy_sup(&sq, &[e0(2)], &EntropyConfig::default()).unwrap();
        // The supremum is attained at the base trajectory point <e_0, e_1>,
        // which only enters the evaluation set via the remembered base.
        assert_eq!(sup.value, EntropyValue::per_step(ExtDist::log_int(4)));
        assert_eq!(
            sup.witness,
            WindowElement::span_of_basis_vectors(2, 0, 2).unwrap()
        );
        assert!(sup.all_confirmed);
    }

    #[test]
    fn loglaw_on_the_shift_is_equality_and_exact() {
        let flow = shift_flow(3);
        for k in [2u32, 3, 4] {
            let r = check_loglaw(&flow, &[e0(3)], k, &EntropyConfig::default()).unwrap();
            assert_eq!(r.outcome, LoglawOutcome::Equality, "k = {k}");
            assert!(r.exact);
        }
    }

    /// Two points `⊥ < a` with `d(⊥, a) = ∞`: the smallest carrier on which
    /// non-inert probes exist (everything shipped is finite-valued).
    #[derive(Clone, Debug)]
    struct TwoPoint;

    impl Carrier for TwoPoint {
        type Elem = u8;

        fn describe(&self) -> String {
            "two points with an infinite gap".into()
        }

        fn bottom(&self) -> u8 {
            0
        }

        fn join(&self, x: &u8, y: &u8) -> u8 {
            *x.max(y)
        }

        fn dist(&self, x: &u8, y: &u8) -> ExtDist {
            if *x == 0 && *y == 1 {
                ExtDist::Infinite
            } else {
                ExtDist::zero()
            }
        }

        fn contains(&self, x: &u8) -> bool {
            *x <= 1
        }

        fn sample(&self, rng: &mut dyn rand::RngCore) -> u8 {
            (rng.next_u32() & 1) as u8
        }

        fn flags(&self) -> crate::carrier::CarrierFlags {
            crate::carrier::CarrierFlags {
                order_convex: true,
                finite_valued: false,
                well_ordered_values: true,
            }
        }
    }

    #[test]
    fn non_inert_probe_is_an_error() {
        // Collapsing a to ⊥ is join-preserving and contractive, but a is
        // infinitely far from its image's side: d(⊥, a) = ∞.
        let flow = Flow::new(Arc::new(TwoPoint), "collapse", Arc::new(|_: &u8| 0u8)).unwrap();
        assert_eq!(classify(&flow, &1).unwrap(), ProbeClass::NonInert);
        let err = entropy_at(&flow, &1, &EntropyConfig::default()).unwrap_err();
        assert!(matches!(err, Error::NonInertProbe(_)), "{err}");
        // The grown evaluation set still contains bottom, so the supremum
        // falls back to it; the direct sup over {a} alone has nothing left.
        let sup = entropy_sup(&flow, &[1], &EntropyConfig::default()).unwrap();
        assert!(sup.value.is_zero());
        assert_eq!(sup.skipped_non_inert, 1);
        let err = entropy_sup_over(&flow, &[1], &EntropyConfig::default()).unwrap_err();
        assert!(matches!(err, Error::NonInertProbe(_)));
    }

    #[test]
    fn property_suite_passes_on_the_shift() {
        let flow = shift_flow(2);
        let probes = vec![
            e0(2),
            WindowElement::span_of_basis_vectors(2, 0, 2).unwrap(),
            WindowElement::span_of_basis_vectors(2, -1, 1).unwrap(),
        ];
        let report = property_suite(&flow, &probes, &SuiteConfig::default()).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.check("nested_trajectory_identity").unwrap().checked > 0);
    }

    #[test]
    fn nested_identity_fails_when_the_power_exceeds_the_prefix() {
        // The composition law requires i <= m; for i = 2, m = 1 the windows
        // genuinely differ, which pins the side condition in place.
        let flow = shift_flow(2);
        let x = e0(2);
        let t1 = trajectory(&flow, &x, 1).unwrap().pop().unwrap();
        let sq = power_flow(&flow, 2).unwrap();
        let lhs = trajectory(&sq, &t1, 2).unwrap().pop().unwrap();
        let rhs = trajectory(&flow, &x, 3).unwrap().pop().unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn translation_conjugacy_preserves_everything() {
        let flow = shift_flow(2);
        let iso: Iso<crate::windowed::GroupWindowCarrier, crate::windowed::GroupWindowCarrier> =
            Iso {
                forward: Arc::new(|x: &GElem| x.translate(1)),
                inverse: Arc::new(|x: &GElem| x.translate(-1)),
            };
        let report = check_conjugation(
            &flow,
            &flow,
            &iso,
            &[e0(2)],
            &EntropyConfig::default(),
            &FlowCheckConfig::default(),
        )
        .unwrap();
        assert!(report.passed);
        assert_eq!(report.probes.len(), 1);
    }

    #[test]
    fn family_inertia_reports_the_worst_step() {
        let carrier = group_window_carrier(2).unwrap();
        let shift = BandedEndo::shift(2);
        let endos: Vec<(String, Arc<EndoFn<crate::windowed::GroupWindowCarrier>>)> = vec![
            ("id".into(), Arc::new(|x: &GElem| x.clone())),
            ("shift".into(), Arc::new(move |x: &GElem| shift.apply(x))),
        ];
        let report = family_inertia(&carrier, &endos, &[e0(2)]).unwrap();
        assert!(report.all_inert);
        assert_eq!(report.uniform_bound, ExtDist::log_int(2));
    }
}
