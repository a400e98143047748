//! Scenario loading, command dispatch, and report emission for the `gqm`
//! binary.
//!
//! Exit codes: 0 when the computation ran and every checked property held,
//! 1 when a checked property failed (the report still goes to standard
//! output when one exists), 2 for malformed input. The `GQM_WORKERS`
//! environment variable pins the worker-thread count; reports are
//! byte-identical whatever it is set to.

pub mod report;
pub mod scenario;

use crate::report::{
    dist_entry, entropy_csv, envelope, value_json, AxiomsDoc, ConjProbeJson, ConjugacyDoc,
    EntropyDoc, LawJson, LogBase, LoglawDoc, LoglawEntryJson, NamedDoc, OracleDoc, OracleItemJson,
    ProbeEntropyJson, SuiteCheckJson, SuiteDoc, SupJson,
};
use crate::scenario::{CarrierJson, ConfigJson, EndoJson, MapJson, Scenario};
use gqm_core::axioms::check_axioms;
use gqm_core::carrier::Carrier;
use gqm_core::crosscheck::{
    crosscheck_profinite, crosscheck_subgroups, crosscheck_subspaces, crosscheck_window,
    CrosscheckReport,
};
use gqm_core::dynamics::{
    check_conjugation, check_loglaw, classify, entropy_at, entropy_sup, property_suite,
    EntropyConfig, Flow, FlowCheckConfig, Iso, LoglawOutcome, ProbeClass, SuiteConfig,
};
use gqm_core::finite::{
    FiniteAbelianGroup, GroupHom, LinMap, SubgroupMeetCarrier, SubgroupRep, SubgroupSumCarrier,
    SubspaceMeetCarrier, SubspaceRep, SubspaceSumCarrier, VectorSpace,
};
use gqm_core::fixtures::CorruptedZ4Z2Carrier;
use gqm_core::functors::{
    build_flow, named_entropy, resolve_probes, BuiltFlow, NamedEntropy, ProbeCarrier, ProbeSpec,
};
use gqm_core::windowed::profinite::{BandedCausalEndo, ProfiniteCarrier};
use gqm_core::windowed::{BandedEndo, WindowCarrier, WindowElement};
use gqm_core::with_built_flow;
use serde::Serialize;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug)]
pub enum Command {
    Axioms,
    Entropy,
    Named(String),
    Loglaw,
    Conjugacy,
    Suite,
    Oracle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub seed: Option<u64>,
    pub n_max: Option<u64>,
    pub confirm_window: Option<u64>,
    pub closure_depth: Option<u32>,
    pub log_base: Option<LogBase>,
    pub format: Format,
}

enum Failure {
    Input(String),
    /// A property failed before any report document existed.
    Violation(String),
}

type CmdResult = Result<(String, i32), Failure>;

fn input(e: gqm_core::Error) -> Failure {
    Failure::Input(e.to_string())
}

struct Ctx<'a> {
    scenario: &'a Scenario,
    cfgj: &'a ConfigJson,
    ecfg: EntropyConfig,
    seed: u64,
    base: LogBase,
    unit: Option<u64>,
    base_label: String,
}

/// Run one command against a scenario file, writing the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run(
    command: &Command,
    path: &Path,
    flags: &Flags,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let scenario = match Scenario::load(path) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let workers = match std::env::var("GQM_WORKERS") {
        Err(_) => None,
        Ok(s) => match s.parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => {
                let _ = writeln!(err, "error: GQM_WORKERS must be a positive integer, got {s:?}");
                return EXIT_INPUT;
            }
        },
    };
    let outcome = match workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(command, &scenario, flags)),
            Err(e) => Err(Failure::Input(format!("cannot build a {n}-worker pool: {e}"))),
        },
        None => dispatch(command, &scenario, flags),
    };
    match outcome {
        Ok((doc, code)) => {
            let _ = out.write_all(doc.as_bytes());
            code
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(err, "violation: {msg}");
            EXIT_VIOLATION
        }
    }
}

fn dispatch(command: &Command, scenario: &Scenario, flags: &Flags) -> CmdResult {
    let cfgj = scenario.config();
    let seed = flags.seed.or(cfgj.seed).unwrap_or(0);
    let mut ecfg = EntropyConfig::default();
    if let Some(n) = flags.n_max.or(cfgj.n_max) {
        ecfg.n_max = n;
    }
    if let Some(w) = flags.confirm_window.or(cfgj.confirm_window) {
        ecfg.confirm_window = w;
    }
    if let Some(d) = flags.closure_depth.or(cfgj.closure_depth) {
        ecfg.closure_depth = d;
    }
    if let Some(c) = cfgj.closure_cap {
        ecfg.closure_cap = c;
    }
    let base = match flags.log_base {
        Some(b) => b,
        None => match &cfgj.log_base {
            Some(s) => LogBase::parse(s).map_err(Failure::Input)?,
            None => LogBase::E,
        },
    };
    let unit = scenario.carrier.uniform_unit();
    let base_label = base.label(unit).map_err(Failure::Input)?;
    if flags.format == Format::Csv && !matches!(command, Command::Entropy) {
        return Err(Failure::Input(
            "csv output is only defined for the entropy command's distance ladders".into(),
        ));
    }
    let ctx = Ctx {
        scenario,
        cfgj: &cfgj,
        ecfg,
        seed,
        base,
        unit,
        base_label,
    };
    match command {
        Command::Axioms => cmd_axioms(&ctx),
        Command::Entropy => cmd_entropy(&ctx, flags.format),
        Command::Named(token) => cmd_named(&ctx, token),
        Command::Loglaw => cmd_loglaw(&ctx),
        Command::Conjugacy => cmd_conjugacy(&ctx),
        Command::Suite => cmd_suite(&ctx),
        Command::Oracle => cmd_oracle(&ctx),
    }
}

fn emit<T: Serialize>(ctx: &Ctx, command: &str, result: T, code: i32) -> CmdResult {
    let doc = envelope(command, ctx.seed, ctx.base_label.clone(), ctx.scenario, result);
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Input(e.to_string()))?;
    Ok((text + "\n", code))
}

fn axioms_doc<C: Carrier>(c: &C, samples: u64, seed: u64) -> AxiomsDoc {
    let report = check_axioms(c, samples, seed);
    AxiomsDoc {
        carrier: report.carrier.clone(),
        samples,
        passed: report.passed(),
        laws: report
            .results
            .iter()
            .map(|r| LawJson {
                law: r.law.name(),
                checked: r.checked,
                violations: r.violations,
                counterexample: r.first_counterexample.clone(),
            })
            .collect(),
    }
}

fn cmd_axioms(ctx: &Ctx) -> CmdResult {
    let samples = ctx.cfgj.samples.unwrap_or(2048);
    let seed = ctx.seed;
    let doc = match &ctx.scenario.carrier {
        CarrierJson::FiniteAbelianSum { moduli } => {
            let g = FiniteAbelianGroup::new(moduli.clone()).map_err(input)?;
            axioms_doc(&SubgroupSumCarrier::new(g), samples, seed)
        }
        CarrierJson::FiniteAbelianMeet { moduli } => {
            let g = FiniteAbelianGroup::new(moduli.clone()).map_err(input)?;
            axioms_doc(&SubgroupMeetCarrier::new(g), samples, seed)
        }
        CarrierJson::SubspaceSum { p, dim } => {
            let v = VectorSpace::new(*p, *dim).map_err(input)?;
            axioms_doc(&SubspaceSumCarrier::new(v), samples, seed)
        }
        CarrierJson::SubspaceMeet { p, dim } => {
            let v = VectorSpace::new(*p, *dim).map_err(input)?;
            axioms_doc(&SubspaceMeetCarrier::new(v), samples, seed)
        }
        CarrierJson::DirectSumGroup { m } => {
            let c = WindowCarrier::<SubgroupRep>::new(*m).map_err(input)?;
            axioms_doc(&c, samples, seed)
        }
        CarrierJson::DirectSumField { p } => {
            let c = WindowCarrier::<SubspaceRep>::new(*p).map_err(input)?;
            axioms_doc(&c, samples, seed)
        }
        CarrierJson::ProfiniteGroup { m } => {
            let c = ProfiniteCarrier::<SubgroupRep>::new(*m).map_err(input)?;
            axioms_doc(&c, samples, seed)
        }
        CarrierJson::ProfiniteField { p } => {
            let c = ProfiniteCarrier::<SubspaceRep>::new(*p).map_err(input)?;
            axioms_doc(&c, samples, seed)
        }
        CarrierJson::CorruptedZ4z2 => axioms_doc(&CorruptedZ4Z2Carrier::new(), samples, seed),
    };
    let code = if doc.passed { EXIT_OK } else { EXIT_VIOLATION };
    emit(ctx, "axioms", doc, code)
}

fn built_flow(ctx: &Ctx) -> Result<BuiltFlow, Failure> {
    let (object, side) = ctx
        .scenario
        .carrier
        .object_side()
        .ok_or_else(|| Failure::Input("this carrier supports only the axioms command".into()))?;
    let endo = ctx
        .scenario
        .endo
        .as_ref()
        .ok_or_else(|| Failure::Input("this command needs an endo entry in the scenario".into()))?;
    build_flow(&object, side, &endo.to_spec()).map_err(input)
}

fn entropy_doc<C: ProbeCarrier>(
    ctx: &Ctx,
    flow: &Flow<C>,
    specs: &[ProbeSpec],
) -> Result<EntropyDoc, Failure> {
    let elems = resolve_probes(&**flow.carrier(), specs).map_err(input)?;
    let mut probes = Vec::with_capacity(elems.len());
    for x in &elems {
        let class = classify(flow, x).map_err(input)?;
        if class == ProbeClass::NonInert {
            probes.push(ProbeEntropyJson {
                probe: x.to_string(),
                class: class.to_string(),
                method: None,
                value: None,
                n_used: None,
                confirmed: None,
                ladder: Vec::new(),
            });
            continue;
        }
        let r = entropy_at(flow, x, &ctx.ecfg).map_err(input)?;
        probes.push(ProbeEntropyJson {
            probe: x.to_string(),
            class: r.class.to_string(),
            method: Some(r.method.to_string()),
            value: Some(value_json(
                &r.value,
                r.stabilization_confirmed,
                ctx.base,
                ctx.unit,
            )),
            n_used: Some(r.n_used),
            confirmed: Some(r.stabilization_confirmed),
            ladder: r
                .deltas
                .iter()
                .map(|d| dist_entry(d, ctx.base, ctx.unit))
                .collect(),
        });
    }
    let sup = entropy_sup(flow, &elems, &ctx.ecfg).map_err(input)?;
    Ok(EntropyDoc {
        flow: flow.name().to_string(),
        probes,
        sup: SupJson {
            value: value_json(
                &sup.value,
                sup.witness_report.stabilization_confirmed,
                ctx.base,
                ctx.unit,
            ),
            witness: sup.witness.to_string(),
            evaluated: sup.evaluated,
            skipped_non_inert: sup.skipped_non_inert,
            all_confirmed: sup.all_confirmed,
        },
    })
}

fn cmd_entropy(ctx: &Ctx, format: Format) -> CmdResult {
    let built = built_flow(ctx)?;
    let specs = ctx.scenario.probe_specs();
    let doc = with_built_flow!(&built, |flow| entropy_doc(ctx, flow, &specs))?;
    match format {
        Format::Json => emit(ctx, "entropy", doc, EXIT_OK),
        Format::Csv => Ok((entropy_csv(&doc), EXIT_OK)),
    }
}

fn cmd_named(ctx: &Ctx, token: &str) -> CmdResult {
    let which = NamedEntropy::from_token(token).ok_or_else(|| {
        Failure::Input(format!(
            "unknown entropy token {token:?}; expected one of {}",
            NamedEntropy::ALL.map(|n| n.token()).join(", ")
        ))
    })?;
    let (object, side) = ctx
        .scenario
        .carrier
        .object_side()
        .ok_or_else(|| Failure::Input("this carrier supports only the axioms command".into()))?;
    if side != which.side() {
        return Err(Failure::Input(format!(
            "{token} lives on the {} side but the scenario carrier is {side}-ordered",
            which.side()
        )));
    }
    let endo = ctx
        .scenario
        .endo
        .as_ref()
        .ok_or_else(|| Failure::Input("this command needs an endo entry in the scenario".into()))?;
    let out = named_entropy(
        which,
        &object,
        &endo.to_spec(),
        &ctx.scenario.probe_specs(),
        &ctx.ecfg,
    )
    .map_err(input)?;
    let doc = NamedDoc {
        token: out.token.to_string(),
        object: out.object,
        flow: out.flow,
        value: value_json(&out.value, out.confirmed, ctx.base, ctx.unit),
        witness: out.witness,
        n_used: out.n_used,
        confirmed: out.confirmed,
        evaluated: out.evaluated,
        skipped_non_inert: out.skipped_non_inert,
    };
    emit(ctx, "named", doc, EXIT_OK)
}

fn cmd_loglaw(ctx: &Ctx) -> CmdResult {
    let built = built_flow(ctx)?;
    let ks = ctx.cfgj.ks.clone().unwrap_or_else(|| vec![2, 3, 4]);
    let specs = ctx.scenario.probe_specs();
    let doc = with_built_flow!(&built, |flow| {
        let elems = resolve_probes(&**flow.carrier(), &specs).map_err(input)?;
        let mut entries = Vec::with_capacity(ks.len());
        let mut passed = true;
        for &k in &ks {
            let rep = check_loglaw(flow, &elems, k, &ctx.ecfg).map_err(input)?;
            passed &= rep.outcome != LoglawOutcome::Violation;
            entries.push(LoglawEntryJson {
                k,
                base_value: value_json(&rep.base.value, rep.base.all_confirmed, ctx.base, ctx.unit),
                scaled_base: value_json(&rep.scaled_base, rep.exact, ctx.base, ctx.unit),
                power_value: value_json(
                    &rep.power.value,
                    rep.power.all_confirmed,
                    ctx.base,
                    ctx.unit,
                ),
                outcome: rep.outcome.to_string(),
                exact: rep.exact,
            });
        }
        Ok(LoglawDoc {
            flow: flow.name().to_string(),
            entries,
            passed,
        })
    })?;
    let code = if doc.passed { EXIT_OK } else { EXIT_VIOLATION };
    emit(ctx, "loglaw", doc, code)
}

fn conj_doc<C: ProbeCarrier, D: Carrier>(
    ctx: &Ctx,
    left: &Flow<C>,
    right: &Flow<D>,
    iso: &Iso<C, D>,
    specs: &[ProbeSpec],
) -> Result<ConjugacyDoc, Failure> {
    let elems = resolve_probes(&**left.carrier(), specs).map_err(input)?;
    match check_conjugation(left, right, iso, &elems, &ctx.ecfg, &FlowCheckConfig::default()) {
        Ok(rep) => Ok(ConjugacyDoc {
            left: rep.flow_left,
            right: rep.flow_right,
            probes: rep
                .probes
                .into_iter()
                .map(|p| ConjProbeJson {
                    probe: p.probe,
                    image: p.image,
                    class_left: p.class_left.to_string(),
                    class_right: p.class_right.to_string(),
                    value_left: value_json(&p.value_left, p.confirmed_left, ctx.base, ctx.unit),
                    value_right: value_json(&p.value_right, p.confirmed_right, ctx.base, ctx.unit),
                    ladders_match: p.ladders_match,
                    matches: p.matches,
                })
                .collect(),
            passed: rep.passed,
        }),
        Err(gqm_core::Error::IncompatibleBinding(msg)) => Err(Failure::Violation(format!(
            "the claimed conjugation fails its contract: {msg}"
        ))),
        Err(e) => Err(input(e)),
    }
}

fn cmd_conjugacy(ctx: &Ctx) -> CmdResult {
    let conj = ctx.scenario.conjugacy.as_ref().ok_or_else(|| {
        Failure::Input("the conjugacy command needs a conjugacy entry in the scenario".into())
    })?;
    let left = built_flow(ctx)?;
    let (object, side) = ctx.scenario.carrier.object_side().expect("flow was built");
    let right = build_flow(&object, side, &conj.right_endo.to_spec()).map_err(input)?;
    let specs = ctx.scenario.probe_specs();
    let doc = match (&left, &right, &conj.map) {
        (BuiltFlow::WindowGroup(l), BuiltFlow::WindowGroup(r), MapJson::Translate { by }) => {
            let by = *by;
            let iso = Iso {
                forward: Arc::new(move |x: &WindowElement<SubgroupRep>| x.translate(by)),
                inverse: Arc::new(move |x: &WindowElement<SubgroupRep>| x.translate(-by)),
            };
            conj_doc(ctx, l, r, &iso, &specs)?
        }
        (BuiltFlow::WindowField(l), BuiltFlow::WindowField(r), MapJson::Translate { by }) => {
            let by = *by;
            let iso = Iso {
                forward: Arc::new(move |x: &WindowElement<SubspaceRep>| x.translate(by)),
                inverse: Arc::new(move |x: &WindowElement<SubspaceRep>| x.translate(-by)),
            };
            conj_doc(ctx, l, r, &iso, &specs)?
        }
        (
            BuiltFlow::GroupSum(l),
            BuiltFlow::GroupSum(r),
            MapJson::Matrix { rows, inverse_rows },
        ) => {
            let g = l.carrier().group.clone();
            let f = GroupHom::endo(&g, rows.clone()).map_err(input)?;
            let fi = GroupHom::endo(&g, inverse_rows.clone()).map_err(input)?;
            let iso = Iso {
                forward: Arc::new(move |x: &SubgroupRep| f.image(x)),
                inverse: Arc::new(move |x: &SubgroupRep| fi.image(x)),
            };
            conj_doc(ctx, l, r, &iso, &specs)?
        }
        (
            BuiltFlow::GroupMeet(l),
            BuiltFlow::GroupMeet(r),
            MapJson::Matrix { rows, inverse_rows },
        ) => {
            let g = l.carrier().group.clone();
            let f = GroupHom::endo(&g, rows.clone()).map_err(input)?;
            let fi = GroupHom::endo(&g, inverse_rows.clone()).map_err(input)?;
            let iso = Iso {
                forward: Arc::new(move |x: &SubgroupRep| f.image(x)),
                inverse: Arc::new(move |x: &SubgroupRep| fi.image(x)),
            };
            conj_doc(ctx, l, r, &iso, &specs)?
        }
        (
            BuiltFlow::SpaceSum(l),
            BuiltFlow::SpaceSum(r),
            MapJson::Matrix { rows, inverse_rows },
        ) => {
            let v = l.carrier().space.clone();
            let f = LinMap::endo(&v, rows.clone()).map_err(input)?;
            let fi = LinMap::endo(&v, inverse_rows.clone()).map_err(input)?;
            let iso = Iso {
                forward: Arc::new(move |x: &SubspaceRep| f.image(x)),
                inverse: Arc::new(move |x: &SubspaceRep| fi.image(x)),
            };
            conj_doc(ctx, l, r, &iso, &specs)?
        }
        (
            BuiltFlow::SpaceMeet(l),
            BuiltFlow::SpaceMeet(r),
            MapJson::Matrix { rows, inverse_rows },
        ) => {
            let v = l.carrier().space.clone();
            let f = LinMap::endo(&v, rows.clone()).map_err(input)?;
            let fi = LinMap::endo(&v, inverse_rows.clone()).map_err(input)?;
            let iso = Iso {
                forward: Arc::new(move |x: &SubspaceRep| f.image(x)),
                inverse: Arc::new(move |x: &SubspaceRep| fi.image(x)),
            };
            conj_doc(ctx, l, r, &iso, &specs)?
        }
        (_, _, MapJson::Translate { .. }) => {
            return Err(Failure::Input(
                "translation maps are defined on the direct-sum carriers only".into(),
            ))
        }
        (_, _, MapJson::Matrix { .. }) => {
            return Err(Failure::Input(
                "matrix maps are defined on the finite carriers only".into(),
            ))
        }
    };
    let code = if doc.passed { EXIT_OK } else { EXIT_VIOLATION };
    emit(ctx, "conjugacy", doc, code)
}

fn cmd_suite(ctx: &Ctx) -> CmdResult {
    let built = built_flow(ctx)?;
    let mut scfg = SuiteConfig::default();
    if let Some(n) = ctx.cfgj.suite_steps {
        scfg.n_steps = n;
    }
    if let Some(m) = ctx.cfgj.nested_m_max {
        scfg.nested_m_max = m;
    }
    if let Some(n) = ctx.cfgj.nested_n_max {
        scfg.nested_n_max = n;
    }
    let specs = ctx.scenario.probe_specs();
    let doc = with_built_flow!(&built, |flow| {
        let elems = resolve_probes(&**flow.carrier(), &specs).map_err(input)?;
        let rep = property_suite(flow, &elems, &scfg).map_err(input)?;
        Ok(SuiteDoc {
            flow: rep.flow.clone(),
            checks: rep
                .checks
                .iter()
                .map(|c| SuiteCheckJson {
                    name: c.name,
                    checked: c.checked,
                    violations: c.violations,
                    counterexample: c.first_counterexample.clone(),
                })
                .collect(),
            passed: rep.passed(),
        })
    })?;
    let code = if doc.passed { EXIT_OK } else { EXIT_VIOLATION };
    emit(ctx, "suite", doc, code)
}

fn cmd_oracle(ctx: &Ctx) -> CmdResult {
    let budget = ctx.cfgj.oracle_budget.unwrap_or(1 << 16);
    let steps = ctx.cfgj.oracle_steps.unwrap_or(4);
    let report: CrosscheckReport = match &ctx.scenario.carrier {
        CarrierJson::FiniteAbelianSum { moduli } | CarrierJson::FiniteAbelianMeet { moduli } => {
            let g = FiniteAbelianGroup::new(moduli.clone()).map_err(input)?;
            let h = match &ctx.scenario.endo {
                None => None,
                Some(EndoJson::Matrix { rows }) => {
                    Some(GroupHom::endo(&g, rows.clone()).map_err(input)?)
                }
                Some(_) => {
                    return Err(Failure::Input(
                        "finite abelian carriers take a matrix endo".into(),
                    ))
                }
            };
            crosscheck_subgroups(&g, h.as_ref(), budget).map_err(input)?
        }
        CarrierJson::SubspaceSum { p, dim } | CarrierJson::SubspaceMeet { p, dim } => {
            let v = VectorSpace::new(*p, *dim).map_err(input)?;
            let m = match &ctx.scenario.endo {
                None => None,
                Some(EndoJson::Matrix { rows }) => {
                    Some(LinMap::endo(&v, rows.clone()).map_err(input)?)
                }
                Some(_) => {
                    return Err(Failure::Input(
                        "prime-field carriers take a matrix endo".into(),
                    ))
                }
            };
            crosscheck_subspaces(&v, m.as_ref(), budget).map_err(input)?
        }
        CarrierJson::DirectSumGroup { m } => {
            let carrier = WindowCarrier::<SubgroupRep>::new(*m).map_err(input)?;
            let band = match &ctx.scenario.endo {
                None => None,
                Some(EndoJson::Band { terms }) => Some(BandedEndo::new(*m, terms).map_err(input)?),
                Some(_) => {
                    return Err(Failure::Input("direct-sum carriers take a band endo".into()))
                }
            };
            let probes = resolve_probes(&carrier, &ctx.scenario.probe_specs()).map_err(input)?;
            crosscheck_window::<SubgroupRep>(*m, band.as_ref(), &probes, steps, budget)
                .map_err(input)?
        }
        CarrierJson::DirectSumField { p } => {
            let carrier = WindowCarrier::<SubspaceRep>::new(*p).map_err(input)?;
            let band = match &ctx.scenario.endo {
                None => None,
                Some(EndoJson::Band { terms }) => Some(BandedEndo::new(*p, terms).map_err(input)?),
                Some(_) => {
                    return Err(Failure::Input("direct-sum carriers take a band endo".into()))
                }
            };
            let probes = resolve_probes(&carrier, &ctx.scenario.probe_specs()).map_err(input)?;
            crosscheck_window::<SubspaceRep>(*p, band.as_ref(), &probes, steps, budget)
                .map_err(input)?
        }
        CarrierJson::ProfiniteGroup { m } => {
            let carrier = ProfiniteCarrier::<SubgroupRep>::new(*m).map_err(input)?;
            let band = match &ctx.scenario.endo {
                None => None,
                Some(EndoJson::CausalBand { coeffs }) => {
                    Some(BandedCausalEndo::new(*m, coeffs).map_err(input)?)
                }
                Some(_) => {
                    return Err(Failure::Input(
                        "product carriers take a causal_band endo".into(),
                    ))
                }
            };
            let probes = resolve_probes(&carrier, &ctx.scenario.probe_specs()).map_err(input)?;
            crosscheck_profinite::<SubgroupRep>(*m, band.as_ref(), &probes, steps, budget)
                .map_err(input)?
        }
        CarrierJson::ProfiniteField { p } => {
            let carrier = ProfiniteCarrier::<SubspaceRep>::new(*p).map_err(input)?;
            let band = match &ctx.scenario.endo {
                None => None,
                Some(EndoJson::CausalBand { coeffs }) => {
                    Some(BandedCausalEndo::new(*p, coeffs).map_err(input)?)
                }
                Some(_) => {
                    return Err(Failure::Input(
                        "product carriers take a causal_band endo".into(),
                    ))
                }
            };
            let probes = resolve_probes(&carrier, &ctx.scenario.probe_specs()).map_err(input)?;
            crosscheck_profinite::<SubspaceRep>(*p, band.as_ref(), &probes, steps, budget)
                .map_err(input)?
        }
        CarrierJson::CorruptedZ4z2 => {
            return Err(Failure::Input(
                "the corrupted fixture has no oracle route; run the axioms command instead".into(),
            ))
        }
    };
    let doc = OracleDoc {
        carrier: report.carrier.clone(),
        items: report
            .items
            .iter()
            .map(|i| OracleItemJson {
                name: i.name,
                checked: i.checked,
                mismatches: i.mismatches,
                first_mismatch: i.first_mismatch.clone(),
            })
            .collect(),
        passed: report.passed(),
    };
    let code = if doc.passed { EXIT_OK } else { EXIT_VIOLATION };
    emit(ctx, "oracle", doc, code)
}
