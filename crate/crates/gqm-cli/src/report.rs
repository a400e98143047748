//! Report documents written to standard output.
//!
//! Every number appears in its exact form (an integer under a `log`, a
//! dimension count, or the marker `"infinite"`); floats are renderings of
//! those exact values in the requested logarithm base and never the other
//! way around. Serialization is field-ordered and deterministic, so a report
//! for a fixed scenario and seed is byte-identical run to run.

use crate::scenario::Scenario;
use gqm_core::dynamics::EntropyValue;
use gqm_core::extdist::{ExtDist, Magnitude};
use serde::Serialize;
use std::fmt::Write as _;

pub const REPORT_FORMAT: u32 = 1;

/// Base for rendering exact logarithms as floats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogBase {
    E,
    Two,
    Ten,
    /// The carrier's own modulus or prime.
    Unit,
}

impl LogBase {
    pub fn parse(s: &str) -> Result<LogBase, String> {
        match s {
            "e" => Ok(LogBase::E),
            "2" => Ok(LogBase::Two),
            "10" => Ok(LogBase::Ten),
            "p" => Ok(LogBase::Unit),
            other => Err(format!("unknown log base {other:?}; use 2, e, 10, or p")),
        }
    }

    /// The label written into reports; `p` resolves to the actual modulus.
    pub fn label(self, unit: Option<u64>) -> Result<String, String> {
        match self {
            LogBase::E => Ok("e".into()),
            LogBase::Two => Ok("2".into()),
            LogBase::Ten => Ok("10".into()),
            LogBase::Unit => unit
                .map(|u| u.to_string())
                .ok_or_else(|| "log base p needs a carrier with a single modulus".into()),
        }
    }

    fn ln(self, unit: Option<u64>) -> f64 {
        match self {
            LogBase::E => 1.0,
            LogBase::Two => std::f64::consts::LN_2,
            LogBase::Ten => std::f64::consts::LN_10,
            LogBase::Unit => (unit.expect("unit checked when the base was resolved") as f64).ln(),
        }
    }
}

/// An exact distance in JSON: `{"log_of":"8"}`, `{"dim":2}`, or `"infinite"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistJson {
    LogOf(String),
    Dim(u64),
    Infinite,
}

pub fn dist_json(d: &ExtDist) -> DistJson {
    match d {
        ExtDist::Finite(Magnitude::LogInt(k)) => DistJson::LogOf(k.to_string()),
        ExtDist::Finite(Magnitude::Dim(n)) => DistJson::Dim(*n),
        ExtDist::Infinite => DistJson::Infinite,
    }
}

/// Render an exact distance in the chosen base. `None` for infinity.
/// Dimension counts are logs in base `unit`, so they need one to render.
pub fn render_dist(d: &ExtDist, base: LogBase, unit: Option<u64>) -> Option<f64> {
    let nats = match d {
        ExtDist::Infinite => return None,
        ExtDist::Finite(Magnitude::LogInt(_)) => d.to_nats(),
        ExtDist::Finite(Magnitude::Dim(n)) => {
            let u = unit.expect("dimension counts only arise over a single prime");
            *n as f64 * (u as f64).ln()
        }
    };
    Some(nats / base.ln(unit))
}

/// An exact distance beside its float rendering.
#[derive(Clone, Debug, Serialize)]
pub struct DistEntryJson {
    pub exact: DistJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rendered: Option<f64>,
}

pub fn dist_entry(d: &ExtDist, base: LogBase, unit: Option<u64>) -> DistEntryJson {
    DistEntryJson {
        exact: dist_json(d),
        rendered: render_dist(d, base, unit),
    }
}

/// An entropy value: exact distance per exact step count, with rendering
/// and a flag saying whether the value is a confirmed limit or only the
/// best bound the step budget allowed.
#[derive(Clone, Debug, Serialize)]
pub struct ValueJson {
    pub dist: DistJson,
    pub per_steps: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rendered: Option<f64>,
    pub exact: bool,
}

pub fn value_json(v: &EntropyValue, exact: bool, base: LogBase, unit: Option<u64>) -> ValueJson {
    ValueJson {
        dist: dist_json(&v.dist),
        per_steps: v.per_steps,
        rendered: render_dist(&v.dist, base, unit).map(|x| x / v.per_steps as f64),
        exact,
    }
}

/// The envelope around every command's result.
#[derive(Debug, Serialize)]
pub struct ReportDoc<'a, T: Serialize> {
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub format: u32,
    pub command: &'a str,
    pub seed: u64,
    pub log_base: String,
    pub scenario: &'a Scenario,
    pub result: T,
}

pub fn envelope<'a, T: Serialize>(
    command: &'a str,
    seed: u64,
    log_base: String,
    scenario: &'a Scenario,
    result: T,
) -> ReportDoc<'a, T> {
    ReportDoc {
        tool: "gqm",
        tool_version: env!("CARGO_PKG_VERSION"),
        format: REPORT_FORMAT,
        command,
        seed,
        log_base,
        scenario,
        result,
    }
}

#[derive(Debug, Serialize)]
pub struct LawJson {
    pub law: &'static str,
    pub checked: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct AxiomsDoc {
    pub carrier: String,
    pub samples: u64,
    pub passed: bool,
    pub laws: Vec<LawJson>,
}

#[derive(Debug, Serialize)]
pub struct ProbeEntropyJson {
    pub probe: String,
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ValueJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_used: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confirmed: Option<bool>,
    pub ladder: Vec<DistEntryJson>,
}

#[derive(Debug, Serialize)]
pub struct SupJson {
    pub value: ValueJson,
    pub witness: String,
    pub evaluated: usize,
    pub skipped_non_inert: usize,
    pub all_confirmed: bool,
}

#[derive(Debug, Serialize)]
pub struct EntropyDoc {
    pub flow: String,
    pub probes: Vec<ProbeEntropyJson>,
    pub sup: SupJson,
}

#[derive(Debug, Serialize)]
pub struct NamedDoc {
    pub token: String,
    pub object: String,
    pub flow: String,
    pub value: ValueJson,
    pub witness: String,
    pub n_used: u64,
    pub confirmed: bool,
    pub evaluated: usize,
    pub skipped_non_inert: usize,
}

#[derive(Debug, Serialize)]
pub struct LoglawEntryJson {
    pub k: u32,
    pub base_value: ValueJson,
    pub scaled_base: ValueJson,
    pub power_value: ValueJson,
    pub outcome: String,
    pub exact: bool,
}

#[derive(Debug, Serialize)]
pub struct LoglawDoc {
    pub flow: String,
    pub entries: Vec<LoglawEntryJson>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct ConjProbeJson {
    pub probe: String,
    pub image: String,
    pub class_left: String,
    pub class_right: String,
    pub value_left: ValueJson,
    pub value_right: ValueJson,
    pub ladders_match: bool,
    pub matches: bool,
}

#[derive(Debug, Serialize)]
pub struct ConjugacyDoc {
    pub left: String,
    pub right: String,
    pub probes: Vec<ConjProbeJson>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct SuiteCheckJson {
    pub name: &'static str,
    pub checked: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SuiteDoc {
    pub flow: String,
    pub checks: Vec<SuiteCheckJson>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct OracleItemJson {
    pub name: &'static str,
    pub checked: u64,
    pub mismatches: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct OracleDoc {
    pub carrier: String,
    pub items: Vec<OracleItemJson>,
    pub passed: bool,
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The one CSV table offered: per-probe increment ladders.
pub fn entropy_csv(doc: &EntropyDoc) -> String {
    let mut out = String::from("probe,n,exact,rendered\n");
    for probe in &doc.probes {
        for (n, entry) in probe.ladder.iter().enumerate() {
            let exact = match &entry.exact {
                DistJson::LogOf(k) => format!("log {k}"),
                DistJson::Dim(d) => format!("dim {d}"),
                DistJson::Infinite => "inf".to_string(),
            };
            let rendered = entry
                .rendered
                .map(|x| x.to_string())
                .unwrap_or_else(|| "inf".to_string());
            let _ = writeln!(
                out,
                "{},{n},{},{}",
                csv_field(&probe.probe),
                csv_field(&exact),
                csv_field(&rendered)
            );
        }
    }
    out
}
