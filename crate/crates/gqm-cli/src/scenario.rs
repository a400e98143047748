//! The versioned scenario file: what to compute on which carrier.
//!
//! A scenario is one JSON document. Unknown fields anywhere in it are
//! rejected so a typo cannot silently change an experiment.

use gqm_core::functors::{EndoSpec, LatticeSide, ProbeSpec, SpaceObject};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

pub const SCENARIO_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    pub carrier: CarrierJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endo: Option<EndoJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub probes: Vec<ProbeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugacy: Option<ConjugacyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigJson>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario, String> {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let scenario: Scenario = serde_json::from_str(&text)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        if scenario.version != SCENARIO_VERSION {
            return Err(format!(
                "{}: scenario version {} is not supported (expected {SCENARIO_VERSION})",
                path.display(),
                scenario.version
            ));
        }
        Ok(scenario)
    }

    pub fn probe_specs(&self) -> Vec<ProbeSpec> {
        self.probes.iter().map(ProbeJson::to_spec).collect()
    }
}

/// Carrier families the tool ships. Each name fixes both the lattice
/// elements and which order (sum or intersection) the distance follows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CarrierJson {
    FiniteAbelianSum { moduli: Vec<u64> },
    FiniteAbelianMeet { moduli: Vec<u64> },
    SubspaceSum { p: u64, dim: usize },
    SubspaceMeet { p: u64, dim: usize },
    DirectSumGroup { m: u64 },
    DirectSumField { p: u64 },
    ProfiniteGroup { m: u64 },
    ProfiniteField { p: u64 },
    /// A deliberately broken copy of the sum carrier on Z/4 x Z/2, kept so
    /// the axiom audit has something to catch.
    CorruptedZ4z2,
}

impl CarrierJson {
    /// The space object and lattice side, for families built from an
    /// endomorphism lift. The corrupted fixture has neither.
    pub fn object_side(&self) -> Option<(SpaceObject, LatticeSide)> {
        match self {
            CarrierJson::FiniteAbelianSum { moduli } => Some((
                SpaceObject::FiniteAbelian {
                    moduli: moduli.clone(),
                },
                LatticeSide::Sum,
            )),
            CarrierJson::FiniteAbelianMeet { moduli } => Some((
                SpaceObject::FiniteAbelian {
                    moduli: moduli.clone(),
                },
                LatticeSide::Intersection,
            )),
            CarrierJson::SubspaceSum { p, dim } => Some((
                SpaceObject::FiniteVector { p: *p, dim: *dim },
                LatticeSide::Sum,
            )),
            CarrierJson::SubspaceMeet { p, dim } => Some((
                SpaceObject::FiniteVector { p: *p, dim: *dim },
                LatticeSide::Intersection,
            )),
            CarrierJson::DirectSumGroup { m } => {
                Some((SpaceObject::DirectSumGroup { m: *m }, LatticeSide::Sum))
            }
            CarrierJson::DirectSumField { p } => {
                Some((SpaceObject::DirectSumField { p: *p }, LatticeSide::Sum))
            }
            CarrierJson::ProfiniteGroup { m } => Some((
                SpaceObject::ProfiniteGroup { m: *m },
                LatticeSide::Intersection,
            )),
            CarrierJson::ProfiniteField { p } => Some((
                SpaceObject::ProfiniteField { p: *p },
                LatticeSide::Intersection,
            )),
            CarrierJson::CorruptedZ4z2 => None,
        }
    }

    /// The single modulus or prime underlying the carrier, when there is
    /// one. Needed to render dimension counts and for `--log-base p`.
    pub fn uniform_unit(&self) -> Option<u64> {
        match self {
            CarrierJson::FiniteAbelianSum { moduli } | CarrierJson::FiniteAbelianMeet { moduli } => {
                let first = *moduli.first()?;
                moduli.iter().all(|&m| m == first).then_some(first)
            }
            CarrierJson::SubspaceSum { p, .. }
            | CarrierJson::SubspaceMeet { p, .. }
            | CarrierJson::DirectSumField { p }
            | CarrierJson::ProfiniteField { p } => Some(*p),
            CarrierJson::DirectSumGroup { m } | CarrierJson::ProfiniteGroup { m } => Some(*m),
            CarrierJson::CorruptedZ4z2 => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum EndoJson {
    /// `x -> M x` on a finite object; rows of `M`.
    Matrix { rows: Vec<Vec<u64>> },
    /// `e_i -> sum c * e_{i+j}` on a direct sum; entries `[j, c]`.
    Band { terms: Vec<(i64, u64)> },
    /// `x_i -> sum_j c_j x_{i+j}` on a product; entry `j` is `c_j`.
    CausalBand { coeffs: Vec<u64> },
}

impl EndoJson {
    pub fn to_spec(&self) -> EndoSpec {
        match self {
            EndoJson::Matrix { rows } => EndoSpec::Matrix { rows: rows.clone() },
            EndoJson::Band { terms } => EndoSpec::Band {
                terms: terms.clone(),
            },
            EndoJson::CausalBand { coeffs } => EndoSpec::CausalBand {
                coeffs: coeffs.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ProbeJson {
    Bottom,
    /// Finite object: subobject generated by these coefficient vectors.
    Generators { gens: Vec<Vec<u64>> },
    /// Direct sum: generators placed at a window offset.
    Window { offset: i64, gens: Vec<Vec<u64>> },
    /// Product: an open subgroup given by its body at a depth.
    Cylinder { depth: usize, gens: Vec<Vec<u64>> },
}

impl ProbeJson {
    pub fn to_spec(&self) -> ProbeSpec {
        match self {
            ProbeJson::Bottom => ProbeSpec::Bottom,
            ProbeJson::Generators { gens } => ProbeSpec::Generators { gens: gens.clone() },
            ProbeJson::Window { offset, gens } => ProbeSpec::Window {
                offset: *offset,
                gens: gens.clone(),
            },
            ProbeJson::Cylinder { depth, gens } => ProbeSpec::Cylinder {
                depth: *depth,
                gens: gens.clone(),
            },
        }
    }
}

/// A claimed conjugation: a second endomorphism on the same carrier and the
/// isomorphism said to intertwine the two flows.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjugacyJson {
    pub right_endo: EndoJson,
    pub map: MapJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MapJson {
    /// Shift every window by a fixed amount (direct-sum carriers).
    Translate { by: i64 },
    /// An invertible matrix and its inverse (finite carriers). The inverse
    /// is taken on trust here; the conjugation check verifies both
    /// round trips before using it.
    Matrix {
        rows: Vec<Vec<u64>>,
        inverse_rows: Vec<Vec<u64>>,
    },
}

/// Optional tuning knobs. Command-line flags override these; these override
/// the built-in defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Sample count for the axiom audit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confirm_window: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_depth: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_cap: Option<usize>,
    /// Powers compared by the `loglaw` command.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ks: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_base: Option<String>,
    /// Trajectory length for the `suite` command.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite_steps: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nested_m_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nested_n_max: Option<u64>,
    /// Largest enumerated element set for the `oracle` command.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_budget: Option<u64>,
    /// Trajectory steps fed into the `oracle` comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_steps: Option<u64>,
}

impl Scenario {
    pub fn config(&self) -> ConfigJson {
        self.config.clone().unwrap_or_default()
    }
}
