use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use cutmet_core::autgrp::DEFAULT_VERTEX_CAP;
use cutmet_core::cones::DEFAULT_HYPERMETRIC_BOUND;
use cutmet_core::coords::MAX_POINTS;

/// Stable identifiers of the verification checks, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckId {
    Cuts,
    Facets,
    Incidence,
    Adjacency,
    Hexagons,
    Triangles,
    Gamma,
    Johnson,
    Aut,
    Theorem1,
    Reflect4,
    Hypermetric,
    Theorem2,
}

impl CheckId {
    pub const ALL: [CheckId; 13] = [
        CheckId::Cuts,
        CheckId::Facets,
        CheckId::Incidence,
        CheckId::Adjacency,
        CheckId::Hexagons,
        CheckId::Triangles,
        CheckId::Gamma,
        CheckId::Johnson,
        CheckId::Aut,
        CheckId::Theorem1,
        CheckId::Reflect4,
        CheckId::Hypermetric,
        CheckId::Theorem2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Cuts => "cuts",
            CheckId::Facets => "facets",
            CheckId::Incidence => "incidence",
            CheckId::Adjacency => "adjacency",
            CheckId::Hexagons => "hexagons",
            CheckId::Triangles => "triangles",
            CheckId::Gamma => "gamma",
            CheckId::Johnson => "johnson",
            CheckId::Aut => "aut",
            CheckId::Theorem1 => "theorem1",
            CheckId::Reflect4 => "reflect4",
            CheckId::Hypermetric => "hypermetric",
            CheckId::Theorem2 => "theorem2",
        }
    }

    /// The claim a check certifies, as recorded in reports.
    pub fn claim(self) -> &'static str {
        match self {
            CheckId::Cuts => "there are 2^(n-1)-1 distinct nonzero cuts and each satisfies every triangle inequality",
            CheckId::Facets => "there are 3*C(n,3) triangle facets, each with one +1 and two -1 entries on one 3-set",
            CheckId::Incidence => "every triangle facet contains exactly 3*2^(n-3)-1 cuts",
            CheckId::Adjacency => "two triangle facets meet in a codimension-2 face of the cut cone iff they are non-conflicting",
            CheckId::Hexagons => "each neighbourhood in the complement ridge graph is n-3 hexagons on a common edge",
            CheckId::Triangles => "Triangle edges have n-2 common neighbours, all other edges 2",
            CheckId::Gamma => "Triangles are joined by 0 or 4 edges; the Triangle graph is distance-regular",
            CheckId::Johnson => "the Triangle graph is the 2-intersection graph on 3-subsets",
            CheckId::Aut => "automorphism groups of the ridge graph and its complement agree and contain a faithful Sym(n)",
            CheckId::Theorem1 => "Aut(G_n) is Sym(n) for n >= 5 and has order 144 for n = 4",
            CheckId::Reflect4 => "five reflections generate Sym(3) x Sym(4) acting faithfully on the 7 rays of the 4-point cone",
            CheckId::Hypermetric => "every cut satisfies each hypermetric inequality with value sigma(1-sigma)",
            CheckId::Theorem2 => "triangle facets are the unique cut-count maximizers and their adjacency is sign-determined",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| ConfigError::UnknownCheck(s.to_string()))
    }
}

/// Parses a comma-separated check list; `all` selects every check.
pub fn parse_checks(list: &str) -> Result<BTreeSet<CheckId>, ConfigError> {
    let mut out = BTreeSet::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "all" {
            out.extend(CheckId::ALL);
        } else {
            out.insert(item.parse()?);
        }
    }
    if out.is_empty() {
        return Err(ConfigError::NoChecks);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(ConfigError::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("no checks selected")]
    NoChecks,
    #[error("unknown output format {0:?} (expected text or json)")]
    UnknownFormat(String),
    #[error("need 4 <= n-min <= n-max <= {max}, got n-min = {n_min}, n-max = {n_max}")]
    BadRange {
        n_min: usize,
        n_max: usize,
        max: usize,
    },
    #[error("{0} must be positive")]
    NonPositive(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub checks: BTreeSet<CheckId>,
    pub hypermetric_bound: i64,
    pub aut_vertex_cap: usize,
    pub output_format: OutputFormat,
    pub export_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n_min: 4,
            n_max: 7,
            checks: CheckId::ALL.into_iter().collect(),
            hypermetric_bound: DEFAULT_HYPERMETRIC_BOUND,
            aut_vertex_cap: DEFAULT_VERTEX_CAP,
            output_format: OutputFormat::Text,
            export_dir: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(4 <= self.n_min && self.n_min <= self.n_max && self.n_max <= MAX_POINTS) {
            return Err(ConfigError::BadRange {
                n_min: self.n_min,
                n_max: self.n_max,
                max: MAX_POINTS,
            });
        }
        if self.hypermetric_bound < 1 {
            return Err(ConfigError::NonPositive("hypermetric-bound"));
        }
        if self.aut_vertex_cap == 0 {
            return Err(ConfigError::NonPositive("aut-vertex-cap"));
        }
        if self.checks.is_empty() {
            return Err(ConfigError::NoChecks);
        }
        Ok(())
    }

    pub fn n_values(&self) -> std::ops::RangeInclusive<usize> {
        self.n_min..=self.n_max
    }
}
