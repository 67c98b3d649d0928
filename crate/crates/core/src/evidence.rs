//! JSON evidence files and combination-tree expressions.
//!
//! ```json
//! {
//!   "grid": { "min": -20.0, "max": 20.0, "points": 4001 },
//!   "sources": [
//!     { "id": "y1", "kind": "normal_sample", "data": [0.523, 2.460, 1.119] },
//!     { "kind": "summary_t", "n": 4, "mean": -1.7085, "sd": 2.1794 },
//!     { "kind": "subjective_normal", "mean": 0.0, "sd": 3.0 },
//!     { "kind": "elicited_pvalues", "points": [[-2.0, 0.1], [0.0, 0.5], [2.0, 0.9]] },
//!     { "kind": "elicited_intervals", "median": 0.0,
//!       "entries": [{ "level": 0.9, "lo": -1.645, "hi": 1.645 }] },
//!     { "kind": "hypothetical_data", "model": { "family": "normal", "sigma": 25.0 },
//!       "data": [740.0] },
//!     { "kind": "posterior", "points": [[-1.0, 0.2], [1.0, 0.8]], "matching": true }
//!   ]
//! }
//! ```
//!
//! `grid` is optional and applies to the parametric sources; without it each
//! source gets its own default quantile grid.

use serde::{Deserialize, Serialize};

use crate::curve::SignificanceCurve;
use crate::elicit::{
    sf_from_bayes_posterior, sf_from_elicited_intervals, sf_from_elicited_pvalues,
    sf_from_hypothetical_data, ElicitedIntervals, ElicitedPoints, HypotheticalModel,
    TailCompletion,
};
use crate::error::{Error, Result};
use crate::laplace::CombineTree;
use crate::models::{
    sf_normal_direct, sf_normal_known_sigma, sf_student_t, sf_student_t_summary, GridSpec,
    SampleSummary,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRange {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvidenceSource {
    /// Raw normal sample: known-sigma pivot when `sigma` is given, Student-t otherwise.
    NormalSample {
        data: Vec<f64>,
        #[serde(default)]
        sigma: Option<f64>,
    },
    SummaryT {
        n: usize,
        mean: f64,
        sd: f64,
    },
    SubjectiveNormal {
        mean: f64,
        sd: f64,
    },
    ElicitedPvalues {
        points: ElicitedPoints,
        #[serde(default)]
        tail: TailCompletion,
    },
    ElicitedIntervals {
        median: f64,
        entries: ElicitedIntervals,
        #[serde(default)]
        tail: TailCompletion,
    },
    HypotheticalData {
        model: HypotheticalModel,
        data: Vec<f64>,
    },
    Posterior {
        points: ElicitedPoints,
        matching: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(flatten)]
    pub source: EvidenceSource,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridRange>,
    pub sources: Vec<SourceRecord>,
}

impl EvidenceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: EvidenceFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.sources.is_empty() {
            return Err(Error::InvalidInput("evidence file has no sources".into()));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("evidence serializes")
    }

    fn grid_spec(&self) -> GridSpec {
        match self.grid {
            Some(GridRange { min, max, points }) => GridSpec::Uniform { min, max, points },
            None => GridSpec::Quantile,
        }
    }

    /// Label of source `i`: its id, or `sources[i]`.
    pub fn label(&self, i: usize) -> String {
        self.sources[i]
            .id
            .clone()
            .unwrap_or_else(|| format!("sources[{i}]"))
    }

    /// Builds every source's curve; failures name the offending source.
    pub fn build_curves(&self) -> Result<Vec<SignificanceCurve>> {
        let grid = self.grid_spec();
        self.sources
            .iter()
            .enumerate()
            .map(|(i, rec)| {
                build_source(&rec.source, &grid)
                    .map(|curve| {
                        let mut p = curve.provenance().clone();
                        p.label = format!("{}: {}", self.label(i), p.label);
                        curve.with_provenance(p)
                    })
                    .map_err(|e| Error::InSource {
                        index: i,
                        id: self.label(i),
                        inner: Box::new(e),
                    })
            })
            .collect()
    }
}

pub fn build_source(source: &EvidenceSource, grid: &GridSpec) -> Result<SignificanceCurve> {
    match source {
        EvidenceSource::NormalSample { data, sigma } => match sigma {
            Some(sigma) => sf_normal_known_sigma(&SampleSummary::from_sample(data)?, *sigma, grid),
            None => sf_student_t(data, grid),
        },
        EvidenceSource::SummaryT { n, mean, sd } => {
            sf_student_t_summary(&SampleSummary::new(*n, *mean, *sd)?, grid)
        }
        EvidenceSource::SubjectiveNormal { mean, sd } => sf_normal_direct(*mean, *sd, grid),
        EvidenceSource::ElicitedPvalues { points, tail } => sf_from_elicited_pvalues(points, *tail),
        EvidenceSource::ElicitedIntervals {
            median,
            entries,
            tail,
        } => sf_from_elicited_intervals(entries, *median, *tail),
        EvidenceSource::HypotheticalData { model, data } => {
            sf_from_hypothetical_data(*model, data, grid)
        }
        EvidenceSource::Posterior { points, matching } => {
            sf_from_bayes_posterior(points, *matching)
        }
    }
}

/// Parsed nesting expression such as `((0,1),(prior_a,prior_b))`. Leaves are
/// source indices or ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeExpr {
    Leaf(String),
    Group(Vec<TreeExpr>),
}

impl TreeExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let expr = parse_expr(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!(
                "unexpected '{}' at position {pos} of tree expression",
                chars[pos]
            )));
        }
        Ok(expr)
    }

    /// Resolves leaves against `file`'s sources and their built `curves`.
    /// Each source may appear at most once.
    pub fn resolve(
        &self,
        file: &EvidenceFile,
        curves: &[SignificanceCurve],
    ) -> Result<CombineTree> {
        let mut used = vec![false; curves.len()];
        self.resolve_inner(file, curves, &mut used)
    }

    fn resolve_inner(
        &self,
        file: &EvidenceFile,
        curves: &[SignificanceCurve],
        used: &mut [bool],
    ) -> Result<CombineTree> {
        match self {
            TreeExpr::Leaf(name) => {
                let idx = file
                    .sources
                    .iter()
                    .position(|s| s.id.as_deref() == Some(name.as_str()))
                    .or_else(|| name.parse::<usize>().ok().filter(|&i| i < curves.len()))
                    .ok_or_else(|| {
                        Error::InvalidInput(format!("tree leaf '{name}' names no source"))
                    })?;
                if std::mem::replace(&mut used[idx], true) {
                    return Err(Error::InvalidInput(format!(
                        "source '{name}' appears more than once in the tree"
                    )));
                }
                Ok(CombineTree::Leaf(curves[idx].clone()))
            }
            TreeExpr::Group(children) => Ok(CombineTree::Group(
                children
                    .iter()
                    .map(|c| c.resolve_inner(file, curves, used))
                    .collect::<Result<_>>()?,
            )),
        }
    }
}

fn parse_expr(chars: &[char], pos: &mut usize) -> Result<TreeExpr> {
    match chars.get(*pos) {
        Some('(') => {
            *pos += 1;
            let mut children = Vec::new();
            if chars.get(*pos) == Some(&')') {
                return Err(Error::Parse(format!(
                    "empty group at position {}",
                    *pos - 1
                )));
            }
            loop {
                children.push(parse_expr(chars, pos)?);
                match chars.get(*pos) {
                    Some(',') => *pos += 1,
                    Some(')') => {
                        *pos += 1;
                        return Ok(TreeExpr::Group(children));
                    }
                    Some(c) => {
                        return Err(Error::Parse(format!(
                            "expected ',' or ')' at position {}, found '{c}'",
                            *pos
                        )))
                    }
                    None => return Err(Error::Parse("unclosed '(' in tree expression".into())),
                }
            }
        }
        Some(_) => {
            let start = *pos;
            while let Some(&c) = chars.get(*pos) {
                if c.is_alphanumeric() || c == '_' || c == '-' || c == '.' {
                    *pos += 1;
                } else {
                    break;
                }
            }
            if start == *pos {
                return Err(Error::Parse(format!(
                    "expected a source name at position {start}, found '{}'",
                    chars[start]
                )));
            }
            Ok(TreeExpr::Leaf(chars[start..*pos].iter().collect()))
        }
        None => Err(Error::Parse("tree expression ended early".into())),
    }
}
