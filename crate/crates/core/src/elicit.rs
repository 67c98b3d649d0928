//! Subjective significance curves from agent input: hypothetical data,
//! elicited p-values or central intervals, and imported posteriors.

use serde::{Deserialize, Serialize};

use crate::curve::{ParameterGrid, Provenance, SignificanceCurve, TailPolicy};
use crate::error::{ensure_finite, Error, Result};
use crate::laplace::{de_cdf, de_quantile};
use crate::models::{
    sf_normal_known_sigma, sf_student_t, GridSpec, SampleSummary, DEFAULT_TAIL_MASS,
};

/// Spacing of tail-completion nodes on the Laplace pivot scale.
const TAIL_STEP: f64 = 0.02;

/// Lower-tailed p-values `(theta, p)` at increasing null values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct ElicitedPoints {
    points: Vec<(f64, f64)>,
}

impl ElicitedPoints {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 elicited points, got {}",
                points.len()
            )));
        }
        for (i, &(theta, p)) in points.iter().enumerate() {
            ensure_finite("elicited theta", theta)?;
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::InvalidInput(format!(
                    "elicited probability {p} at entry {i} not in (0, 1)"
                )));
            }
        }
        for (i, w) in points.windows(2).enumerate() {
            let ((t0, p0), (t1, p1)) = (w[0], w[1]);
            if t1 <= t0 {
                return Err(Error::ElicitationInconsistency {
                    pair: (i, i + 1),
                    reason: format!("parameter values not increasing ({t0} then {t1})"),
                });
            }
            if p1 <= p0 {
                return Err(Error::ElicitationInconsistency {
                    pair: (i, i + 1),
                    reason: format!("p-values not increasing ({p0} at {t0}, {p1} at {t1})"),
                });
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

impl TryFrom<Vec<(f64, f64)>> for ElicitedPoints {
    type Error = Error;

    fn try_from(v: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ElicitedPoints> for Vec<(f64, f64)> {
    fn from(e: ElicitedPoints) -> Self {
        e.points
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalEntry {
    pub level: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Central intervals at several confidence levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<IntervalEntry>", into = "Vec<IntervalEntry>")]
pub struct ElicitedIntervals {
    entries: Vec<IntervalEntry>,
}

impl ElicitedIntervals {
    /// Checks levels and nesting. Entries are kept in the caller's order so
    /// diagnostics can refer to them by position.
    pub fn new(entries: Vec<IntervalEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput(
                "need at least one elicited interval".into(),
            ));
        }
        for (i, e) in entries.iter().enumerate() {
            ensure_finite("interval bound", e.lo)?;
            ensure_finite("interval bound", e.hi)?;
            if !(e.level > 0.0 && e.level < 1.0) {
                return Err(Error::InvalidInput(format!(
                    "interval level {} at entry {i} not in (0, 1)",
                    e.level
                )));
            }
            if e.lo >= e.hi {
                return Err(Error::InvalidInput(format!(
                    "interval at entry {i} has lo {} >= hi {}",
                    e.lo, e.hi
                )));
            }
        }
        let mut order: Vec<usize> = (0..entries.len()).collect();
        order.sort_by(|&a, &b| entries[a].level.total_cmp(&entries[b].level));
        for w in order.windows(2) {
            let (a, b) = (&entries[w[0]], &entries[w[1]]);
            if a.level == b.level {
                return Err(Error::ElicitationInconsistency {
                    pair: (w[0], w[1]),
                    reason: format!("duplicate level {}", a.level),
                });
            }
            if !(b.lo < a.lo && b.hi > a.hi) {
                return Err(Error::ElicitationInconsistency {
                    pair: (w[0], w[1]),
                    reason: format!(
                        "level-{} interval ({}, {}) does not strictly contain level-{} interval ({}, {})",
                        b.level, b.lo, b.hi, a.level, a.lo, a.hi
                    ),
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[IntervalEntry] {
        &self.entries
    }
}

impl TryFrom<Vec<IntervalEntry>> for ElicitedIntervals {
    type Error = Error;

    fn try_from(v: Vec<IntervalEntry>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ElicitedIntervals> for Vec<IntervalEntry> {
    fn from(e: ElicitedIntervals) -> Self {
        e.entries
    }
}

/// Shared additive recall error of an agent: every observation the agent
/// recalls is shifted by one draw of `N(0, noise_sd^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentNoiseSpec {
    pub noise_sd: f64,
}

impl AgentNoiseSpec {
    pub fn new(noise_sd: f64) -> Result<Self> {
        if !(noise_sd >= 0.0 && noise_sd.is_finite()) {
            return Err(Error::Domain(format!(
                "noise sd must be >= 0, got {noise_sd}"
            )));
        }
        Ok(Self { noise_sd })
    }
}

/// How the elicited range is extended to the tails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailCompletion {
    /// Extend linearly on the Laplace pivot scale (exponential CDF tails),
    /// with the slope of the outermost two points, out to the default tail mass.
    #[default]
    Exponential,
    /// No extension; the points must already cover the required mass.
    None,
}

/// Sampling model an agent's hypothetical data is imagined to come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum HypotheticalModel {
    Normal { sigma: f64 },
    StudentT,
}

pub fn sf_from_hypothetical_data(
    model: HypotheticalModel,
    sample: &[f64],
    grid: &GridSpec,
) -> Result<SignificanceCurve> {
    let curve = match model {
        HypotheticalModel::Normal { sigma } => {
            let summary = SampleSummary::from_sample(sample)?;
            sf_normal_known_sigma(&summary, sigma, grid)?
        }
        HypotheticalModel::StudentT => sf_student_t(sample, grid).map_err(|e| match e {
            Error::InsufficientData(msg) => Error::Domain(format!(
                "hypothetical data incompatible with the Student-t model: {msg}"
            )),
            other => other,
        })?,
    };
    let label = format!("hypothetical data: {}", curve.provenance().label);
    Ok(curve.with_provenance(Provenance::subjective(label)))
}

pub fn sf_from_elicited_pvalues(
    points: &ElicitedPoints,
    tail: TailCompletion,
) -> Result<SignificanceCurve> {
    interpolate_points(
        points,
        tail,
        Provenance::subjective(format!(
            "elicited p-values ({} points)",
            points.points().len()
        )),
    )
}

/// Central level-`rho` intervals become CDF nodes at `(1 - rho) / 2` and
/// `(1 + rho) / 2`; the median supplies the node at 1/2.
pub fn sf_from_elicited_intervals(
    entries: &ElicitedIntervals,
    median: f64,
    tail: TailCompletion,
) -> Result<SignificanceCurve> {
    ensure_finite("median", median)?;
    for (i, e) in entries.entries().iter().enumerate() {
        if !(e.lo < median && median < e.hi) {
            return Err(Error::ElicitationInconsistency {
                pair: (i, i),
                reason: format!(
                    "level-{} interval ({}, {}) does not contain the median {median}",
                    e.level, e.lo, e.hi
                ),
            });
        }
    }
    let mut points = vec![(median, 0.5)];
    for e in entries.entries() {
        let alpha = 0.5 * (1.0 - e.level);
        points.push((e.lo, alpha));
        points.push((e.hi, 1.0 - alpha));
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    let points = ElicitedPoints::new(points)?;
    interpolate_points(
        &points,
        tail,
        Provenance::subjective(format!(
            "elicited intervals ({} levels, median {median})",
            entries.entries().len()
        )),
    )
}

/// Wraps a posterior CDF. Posteriors from priors not declared
/// probability-matching carry the `approximate` flag.
pub fn sf_from_bayes_posterior(
    posterior: &ElicitedPoints,
    matching_declared: bool,
) -> Result<SignificanceCurve> {
    let mut provenance = Provenance::subjective(if matching_declared {
        "posterior (matching prior)"
    } else {
        "posterior (prior not declared matching)"
    });
    provenance.approximate = !matching_declared;
    interpolate_points(posterior, TailCompletion::Exponential, provenance)
}

fn interpolate_points(
    points: &ElicitedPoints,
    tail: TailCompletion,
    provenance: Provenance,
) -> Result<SignificanceCurve> {
    let pts = points.points();
    let mut nodes = Vec::new();
    let mut cdf = Vec::new();

    let (left, right) = match tail {
        TailCompletion::None => (Vec::new(), Vec::new()),
        TailCompletion::Exponential => (
            tail_nodes(pts[0], pts[1], true)?,
            tail_nodes(pts[pts.len() - 1], pts[pts.len() - 2], false)?,
        ),
    };
    for &(x, c) in left.iter().rev() {
        nodes.push(x);
        cdf.push(c);
    }
    for &(x, c) in pts {
        nodes.push(x);
        cdf.push(c);
    }
    for &(x, c) in &right {
        nodes.push(x);
        cdf.push(c);
    }
    SignificanceCurve::new(
        ParameterGrid::new(nodes)?,
        cdf,
        TailPolicy::Flat,
        provenance,
    )
}

/// Tail nodes beyond `end`, ordered outward. `inner` is the neighbouring point
/// that fixes the slope on the pivot scale.
fn tail_nodes(end: (f64, f64), inner: (f64, f64), left: bool) -> Result<Vec<(f64, f64)>> {
    let z_end = de_quantile(end.1)?;
    let z_inner = de_quantile(inner.1)?;
    let slope = (z_end - z_inner) / (end.0 - inner.0);
    let target = if left {
        de_quantile(DEFAULT_TAIL_MASS)?
    } else {
        -de_quantile(DEFAULT_TAIL_MASS)?
    };
    let span = target - z_end;
    if (left && span >= 0.0) || (!left && span <= 0.0) {
        return Ok(Vec::new());
    }
    let steps = (span.abs() / TAIL_STEP).ceil() as usize;
    let mut out = Vec::with_capacity(steps);
    for k in 1..=steps {
        let z = z_end + span * k as f64 / steps as f64;
        let x = end.0 + (z - z_end) / slope;
        let prev = out.last().map_or(end.0, |&(px, _): &(f64, f64)| px);
        if (left && x < prev) || (!left && x > prev) {
            out.push((x, de_cdf(z)));
        }
    }
    Ok(out)
}
