//! Significance curves: monotone CDFs of the parameter of interest stored on
//! a finite grid, and the probability/quantile/interval queries on them.
//!
//! A curve evaluated at observed data is also the confidence measure of the
//! parameter, so probabilities of parameter sets are read off the same grid.

use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Curves must put at most this much mass below the first node and above the last.
pub const MASS_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct ParameterGrid {
    nodes: Vec<f64>,
}

impl ParameterGrid {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "grid needs at least 2 nodes, got {}",
                nodes.len()
            )));
        }
        for (i, &x) in nodes.iter().enumerate() {
            ensure_finite("grid node", x)?;
            if i > 0 && nodes[i - 1] >= x {
                return Err(Error::InvalidInput(format!(
                    "grid nodes must be strictly increasing (node {} = {} >= node {} = {})",
                    i - 1,
                    nodes[i - 1],
                    i,
                    x
                )));
            }
        }
        Ok(Self { nodes })
    }

    pub fn uniform(min: f64, max: f64, points: usize) -> Result<Self> {
        ensure_finite("grid min", min)?;
        ensure_finite("grid max", max)?;
        if points < 2 || min >= max {
            return Err(Error::InvalidInput(format!(
                "uniform grid needs min < max and at least 2 points (min={min}, max={max}, points={points})"
            )));
        }
        let step = (max - min) / (points - 1) as f64;
        let mut nodes: Vec<f64> = (0..points).map(|i| min + step * i as f64).collect();
        nodes[points - 1] = max;
        Self::new(nodes)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.nodes[0]
    }

    pub fn max(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }
}

/// What the CDF does outside the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailPolicy {
    /// Continue the first and last CDF values.
    #[default]
    Flat,
    /// Drop to 0 left of the grid and rise to 1 right of it.
    Saturate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Objective,
    Subjective,
    Combined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub origin: Origin,
    pub label: String,
    /// Set when the curve is only approximately a confidence measure, e.g. a
    /// posterior from a prior not declared probability-matching.
    #[serde(default)]
    pub approximate: bool,
}

impl Provenance {
    pub fn objective(label: impl Into<String>) -> Self {
        Self {
            origin: Origin::Objective,
            label: label.into(),
            approximate: false,
        }
    }

    pub fn subjective(label: impl Into<String>) -> Self {
        Self {
            origin: Origin::Subjective,
            label: label.into(),
            approximate: false,
        }
    }

    pub fn combined(label: impl Into<String>) -> Self {
        Self {
            origin: Origin::Combined,
            label: label.into(),
            approximate: false,
        }
    }
}

/// Alternative hypothesis for a one-parameter test of `theta = theta0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alternative {
    /// H1: theta > theta0; p-value F(theta0).
    Greater,
    /// H1: theta < theta0; p-value 1 - F(theta0).
    Less,
    TwoSided,
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alternative::Greater => "greater",
            Alternative::Less => "less",
            Alternative::TwoSided => "two-sided",
        })
    }
}

impl std::str::FromStr for Alternative {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greater" => Ok(Alternative::Greater),
            "less" => Ok(Alternative::Less),
            "two-sided" | "two_sided" => Ok(Alternative::TwoSided),
            other => Err(Error::InvalidInput(format!(
                "unknown alternative '{other}' (expected greater, less or two-sided)"
            ))),
        }
    }
}

/// Finite union of disjoint half-open parameter intervals `(lo, hi]`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    /// Sorts the intervals and checks they are disjoint. Endpoints may be
    /// infinite; empty intervals are rejected.
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        for &(lo, hi) in &intervals {
            if lo.is_nan() || hi.is_nan() || lo >= hi {
                return Err(Error::InvalidInput(format!(
                    "interval ({lo}, {hi}] must satisfy lo < hi"
                )));
            }
        }
        intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in intervals.windows(2) {
            if w[1].0 < w[0].1 {
                return Err(Error::InvalidInput(format!(
                    "intervals ({}, {}] and ({}, {}] overlap",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(Self { intervals })
    }

    pub fn single(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![(lo, hi)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.intervals
            .iter()
            .any(|&(lo, hi)| theta > lo && theta <= hi)
    }
}

impl TryFrom<Vec<(f64, f64)>> for IntervalUnion {
    type Error = Error;

    fn try_from(v: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<IntervalUnion> for Vec<(f64, f64)> {
    fn from(u: IntervalUnion) -> Self {
        u.intervals
    }
}

/// A set index `B`: finite union of disjoint subintervals of `[0, 1]`.
/// Its level is the total length.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct SetIndex {
    subsets: Vec<(f64, f64)>,
}

impl SetIndex {
    pub fn new(mut subsets: Vec<(f64, f64)>) -> Result<Self> {
        for &(lo, hi) in &subsets {
            if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
                return Err(Error::InvalidInput(format!(
                    "index subset ({lo}, {hi}) must satisfy 0 <= lo < hi <= 1"
                )));
            }
        }
        subsets.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in subsets.windows(2) {
            if w[1].0 < w[0].1 {
                return Err(Error::InvalidInput(format!(
                    "index subsets ({}, {}) and ({}, {}) overlap",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(Self { subsets })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        Self {
            subsets: vec![(0.0, 1.0)],
        }
    }

    /// `[0, level)`: the lower-tailed index.
    pub fn lower(level: f64) -> Result<Self> {
        Self::new(vec![(0.0, level)])
    }

    /// `[1 - level, 1)`: the upper-tailed index.
    pub fn upper(level: f64) -> Result<Self> {
        Self::new(vec![(1.0 - level, 1.0)])
    }

    /// Equal tails on each side.
    pub fn central(level: f64) -> Result<Self> {
        let tail = 0.5 * (1.0 - level);
        Self::new(vec![(tail, 1.0 - tail)])
    }

    pub fn subsets(&self) -> &[(f64, f64)] {
        &self.subsets
    }

    pub fn level(&self) -> f64 {
        self.subsets.iter().map(|&(lo, hi)| hi - lo).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }
}

impl TryFrom<Vec<(f64, f64)>> for SetIndex {
    type Error = Error;

    fn try_from(v: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SetIndex> for Vec<(f64, f64)> {
    fn from(b: SetIndex) -> Self {
        b.subsets
    }
}

impl fmt::Display for SetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.subsets.is_empty() {
            return f.write_str("{}");
        }
        for (i, (lo, hi)) in self.subsets.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "({lo}, {hi}]")?;
        }
        Ok(())
    }
}

/// A significance function at fixed data, stored as piecewise-linear CDF values on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SignificanceCurve {
    grid: ParameterGrid,
    cdf: Vec<f64>,
    tail: TailPolicy,
    provenance: Provenance,
}

impl SignificanceCurve {
    pub fn new(
        grid: ParameterGrid,
        cdf: Vec<f64>,
        tail: TailPolicy,
        provenance: Provenance,
    ) -> Result<Self> {
        if cdf.len() != grid.len() {
            return Err(Error::InvalidInput(format!(
                "{} cdf values for {} grid nodes",
                cdf.len(),
                grid.len()
            )));
        }
        for (i, &c) in cdf.iter().enumerate() {
            if !(0.0..=1.0).contains(&c) {
                return Err(Error::InvalidInput(format!(
                    "cdf value {c} at node {i} outside [0, 1]"
                )));
            }
            if i > 0 && c < cdf[i - 1] {
                return Err(Error::InvalidInput(format!(
                    "cdf decreases between nodes {} and {i} ({} > {c})",
                    i - 1,
                    cdf[i - 1]
                )));
            }
        }
        let (first, last) = (cdf[0], cdf[cdf.len() - 1]);
        if first > MASS_TOLERANCE || last < 1.0 - MASS_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "curve represents only [{first}, {last}] of the probability mass over [{}, {}]",
                grid.min(),
                grid.max()
            )));
        }
        Ok(Self {
            grid,
            cdf,
            tail,
            provenance,
        })
    }

    pub fn grid(&self) -> &ParameterGrid {
        &self.grid
    }

    pub fn nodes(&self) -> &[f64] {
        self.grid.nodes()
    }

    pub fn cdf_values(&self) -> &[f64] {
        &self.cdf
    }

    pub fn tail_policy(&self) -> TailPolicy {
        self.tail
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Lowest and highest probability the grid represents.
    pub fn mass_range(&self) -> (f64, f64) {
        (self.cdf[0], self.cdf[self.cdf.len() - 1])
    }

    fn left_value(&self) -> f64 {
        match self.tail {
            TailPolicy::Flat => self.cdf[0],
            TailPolicy::Saturate => 0.0,
        }
    }

    fn right_value(&self) -> f64 {
        match self.tail {
            TailPolicy::Flat => self.cdf[self.cdf.len() - 1],
            TailPolicy::Saturate => 1.0,
        }
    }

    /// `F(theta)` by linear interpolation; accepts infinite arguments.
    pub(crate) fn interpolate(&self, theta: f64) -> f64 {
        let nodes = self.grid.nodes();
        let last = nodes.len() - 1;
        if theta < nodes[0] {
            return self.left_value();
        }
        if theta >= nodes[last] {
            return if theta == nodes[last] {
                self.cdf[last]
            } else {
                self.right_value()
            };
        }
        // nodes[k - 1] <= theta < nodes[k]
        let k = nodes.partition_point(|&x| x <= theta);
        self.segment_value(k - 1, theta)
    }

    fn segment_value(&self, i: usize, theta: f64) -> f64 {
        let nodes = self.grid.nodes();
        let (x0, x1) = (nodes[i], nodes[i + 1]);
        let (c0, c1) = (self.cdf[i], self.cdf[i + 1]);
        let w = (theta - x0) / (x1 - x0);
        (c0 + w * (c1 - c0)).clamp(c0, c1)
    }

    /// Evaluates the curve at an ascending sequence of points with one pass over the grid.
    pub(crate) fn interpolate_sorted(&self, thetas: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.reserve(thetas.len());
        let nodes = self.grid.nodes();
        let last = nodes.len() - 1;
        let mut k = 0usize;
        for &theta in thetas {
            if theta < nodes[0] {
                out.push(self.left_value());
                continue;
            }
            if theta >= nodes[last] {
                out.push(if theta == nodes[last] {
                    self.cdf[last]
                } else {
                    self.right_value()
                });
                continue;
            }
            while nodes[k + 1] <= theta {
                k += 1;
            }
            out.push(self.segment_value(k, theta));
        }
    }

    /// `F(theta)`, clamped to the tail values outside the grid.
    pub fn cdf(&self, theta: f64) -> Result<f64> {
        ensure_finite("theta", theta)?;
        Ok(self.interpolate(theta))
    }

    /// `inf { theta : F(theta) >= p }` for `p` in `(0, 1)`.
    ///
    /// On flat stretches this returns the left end. Probabilities outside the
    /// mass carried by the grid are an error, never an extrapolation.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!(
                "quantile probability {p} not in (0, 1)"
            )));
        }
        self.quantile_in_range(p)
    }

    fn quantile_in_range(&self, p: f64) -> Result<f64> {
        let (lo, hi) = self.mass_range();
        if p < lo || p > hi {
            return Err(Error::TailExtrapolation {
                requested: p,
                lo,
                hi,
            });
        }
        let nodes = self.grid.nodes();
        let k = self.cdf.partition_point(|&c| c < p);
        if k == 0 {
            return Ok(nodes[0]);
        }
        let (x0, x1) = (nodes[k - 1], nodes[k]);
        let (c0, c1) = (self.cdf[k - 1], self.cdf[k]);
        let theta = x0 + (p - c0) / (c1 - c0) * (x1 - x0);
        Ok(theta.clamp(x0, x1))
    }

    /// Parameter value bounding an index endpoint: 0 and 1 map to the grid
    /// ends, which stand in for -inf and +inf.
    fn endpoint(&self, p: f64) -> Result<f64> {
        if p <= 0.0 {
            Ok(self.grid.min())
        } else if p >= 1.0 {
            Ok(self.grid.max())
        } else {
            self.quantile_in_range(p)
        }
    }

    /// `(F^-1(alpha_lower), F^-1(1 - alpha_upper)]`, of nominal level
    /// `1 - alpha_lower - alpha_upper`. A zero alpha leaves that side at the grid end.
    pub fn central_interval(&self, alpha_lower: f64, alpha_upper: f64) -> Result<IntervalUnion> {
        if !(alpha_lower >= 0.0 && alpha_upper >= 0.0 && alpha_lower + alpha_upper <= 1.0) {
            return Err(Error::Domain(format!(
                "tail probabilities ({alpha_lower}, {alpha_upper}) must be non-negative and sum to at most 1"
            )));
        }
        if alpha_lower + alpha_upper == 1.0 {
            return Ok(IntervalUnion::default());
        }
        let index = SetIndex::new(vec![(alpha_lower, 1.0 - alpha_upper)])?;
        self.index_to_set(&index)
    }

    pub fn p_value(&self, theta0: f64, alternative: Alternative) -> Result<f64> {
        let f = self.cdf(theta0)?;
        Ok(match alternative {
            Alternative::Greater => f,
            Alternative::Less => 1.0 - f,
            Alternative::TwoSided => (2.0 * f).min(2.0 * (1.0 - f)),
        })
    }

    /// Confidence probability of a finite union of intervals.
    pub fn set_probability(&self, region: &IntervalUnion) -> f64 {
        region
            .intervals()
            .iter()
            .map(|&(lo, hi)| self.interpolate(hi) - self.interpolate(lo))
            .sum()
    }

    /// Canonical set estimate for index `B`: each `(p1, p2]` maps to `(F^-1(p1), F^-1(p2)]`.
    pub fn index_to_set(&self, index: &SetIndex) -> Result<IntervalUnion> {
        let mut intervals = Vec::with_capacity(index.subsets().len());
        for &(p1, p2) in index.subsets() {
            let lo = self.endpoint(p1)?;
            let hi = self.endpoint(p2)?;
            // Distinct probabilities can land on one node across a flat stretch.
            if lo < hi {
                intervals.push((lo, hi));
            }
        }
        IntervalUnion::new(intervals)
    }

    /// Writes the `theta,cdf` dump. Values use Rust's shortest round-trip
    /// formatting, so reading the dump back is bit-exact.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "theta,cdf")?;
        for (x, c) in self.grid.nodes().iter().zip(&self.cdf) {
            writeln!(out, "{x:?},{c:?}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv dump is ASCII")
    }

    pub fn read_csv<R: BufRead>(
        input: R,
        tail: TailPolicy,
        provenance: Provenance,
    ) -> Result<Self> {
        let mut nodes = Vec::new();
        let mut cdf = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line.map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            let line = line.trim();
            if lineno == 0 {
                if line != "theta,cdf" {
                    return Err(Error::Parse(format!(
                        "line 1: expected header 'theta,cdf', found '{line}'"
                    )));
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let (a, b) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("line {}: expected two fields", lineno + 1)))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: '{s}': {e}", lineno + 1)))
            };
            nodes.push(parse(a)?);
            cdf.push(parse(b)?);
        }
        Self::new(ParameterGrid::new(nodes)?, cdf, tail, provenance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear_curve() -> SignificanceCurve {
        // Uniform(-1, 1) CDF: symmetric about 0.
        SignificanceCurve::new(
            ParameterGrid::uniform(-1.0, 1.0, 5).unwrap(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0],
            TailPolicy::Flat,
            Provenance::objective("uniform"),
        )
        .unwrap()
    }

    #[test]
    fn grid_rejects_bad_nodes() {
        assert!(ParameterGrid::new(vec![1.0]).is_err());
        assert!(ParameterGrid::new(vec![0.0, 0.0]).is_err());
        assert!(ParameterGrid::new(vec![0.0, f64::NAN]).is_err());
        assert!(ParameterGrid::new(vec![0.0, 1.0]).is_ok());
    }

    #[test]
    fn curve_rejects_invariant_violations() {
        let grid = ParameterGrid::uniform(0.0, 1.0, 3).unwrap();
        let p = Provenance::objective("x");
        let mk = |v: Vec<f64>| SignificanceCurve::new(grid.clone(), v, TailPolicy::Flat, p.clone());
        assert!(mk(vec![0.0, 0.6, 0.5]).is_err());
        assert!(mk(vec![0.0, 0.5, 1.2]).is_err());
        assert!(mk(vec![0.1, 0.5, 1.0]).is_err());
        assert!(mk(vec![0.0, 0.5]).is_err());
        assert!(mk(vec![0.0005, 0.5, 0.9995]).is_ok());
    }

    #[test]
    fn cdf_at_median_and_tails() {
        let c = linear_curve();
        assert_eq!(c.cdf(0.0).unwrap(), 0.5);
        assert_eq!(c.cdf(-0.25).unwrap(), 0.375);
        assert_eq!(c.cdf(-5.0).unwrap(), 0.0);
        assert_eq!(c.cdf(5.0).unwrap(), 1.0);
        assert!(c.cdf(f64::NAN).is_err());
        assert!(c.cdf(f64::INFINITY).is_err());
    }

    #[test]
    fn quantile_domain_and_tail_errors() {
        let c = linear_curve();
        assert_eq!(c.quantile(0.5).unwrap(), 0.0);
        assert!(matches!(c.quantile(0.0), Err(Error::Domain(_))));
        assert!(matches!(c.quantile(1.0), Err(Error::Domain(_))));

        let narrow = SignificanceCurve::new(
            ParameterGrid::uniform(0.0, 1.0, 2).unwrap(),
            vec![0.0005, 0.9995],
            TailPolicy::Flat,
            Provenance::objective("narrow"),
        )
        .unwrap();
        match narrow.quantile(0.0001) {
            Err(Error::TailExtrapolation { lo, hi, .. }) => {
                assert_eq!((lo, hi), (0.0005, 0.9995));
            }
            other => panic!("expected tail error, got {other:?}"),
        }
    }

    #[test]
    fn quantile_takes_left_end_of_flat_stretch() {
        let c = SignificanceCurve::new(
            ParameterGrid::new(vec![0.0, 1.0, 2.0, 3.0]).unwrap(),
            vec![0.0, 0.5, 0.5, 1.0],
            TailPolicy::Flat,
            Provenance::objective("flat"),
        )
        .unwrap();
        assert_eq!(c.quantile(0.5).unwrap(), 1.0);
    }

    #[test]
    fn central_interval_edge_cases() {
        let c = linear_curve();
        let full = c.central_interval(0.0, 0.0).unwrap();
        assert_eq!(full.intervals(), &[(-1.0, 1.0)]);
        let one_sided = c.central_interval(0.25, 0.0).unwrap();
        assert_eq!(one_sided.intervals(), &[(-0.5, 1.0)]);
        assert!(c.central_interval(0.6, 0.6).is_err());
        assert!(c.central_interval(-0.1, 0.0).is_err());
        assert!(c.central_interval(0.5, 0.5).unwrap().is_empty());
    }

    #[test]
    fn p_values() {
        let c = linear_curve();
        assert_eq!(c.p_value(0.0, Alternative::TwoSided).unwrap(), 1.0);
        assert_eq!(c.p_value(-0.5, Alternative::Greater).unwrap(), 0.25);
        assert_eq!(c.p_value(-0.5, Alternative::Less).unwrap(), 0.75);
        assert_eq!(c.p_value(-0.5, Alternative::TwoSided).unwrap(), 0.5);
    }

    #[test]
    fn interval_union_rejects_overlap() {
        assert!(IntervalUnion::new(vec![(0.0, 2.0), (1.0, 3.0)]).is_err());
        assert!(IntervalUnion::new(vec![(0.0, 1.0), (1.0, 3.0)]).is_ok());
        assert!(IntervalUnion::new(vec![(1.0, 1.0)]).is_err());
    }

    #[test]
    fn set_index_level_and_validation() {
        let b = SetIndex::new(vec![(0.5, 0.99), (0.05, 0.10)]).unwrap();
        assert!((b.level() - 0.54).abs() < 1e-12);
        assert_eq!(b.subsets()[0], (0.05, 0.10));
        assert!(SetIndex::new(vec![(0.2, 0.5), (0.4, 0.6)]).is_err());
        assert!(SetIndex::new(vec![(-0.1, 0.5)]).is_err());
        assert_eq!(SetIndex::empty().level(), 0.0);
        assert_eq!(SetIndex::full().level(), 1.0);
    }

    #[test]
    fn index_to_set_on_symmetric_curve() {
        let c = linear_curve();
        let lower_half = c.index_to_set(&SetIndex::lower(0.5).unwrap()).unwrap();
        assert_eq!(lower_half.intervals(), &[(-1.0, 0.0)]);
        let split = SetIndex::new(vec![(0.0, 0.25), (0.25, 0.75)]).unwrap();
        let set = c.index_to_set(&split).unwrap();
        assert_eq!(set.intervals(), &[(-1.0, -0.5), (-0.5, 0.5)]);
        assert!((c.set_probability(&set) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let c = SignificanceCurve::new(
            ParameterGrid::new(vec![-0.1, 0.1 + 0.2, 1.0 / 3.0]).unwrap(),
            vec![1e-17, 0.1 + 0.2, 1.0],
            TailPolicy::Flat,
            Provenance::objective("rt"),
        )
        .unwrap();
        let dump = c.to_csv_string();
        let back = SignificanceCurve::read_csv(
            dump.as_bytes(),
            TailPolicy::Flat,
            Provenance::objective("rt"),
        )
        .unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_csv_string(), dump);
    }

    #[test]
    fn csv_reader_reports_line_numbers() {
        let err = SignificanceCurve::read_csv(
            "theta,cdf\n0,0\n1,abc\n".as_bytes(),
            TailPolicy::Flat,
            Provenance::objective("bad"),
        )
        .unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        assert!(SignificanceCurve::read_csv(
            "x,y\n".as_bytes(),
            TailPolicy::Flat,
            Provenance::objective("bad")
        )
        .is_err());
    }
}
