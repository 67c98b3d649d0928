//! Significance curves for normal sampling models, and data simulation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::curve::{ParameterGrid, Provenance, SignificanceCurve, TailPolicy};
use crate::error::{ensure_finite, Error, Result};
use crate::special;

/// Number of nodes in the default grid.
pub const DEFAULT_GRID_POINTS: usize = 4001;

/// Default grids span the source's `[q(TAIL_MASS), q(1 - TAIL_MASS)]`.
pub const DEFAULT_TAIL_MASS: f64 = 1e-10;

/// `n`, mean and sample standard deviation (divisor `n - 1`) of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
}

impl SampleSummary {
    pub fn new(n: usize, mean: f64, sd: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InsufficientData(
                "sample size must be at least 1".into(),
            ));
        }
        ensure_finite("mean", mean)?;
        if !(sd >= 0.0 && sd.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "sd must be finite and >= 0, got {sd}"
            )));
        }
        Ok(Self { n, mean, sd })
    }

    pub fn from_sample(sample: &[f64]) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::InsufficientData("empty sample".into()));
        }
        for &x in sample {
            ensure_finite("observation", x)?;
        }
        let n = sample.len();
        let mean = sample.iter().sum::<f64>() / n as f64;
        let sd = if n > 1 {
            let ss: f64 = sample.iter().map(|x| (x - mean).powi(2)).sum();
            (ss / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Ok(Self { n, mean, sd })
    }

    pub fn standard_error(&self) -> f64 {
        self.sd / (self.n as f64).sqrt()
    }
}

/// Normal sampling model with mean `theta` (of interest) and sd `gamma` (nuisance).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalModelSpec {
    pub theta: f64,
    pub gamma: f64,
    pub n: usize,
}

impl NormalModelSpec {
    pub fn new(theta: f64, gamma: f64, n: usize) -> Result<Self> {
        ensure_finite("theta", theta)?;
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Domain(format!(
                "population sd must be > 0, got {gamma}"
            )));
        }
        if n == 0 {
            return Err(Error::Domain("sample size must be at least 1".into()));
        }
        Ok(Self { theta, gamma, n })
    }
}

/// Standardized shape of a location-scale curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Normal,
    StudentT { dof: f64 },
}

impl Family {
    pub fn cdf(&self, z: f64) -> f64 {
        match *self {
            Family::Normal => special::normal_cdf(z),
            Family::StudentT { dof } => special::student_t_cdf(z, dof),
        }
    }

    pub fn quantile(&self, p: f64) -> f64 {
        match *self {
            Family::Normal => special::normal_quantile(p),
            Family::StudentT { dof } => special::student_t_quantile(p, dof),
        }
    }

    fn key(&self) -> u64 {
        match *self {
            Family::Normal => 0,
            Family::StudentT { dof } => dof.to_bits(),
        }
    }
}

/// How a parametric builder places its grid nodes.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "layout")]
pub enum GridSpec {
    /// Nodes at source quantiles, evenly spaced in normal scores so the
    /// centre and both tails down to [`DEFAULT_TAIL_MASS`] are resolved.
    #[default]
    Quantile,
    QuantilePoints {
        points: usize,
    },
    Uniform {
        min: f64,
        max: f64,
        points: usize,
    },
    Explicit {
        nodes: Vec<f64>,
    },
}

/// Standard nodes `z` and their CDF values; shared by every curve of one family.
#[derive(Debug)]
struct Shape {
    z: Vec<f64>,
    cdf: Vec<f64>,
}

type ShapeCache = Mutex<HashMap<(u64, usize), Arc<Shape>>>;

fn standard_shape(family: Family, points: usize) -> Arc<Shape> {
    static CACHE: OnceLock<ShapeCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (family.key(), points);
    if let Some(shape) = cache.lock().expect("shape cache poisoned").get(&key) {
        return shape.clone();
    }
    let shape = Arc::new(build_shape(family, points));
    cache
        .lock()
        .expect("shape cache poisoned")
        .entry(key)
        .or_insert(shape)
        .clone()
}

fn build_shape(family: Family, points: usize) -> Shape {
    let edge = special::normal_quantile(DEFAULT_TAIL_MASS);
    let step = -2.0 * edge / (points - 1) as f64;
    let mut z = Vec::with_capacity(points);
    for i in 0..points {
        let score = edge + step * i as f64;
        let node = match family {
            Family::Normal => score,
            _ => family.quantile(special::normal_cdf(score)),
        };
        if z.last().is_none_or(|&prev| node > prev) {
            z.push(node);
        }
    }
    let cdf = z.iter().map(|&v| family.cdf(v)).collect();
    Shape { z, cdf }
}

/// Curve with CDF `family((theta - loc) / scale)`.
pub fn location_scale_curve(
    family: Family,
    loc: f64,
    scale: f64,
    grid: &GridSpec,
    provenance: Provenance,
) -> Result<SignificanceCurve> {
    ensure_finite("location", loc)?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Domain(format!("scale must be > 0, got {scale}")));
    }
    let points = match grid {
        GridSpec::Quantile => DEFAULT_GRID_POINTS,
        GridSpec::QuantilePoints { points } => *points,
        GridSpec::Uniform { min, max, points } => {
            let grid = ParameterGrid::uniform(*min, *max, *points)?;
            return evaluate_on(family, loc, scale, grid, provenance);
        }
        GridSpec::Explicit { nodes } => {
            let grid = ParameterGrid::new(nodes.clone())?;
            return evaluate_on(family, loc, scale, grid, provenance);
        }
    };
    if points < 2 {
        return Err(Error::InvalidInput(format!(
            "grid needs at least 2 points, got {points}"
        )));
    }
    let shape = standard_shape(family, points);
    let mut nodes: Vec<f64> = shape.z.iter().map(|&z| loc + scale * z).collect();
    let mut cdf = shape.cdf.clone();
    // A tiny scale at a large location can collapse neighbouring nodes.
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        let mut keep_nodes = Vec::with_capacity(nodes.len());
        let mut keep_cdf = Vec::with_capacity(nodes.len());
        for (x, c) in nodes.into_iter().zip(cdf) {
            if keep_nodes.last().is_none_or(|&prev| x > prev) {
                keep_nodes.push(x);
                keep_cdf.push(c);
            }
        }
        nodes = keep_nodes;
        cdf = keep_cdf;
    }
    SignificanceCurve::new(
        ParameterGrid::new(nodes)?,
        cdf,
        TailPolicy::Flat,
        provenance,
    )
}

fn evaluate_on(
    family: Family,
    loc: f64,
    scale: f64,
    grid: ParameterGrid,
    provenance: Provenance,
) -> Result<SignificanceCurve> {
    let cdf = grid
        .nodes()
        .iter()
        .map(|&x| family.cdf((x - loc) / scale))
        .collect();
    SignificanceCurve::new(grid, cdf, TailPolicy::Flat, provenance)
}

/// Nodes the default grid would use for a location-scale source.
pub fn default_nodes(family: Family, loc: f64, scale: f64) -> Vec<f64> {
    standard_shape(family, DEFAULT_GRID_POINTS)
        .z
        .iter()
        .map(|&z| loc + scale * z)
        .collect()
}

/// `F(theta) = Phi((theta - mean) / (sigma / sqrt(n)))` for a normal sample with known sd.
pub fn sf_normal_known_sigma(
    summary: &SampleSummary,
    sigma: f64,
    grid: &GridSpec,
) -> Result<SignificanceCurve> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Domain(format!("sigma must be > 0, got {sigma}")));
    }
    let se = sigma / (summary.n as f64).sqrt();
    location_scale_curve(
        Family::Normal,
        summary.mean,
        se,
        grid,
        Provenance::objective(format!(
            "normal mean {} known sigma {sigma} n {}",
            summary.mean, summary.n
        )),
    )
}

/// Student-t pivot curve `T_{n-1}((theta - mean) / (s / sqrt(n)))`.
pub fn sf_student_t_summary(summary: &SampleSummary, grid: &GridSpec) -> Result<SignificanceCurve> {
    if summary.n < 2 {
        return Err(Error::InsufficientData(format!(
            "Student-t curve needs at least 2 observations, got {}",
            summary.n
        )));
    }
    if summary.sd <= 0.0 {
        return Err(Error::InsufficientData("sample has zero variance".into()));
    }
    location_scale_curve(
        Family::StudentT {
            dof: (summary.n - 1) as f64,
        },
        summary.mean,
        summary.standard_error(),
        grid,
        Provenance::objective(format!(
            "student-t mean {} sd {} n {}",
            summary.mean, summary.sd, summary.n
        )),
    )
}

pub fn sf_student_t(sample: &[f64], grid: &GridSpec) -> Result<SignificanceCurve> {
    if sample.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "Student-t curve needs at least 2 observations, got {}",
            sample.len()
        )));
    }
    sf_student_t_summary(&SampleSummary::from_sample(sample)?, grid)
}

/// Subjective curve `Phi((theta - mean) / sd)`.
pub fn sf_normal_direct(mean: f64, sd: f64, grid: &GridSpec) -> Result<SignificanceCurve> {
    if !(sd > 0.0 && sd.is_finite()) {
        return Err(Error::Domain(format!("sd must be > 0, got {sd}")));
    }
    location_scale_curve(
        Family::Normal,
        mean,
        sd,
        grid,
        Provenance::subjective(format!("normal({mean}, {sd}^2)")),
    )
}

/// The generator behind every simulation: ChaCha8 seeded from a `u64`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sample_normal<R: Rng + ?Sized>(model: &NormalModelSpec, rng: &mut R) -> Vec<f64> {
    (0..model.n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            model.theta + model.gamma * z
        })
        .collect()
}

/// `n` iid draws from `N(theta, gamma^2)`; identical for identical seeds on every platform.
pub fn simulate_sample(model: &NormalModelSpec, seed: u64) -> Vec<f64> {
    sample_normal(model, &mut seeded_rng(seed))
}

/// Maximizer of the product of normal likelihoods: the precision-weighted mean.
pub fn likelihood_product_mode(sources: &[(f64, f64)]) -> Result<f64> {
    if sources.is_empty() {
        return Err(Error::Domain("need at least one likelihood source".into()));
    }
    let mut weighted = 0.0;
    let mut precision = 0.0;
    for &(mean, sd) in sources {
        ensure_finite("mean", mean)?;
        if !(sd > 0.0 && sd.is_finite()) {
            return Err(Error::Domain(format!("sd must be > 0, got {sd}")));
        }
        let w = 1.0 / (sd * sd);
        weighted += w * mean;
        precision += w;
    }
    Ok(weighted / precision)
}
