//! Monte Carlo betting game between a statistician and a client.
//!
//! For each set index `B` of level `rho`, the statistician posts odds
//! `rho / (1 - rho)` that the canonical set estimate `F_x^{-1}(B)` covers the
//! true parameter. The client knows the true coverage rate, and with it the
//! fair odds `omega = c / (1 - c)`, and takes whichever side of the bet is
//! favourable. The statistician's expected loss is zero exactly when
//! coverage equals level, which is what a calibrated significance function
//! delivers for every `B`.
//!
//! Every replicate draws from its own ChaCha8 stream `(seed, replicate)`, and
//! tallies are integer counts, so reports do not depend on the worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{Provenance, SetIndex, SignificanceCurve};
use crate::elicit::AgentNoiseSpec;
use crate::error::{Error, Result};
use crate::models::{
    location_scale_curve, sample_normal, Family, GridSpec, NormalModelSpec, SampleSummary,
};
use crate::stats::ks_uniform;

/// Reports need at least this many replicates.
pub const MIN_REPORT_REPLICATES: usize = 1000;

/// Posted and fair odds closer than this many standard errors count as equal.
pub const EQUALITY_BAND_SE: f64 = 2.0;

/// Maps a simulated sample to a significance curve. Must be deterministic.
pub trait CurveBuilder: Sync {
    fn build(&self, sample: &[f64]) -> Result<SignificanceCurve>;

    fn describe(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PivotKind {
    StudentT,
    KnownSigma { sigma: f64 },
}

/// A pivot-based curve builder, optionally miscalibrated.
///
/// With standardized pivot `t = (theta - mean) / se` and base CDF `G`, the
/// curve is `G((t - shift) / scale)`: `shift` moves it by that many standard
/// errors and `scale` widens or narrows it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorSpec {
    pub pivot: PivotKind,
    pub shift: f64,
    pub scale: f64,
    #[serde(default)]
    pub grid: GridSpec,
}

impl EstimatorSpec {
    pub fn calibrated() -> Self {
        Self {
            pivot: PivotKind::StudentT,
            shift: 0.0,
            scale: 1.0,
            grid: GridSpec::default(),
        }
    }

    pub fn shifted(shift: f64) -> Self {
        Self {
            shift,
            ..Self::calibrated()
        }
    }

    pub fn scaled(scale: f64) -> Self {
        Self {
            scale,
            ..Self::calibrated()
        }
    }

    pub fn known_sigma(sigma: f64) -> Self {
        Self {
            pivot: PivotKind::KnownSigma { sigma },
            ..Self::calibrated()
        }
    }

    /// Parses `calibrated`, `shift:<v>` or `scale:<v>`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidInput(format!(
                "unknown estimator '{s}' (expected calibrated, shift:<v> or scale:<v>)"
            ))
        };
        if s == "calibrated" {
            return Ok(Self::calibrated());
        }
        let (kind, value) = s.split_once(':').ok_or_else(bad)?;
        let v: f64 = value.parse().map_err(|_| bad())?;
        if !v.is_finite() {
            return Err(bad());
        }
        match kind {
            "shift" => Ok(Self::shifted(v)),
            "scale" if v > 0.0 => Ok(Self::scaled(v)),
            "scale" => Err(Error::Domain(format!("scale must be > 0, got {v}"))),
            _ => Err(bad()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.shift.is_finite() {
            return Err(Error::InvalidInput("shift must be finite".into()));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::Domain(format!(
                "scale must be > 0, got {}",
                self.scale
            )));
        }
        if let PivotKind::KnownSigma { sigma } = self.pivot {
            if !(sigma > 0.0 && sigma.is_finite()) {
                return Err(Error::Domain(format!("sigma must be > 0, got {sigma}")));
            }
        }
        Ok(())
    }
}

impl CurveBuilder for EstimatorSpec {
    fn build(&self, sample: &[f64]) -> Result<SignificanceCurve> {
        self.validate()?;
        let summary = SampleSummary::from_sample(sample)?;
        let (family, se) = match self.pivot {
            PivotKind::StudentT => {
                if summary.n < 2 || summary.sd <= 0.0 {
                    return Err(Error::InsufficientData(
                        "Student-t builder needs two distinct observations".into(),
                    ));
                }
                (
                    Family::StudentT {
                        dof: (summary.n - 1) as f64,
                    },
                    summary.standard_error(),
                )
            }
            PivotKind::KnownSigma { sigma } => (Family::Normal, sigma / (summary.n as f64).sqrt()),
        };
        location_scale_curve(
            family,
            summary.mean + self.shift * se,
            self.scale * se,
            &self.grid,
            Provenance::objective("simulated"),
        )
    }

    fn describe(&self) -> String {
        let base = match self.pivot {
            PivotKind::StudentT => "student-t pivot".to_string(),
            PivotKind::KnownSigma { sigma } => format!("known-sigma pivot (sigma {sigma})"),
        };
        match (self.shift == 0.0, self.scale == 1.0) {
            (true, true) => format!("{base}, calibrated"),
            (false, true) => format!("{base}, shift {}", self.shift),
            (true, false) => format!("{base}, scale {}", self.scale),
            (false, false) => format!("{base}, shift {}, scale {}", self.shift, self.scale),
        }
    }
}

/// Levels 0.5, 0.8, 0.9, 0.95 and 0.99 as lower, upper and central indices,
/// plus the disconnected index `(0.05, 0.10] u (0.50, 0.99]`.
pub fn default_b_suite() -> Vec<SetIndex> {
    let mut suite = Vec::new();
    for level in [0.5, 0.8, 0.9, 0.95, 0.99] {
        suite.push(SetIndex::lower(level).expect("valid level"));
        suite.push(SetIndex::upper(level).expect("valid level"));
        suite.push(SetIndex::central(level).expect("valid level"));
    }
    suite.push(SetIndex::new(vec![(0.05, 0.10), (0.50, 0.99)]).expect("valid index"));
    suite
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    pub model: NormalModelSpec,
    pub b_suite: Vec<SetIndex>,
    pub replicates: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the global rayon pool.
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl GameConfig {
    pub fn new(model: NormalModelSpec, replicates: usize, seed: u64) -> Self {
        Self {
            model,
            b_suite: default_b_suite(),
            replicates,
            seed,
            workers: None,
        }
    }

    pub fn with_suite(mut self, suite: Vec<SetIndex>) -> Self {
        self.b_suite = suite;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::Domain("need at least one replicate".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidInput("worker count must be positive".into()));
        }
        NormalModelSpec::new(self.model.theta, self.model.gamma, self.model.n)?;
        Ok(())
    }
}

/// The generator for replicate `index` of a run seeded with `seed`.
pub fn replicate_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Runs `task` once per replicate, each with its own stream, and returns the
/// results in replicate order. The output does not depend on `workers`.
pub fn run_replicates<T, F>(
    seed: u64,
    replicates: usize,
    workers: Option<usize>,
    task: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> T + Sync + Send,
{
    let run = || {
        (0..replicates)
            .into_par_iter()
            .map(|i| task(&mut replicate_rng(seed, i), i))
            .collect::<Vec<T>>()
    };
    match workers {
        Some(1) => Ok((0..replicates)
            .map(|i| task(&mut replicate_rng(seed, i), i))
            .collect()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidInput(format!("cannot start {n} workers: {e}")))?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}

struct Outcome {
    /// `F_X(theta_true)`.
    pit: f64,
    /// Per index: `Some(covered)`, or `None` if an endpoint was unattainable.
    covered: Vec<Option<bool>>,
}

fn simulate(
    builder: &dyn CurveBuilder,
    cfg: &GameConfig,
    suite: &[SetIndex],
) -> Result<Vec<Outcome>> {
    cfg.validate()?;
    let theta = cfg.model.theta;
    let outcomes = run_replicates(cfg.seed, cfg.replicates, cfg.workers, |rng, _| {
        let sample = sample_normal(&cfg.model, rng);
        let curve = builder.build(&sample)?;
        let pit = curve.cdf(theta)?;
        let covered = suite
            .iter()
            .map(|b| curve.index_to_set(b).ok().map(|set| set.contains(theta)))
            .collect();
        Ok(Outcome { pit, covered })
    })?;
    outcomes.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageEstimate {
    pub rate: f64,
    pub standard_error: f64,
    pub used: usize,
    pub excluded: usize,
}

fn tally(outcomes: &[Outcome], slot: usize) -> CoverageEstimate {
    let mut hits = 0usize;
    let mut used = 0usize;
    for o in outcomes {
        if let Some(c) = o.covered[slot] {
            used += 1;
            hits += c as usize;
        }
    }
    let excluded = outcomes.len() - used;
    if used == 0 {
        return CoverageEstimate {
            rate: f64::NAN,
            standard_error: f64::NAN,
            used,
            excluded,
        };
    }
    let n = used as f64;
    let rate = hits as f64 / n;
    // Floor the variance at half a count so the error stays positive at 0 and 1.
    let pv = rate.clamp(0.5 / n, 1.0 - 0.5 / n);
    CoverageEstimate {
        rate,
        standard_error: (pv * (1.0 - pv) / n).sqrt(),
        used,
        excluded,
    }
}

fn coverage_of(cov: CoverageEstimate) -> Result<CoverageEstimate> {
    if cov.used == 0 {
        return Err(Error::Domain(format!(
            "all {} replicates excluded: index endpoints outside the represented mass",
            cov.excluded
        )));
    }
    Ok(cov)
}

/// Fraction of replicates whose set estimate for `index` covers the true parameter.
pub fn coverage_rate(
    est: &dyn CurveBuilder,
    index: &SetIndex,
    cfg: &GameConfig,
) -> Result<CoverageEstimate> {
    let outcomes = simulate(est, cfg, std::slice::from_ref(index))?;
    coverage_of(tally(&outcomes, 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OddsEstimate {
    pub odds: f64,
    pub standard_error: f64,
}

fn odds_from(cov: &CoverageEstimate) -> Result<OddsEstimate> {
    let c = cov.rate;
    if c <= 0.0 || c >= 1.0 {
        // Rule of three: with no misses (or no hits) in n trials the rate is
        // within 3/n of the boundary at about 95% confidence.
        let edge = (3.0 / cov.used as f64).min(1.0);
        let bound = if c >= 1.0 {
            (1.0 - edge) / edge
        } else {
            edge / (1.0 - edge)
        };
        return Err(Error::InfiniteOdds { coverage: c, bound });
    }
    Ok(OddsEstimate {
        odds: c / (1.0 - c),
        standard_error: cov.standard_error / (1.0 - c).powi(2),
    })
}

/// Estimated fair odds `c / (1 - c)` of coverage, with a delta-method error.
pub fn fair_odds(
    est: &dyn CurveBuilder,
    index: &SetIndex,
    cfg: &GameConfig,
) -> Result<OddsEstimate> {
    odds_from(&coverage_rate(est, index, cfg)?)
}

/// Which side of the bet the client takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossBranch {
    /// Posted odds exceed the fair odds: the client bets against coverage.
    PostedAboveFair,
    /// Posted odds fall short of the fair odds: the client bets on coverage.
    PostedBelowFair,
    /// Posted and fair odds agree within the equality band; no bet is made.
    Fair,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossEstimate {
    pub loss: f64,
    pub standard_error: f64,
    pub branch: LossBranch,
}

fn loss_from(level: f64, cov: &CoverageEstimate) -> LossEstimate {
    let c = cov.rate;
    let posted = if level >= 1.0 {
        f64::INFINITY
    } else {
        level / (1.0 - level)
    };
    let (fair, fair_se) = if c >= 1.0 {
        (f64::INFINITY, f64::INFINITY)
    } else {
        (c / (1.0 - c), cov.standard_error / (1.0 - c).powi(2))
    };
    let branch = match (posted.is_infinite(), fair.is_infinite()) {
        (true, true) => LossBranch::Fair,
        (true, false) => LossBranch::PostedAboveFair,
        (false, true) => LossBranch::PostedBelowFair,
        (false, false) => {
            let gap = posted - fair;
            if gap.abs() < EQUALITY_BAND_SE * fair_se {
                LossBranch::Fair
            } else if gap > 0.0 {
                LossBranch::PostedAboveFair
            } else {
                LossBranch::PostedBelowFair
            }
        }
    };
    // rho * P(miss) - (1 - rho) * P(cover)
    let against = level * (1.0 - c) - (1.0 - level) * c;
    let loss = match branch {
        LossBranch::PostedAboveFair => against,
        LossBranch::PostedBelowFair => -against,
        LossBranch::Fair => 0.0,
    };
    LossEstimate {
        loss,
        standard_error: cov.standard_error,
        branch,
    }
}

/// Statistician's expected loss on index `B`, from the same replicates as the coverage.
pub fn expected_loss(
    est: &dyn CurveBuilder,
    index: &SetIndex,
    cfg: &GameConfig,
) -> Result<LossEstimate> {
    let cov = coverage_rate(est, index, cfg)?;
    Ok(loss_from(index.level(), &cov))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiskEstimate {
    pub risk: f64,
    pub standard_error: f64,
    pub index: SetIndex,
}

fn risk_from(records: &[BetRecord]) -> Result<RiskEstimate> {
    let best = records
        .iter()
        .filter(|r| r.expected_loss.is_finite())
        .fold(None::<&BetRecord>, |acc, r| match acc {
            Some(a) if a.expected_loss >= r.expected_loss => Some(a),
            _ => Some(r),
        })
        .ok_or_else(|| Error::Domain("no index in the suite could be evaluated".into()))?;
    Ok(RiskEstimate {
        risk: best.expected_loss,
        standard_error: best.loss_se,
        index: best.index.clone(),
    })
}

/// Largest expected loss over the configured suite, using the canonical
/// inverse-CDF set estimator.
pub fn max_risk(est: &dyn CurveBuilder, cfg: &GameConfig) -> Result<RiskEstimate> {
    risk_from(&play(est, cfg)?.records)
}

/// KS distance of `F_X(theta_true)` over replicates from Uniform(0, 1).
pub fn calibration_ks(est: &dyn CurveBuilder, cfg: &GameConfig) -> Result<f64> {
    let outcomes = simulate(est, cfg, &[])?;
    let mut pits: Vec<f64> = outcomes.iter().map(|o| o.pit).collect();
    Ok(ks_uniform(&mut pits))
}

/// Whether the agent's curve accounts for its recall noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseHandling {
    #[default]
    Aware,
    Ignored,
}

/// Calibration of an agent who recalls the sample with one shared additive
/// error. The noise-aware curve is `Phi((theta - tbar) / sqrt(gamma^2/n + tau^2))`;
/// returns the KS distance of its value at the true parameter from uniform.
pub fn agent_noise_calibration(
    noise: &AgentNoiseSpec,
    cfg: &GameConfig,
    handling: NoiseHandling,
) -> Result<f64> {
    AgentNoiseSpec::new(noise.noise_sd)?;
    cfg.validate()?;
    let model = cfg.model;
    let n = model.n as f64;
    let sd = match handling {
        NoiseHandling::Aware => (model.gamma * model.gamma / n + noise.noise_sd.powi(2)).sqrt(),
        NoiseHandling::Ignored => model.gamma / n.sqrt(),
    };
    let pits = run_replicates(cfg.seed, cfg.replicates, cfg.workers, |rng, _| {
        // Observations first, then the shared error, so zero noise reproduces
        // the known-sigma builder's draws exactly.
        let sample = sample_normal(&model, rng);
        let z: f64 = StandardNormal.sample(rng);
        let shift = noise.noise_sd * z;
        let recalled_mean = sample.iter().map(|x| x + shift).sum::<f64>() / n;
        let curve = location_scale_curve(
            Family::Normal,
            recalled_mean,
            sd,
            &GridSpec::default(),
            Provenance::subjective("agent recall"),
        )?;
        curve.cdf(model.theta)
    })?;
    let mut pits = pits.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(ks_uniform(&mut pits))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetRecord {
    pub index: SetIndex,
    pub level: f64,
    pub coverage: f64,
    pub coverage_se: f64,
    /// `None` when coverage is 0 or 1.
    pub fair_odds: Option<f64>,
    pub fair_odds_se: Option<f64>,
    pub expected_loss: f64,
    pub loss_se: f64,
    pub branch: LossBranch,
    pub replicates_used: usize,
    pub replicates_excluded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameReport {
    pub estimator: String,
    pub model: NormalModelSpec,
    pub replicates: usize,
    pub seed: u64,
    pub records: Vec<BetRecord>,
    pub max_risk: f64,
    pub max_risk_se: f64,
    pub max_risk_index: SetIndex,
    pub calibration_ks: f64,
}

impl GameReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Plays the whole suite once and reports every index.
pub fn play(est: &dyn CurveBuilder, cfg: &GameConfig) -> Result<GameReport> {
    if cfg.replicates < MIN_REPORT_REPLICATES {
        return Err(Error::Domain(format!(
            "reports need at least {MIN_REPORT_REPLICATES} replicates, got {}",
            cfg.replicates
        )));
    }
    if cfg.b_suite.is_empty() {
        return Err(Error::Domain("the index suite is empty".into()));
    }
    let outcomes = simulate(est, cfg, &cfg.b_suite)?;
    let records: Vec<BetRecord> = cfg
        .b_suite
        .iter()
        .enumerate()
        .map(|(slot, index)| {
            let cov = tally(&outcomes, slot);
            let level = index.level();
            let odds = if cov.used > 0 {
                odds_from(&cov).ok()
            } else {
                None
            };
            let loss = if cov.used > 0 {
                loss_from(level, &cov)
            } else {
                LossEstimate {
                    loss: f64::NAN,
                    standard_error: f64::NAN,
                    branch: LossBranch::Fair,
                }
            };
            BetRecord {
                index: index.clone(),
                level,
                coverage: cov.rate,
                coverage_se: cov.standard_error,
                fair_odds: odds.map(|o| o.odds),
                fair_odds_se: odds.map(|o| o.standard_error),
                expected_loss: loss.loss,
                loss_se: loss.standard_error,
                branch: loss.branch,
                replicates_used: cov.used,
                replicates_excluded: cov.excluded,
            }
        })
        .collect();
    let risk = risk_from(&records)?;
    let mut pits: Vec<f64> = outcomes.iter().map(|o| o.pit).collect();
    Ok(GameReport {
        estimator: est.describe(),
        model: cfg.model,
        replicates: cfg.replicates,
        seed: cfg.seed,
        max_risk: risk.risk,
        max_risk_se: risk.standard_error,
        max_risk_index: risk.index,
        calibration_ks: ks_uniform(&mut pits),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(reps: usize) -> GameConfig {
        GameConfig::new(NormalModelSpec::new(0.0, 1.0, 5).unwrap(), reps, 11)
    }

    #[test]
    fn estimator_parsing() {
        assert_eq!(
            EstimatorSpec::parse("calibrated").unwrap(),
            EstimatorSpec::calibrated()
        );
        assert_eq!(EstimatorSpec::parse("shift:1.5").unwrap().shift, 1.5);
        assert_eq!(EstimatorSpec::parse("scale:2").unwrap().scale, 2.0);
        assert!(EstimatorSpec::parse("scale:0").is_err());
        assert!(EstimatorSpec::parse("bogus").is_err());
        assert!(EstimatorSpec::parse("shift:x").is_err());
    }

    #[test]
    fn default_suite_shape() {
        let suite = default_b_suite();
        assert_eq!(suite.len(), 16);
        assert!((suite[15].level() - 0.54).abs() < 1e-12);
    }

    #[test]
    fn empty_and_full_indices() {
        let est = EstimatorSpec::calibrated();
        let c = cfg(2000);
        assert_eq!(
            coverage_rate(&est, &SetIndex::empty(), &c).unwrap().rate,
            0.0
        );
        let full = coverage_rate(&est, &SetIndex::full(), &c).unwrap();
        assert_eq!(full.rate, 1.0);
        assert!(full.standard_error > 0.0);
        let loss = expected_loss(&est, &SetIndex::full(), &c).unwrap();
        assert_eq!(loss.loss, 0.0);
        assert_eq!(loss.branch, LossBranch::Fair);
        match fair_odds(&est, &SetIndex::full(), &c) {
            Err(Error::InfiniteOdds { coverage, bound }) => {
                assert_eq!(coverage, 1.0);
                assert!(bound > 600.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn loss_branches() {
        let cov = |rate: f64| CoverageEstimate {
            rate,
            standard_error: 0.001,
            used: 10_000,
            excluded: 0,
        };
        let over = loss_from(0.95, &cov(0.90));
        assert_eq!(over.branch, LossBranch::PostedAboveFair);
        assert!((over.loss - 0.05).abs() < 1e-12);
        let under = loss_from(0.5, &cov(0.6));
        assert_eq!(under.branch, LossBranch::PostedBelowFair);
        assert!((under.loss - 0.1).abs() < 1e-12);
        assert_eq!(loss_from(0.5, &cov(0.5)).branch, LossBranch::Fair);
    }

    #[test]
    fn single_replicate_ks() {
        let ks = calibration_ks(&EstimatorSpec::calibrated(), &cfg(1)).unwrap();
        assert!(ks >= 0.5);
    }

    #[test]
    fn report_needs_enough_replicates() {
        assert!(play(&EstimatorSpec::calibrated(), &cfg(10)).is_err());
    }

    #[test]
    fn zero_noise_matches_known_sigma_builder() {
        let c = cfg(3000);
        let agent =
            agent_noise_calibration(&AgentNoiseSpec::new(0.0).unwrap(), &c, NoiseHandling::Aware)
                .unwrap();
        let known = calibration_ks(&EstimatorSpec::known_sigma(1.0), &c).unwrap();
        assert_eq!(agent, known);
    }

    #[test]
    fn replicate_streams_are_independent_of_workers() {
        let draw = |w| {
            run_replicates(5, 64, Some(w), |rng, i| {
                let z: f64 = StandardNormal.sample(rng);
                (i, z)
            })
            .unwrap()
        };
        assert_eq!(draw(1), draw(3));
    }
}
