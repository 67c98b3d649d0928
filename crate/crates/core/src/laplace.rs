//! Double-exponential combination of significance functions.
//!
//! Each source CDF value is mapped to the Laplace scale with `de_quantile`,
//! the values are summed, and the sum is mapped back through the CDF of a sum
//! of `L` iid standard Laplace variables:
//!
//! ```text
//! DE_L(q) = 1 - e^{-q}/2 * V_L(q)   (q >= 0)
//!         = e^{q}/2 * V_L(-q)       (q <= 0)
//! ```
//!
//! `V_L` is a polynomial of degree `L - 1`. If every source is uniformly
//! distributed at the true parameter, so is the combination.

use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::{ParameterGrid, Provenance, SignificanceCurve, TailPolicy};
use crate::error::{ensure_finite, Error, Result};

/// Source CDF values are clamped to `[CLAMP, 1 - CLAMP]` before `de_quantile`.
pub const CLAMP: f64 = 1e-15;

/// Standard Laplace CDF.
pub fn de_cdf(q: f64) -> f64 {
    if q <= 0.0 {
        0.5 * q.exp()
    } else {
        1.0 - 0.5 * (-q).exp()
    }
}

/// Standard Laplace quantile; exact inverse of [`de_cdf`].
pub fn de_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "Laplace quantile needs p in (0, 1), got {p}"
        )));
    }
    Ok(de_quantile_unchecked(p))
}

#[inline]
fn de_quantile_unchecked(p: f64) -> f64 {
    if p <= 0.5 {
        (2.0 * p).ln()
    } else {
        -(2.0 * (1.0 - p)).ln()
    }
}

/// Coefficients of `V_L`, constant term first.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoefficients {
    exact: Vec<BigRational>,
    coefficients: Vec<f64>,
}

impl PolyCoefficients {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Number of convolved Laplace terms.
    pub fn sources(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn exact(&self) -> &[BigRational] {
        &self.exact
    }

    /// Coefficients as `(numerator, denominator)` strings.
    pub fn exact_strings(&self) -> Vec<(String, String)> {
        self.exact
            .iter()
            .map(|r| (r.numer().to_string(), r.denom().to_string()))
            .collect()
    }

    pub fn eval(&self, q: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * q + c)
    }

    pub fn eval_derivative(&self, q: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, &c)| acc * q + k as f64 * c)
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

/// `V_{L+1}` from `V_L` by convolving the density `e^{-|q|}/2 * W_L(|q|)`,
/// `W_L = V_L - V_L'`, with one Laplace density. For `q >= 0` the integral
/// splits at 0 and `q`; each piece is `e^{-q}` times a polynomial.
fn next_polynomial(v: &[BigRational]) -> Vec<BigRational> {
    let deg = v.len() - 1;
    let w: Vec<BigRational> = (0..=deg)
        .map(|k| {
            let tail = if k < deg {
                &v[k + 1] * BigRational::from_integer(BigInt::from(k + 1))
            } else {
                BigRational::zero()
            };
            &v[k] - tail
        })
        .collect();

    // The new density polynomial has degree deg + 1.
    let mut w_next = vec![BigRational::zero(); deg + 2];
    // Mass from y < 0: the constant int_0^inf e^{-2u} W(u) du.
    for (k, wk) in w.iter().enumerate() {
        w_next[0] += wk * BigRational::new(factorial(k), pow2(k + 1));
    }
    // y in [0, q]: int_0^q W(y) dy.
    for (k, wk) in w.iter().enumerate() {
        w_next[k + 1] += wk / BigRational::from_integer(BigInt::from(k + 1));
    }
    // y > q: e^{2q} int_q^inf e^{-2y} y^k dy = sum_j k!/j! q^j / 2^{k-j+1}.
    for (k, wk) in w.iter().enumerate() {
        for (j, slot) in w_next.iter_mut().enumerate().take(k + 1) {
            *slot += wk * BigRational::new(factorial(k) / factorial(j), pow2(k - j + 1));
        }
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for c in &mut w_next {
        *c *= &half;
    }

    // Solve V - V' = W: V = W + W' + W'' + ...
    let mut v_next = vec![BigRational::zero(); deg + 2];
    let mut term = w_next;
    while term.iter().any(|c| !c.is_zero()) {
        for (slot, c) in v_next.iter_mut().zip(&term) {
            *slot += c;
        }
        term = (0..term.len())
            .map(|k| {
                if k + 1 < term.len() {
                    &term[k + 1] * BigRational::from_integer(BigInt::from(k + 1))
                } else {
                    BigRational::zero()
                }
            })
            .collect();
    }
    v_next
}

/// Coefficients of `V_L`, kept as exact rationals and cached across calls.
pub fn v_polynomial(sources: usize) -> Result<Arc<PolyCoefficients>> {
    if sources < 1 {
        return Err(Error::Domain("V_L needs L >= 1".into()));
    }
    static CACHE: OnceLock<Mutex<Vec<Arc<PolyCoefficients>>>> = OnceLock::new();
    let mut cache = CACHE
        .get_or_init(Default::default)
        .lock()
        .expect("polynomial cache poisoned");
    if cache.is_empty() {
        cache.push(Arc::new(from_exact(vec![BigRational::one()])));
    }
    while cache.len() < sources {
        let next = next_polynomial(cache.last().expect("non-empty").exact());
        debug_assert!(next[0].is_one(), "V_L(0) must be 1");
        cache.push(Arc::new(from_exact(next)));
    }
    Ok(cache[sources - 1].clone())
}

fn from_exact(exact: Vec<BigRational>) -> PolyCoefficients {
    let coefficients = exact
        .iter()
        .map(|r| r.to_f64().expect("rational coefficient fits in f64"))
        .collect();
    PolyCoefficients {
        exact,
        coefficients,
    }
}

fn de_l_eval(poly: &PolyCoefficients, q: f64) -> f64 {
    if q >= 0.0 {
        1.0 - 0.5 * (-q).exp() * poly.eval(q)
    } else {
        0.5 * q.exp() * poly.eval(-q)
    }
}

/// CDF of the sum of `L` iid standard Laplace variables.
pub fn de_l_cdf(sources: usize, q: f64) -> Result<f64> {
    ensure_finite("q", q)?;
    let poly = v_polynomial(sources)?;
    Ok(de_l_eval(&poly, q))
}

/// Density of the sum of `L` standard Laplace variables,
/// `e^{-|q|}/2 * (V_L(|q|) - V_L'(|q|))`.
pub fn de_l_density(sources: usize, q: f64) -> Result<f64> {
    ensure_finite("q", q)?;
    let poly = v_polynomial(sources)?;
    let a = q.abs();
    Ok(0.5 * (-a).exp() * (poly.eval(a) - poly.eval_derivative(a)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CombinationResult {
    pub curve: SignificanceCurve,
    pub source_count: usize,
    pub source_ids: Vec<String>,
}

#[inline]
fn pivot(p: f64) -> f64 {
    de_quantile_unchecked(p.clamp(CLAMP, 1.0 - CLAMP))
}

/// The combination rule evaluated directly at one parameter value, with
/// each source read from its curve.
pub fn combine_at<'a, I>(curves: I, theta: f64) -> Result<f64>
where
    I: IntoIterator<Item = &'a SignificanceCurve>,
{
    ensure_finite("theta", theta)?;
    let mut sum = 0.0;
    let mut count = 0usize;
    for c in curves {
        sum += pivot(c.interpolate(theta));
        count += 1;
    }
    if count == 0 {
        return Err(Error::Domain("nothing to combine".into()));
    }
    let poly = v_polynomial(count)?;
    Ok(de_l_eval(&poly, sum))
}

/// Combines independent significance curves with equal weights.
///
/// The output grid is the union of the input grids over the span they share.
pub fn combine<'a, I>(curves: I) -> Result<CombinationResult>
where
    I: IntoIterator<Item = &'a SignificanceCurve>,
{
    let curves: Vec<&SignificanceCurve> = curves.into_iter().collect();
    if curves.is_empty() {
        return Err(Error::Domain("nothing to combine".into()));
    }
    let lo = curves
        .iter()
        .map(|c| c.grid().min())
        .fold(f64::NEG_INFINITY, f64::max);
    let hi = curves
        .iter()
        .map(|c| c.grid().max())
        .fold(f64::INFINITY, f64::min);
    if lo >= hi {
        return Err(Error::IncompatibleSources(format!(
            "parameter spans do not overlap (common span would be [{lo}, {hi}])"
        )));
    }

    let mut nodes: Vec<f64> = curves
        .iter()
        .flat_map(|c| c.nodes().iter().copied())
        .filter(|&x| x >= lo && x <= hi)
        .collect();
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();

    let mut pivot_sum = vec![0.0; nodes.len()];
    let mut values = Vec::with_capacity(nodes.len());
    for c in &curves {
        c.interpolate_sorted(&nodes, &mut values);
        for (s, &p) in pivot_sum.iter_mut().zip(&values) {
            *s += pivot(p);
        }
    }
    let poly = v_polynomial(curves.len())?;
    let mut cdf: Vec<f64> = pivot_sum.iter().map(|&s| de_l_eval(&poly, s)).collect();
    // Rounding in the polynomial can break monotonicity by an ulp where the
    // pivot sum is flat.
    for i in 1..cdf.len() {
        if cdf[i] < cdf[i - 1] {
            cdf[i] = cdf[i - 1];
        }
    }

    let source_ids: Vec<String> = curves
        .iter()
        .map(|c| c.provenance().label.clone())
        .collect();
    let label = format!("combined[{}]", source_ids.join(" + "));
    let grid = ParameterGrid::new(nodes)?;
    let curve = SignificanceCurve::new(grid, cdf, TailPolicy::Flat, Provenance::combined(label))
        .map_err(|e| match e {
            Error::InvalidInput(msg) => Error::IncompatibleSources(msg),
            other => other,
        })?;
    let mut curve = curve;
    if curves.iter().any(|c| c.provenance().approximate) {
        let mut p = curve.provenance().clone();
        p.approximate = true;
        curve = curve.with_provenance(p);
    }
    Ok(CombinationResult {
        curve,
        source_count: curves.len(),
        source_ids,
    })
}

/// Nested grouping of curves for sequential combination.
#[derive(Debug, Clone, PartialEq)]
pub enum CombineTree {
    Leaf(SignificanceCurve),
    Group(Vec<CombineTree>),
}

impl CombineTree {
    pub fn leaves(&self) -> Vec<&SignificanceCurve> {
        match self {
            CombineTree::Leaf(c) => vec![c],
            CombineTree::Group(children) => children.iter().flat_map(|c| c.leaves()).collect(),
        }
    }
}

/// Combines each group bottom-up. In general this differs from combining
/// all leaves at once.
pub fn combine_tree(tree: &CombineTree) -> Result<CombinationResult> {
    match tree {
        CombineTree::Leaf(curve) => Ok(CombinationResult {
            curve: curve.clone(),
            source_count: 1,
            source_ids: vec![curve.provenance().label.clone()],
        }),
        CombineTree::Group(children) => {
            if children.is_empty() {
                return Err(Error::Domain("empty group in combination tree".into()));
            }
            let parts = children
                .iter()
                .map(combine_tree)
                .collect::<Result<Vec<_>>>()?;
            let mut out = combine(parts.iter().map(|r| &r.curve))?;
            out.source_ids = tree
                .leaves()
                .iter()
                .map(|c| c.provenance().label.clone())
                .collect();
            Ok(out)
        }
    }
}

/// Serializable view of a [`CombinationResult`] without the curve values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CombinationSummary {
    pub source_count: usize,
    pub source_ids: Vec<String>,
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_points: usize,
    pub approximate: bool,
}

impl From<&CombinationResult> for CombinationSummary {
    fn from(r: &CombinationResult) -> Self {
        Self {
            source_count: r.source_count,
            source_ids: r.source_ids.clone(),
            grid_min: r.curve.grid().min(),
            grid_max: r.curve.grid().max(),
            grid_points: r.curve.grid().len(),
            approximate: r.curve.provenance().approximate,
        }
    }
}
