//! Confidence-measure inference for a scalar parameter.
//!
//! * [`curve`]: significance curves and the p-values, quantiles, intervals
//!   and set probabilities read from them.
//! * [`models`]: curves for normal sampling models, simulation.
//! * [`laplace`]: the double-exponential combination rule.
//! * [`elicit`]: subjective curves from agent input.
//! * [`game`]: Monte Carlo betting game and calibration checks.
//! * [`evidence`]: JSON evidence files and combination-tree expressions.
//! * [`worked`]: the Torricelli and common-mean worked examples.

pub mod curve;
pub mod elicit;
pub mod error;
pub mod evidence;
pub mod game;
pub mod laplace;
pub mod models;
pub mod special;
pub mod stats;
pub mod worked;

pub use curve::{
    Alternative, IntervalUnion, Origin, ParameterGrid, Provenance, SetIndex, SignificanceCurve,
    TailPolicy,
};
pub use error::{Error, Result};
pub use laplace::{combine, combine_tree, CombinationResult, CombineTree};
pub use models::{GridSpec, NormalModelSpec, SampleSummary};
