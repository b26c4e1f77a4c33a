//! Interventional Shapley attributions for tree-ensemble margins.
//!
//! For an instance `x` and a background set `B`, the value of a coalition
//! `S` of features is
//!
//! ```text
//! v(S) = mean over b in B of margin(x on S, b elsewhere)
//! ```
//!
//! and feature `i` receives
//!
//! ```text
//! phi_i = sum over S not containing i of |S|! (n - |S| - 1)! / n! * (v(S + i) - v(S))
//! ```
//!
//! so that `base_value + sum(phi) = fx` with `base_value = v({})` (the mean
//! background margin) and `fx = v(N)` (the instance margin). Everything is
//! in margin (log-odds) space, where the ensemble is additive.
//!
//! [`shapley_exact`] enumerates all `2^n` coalitions. [`shapley_tree`]
//! computes the same numbers by walking each tree once per background row.

mod exact;
mod report;
mod tree_path;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use exact::{shapley_exact, MAX_EXACT_FEATURES};
pub use report::{
    global_summary, interaction_report, waterfall, Direction, GlobalSummary, InteractionRecord,
    InteractionReport, RankedFeature, WaterfallReport, WaterfallStep,
};
pub use tree_path::shapley_tree;

use crate::error::{Error, Result};
use crate::gbm::TreeEnsemble;
use crate::matrix::Matrix;

/// Shapley attribution of one prediction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Explanation {
    pub feature_names: Vec<String>,
    /// One value per feature, in margin units.
    pub phi: Vec<f64>,
    /// Mean background margin, `E[f(x)]`.
    pub base_value: f64,
    /// Margin of the explained instance, `f(x)`.
    pub fx: f64,
    pub feature_values: Vec<f64>,
}

impl Explanation {
    /// `base_value + sum(phi) - fx`; zero up to rounding.
    pub fn efficiency_gap(&self) -> f64 {
        self.base_value + self.phi.iter().sum::<f64>() - self.fx
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("explanation serializes");
        s.push('\n');
        s
    }
}

/// Which attribution algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    Exact,
    #[default]
    Tree,
}

impl Method {
    pub fn explain(
        self,
        model: &TreeEnsemble,
        x: &[f64],
        background: &Matrix,
    ) -> Result<Explanation> {
        match self {
            Method::Exact => shapley_exact(model, x, background),
            Method::Tree => shapley_tree(model, x, background),
        }
    }

    /// Explains every row of `instances`, in order.
    pub fn explain_all(
        self,
        model: &TreeEnsemble,
        instances: &Matrix,
        background: &Matrix,
    ) -> Result<Vec<Explanation>> {
        instances
            .iter_rows()
            .map(|x| self.explain(model, x, background))
            .collect()
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Tree => "tree",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "tree" => Ok(Method::Tree),
            other => Err(Error::InvalidArgument(format!(
                "unknown method {other:?} (expected exact or tree)"
            ))),
        }
    }
}

fn check_inputs(model: &TreeEnsemble, x: &[f64], background: &Matrix) -> Result<()> {
    model.check_input(x)?;
    if background.is_empty() {
        return Err(Error::Empty("background set"));
    }
    if background.cols() != model.num_features() {
        return Err(Error::ShapeMismatch {
            what: "background width",
            expected: model.num_features(),
            found: background.cols(),
        });
    }
    background.ensure_finite()
}

/// At most `cap` rows of `background`, drawn without replacement by a
/// seeded shuffle and kept in their original order. Returns a copy of the
/// whole set when it already fits.
pub fn subsample_background(background: &Matrix, cap: usize, seed: u64) -> Result<Matrix> {
    if cap == 0 {
        return Err(Error::InvalidArgument(
            "background cap must be at least 1".into(),
        ));
    }
    if background.rows() <= cap {
        return Ok(background.clone());
    }
    let mut indices: Vec<usize> = (0..background.rows()).collect();
    indices.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    indices.truncate(cap);
    indices.sort_unstable();
    Ok(background.select_rows(&indices))
}

/// Mean margin over the background rows.
fn background_mean(model: &TreeEnsemble, background: &Matrix) -> f64 {
    let mut total = 0.0;
    for b in background.iter_rows() {
        total += model.margin(b);
    }
    total / background.rows() as f64
}
