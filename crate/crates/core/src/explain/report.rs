use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Explanation, Method};
use crate::error::{Error, Result};
use crate::gbm::TreeEnsemble;
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedFeature {
    pub feature: String,
    pub mean_abs_phi: f64,
}

/// Mean absolute attribution per feature, most influential first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalSummary {
    pub ranking: Vec<RankedFeature>,
}

impl GlobalSummary {
    /// Ties in the mean keep canonical (column) order.
    pub fn from_explanations(explanations: &[Explanation]) -> Result<Self> {
        let first = explanations.first().ok_or(Error::Empty("explanations"))?;
        let n = first.phi.len();
        let mut sums = vec![0.0; n];
        for e in explanations {
            if e.phi.len() != n {
                return Err(Error::ShapeMismatch {
                    what: "attribution length",
                    expected: n,
                    found: e.phi.len(),
                });
            }
            for (s, p) in sums.iter_mut().zip(&e.phi) {
                *s += p.abs();
            }
        }
        let count = explanations.len() as f64;
        let mut ranking: Vec<RankedFeature> = first
            .feature_names
            .iter()
            .zip(sums)
            .map(|(name, s)| RankedFeature {
                feature: name.clone(),
                mean_abs_phi: s / count,
            })
            .collect();
        // Stable sort keeps column order among equal means.
        ranking.sort_by(|a, b| b.mean_abs_phi.total_cmp(&a.mean_abs_phi));
        Ok(Self { ranking })
    }

    pub fn top(&self, k: usize) -> Vec<&str> {
        self.ranking
            .iter()
            .take(k)
            .map(|r| r.feature.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}

/// Explains every row of `instances` against `background` and summarizes.
pub fn global_summary(
    model: &TreeEnsemble,
    instances: &Matrix,
    background: &Matrix,
    method: Method,
) -> Result<GlobalSummary> {
    if instances.is_empty() {
        return Err(Error::Empty("instances"));
    }
    GlobalSummary::from_explanations(&method.explain_all(model, instances, background)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Positive,
    Negative,
    Zero,
}

impl Direction {
    fn of(phi: f64) -> Self {
        match phi.partial_cmp(&0.0) {
            Some(Ordering::Greater) => Direction::Positive,
            Some(Ordering::Less) => Direction::Negative,
            _ => Direction::Zero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaterfallStep {
    pub feature: String,
    pub value: f64,
    pub phi: f64,
    pub running_total: f64,
    pub direction: Direction,
}

/// Contributions applied one at a time, from the base value to `fx`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaterfallReport {
    pub base_value: f64,
    pub steps: Vec<WaterfallStep>,
    pub fx: f64,
}

impl WaterfallReport {
    pub fn final_total(&self) -> f64 {
        self.steps
            .last()
            .map_or(self.base_value, |s| s.running_total)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("waterfall serializes");
        s.push('\n');
        s
    }
}

/// Orders contributions by `|phi|` descending (ties in column order) and
/// accumulates them from the base value.
pub fn waterfall(e: &Explanation) -> WaterfallReport {
    let mut order: Vec<usize> = (0..e.phi.len()).collect();
    order.sort_by(|&a, &b| e.phi[b].abs().total_cmp(&e.phi[a].abs()));
    let mut total = e.base_value;
    let steps = order
        .into_iter()
        .map(|i| {
            total += e.phi[i];
            WaterfallStep {
                feature: e.feature_names[i].clone(),
                value: e.feature_values[i],
                phi: e.phi[i],
                running_total: total,
                direction: Direction::of(e.phi[i]),
            }
        })
        .collect();
    WaterfallReport {
        base_value: e.base_value,
        steps,
        fx: e.fx,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionRecord {
    pub primary_value: f64,
    pub phi_primary: f64,
    pub coloring_value: f64,
}

/// Attribution of one feature against the value of another, one record per
/// explained instance (the data behind a dependence/force scatter).
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionReport {
    pub primary: String,
    pub coloring: String,
    pub records: Vec<InteractionRecord>,
}

impl InteractionReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("primary_value,phi_primary,coloring_value\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{}",
                r.primary_value, r.phi_primary, r.coloring_value
            );
        }
        out
    }
}

pub fn interaction_report(
    explanations: &[Explanation],
    feature_names: &[String],
    primary: &str,
    coloring: &str,
) -> Result<InteractionReport> {
    let position = |name: &str| {
        feature_names
            .iter()
            .position(|f| f == name)
            .ok_or_else(|| Error::UnknownFeature(name.to_string()))
    };
    let p = position(primary)?;
    let c = position(coloring)?;
    let records = explanations
        .iter()
        .map(|e| {
            if e.phi.len() != feature_names.len() {
                return Err(Error::ShapeMismatch {
                    what: "attribution length",
                    expected: feature_names.len(),
                    found: e.phi.len(),
                });
            }
            Ok(InteractionRecord {
                primary_value: e.feature_values[p],
                phi_primary: e.phi[p],
                coloring_value: e.feature_values[c],
            })
        })
        .collect::<Result<_>>()?;
    Ok(InteractionReport {
        primary: primary.to_string(),
        coloring: coloring.to_string(),
        records,
    })
}
