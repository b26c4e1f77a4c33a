//! Classification metrics on held-out data.
//!
//! Class 1 (truthful) is the positive class. Hard predictions threshold the
//! margin at zero. The ROC curve has one point per distinct margin, so tied
//! margins form a single diagonal segment and the trapezoidal AUC equals the
//! Mann-Whitney statistic.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::gbm::TreeEnsemble;
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl Confusion {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    /// The same counts with class 0 treated as positive.
    pub fn swapped(&self) -> Confusion {
        Confusion {
            tp: self.tn,
            fp: self.fn_,
            tn: self.tp,
            fn_: self.fp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

impl ClassMetrics {
    /// Metrics of the positive class of `c`. Undefined ratios are 0.
    fn positive(c: &Confusion) -> Self {
        let precision = ratio(c.tp, c.tp + c.fp);
        let recall = ratio(c.tp, c.tp + c.fn_);
        Self {
            precision,
            recall,
            f1: f1(precision, recall),
            support: c.tp + c.fn_,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Averages {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
    /// Margin cut-off reaching this point; `None` for the origin.
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub confusion: Confusion,
    pub deceptive: ClassMetrics,
    pub truthful: ClassMetrics,
    /// Per-class metrics weighted by class support.
    pub weighted: Averages,
    #[serde(rename = "macro")]
    pub macro_avg: Averages,
    /// Empty when only one class is present.
    pub roc: Vec<RocPoint>,
    /// `None` when only one class is present.
    pub auc: Option<f64>,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

/// Scores `model` on a labeled test matrix.
pub fn evaluate(model: &TreeEnsemble, x: &Matrix, y: &[Label]) -> Result<MetricsReport> {
    if x.rows() != y.len() {
        return Err(Error::ShapeMismatch {
            what: "label count",
            expected: x.rows(),
            found: y.len(),
        });
    }
    let margins = x
        .iter_rows()
        .map(|row| model.predict_margin(row))
        .collect::<Result<Vec<_>>>()?;
    evaluate_margins(&margins, y)
}

/// Metrics from precomputed margins.
pub fn evaluate_margins(margins: &[f64], labels: &[Label]) -> Result<MetricsReport> {
    if margins.is_empty() {
        return Err(Error::Empty("test set"));
    }
    if margins.len() != labels.len() {
        return Err(Error::ShapeMismatch {
            what: "label count",
            expected: margins.len(),
            found: labels.len(),
        });
    }
    if let Some(i) = margins.iter().position(|m| !m.is_finite()) {
        return Err(Error::NonFinite { row: i, column: 0 });
    }
    let mut c = Confusion {
        tp: 0,
        fp: 0,
        tn: 0,
        fn_: 0,
    };
    for (&m, &label) in margins.iter().zip(labels) {
        match (m >= 0.0, label.is_positive()) {
            (true, true) => c.tp += 1,
            (true, false) => c.fp += 1,
            (false, false) => c.tn += 1,
            (false, true) => c.fn_ += 1,
        }
    }
    let truthful = ClassMetrics::positive(&c);
    let deceptive = ClassMetrics::positive(&c.swapped());
    let n = c.total() as f64;
    let weight = |m: &ClassMetrics| m.support as f64 / n;
    let weighted = Averages {
        precision: weight(&deceptive) * deceptive.precision
            + weight(&truthful) * truthful.precision,
        recall: weight(&deceptive) * deceptive.recall + weight(&truthful) * truthful.recall,
        f1: weight(&deceptive) * deceptive.f1 + weight(&truthful) * truthful.f1,
    };
    let macro_avg = Averages {
        precision: (deceptive.precision + truthful.precision) / 2.0,
        recall: (deceptive.recall + truthful.recall) / 2.0,
        f1: (deceptive.f1 + truthful.f1) / 2.0,
    };
    let roc = roc_curve(margins, labels);
    let auc = (!roc.is_empty()).then(|| trapezoid_auc(&roc));
    Ok(MetricsReport {
        accuracy: (c.tp + c.tn) as f64 / n,
        confusion: c,
        deceptive,
        truthful,
        weighted,
        macro_avg,
        roc,
        auc,
    })
}

/// ROC points from the highest margin down, one per distinct margin,
/// starting at the origin and ending at (1, 1).
pub fn roc_curve(margins: &[f64], labels: &[Label]) -> Vec<RocPoint> {
    let positives = labels.iter().filter(|l| l.is_positive()).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..margins.len()).collect();
    order.sort_by(|&a, &b| margins[b].total_cmp(&margins[a]));
    let mut points = vec![RocPoint {
        fpr: 0.0,
        tpr: 0.0,
        threshold: None,
    }];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut k = 0;
    while k < order.len() {
        let threshold = margins[order[k]];
        while k < order.len() && margins[order[k]] == threshold {
            if labels[order[k]].is_positive() {
                tp += 1;
            } else {
                fp += 1;
            }
            k += 1;
        }
        points.push(RocPoint {
            fpr: fp as f64 / negatives as f64,
            tpr: tp as f64 / positives as f64,
            threshold: Some(threshold),
        });
    }
    points
}

pub fn trapezoid_auc(points: &[RocPoint]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].fpr - w[0].fpr) * (w[1].tpr + w[0].tpr) / 2.0)
        .sum()
}

impl MetricsReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("metrics serialize");
        s.push('\n');
        s
    }

    /// `fpr,tpr,threshold`; the origin's threshold is written as `inf`.
    pub fn roc_csv(&self) -> String {
        let mut out = String::from("fpr,tpr,threshold\n");
        for p in &self.roc {
            match p.threshold {
                Some(t) => {
                    let _ = writeln!(out, "{},{},{}", p.fpr, p.tpr, t);
                }
                None => {
                    let _ = writeln!(out, "{},{},inf", p.fpr, p.tpr);
                }
            }
        }
        out
    }
}

pub const TABLE_HEADER: &str = "Model Accuracy Precision Recall F1";

/// One row per model: accuracy as a whole percentage, weighted precision,
/// recall and F1 to two decimals.
pub fn table_row(name: &str, r: &MetricsReport) -> String {
    format!(
        "{name} {:.0}% {:.2} {:.2} {:.2}",
        r.accuracy * 100.0,
        r.weighted.precision,
        r.weighted.recall,
        r.weighted.f1
    )
}

/// Renders the performance table, rows in input order.
pub fn report_table(reports: &[(String, MetricsReport)]) -> Result<String> {
    if reports.is_empty() {
        return Err(Error::Empty("metrics reports"));
    }
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for (name, r) in reports {
        out.push_str(&table_row(name, r));
        out.push('\n');
    }
    Ok(out)
}
