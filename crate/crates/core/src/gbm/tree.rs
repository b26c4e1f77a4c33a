use serde::{Deserialize, Serialize};

use super::objective::sigmoid;
use crate::error::{Error, Result};

/// A regression tree node. Routing sends `value < threshold` left and
/// everything else (ties included) right.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Node {
    Split {
        feature: usize,
        threshold: f64,
        cover: f64,
        left: Box<Node>,
        right: Box<Node>,
    },
    Leaf {
        #[serde(rename = "leaf")]
        weight: f64,
        cover: f64,
    },
}

impl Node {
    /// Sum of training hessians routed to this node.
    pub fn cover(&self) -> f64 {
        match self {
            Node::Split { cover, .. } | Node::Leaf { cover, .. } => *cover,
        }
    }

    pub fn leaf_value(&self, x: &[f64]) -> f64 {
        let mut node = self;
        loop {
            match node {
                Node::Leaf { weight, .. } => return *weight,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                    ..
                } => {
                    node = if x[*feature] < *threshold {
                        left
                    } else {
                        right
                    };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Node::Leaf { .. } => 0,
            Node::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    pub fn num_leaves(&self) -> usize {
        match self {
            Node::Leaf { .. } => 1,
            Node::Split { left, right, .. } => left.num_leaves() + right.num_leaves(),
        }
    }

    /// Calls `f` on every node, parents before children.
    pub fn visit(&self, f: &mut impl FnMut(&Node)) {
        f(self);
        if let Node::Split { left, right, .. } = self {
            left.visit(f);
            right.visit(f);
        }
    }

    /// Whether any split in this subtree tests `feature`.
    pub fn uses_feature(&self, feature: usize) -> bool {
        let mut used = false;
        self.visit(&mut |n| {
            if let Node::Split { feature: f, .. } = n {
                used |= *f == feature;
            }
        });
        used
    }
}

/// Boosted ensemble predicting a log-odds margin.
///
/// Leaf weights are stored after shrinkage, so the margin is
/// `base_score + sum of reached leaf weights`.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeEnsemble {
    pub trees: Vec<Node>,
    pub base_score: f64,
    pub learning_rate: f64,
    pub feature_names: Vec<String>,
}

impl TreeEnsemble {
    pub fn num_features(&self) -> usize {
        self.feature_names.len()
    }

    /// Margin without input validation. `x` must have `num_features()`
    /// entries.
    pub fn margin(&self, x: &[f64]) -> f64 {
        self.trees
            .iter()
            .fold(self.base_score, |acc, t| acc + t.leaf_value(x))
    }

    pub fn predict_margin(&self, x: &[f64]) -> Result<f64> {
        self.check_input(x)?;
        Ok(self.margin(x))
    }

    pub fn predict_proba(&self, x: &[f64]) -> Result<f64> {
        self.predict_margin(x).map(sigmoid)
    }

    /// Class 1 iff the margin is non-negative.
    pub fn predict_class(&self, x: &[f64]) -> Result<crate::corpus::Label> {
        Ok(if self.predict_margin(x)? >= 0.0 {
            crate::corpus::Label::Truthful
        } else {
            crate::corpus::Label::Deceptive
        })
    }

    pub fn check_input(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.num_features() {
            return Err(Error::ShapeMismatch {
                what: "feature vector length",
                expected: self.num_features(),
                found: x.len(),
            });
        }
        if let Some(j) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: 0, column: j });
        }
        Ok(())
    }

    /// Structural checks: feature indices in range, finite values, and
    /// internal covers equal to the sum of their children's.
    pub fn validate(&self) -> Result<()> {
        if !self.base_score.is_finite() {
            return Err(Error::Schema("base_score is not finite".into()));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return Err(Error::Schema(format!(
                "learning_rate {} outside (0, 1]",
                self.learning_rate
            )));
        }
        let n = self.num_features();
        let mut problem = None;
        for tree in &self.trees {
            tree.visit(&mut |node| {
                if problem.is_some() {
                    return;
                }
                match node {
                    Node::Split {
                        feature,
                        threshold,
                        cover,
                        left,
                        right,
                    } => {
                        if *feature >= n {
                            problem = Some(format!("feature index {feature} >= {n}"));
                        } else if !threshold.is_finite() || !cover.is_finite() {
                            problem = Some("non-finite split".into());
                        } else if *cover != left.cover() + right.cover() {
                            problem = Some("internal cover differs from children".into());
                        }
                    }
                    Node::Leaf { weight, cover } => {
                        if !weight.is_finite() || !cover.is_finite() || *cover < 0.0 {
                            problem = Some("invalid leaf".into());
                        }
                    }
                }
            });
        }
        match problem {
            Some(p) => Err(Error::Schema(p)),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn stump(feature: usize, threshold: f64, lo: f64, hi: f64) -> Node {
        Node::Split {
            feature,
            threshold,
            cover: 2.0,
            left: Box::new(Node::Leaf {
                weight: lo,
                cover: 1.0,
            }),
            right: Box::new(Node::Leaf {
                weight: hi,
                cover: 1.0,
            }),
        }
    }

    fn ensemble(trees: Vec<Node>, base: f64) -> TreeEnsemble {
        TreeEnsemble {
            trees,
            base_score: base,
            learning_rate: 0.3,
            feature_names: vec!["a".into(), "b".into()],
        }
    }

    #[test]
    fn empty_ensemble_predicts_base_score() {
        let m = ensemble(vec![], 0.7);
        assert_eq!(m.predict_margin(&[1.0, 2.0]).unwrap(), 0.7);
    }

    #[test]
    fn stump_routing_and_ties() {
        let m = ensemble(vec![stump(1, 0.5, -1.0, 1.0)], 0.25);
        assert_eq!(m.predict_margin(&[9.0, 0.4]).unwrap(), 0.25 - 1.0);
        assert_eq!(m.predict_margin(&[9.0, 0.5]).unwrap(), 0.25 + 1.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let m = ensemble(vec![stump(0, 0.0, -1.0, 1.0)], 0.0);
        assert!(m.predict_margin(&[1.0]).is_err());
        assert!(m.predict_margin(&[f64::NAN, 1.0]).is_err());
        assert!(m.predict_margin(&[1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn validate_catches_cover_and_index_errors() {
        assert!(ensemble(vec![stump(0, 0.0, -1.0, 1.0)], 0.0)
            .validate()
            .is_ok());
        assert!(ensemble(vec![stump(2, 0.0, -1.0, 1.0)], 0.0)
            .validate()
            .is_err());
        let mut bad = stump(0, 0.0, -1.0, 1.0);
        if let Node::Split { cover, .. } = &mut bad {
            *cover = 3.0;
        }
        assert!(ensemble(vec![bad], 0.0).validate().is_err());
    }
}
