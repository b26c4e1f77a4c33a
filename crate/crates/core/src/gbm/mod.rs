//! Gradient-boosted decision trees for binary classification.
//!
//! Each round fits a regression tree to the gradient `p - y` and hessian
//! `p(1 - p)` of the logistic loss at the current margin, using exact greedy
//! split search and L2-regularized Newton leaf weights. Predictions are
//! log-odds margins; the positive class is predicted when the margin is
//! non-negative.

mod model_io;
pub mod objective;
mod train;
mod tree;

pub use model_io::{from_json, load_model, save_model, to_json, MODEL_VERSION};
pub use train::{initial_score, train, train_table, TrainConfig, Training};
pub use tree::{Node, TreeEnsemble};
