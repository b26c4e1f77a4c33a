//! Explainable deception detection over stylometric features.
//!
//! The pipeline has five stages, one module each:
//!
//! * [`corpus`] loads labeled JSONL corpora and builds seeded hybrid
//!   train/test splits.
//! * [`lexfeat`] tokenizes text and extracts the 17 stylometric and
//!   psycholinguistic features.
//! * [`gbm`] trains a second-order gradient-boosted tree classifier that
//!   predicts a log-odds margin.
//! * [`explain`] attributes each margin to the features with interventional
//!   Shapley values, by exact coalition enumeration or by a tree-path
//!   recursion, and builds summary, waterfall and interaction reports.
//! * [`eval`] scores a model on held-out data.
//!
//! Labels follow the convention `0 = deceptive`, `1 = truthful`; class 1 is
//! the positive class for every metric.

pub mod corpus;
pub mod error;
pub mod eval;
pub mod explain;
pub mod gbm;
pub mod io;
pub mod lexfeat;
pub mod matrix;
pub mod synth;

pub use corpus::{
    load_corpus, make_hybrid_split, Corpus, HybridSplit, Label, LabeledDocument, Source,
};
pub use error::{Error, Result};
pub use eval::{evaluate, MetricsReport};
pub use explain::{shapley_exact, shapley_tree, subsample_background, Explanation, Method};
pub use gbm::{train, TrainConfig, TreeEnsemble};
pub use lexfeat::{
    extract_features, featurize_corpus, tokenize, Feature, FeatureVector, LexiconSet,
};
pub use matrix::{FeatureTable, Matrix};
