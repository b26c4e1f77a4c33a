//! Seeded random models and datasets for property tests and benchmarks.
//!
//! Feature values and split thresholds are drawn from the same half-integer
//! grid, so ties between a value and a threshold are common.

use rand::Rng;

use crate::corpus::Label;
use crate::gbm::{Node, TreeEnsemble};
use crate::matrix::Matrix;

const GRID_LEVELS: u32 = 9;

fn grid_value(rng: &mut impl Rng) -> f64 {
    f64::from(rng.gen_range(0..GRID_LEVELS)) * 0.5
}

/// A `rows x cols` matrix of grid values.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for v in m.row_mut(i) {
            *v = grid_value(rng);
        }
    }
    m
}

/// A `rows x cols` matrix of uniform values in `[lo, hi)`.
pub fn uniform_matrix(rng: &mut impl Rng, rows: usize, cols: usize, lo: f64, hi: f64) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for v in m.row_mut(i) {
            *v = rng.gen_range(lo..hi);
        }
    }
    m
}

/// Labels with both classes present when `n >= 2`.
pub fn random_labels(rng: &mut impl Rng, n: usize) -> Vec<Label> {
    let mut y: Vec<Label> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Label::Truthful
            } else {
                Label::Deceptive
            }
        })
        .collect();
    if n >= 2 {
        y[0] = Label::Deceptive;
        y[1] = Label::Truthful;
    }
    y
}

/// A tree of depth at most `max_depth` with consistent covers. Branches stop
/// early with probability 0.2.
pub fn random_tree(rng: &mut impl Rng, num_features: usize, max_depth: usize) -> Node {
    if max_depth == 0 || rng.gen_bool(0.2) {
        return Node::Leaf {
            weight: rng.gen_range(-1.0..1.0),
            cover: rng.gen_range(0.5..5.0),
        };
    }
    let left = random_tree(rng, num_features, max_depth - 1);
    let right = random_tree(rng, num_features, max_depth - 1);
    Node::Split {
        feature: rng.gen_range(0..num_features),
        // Odd multiples of 0.25 would never tie; keep thresholds on the grid.
        threshold: grid_value(rng),
        cover: left.cover() + right.cover(),
        left: Box::new(left),
        right: Box::new(right),
    }
}

/// An ensemble of `num_trees` random trees over features `x0..`.
pub fn random_ensemble(
    rng: &mut impl Rng,
    num_features: usize,
    num_trees: usize,
    max_depth: usize,
) -> TreeEnsemble {
    TreeEnsemble {
        trees: (0..num_trees)
            .map(|_| random_tree(rng, num_features, max_depth))
            .collect(),
        base_score: rng.gen_range(-1.0..1.0),
        learning_rate: 0.3,
        feature_names: (0..num_features).map(|j| format!("x{j}")).collect(),
    }
}
