use super::{background_mean, check_inputs, Explanation};
use crate::error::Result;
use crate::gbm::{Node, TreeEnsemble};
use crate::matrix::Matrix;

/// Shapley values by per-background-row tree traversal.
///
/// For one tree and one background row `b`, a leaf is reached by the
/// composite input exactly when the coalition contains every feature in
/// `from_x` (splits where only `x` goes this way) and none in `from_b`
/// (splits where only `b` does). The Shapley value of that indicator game
/// gives each feature in `from_x` the share `(a-1)! c! / (a+c)!` of the leaf
/// weight and takes `a! (c-1)! / (a+c)!` from each feature in `from_b`,
/// where `a = |from_x|` and `c = |from_b|`. Splits where `x` and `b` agree
/// impose no constraint. Summing over leaves, trees and rows, then dividing
/// by the row count, reproduces [`super::shapley_exact`].
pub fn shapley_tree(model: &TreeEnsemble, x: &[f64], background: &Matrix) -> Result<Explanation> {
    check_inputs(model, x, background)?;
    let n = model.num_features();
    let mut phi = vec![0.0; n];
    let mut walker = Walker {
        x,
        b: x,
        from_x: Vec::new(),
        from_b: Vec::new(),
        phi: &mut phi,
    };
    for b in background.iter_rows() {
        walker.b = b;
        for tree in &model.trees {
            walker.walk(tree);
        }
    }
    let rows = background.rows() as f64;
    for p in &mut phi {
        *p /= rows;
    }
    Ok(Explanation {
        feature_names: model.feature_names.clone(),
        phi,
        base_value: background_mean(model, background),
        fx: model.margin(x),
        feature_values: x.to_vec(),
    })
}

struct Walker<'a> {
    x: &'a [f64],
    b: &'a [f64],
    from_x: Vec<usize>,
    from_b: Vec<usize>,
    phi: &'a mut [f64],
}

impl Walker<'_> {
    fn walk(&mut self, node: &Node) {
        match node {
            Node::Leaf { weight, .. } => self.credit(*weight),
            Node::Split {
                feature,
                threshold,
                left,
                right,
                ..
            } => {
                let f = *feature;
                let x_left = self.x[f] < *threshold;
                let b_left = self.b[f] < *threshold;
                let child = |go_left: bool| if go_left { left } else { right };
                if x_left == b_left || self.from_x.contains(&f) {
                    self.walk(child(x_left));
                } else if self.from_b.contains(&f) {
                    self.walk(child(b_left));
                } else {
                    self.from_x.push(f);
                    self.walk(child(x_left));
                    self.from_x.pop();
                    self.from_b.push(f);
                    self.walk(child(b_left));
                    self.from_b.pop();
                }
            }
        }
    }

    fn credit(&mut self, weight: f64) {
        let a = self.from_x.len();
        let c = self.from_b.len();
        if a > 0 {
            let share = weight / (a as f64 * binomial(a + c, a));
            for &f in &self.from_x {
                self.phi[f] += share;
            }
        }
        if c > 0 {
            let share = weight / (c as f64 * binomial(a + c, c));
            for &f in &self.from_b {
                self.phi[f] -= share;
            }
        }
    }
}

/// `n choose k` as a running product; exact for the small arguments seen
/// here (path lengths).
fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
