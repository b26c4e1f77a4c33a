use super::{background_mean, check_inputs, Explanation};
use crate::error::{Error, Result};
use crate::gbm::TreeEnsemble;
use crate::matrix::Matrix;

/// Largest feature count accepted by [`shapley_exact`] (`2^20` coalitions).
pub const MAX_EXACT_FEATURES: usize = 20;

/// Shapley weights `s! (n - s - 1)! / n!` for `s = 0..n`, built as running
/// products so no factorial is ever formed.
pub(crate) fn coalition_weights(n: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(n);
    let mut current = 1.0 / n as f64;
    for s in 0..n {
        w.push(current);
        if s + 1 < n {
            current *= (s + 1) as f64 / (n - 1 - s) as f64;
        }
    }
    w
}

/// Shapley values by enumerating every coalition.
///
/// Cost is `O(2^n * |background| * trees)`; intended as the reference for
/// [`super::shapley_tree`] and for small models.
pub fn shapley_exact(model: &TreeEnsemble, x: &[f64], background: &Matrix) -> Result<Explanation> {
    check_inputs(model, x, background)?;
    let n = model.num_features();
    if n > MAX_EXACT_FEATURES {
        return Err(Error::InvalidArgument(format!(
            "exact enumeration supports at most {MAX_EXACT_FEATURES} features, model has {n}"
        )));
    }
    let fx = model.margin(x);
    if n == 0 {
        return Ok(Explanation {
            feature_names: Vec::new(),
            phi: Vec::new(),
            base_value: background_mean(model, background),
            fx,
            feature_values: Vec::new(),
        });
    }

    let full = (1usize << n) - 1;
    let mut value = vec![0.0; full + 1];
    let mut composite = vec![0.0; n];
    let rows = background.rows() as f64;
    // Every coalition, the empty and full ones included, goes through the
    // same averaging so that a feature the model ignores gets exactly zero.
    for (mask, v) in value.iter_mut().enumerate() {
        let mut total = 0.0;
        for b in background.iter_rows() {
            for j in 0..n {
                composite[j] = if mask >> j & 1 == 1 { x[j] } else { b[j] };
            }
            total += model.margin(&composite);
        }
        *v = total / rows;
    }
    let base_value = value[0];

    let weights = coalition_weights(n);
    let mut phi = vec![0.0; n];
    for (i, p) in phi.iter_mut().enumerate() {
        let bit = 1usize << i;
        let mut acc = 0.0;
        for mask in 0..=full {
            if mask & bit == 0 {
                acc += weights[mask.count_ones() as usize] * (value[mask | bit] - value[mask]);
            }
        }
        *p = acc;
    }

    Ok(Explanation {
        feature_names: model.feature_names.clone(),
        phi,
        base_value,
        fx,
        feature_values: x.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(k: usize) -> f64 {
        (1..=k).map(|v| v as f64).product()
    }

    #[test]
    fn weights_match_factorial_ratio() {
        for n in 1..=17 {
            let w = coalition_weights(n);
            for (s, ws) in w.iter().enumerate() {
                let direct = factorial(s) * factorial(n - s - 1) / factorial(n);
                assert!(
                    (ws - direct).abs() <= 1e-15 * direct.max(1e-300),
                    "n={n} s={s}"
                );
            }
            // Each player's weights over all coalitions sum to one.
            let total: f64 = (0..n)
                .map(|s| {
                    let binom = factorial(n - 1) / (factorial(s) * factorial(n - 1 - s));
                    binom * w[s]
                })
                .sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }
}
