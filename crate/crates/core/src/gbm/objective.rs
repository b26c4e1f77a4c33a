//! Logistic loss on log-odds margins.

pub fn sigmoid(margin: f64) -> f64 {
    1.0 / (1.0 + (-margin).exp())
}

/// First derivative of the logistic loss with respect to the margin.
pub fn gradient(margin: f64, label: f64) -> f64 {
    sigmoid(margin) - label
}

/// Second derivative of the logistic loss with respect to the margin.
pub fn hessian(margin: f64) -> f64 {
    let p = sigmoid(margin);
    p * (1.0 - p)
}

/// `-[y ln p + (1 - y) ln(1 - p)]`, computed stably from the margin.
pub fn log_loss(margin: f64, label: f64) -> f64 {
    // ln(1 + e^m) - y m, with softplus evaluated without overflow.
    let softplus = if margin > 0.0 {
        margin + (-margin).exp().ln_1p()
    } else {
        margin.exp().ln_1p()
    };
    softplus - label * margin
}

pub fn mean_log_loss(margins: &[f64], labels: &[f64]) -> f64 {
    let total: f64 = margins
        .iter()
        .zip(labels)
        .map(|(&m, &y)| log_loss(m, y))
        .sum();
    total / margins.len() as f64
}
