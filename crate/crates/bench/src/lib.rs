//! Shared inputs for the benchmarks in `benches/`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use veritree::synth::{random_labels, uniform_matrix};
use veritree::{train, Label, Matrix, TrainConfig, TreeEnsemble};

/// A seeded `rows x cols` training set.
pub fn dataset(rows: usize, cols: usize, seed: u64) -> (Matrix, Vec<Label>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = uniform_matrix(&mut rng, rows, cols, 0.0, 10.0);
    let y = random_labels(&mut rng, rows);
    (x, y)
}

/// A default-configured model trained on [`dataset`], with its inputs.
pub fn trained_model(rows: usize, cols: usize, seed: u64) -> (TreeEnsemble, Matrix) {
    let (x, y) = dataset(rows, cols, seed);
    let model = train(&x, &y, &TrainConfig::default())
        .expect("valid data")
        .model;
    (model, x)
}

pub const SAMPLE_TEXT: &str =
    "Dear friend, I know this sounds strange! The bank told me that your \
account was frozen... Please send the fee today. We can't wait: the transfer must happen quickly, \
or the money is lost forever?!";
