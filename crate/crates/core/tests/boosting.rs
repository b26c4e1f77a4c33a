use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use veritree::gbm::objective::{gradient, hessian, log_loss, sigmoid};
use veritree::gbm::{from_json, load_model, save_model, to_json};
use veritree::synth::{random_labels, uniform_matrix};
use veritree::{train, TrainConfig};

fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-8)
}

#[test]
fn derivatives_match_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let m: f64 = rng.gen_range(-8.0..8.0);
        let y = f64::from(u8::from(rng.gen_bool(0.5)));
        let h = 1e-5;
        let g_fd = (log_loss(m + h, y) - log_loss(m - h, y)) / (2.0 * h);
        let h_fd = (gradient(m + h, y) - gradient(m - h, y)) / (2.0 * h);
        assert!(
            relative_error(gradient(m, y), g_fd) < 1e-6,
            "g at m={m} y={y}"
        );
        assert!(relative_error(hessian(m), h_fd) < 1e-6, "h at m={m}");
        assert_eq!(gradient(m, y), sigmoid(m) - y);
    }
}

#[test]
fn training_loss_never_increases() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for dataset in 0..20 {
        let x = uniform_matrix(&mut rng, 200, 17, -3.0, 3.0);
        let y = random_labels(&mut rng, 200);
        let cfg = TrainConfig {
            num_rounds: 30,
            learning_rate: [0.05, 0.1, 0.3][dataset % 3],
            ..TrainConfig::default()
        };
        let loss = train(&x, &y, &cfg).unwrap().round_loss;
        assert_eq!(loss.len(), 31);
        for w in loss.windows(2) {
            assert!(
                w[1] <= w[0] + 1e-12,
                "dataset {dataset}: {} -> {}",
                w[0],
                w[1]
            );
        }
    }
}

#[test]
fn saved_model_reproduces_margins_and_bytes() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let x = uniform_matrix(&mut rng, 150, 17, 0.0, 50.0);
    let y = random_labels(&mut rng, 150);
    let model = train(&x, &y, &TrainConfig::default()).unwrap().model;

    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("model.json");
    let second = dir.path().join("again.json");
    save_model(&model, &first).unwrap();
    let loaded = load_model(&first).unwrap();
    assert_eq!(loaded, model);
    let probes = uniform_matrix(&mut rng, 100, 17, -10.0, 60.0);
    for p in probes.iter_rows() {
        assert_eq!(
            loaded.predict_margin(p).unwrap().to_bits(),
            model.predict_margin(p).unwrap().to_bits()
        );
    }
    save_model(&loaded, &second).unwrap();
    let digest = |p: &std::path::Path| Sha256::digest(std::fs::read(p).unwrap());
    assert_eq!(digest(&first), digest(&second));
    assert_eq!(from_json(&to_json(&loaded)).unwrap(), model);
}
