use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use veritree::gbm::{load_model, save_model, train_table, Node};
use veritree::{FeatureTable, TrainConfig, TreeEnsemble};

fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(name: &str) -> PathBuf {
    workspace().join("data").join(name)
}

fn core_fixture(name: &str) -> PathBuf {
    workspace().join("crates/core/tests/fixtures").join(name)
}

fn veritree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_veritree"))
        .args(args)
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = veritree(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn split_into(dir: &Path, partner: &str) {
    ok(&[
        "split",
        "--dis",
        s(&data("syn_dis.jsonl")),
        "--partner",
        s(&data(partner)),
        "--train",
        "200",
        "--test",
        "20",
        "--seed",
        "42",
        "--out-dir",
        s(dir),
    ]);
}

#[test]
fn split_writes_table_sizes_deterministically() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    split_into(&a, "syn_en.jsonl");
    split_into(&b, "syn_en.jsonl");
    for f in ["train.jsonl", "test.jsonl"] {
        assert_eq!(
            fs::read(a.join(f)).unwrap(),
            fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
    assert_eq!(
        fs::read_to_string(a.join("train.jsonl"))
            .unwrap()
            .lines()
            .count(),
        200
    );
    assert_eq!(
        fs::read_to_string(a.join("test.jsonl"))
            .unwrap()
            .lines()
            .count(),
        20
    );
}

#[test]
fn missing_input_fails_without_output() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("out");
    let out = veritree(&[
        "split",
        "--dis",
        s(&data("syn_dis.jsonl")),
        "--partner",
        "/nonexistent/p.jsonl",
        "--out-dir",
        s(&out_dir),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_dir.exists());
}

#[test]
fn usage_errors_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    let xor = core_fixture("xor_train.csv");
    let out = veritree(&[
        "train",
        "--train",
        s(&xor),
        "--rounds",
        "0",
        "--out-dir",
        s(tmp.path()),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!tmp.path().join("model.json").exists());
    assert_eq!(veritree(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(veritree(&["train"]).status.code(), Some(1));
    let conf = tmp.path().join("bad.conf");
    fs::write(&conf, "colour = blue\n").unwrap();
    let out = veritree(&["--config", s(&conf), "train", "--train", s(&xor)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(veritree(&["--help"]).status.code(), Some(0));
}

#[test]
fn trained_model_reloads_to_the_same_margins() {
    let tmp = tempfile::tempdir().unwrap();
    let xor = core_fixture("xor_train.csv");
    let stdout = ok(&[
        "train",
        "--train",
        s(&xor),
        "--rounds",
        "50",
        "--max-depth",
        "2",
        "--out-dir",
        s(tmp.path()),
    ]);
    assert!(stdout.starts_with("final training loss: "));
    let loaded = load_model(&tmp.path().join("model.json")).unwrap();
    let table = FeatureTable::read_csv(&xor).unwrap();
    let cfg = TrainConfig {
        num_rounds: 50,
        max_depth: 2,
        seed: 42,
        ..TrainConfig::default()
    };
    let direct = train_table(&table, &cfg).unwrap().model;
    for row in table.x.iter_rows() {
        assert_eq!(
            loaded.predict_margin(row).unwrap().to_bits(),
            direct.predict_margin(row).unwrap().to_bits()
        );
    }
    let loss = fs::read_to_string(tmp.path().join("train_loss.csv")).unwrap();
    assert_eq!(loss.lines().next(), Some("round,loss"));
    assert_eq!(loss.lines().count(), 52);
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let tmp = tempfile::tempdir().unwrap();
    let conf = tmp.path().join("run.conf");
    fs::write(&conf, "# training\nrounds = 5\nmax_depth = 2\n").unwrap();
    let xor = core_fixture("xor_train.csv");
    let rounds = |extra: &[&str]| {
        let dir = tmp.path().join(format!("r{}", extra.len()));
        let mut args = vec![
            "--config",
            s(&conf),
            "train",
            "--train",
            s(&xor),
            "--out-dir",
            s(&dir),
        ];
        args.extend_from_slice(extra);
        ok(&args);
        fs::read_to_string(dir.join("train_loss.csv"))
            .unwrap()
            .lines()
            .count()
            - 2
    };
    assert_eq!(rounds(&[]), 5);
    assert_eq!(rounds(&["--rounds", "3"]), 3);
}

#[test]
fn synthetic_pipeline_stages() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    split_into(dir, "syn_fb.jsonl");
    let train = dir.join("train.jsonl");
    let test = dir.join("test.jsonl");
    ok(&[
        "featurize",
        "--input",
        s(&train),
        "--output",
        s(&dir.join("train.csv")),
    ]);
    let table = FeatureTable::read_csv(&dir.join("train.csv")).unwrap();
    assert_eq!(table.len(), 200);
    assert_eq!(table.names.len(), 17);

    ok(&[
        "train",
        "--train",
        s(&dir.join("train.csv")),
        "--out-dir",
        s(dir),
    ]);
    let loss: Vec<f64> = fs::read_to_string(dir.join("train_loss.csv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(loss.len(), 101);
    assert!(loss.windows(2).all(|w| w[1] <= w[0]));

    let model = dir.join("model.json");
    ok(&[
        "evaluate",
        "--model",
        s(&model),
        "--test",
        s(&test),
        "--name",
        "DIS+FB",
        "--out-dir",
        s(dir),
    ]);
    let metrics: Value =
        serde_json::from_str(&fs::read_to_string(dir.join("metrics.json")).unwrap()).unwrap();
    for key in [
        "accuracy",
        "confusion",
        "deceptive",
        "truthful",
        "weighted",
        "macro",
        "roc",
        "auc",
    ] {
        assert!(!metrics[key].is_null(), "{key}");
    }
    assert!(metrics["accuracy"].as_f64().unwrap() >= 0.65);
    let table_txt = fs::read_to_string(dir.join("table.txt")).unwrap();
    assert_eq!(
        table_txt.lines().next(),
        Some("Model Accuracy Precision Recall F1")
    );
    assert!(table_txt.lines().nth(1).unwrap().starts_with("DIS+FB "));
    assert!(fs::read_to_string(dir.join("roc.csv"))
        .unwrap()
        .starts_with("fpr,tpr,threshold\n0,0,inf\n"));

    ok(&[
        "explain",
        "--model",
        s(&model),
        "--instances",
        s(&test),
        "--background",
        s(&train),
        "--out-dir",
        s(dir),
    ]);
    let summary: Value =
        serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    let reference: Value = serde_json::from_str(
        &fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/reference_run.json"),
        )
        .unwrap(),
    )
    .unwrap();
    assert_eq!(
        summary["ranking"][0]["feature"],
        reference["models"]["DIS+FB"]["top3"][0]
    );
    assert_eq!(fs::read_dir(dir.join("waterfall")).unwrap().count(), 20);
    assert_eq!(fs::read_dir(dir.join("interactions")).unwrap().count(), 32);
}

fn waterfalls(dir: &Path) -> Vec<Value> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
        .iter()
        .map(|p| serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap())
        .collect()
}

#[test]
fn exact_and_tree_waterfalls_agree() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let xor = core_fixture("xor_train.csv");
    let holdout = core_fixture("xor_holdout.csv");
    ok(&[
        "train",
        "--train",
        s(&xor),
        "--rounds",
        "50",
        "--max-depth",
        "2",
        "--out-dir",
        s(dir),
    ]);
    let model = dir.join("model.json");
    for method in ["exact", "tree"] {
        ok(&[
            "explain",
            "--model",
            s(&model),
            "--instances",
            s(&holdout),
            "--background",
            s(&xor),
            "--method",
            method,
            "--out-dir",
            s(&dir.join(method)),
        ]);
    }
    let exact = waterfalls(&dir.join("exact/waterfall"));
    let tree = waterfalls(&dir.join("tree/waterfall"));
    assert_eq!(exact.len(), 10);
    for (e, t) in exact.iter().zip(&tree) {
        let close = |a: &Value, b: &Value| (a.as_f64().unwrap() - b.as_f64().unwrap()).abs() < 1e-9;
        assert!(close(&e["base_value"], &t["base_value"]));
        assert!(close(&e["fx"], &t["fx"]));
        let phi = |w: &Value| {
            let mut v: Vec<(String, f64)> = w["steps"]
                .as_array()
                .unwrap()
                .iter()
                .map(|s| {
                    (
                        s["feature"].as_str().unwrap().to_string(),
                        s["phi"].as_f64().unwrap(),
                    )
                })
                .collect();
            v.sort_by(|a, b| a.0.cmp(&b.0));
            v
        };
        for ((fa, pa), (fb, pb)) in phi(e).iter().zip(phi(t).iter()) {
            assert_eq!(fa, fb);
            assert!((pa - pb).abs() < 1e-9);
        }
    }
    let out = veritree(&[
        "explain",
        "--model",
        s(&model),
        "--instances",
        s(&holdout),
        "--background",
        s(&xor),
        "--method",
        "shap",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

fn write_model(path: &Path, trees: Vec<Node>) {
    let model = TreeEnsemble {
        trees,
        base_score: 0.0,
        learning_rate: 0.3,
        feature_names: vec!["feature0".into(), "feature1".into()],
    };
    save_model(&model, path).unwrap();
}

#[test]
fn constant_model_has_zero_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let model = tmp.path().join("const.json");
    write_model(
        &model,
        vec![Node::Leaf {
            weight: 0.7,
            cover: 3.0,
        }],
    );
    let xor = core_fixture("xor_train.csv");
    ok(&[
        "explain",
        "--model",
        s(&model),
        "--instances",
        s(&xor),
        "--background",
        s(&xor),
        "--out-dir",
        s(tmp.path()),
    ]);
    let summary: Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("summary.json")).unwrap())
            .unwrap();
    for r in summary["ranking"].as_array().unwrap() {
        assert_eq!(r["mean_abs_phi"].as_f64(), Some(0.0));
    }
}

#[test]
fn perfect_model_scores_one_hundred_percent() {
    let tmp = tempfile::tempdir().unwrap();
    let model = tmp.path().join("perfect.json");
    // Label is 1 exactly when feature0 * feature1 > 0.
    let inner = |sign: f64| Node::Split {
        feature: 1,
        threshold: 0.0,
        cover: 2.0,
        left: Box::new(Node::Leaf {
            weight: 5.0 * sign,
            cover: 1.0,
        }),
        right: Box::new(Node::Leaf {
            weight: -5.0 * sign,
            cover: 1.0,
        }),
    };
    write_model(
        &model,
        vec![Node::Split {
            feature: 0,
            threshold: 0.0,
            cover: 4.0,
            left: Box::new(inner(1.0)),
            right: Box::new(inner(-1.0)),
        }],
    );
    let xor = core_fixture("xor_train.csv");
    let stdout = ok(&[
        "evaluate",
        "--model",
        s(&model),
        "--test",
        s(&xor),
        "--name",
        "perfect",
        "--out-dir",
        s(tmp.path()),
    ]);
    assert!(stdout.contains("perfect 100% 1.00 1.00 1.00"), "{stdout}");
}

#[test]
fn empty_or_mismatched_test_data_is_a_data_error() {
    let tmp = tempfile::tempdir().unwrap();
    let model = tmp.path().join("m.json");
    write_model(
        &model,
        vec![Node::Leaf {
            weight: 0.1,
            cover: 1.0,
        }],
    );
    let empty = tmp.path().join("empty.jsonl");
    fs::write(&empty, "").unwrap();
    let out = veritree(&[
        "evaluate",
        "--model",
        s(&model),
        "--test",
        s(&empty),
        "--out-dir",
        s(tmp.path()),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!tmp.path().join("metrics.json").exists());
    // 17 text features against a two-feature model.
    let out = veritree(&[
        "evaluate",
        "--model",
        s(&model),
        "--test",
        s(&data("syn_dis.jsonl")),
        "--out-dir",
        s(tmp.path()),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let bad = tmp.path().join("bad.jsonl");
    fs::write(&bad, "{\"text\": \"hi\", \"label\": 3}\n").unwrap();
    let out = veritree(&["featurize", "--input", s(&bad), "--out-dir", s(tmp.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn custom_lexicon_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let lex = workspace().join("crates/core/lexicons");
    ok(&[
        "--lexicon-dir",
        s(&lex),
        "featurize",
        "--input",
        s(&data("syn_dis.jsonl")),
        "--out-dir",
        s(tmp.path()),
    ]);
    assert!(tmp.path().join("features.csv").exists());
    let out = veritree(&[
        "--lexicon-dir",
        s(tmp.path()),
        "featurize",
        "--input",
        s(&data("syn_dis.jsonl")),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
