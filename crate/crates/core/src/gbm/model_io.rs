//! Versioned JSON model files.
//!
//! ```json
//! {"version": 1, "base_score": -0.04, "learning_rate": 0.3,
//!  "feature_names": ["num_verbs", ...],
//!  "trees": [{"feature": 3, "threshold": 4.5, "cover": 50.0,
//!             "left": {"leaf": -0.1, "cover": 20.0},
//!             "right": {"leaf": 0.2, "cover": 30.0}}]}
//! ```
//!
//! Reals are written in shortest round-trip form and parsed with correct
//! rounding, so a load/save cycle reproduces every stored bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::tree::{Node, TreeEnsemble};
use crate::error::{Error, Result};
use crate::io::write_atomic;

pub const MODEL_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    version: u32,
    base_score: f64,
    learning_rate: f64,
    feature_names: Vec<String>,
    trees: Vec<Node>,
}

pub fn to_json(model: &TreeEnsemble) -> String {
    let file = ModelFile {
        version: MODEL_VERSION,
        base_score: model.base_score,
        learning_rate: model.learning_rate,
        feature_names: model.feature_names.clone(),
        trees: model.trees.clone(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("model serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<TreeEnsemble> {
    #[derive(Deserialize)]
    struct VersionProbe {
        version: Option<u32>,
    }
    let probe: VersionProbe = serde_json::from_str(text)
        .map_err(|e| Error::Schema(format!("unreadable model file: {e}")))?;
    match probe.version {
        Some(MODEL_VERSION) => {}
        Some(v) => {
            return Err(Error::Schema(format!(
                "model version {v} is not supported (expected {MODEL_VERSION})"
            )))
        }
        None => return Err(Error::Schema("missing version".into())),
    }
    let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let model = TreeEnsemble {
        trees: file.trees,
        base_score: file.base_score,
        learning_rate: file.learning_rate,
        feature_names: file.feature_names,
    };
    model.validate()?;
    Ok(model)
}

pub fn save_model(model: &TreeEnsemble, path: &Path) -> Result<()> {
    write_atomic(path, to_json(model).as_bytes())
}

pub fn load_model(path: &Path) -> Result<TreeEnsemble> {
    from_json(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> TreeEnsemble {
        TreeEnsemble {
            trees: vec![Node::Split {
                feature: 1,
                threshold: 0.1 + 0.2,
                cover: 0.75,
                left: Box::new(Node::Leaf {
                    weight: -1.0 / 3.0,
                    cover: 0.25,
                }),
                right: Box::new(Node::Leaf {
                    weight: 2.0f64.sqrt(),
                    cover: 0.5,
                }),
            }],
            base_score: -0.0405,
            learning_rate: 0.3,
            feature_names: vec!["a".into(), "b".into()],
        }
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let m = model();
        let json = to_json(&m);
        let back = from_json(&json).unwrap();
        assert_eq!(back, m);
        assert_eq!(to_json(&back), json);
        assert!(json.contains("\"leaf\""));
    }

    #[test]
    fn truncated_file_is_a_schema_error() {
        let json = to_json(&model());
        let cut = &json[..json.len() / 2];
        assert!(matches!(from_json(cut), Err(Error::Schema(_))));
    }

    #[test]
    fn version_mismatch_is_rejected() {
        let json = to_json(&model()).replace("\"version\": 1", "\"version\": 2");
        match from_json(&json) {
            Err(Error::Schema(m)) => assert!(m.contains("version 2"), "{m}"),
            other => panic!("{other:?}"),
        }
        let json = to_json(&model()).replace("\"version\": 1,", "");
        assert!(matches!(from_json(&json), Err(Error::Schema(_))));
    }

    #[test]
    fn out_of_range_feature_is_rejected() {
        let json = to_json(&model()).replace("\"feature\": 1", "\"feature\": 5");
        assert!(matches!(from_json(&json), Err(Error::Schema(_))));
    }
}
