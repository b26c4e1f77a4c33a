//! Settings resolution: command-line flags, then the config file, then
//! built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::CliError;

pub const KEYS: &[&str] = &[
    "seed",
    "out_dir",
    "lexicon_dir",
    "data_dir",
    "train_size",
    "test_size",
    "rounds",
    "max_depth",
    "learning_rate",
    "lambda",
    "gamma",
    "min_child_weight",
    "background_cap",
    "method",
];

/// Parsed `key = value` file. Blank lines and `#` comments are ignored.
#[derive(Debug, Default)]
pub struct ConfigFile {
    path: PathBuf,
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: &str| CliError::Usage(format!("{}:{}: {m}", path.display(), i + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`"))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(err(&format!("unknown key {key:?}")));
            }
            if values
                .insert(key.to_string(), value.trim().to_string())
                .is_some()
            {
                return Err(err(&format!("duplicate key {key:?}")));
            }
        }
        Ok(Self {
            path: path.to_path_buf(),
            values,
        })
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        debug_assert!(KEYS.contains(&key));
        self.values
            .get(key)
            .map(|v| {
                v.parse().map_err(|e| {
                    CliError::Usage(format!(
                        "{}: invalid value {v:?} for {key}: {e}",
                        self.path.display()
                    ))
                })
            })
            .transpose()
    }

    /// The flag if given, else the config value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.get(key)?.unwrap_or(default)),
        }
    }

    pub fn pick_opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }
}
