//! Labeled corpora and seeded hybrid train/test splits.
//!
//! Corpus files are UTF-8 JSONL with exactly two keys per line, `text` and
//! `label`. The provenance tag is supplied by the caller, not the file.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Class label. `0` is deceptive, `1` is truthful (the positive class).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Deceptive = 0,
    Truthful = 1,
}

impl Label {
    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.as_u8())
    }

    pub fn is_positive(self) -> bool {
        self == Label::Truthful
    }
}

impl TryFrom<i64> for Label {
    type Error = Error;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            0 => Ok(Label::Deceptive),
            1 => Ok(Label::Truthful),
            other => Err(Error::InvalidDocument(format!(
                "label {other} is not 0 or 1"
            ))),
        }
    }
}

/// Provenance tag of a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    /// Disinformation (fake news).
    Dis,
    /// Corporate fraud email.
    En,
    /// Social-network scams.
    Fb,
    /// Favorable fake reviews.
    Pos,
    /// Unfavorable fake reviews.
    Neg,
    /// Anything else, including synthetic and derived files.
    Syn,
}

impl Source {
    pub const ALL: [Source; 6] = [
        Source::Dis,
        Source::En,
        Source::Fb,
        Source::Pos,
        Source::Neg,
        Source::Syn,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Source::Dis => "DIS",
            Source::En => "EN",
            Source::Fb => "FB",
            Source::Pos => "POS",
            Source::Neg => "NEG",
            Source::Syn => "SYN",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Source::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown source tag {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDocument {
    text: String,
    label: Label,
    source: Source,
}

impl LabeledDocument {
    /// Fails when `text` is empty after trimming.
    pub fn new(text: impl Into<String>, label: Label, source: Source) -> Result<Self> {
        let text = text.into();
        if text.trim().is_empty() {
            return Err(Error::InvalidDocument("text is empty".into()));
        }
        Ok(Self {
            text,
            label,
            source,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn source(&self) -> Source {
        self.source
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub name: String,
    pub documents: Vec<LabeledDocument>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct Record<'a> {
    text: std::borrow::Cow<'a, str>,
    label: i64,
}

impl Corpus {
    pub fn new(name: impl Into<String>, documents: Vec<LabeledDocument>) -> Self {
        Self {
            name: name.into(),
            documents,
        }
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.documents.iter().map(|d| d.label).collect()
    }

    /// Parses JSONL text. `path` is used only for error messages.
    pub fn parse_jsonl(text: &str, path: &Path, source: Source) -> Result<Self> {
        let mut documents = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let line_err = |message: String| Error::CorpusLine {
                path: path.to_path_buf(),
                line: i + 1,
                message,
            };
            let rec: Record = serde_json::from_str(line).map_err(|e| line_err(e.to_string()))?;
            let label = Label::try_from(rec.label).map_err(|e| line_err(e.to_string()))?;
            let doc = LabeledDocument::new(rec.text.into_owned(), label, source)
                .map_err(|e| line_err(e.to_string()))?;
            documents.push(doc);
        }
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Ok(Self::new(name, documents))
    }

    /// One compact JSON object per line, `text` then `label`.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for d in &self.documents {
            let rec = Record {
                text: d.text.as_str().into(),
                label: i64::from(d.label.as_u8()),
            };
            out.push_str(&serde_json::to_string(&rec).expect("string record serializes"));
            out.push('\n');
        }
        out
    }
}

/// Loads a JSONL corpus, tagging every document with `source`.
pub fn load_corpus(path: &Path, source: Source) -> Result<Corpus> {
    let text = fs::read_to_string(path)?;
    Corpus::parse_jsonl(&text, path, source)
}

/// Sizes and sources of a hybrid split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitRecipe {
    pub dis_source: Source,
    pub partner_source: Source,
    pub train_size: usize,
    pub test_size: usize,
}

impl SplitRecipe {
    /// Disinformation documents placed in training: half, rounded down.
    pub fn dis_train(&self) -> usize {
        self.train_size / 2
    }

    pub fn partner_train(&self) -> usize {
        self.train_size - self.dis_train()
    }
}

/// Where a training document came from: an index into either input corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Dis(usize),
    Partner(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HybridSplit {
    pub train: Corpus,
    pub test: Corpus,
    pub seed: u64,
    pub recipe: SplitRecipe,
    /// Origin of each training document, parallel to `train.documents`.
    pub train_origin: Vec<Origin>,
    /// Index into the disinformation corpus of each test document.
    pub test_origin: Vec<usize>,
}

/// Builds a hybrid training set (half disinformation, half partner) and a
/// disjoint disinformation-only test set.
///
/// Sampling is without replacement through seeded shuffles of the index
/// lists; the result is a pure function of the inputs and `seed`.
pub fn make_hybrid_split(
    dis: &Corpus,
    partner: &Corpus,
    train_size: usize,
    test_size: usize,
    seed: u64,
) -> Result<HybridSplit> {
    if train_size == 0 || test_size == 0 {
        return Err(Error::InvalidArgument(
            "train and test sizes must be positive".into(),
        ));
    }
    let recipe = SplitRecipe {
        dis_source: dis.documents.first().map_or(Source::Dis, |d| d.source),
        partner_source: partner.documents.first().map_or(Source::Syn, |d| d.source),
        train_size,
        test_size,
    };
    let dis_needed = recipe.dis_train() + test_size;
    if dis.len() < dis_needed {
        return Err(Error::InsufficientDocuments {
            tag: recipe.dis_source.to_string(),
            needed: dis_needed,
            available: dis.len(),
        });
    }
    if partner.len() < recipe.partner_train() {
        return Err(Error::InsufficientDocuments {
            tag: recipe.partner_source.to_string(),
            needed: recipe.partner_train(),
            available: partner.len(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dis_idx: Vec<usize> = (0..dis.len()).collect();
    dis_idx.shuffle(&mut rng);
    let mut partner_idx: Vec<usize> = (0..partner.len()).collect();
    partner_idx.shuffle(&mut rng);

    let (dis_train, rest) = dis_idx.split_at(recipe.dis_train());
    let test_origin = rest[..test_size].to_vec();

    let mut train_origin: Vec<Origin> = dis_train
        .iter()
        .map(|&i| Origin::Dis(i))
        .chain(
            partner_idx[..recipe.partner_train()]
                .iter()
                .map(|&i| Origin::Partner(i)),
        )
        .collect();
    train_origin.shuffle(&mut rng);

    let train_docs = train_origin
        .iter()
        .map(|o| match *o {
            Origin::Dis(i) => dis.documents[i].clone(),
            Origin::Partner(i) => partner.documents[i].clone(),
        })
        .collect();
    let test_docs = test_origin
        .iter()
        .map(|&i| dis.documents[i].clone())
        .collect();

    Ok(HybridSplit {
        train: Corpus::new(
            format!("{}+{}-train", recipe.dis_source, recipe.partner_source),
            train_docs,
        ),
        test: Corpus::new(format!("{}-test", recipe.dis_source), test_docs),
        seed,
        recipe,
        train_origin,
        test_origin,
    })
}
