use std::collections::HashSet;
use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use super::lexicon::LexiconSet;
use super::tokenize::{tokenize, Tags, TokenizedDocument};
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::matrix::{FeatureTable, Matrix};

pub const NUM_FEATURES: usize = 17;

/// The 17 features, in canonical column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    NumVerbs,
    NumModifiers,
    AvSentLen,
    AvWordLen,
    NumModalVerbs,
    LexicalDiversity,
    NumChars,
    NumPunctuation,
    NumSentences,
    NumAdjectives,
    NumAdverbs,
    NumNouns,
    NumFunctionWords,
    I,
    Analytic,
    Sixltr,
    Insight,
}

impl Feature {
    pub const ALL: [Feature; NUM_FEATURES] = [
        Feature::NumVerbs,
        Feature::NumModifiers,
        Feature::AvSentLen,
        Feature::AvWordLen,
        Feature::NumModalVerbs,
        Feature::LexicalDiversity,
        Feature::NumChars,
        Feature::NumPunctuation,
        Feature::NumSentences,
        Feature::NumAdjectives,
        Feature::NumAdverbs,
        Feature::NumNouns,
        Feature::NumFunctionWords,
        Feature::I,
        Feature::Analytic,
        Feature::Sixltr,
        Feature::Insight,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Feature::NumVerbs => "num_verbs",
            Feature::NumModifiers => "num_modifiers",
            Feature::AvSentLen => "av_sent_len",
            Feature::AvWordLen => "av_word_len",
            Feature::NumModalVerbs => "num_modal_verbs",
            Feature::LexicalDiversity => "lexical_diversity",
            Feature::NumChars => "num_chars",
            Feature::NumPunctuation => "num_punctuation",
            Feature::NumSentences => "num_sentences",
            Feature::NumAdjectives => "num_adjectives",
            Feature::NumAdverbs => "num_adverbs",
            Feature::NumNouns => "num_nouns",
            Feature::NumFunctionWords => "num_function_words",
            Feature::I => "I",
            Feature::Analytic => "Analytic",
            Feature::Sixltr => "Sixltr",
            Feature::Insight => "insight",
        }
    }

    /// Canonical names as owned strings, for model and table headers.
    pub fn names() -> Vec<String> {
        Feature::ALL.iter().map(|f| f.name().to_string()).collect()
    }

    /// Integer-valued counts, as opposed to ratios and averages.
    pub fn is_count(self) -> bool {
        !matches!(
            self,
            Feature::AvSentLen | Feature::AvWordLen | Feature::LexicalDiversity
        )
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Feature::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFeature(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector([f64; NUM_FEATURES]);

impl FeatureVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, f: Feature) -> f64 {
        self.0[f.index()]
    }
}

impl Index<Feature> for FeatureVector {
    type Output = f64;

    fn index(&self, f: Feature) -> &f64 {
        &self.0[f.index()]
    }
}

/// Computes the feature vector of a tokenized document.
///
/// Averages are per word and per sentence; lexical diversity is the
/// document-level type/token ratio over lowercased forms; `Sixltr` counts
/// words longer than six characters; `Analytic` and `insight` are plain
/// counts of lexicon hits.
pub fn extract_features(doc: &TokenizedDocument) -> Result<FeatureVector> {
    let mut words = 0usize;
    let mut word_chars = 0usize;
    let mut distinct = HashSet::new();
    let count = |tag: Tags, tags: Tags| usize::from(tags.contains(tag));
    let mut tallies = [0usize; NUM_FEATURES];
    let mut sixltr = 0usize;

    for w in doc.words() {
        words += 1;
        word_chars += w.char_len;
        distinct.insert(w.text.to_lowercase());
        if w.char_len > 6 {
            sixltr += 1;
        }
        for (feature, tag) in [
            (Feature::NumVerbs, Tags::VERB),
            (Feature::NumModalVerbs, Tags::MODAL),
            (Feature::NumAdjectives, Tags::ADJECTIVE),
            (Feature::NumAdverbs, Tags::ADVERB),
            (Feature::NumNouns, Tags::NOUN),
            (Feature::NumFunctionWords, Tags::FUNCTION),
            (Feature::I, Tags::PRONOUN_I),
            (Feature::Analytic, Tags::ANALYTIC),
            (Feature::Insight, Tags::INSIGHT),
        ] {
            tallies[feature.index()] += count(tag, w.tags);
        }
    }
    if words == 0 {
        return Err(Error::InvalidDocument("document has no words".into()));
    }
    let sentences = doc.sentences.len();
    let punctuation = doc.tokens().filter(|t| !t.is_word()).count();

    let mut v = [0.0; NUM_FEATURES];
    for f in Feature::ALL {
        v[f.index()] = tallies[f.index()] as f64;
    }
    v[Feature::NumModifiers.index()] =
        (tallies[Feature::NumAdjectives.index()] + tallies[Feature::NumAdverbs.index()]) as f64;
    v[Feature::AvSentLen.index()] = words as f64 / sentences as f64;
    v[Feature::AvWordLen.index()] = word_chars as f64 / words as f64;
    v[Feature::LexicalDiversity.index()] = distinct.len() as f64 / words as f64;
    v[Feature::NumChars.index()] = doc.num_chars as f64;
    v[Feature::NumPunctuation.index()] = punctuation as f64;
    v[Feature::NumSentences.index()] = sentences as f64;
    v[Feature::Sixltr.index()] = sixltr as f64;
    Ok(FeatureVector(v))
}

/// Tokenizes and featurizes one text.
pub fn featurize_text(text: &str, lex: &LexiconSet) -> Result<FeatureVector> {
    extract_features(&tokenize(text, lex)?)
}

/// Featurizes every document of a corpus; row `i` is document `i`.
pub fn featurize_corpus(corpus: &Corpus, lex: &LexiconSet) -> Result<FeatureTable> {
    let mut x = Matrix::with_cols(NUM_FEATURES);
    for (index, doc) in corpus.documents.iter().enumerate() {
        let fv = featurize_text(doc.text(), lex).map_err(|e| Error::Document {
            index,
            error: Box::new(e),
        })?;
        x.push_row(fv.as_slice())?;
    }
    FeatureTable::new(Feature::names(), x, corpus.labels())
}
