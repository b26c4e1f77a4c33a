//! Stylometric and psycholinguistic feature extraction.
//!
//! Text is split into sentences and tokens by a deterministic rule-based
//! tokenizer, words are tagged from a [`LexiconSet`] (lexicon lookup first,
//! then suffix heuristics), and the tags are counted into a
//! [`FeatureVector`].

mod features;
mod lexicon;
mod tokenize;

pub use features::{
    extract_features, featurize_corpus, featurize_text, Feature, FeatureVector, NUM_FEATURES,
};
pub use lexicon::{
    LexiconSet, ANALYTIC_FILE, FUNCTION_FILE, INSIGHT_FILE, MODAL_FILE, POS_FILE, SUFFIX_FILE,
};
pub use tokenize::{tokenize, Sentence, Tags, Token, TokenKind, TokenizedDocument};
