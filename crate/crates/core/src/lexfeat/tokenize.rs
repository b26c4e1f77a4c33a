use bitflags::bitflags;

use super::lexicon::LexiconSet;
use crate::error::{Error, Result};

bitflags! {
    /// Tags carried by a word: parts of speech, closed classes and
    /// psycholinguistic categories.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
    pub struct Tags: u16 {
        const VERB = 1 << 0;
        const MODAL = 1 << 1;
        const NOUN = 1 << 2;
        const ADJECTIVE = 1 << 3;
        const ADVERB = 1 << 4;
        const FUNCTION = 1 << 5;
        const PRONOUN_I = 1 << 6;
        const ANALYTIC = 1 << 7;
        const INSIGHT = 1 << 8;

        const POS = Self::VERB.bits() | Self::NOUN.bits() | Self::ADJECTIVE.bits() | Self::ADVERB.bits();
    }
}

impl Tags {
    /// Parses a tag name as written in lexicon files.
    pub fn from_lexicon_name(name: &str) -> Option<Tags> {
        Some(match name {
            "verb" => Tags::VERB,
            "modal" => Tags::MODAL | Tags::VERB,
            "noun" => Tags::NOUN,
            "adjective" => Tags::ADJECTIVE,
            "adverb" => Tags::ADVERB,
            "function" => Tags::FUNCTION,
            "pronoun-I" => Tags::PRONOUN_I,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Word,
    Punctuation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub kind: TokenKind,
    /// Length in Unicode scalar values.
    pub char_len: usize,
    /// Always empty for punctuation.
    pub tags: Tags,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sentence {
    pub tokens: Vec<Token>,
}

impl Sentence {
    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.is_word())
    }

    fn has_word(&self) -> bool {
        self.tokens.iter().any(Token::is_word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedDocument {
    pub sentences: Vec<Sentence>,
    /// Character count of the raw text, whitespace included.
    pub num_chars: usize,
}

impl TokenizedDocument {
    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(Sentence::words)
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }
}

const EXTRA_PUNCTUATION: &[char] = &[
    '\u{2026}', '\u{2013}', '\u{2014}', '\u{2018}', '\u{2019}', '\u{201C}', '\u{201D}', '\u{00AB}',
    '\u{00BB}', '\u{00A1}', '\u{00BF}',
];

fn is_punctuation(c: char) -> bool {
    c.is_ascii_punctuation() || EXTRA_PUNCTUATION.contains(&c)
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

/// Apostrophes and hyphens join a word only between two alphanumerics.
fn is_joiner(c: char) -> bool {
    matches!(c, '\'' | '-' | '\u{2019}')
}

/// Splits `text` into sentences of word and punctuation tokens and tags
/// each word.
///
/// A sentence ends at `.`, `!` or `?` followed by whitespace or the end of
/// the text. Words are maximal runs of letters and digits, with internal
/// apostrophes and hyphens. Punctuation tokens are single characters;
/// characters that are neither (symbols, emoji) are skipped. A fragment
/// without words is merged into the preceding sentence, or into the next
/// one when it opens the text.
pub fn tokenize(text: &str, lex: &LexiconSet) -> Result<TokenizedDocument> {
    if text.trim().is_empty() {
        return Err(Error::InvalidDocument("text is empty".into()));
    }
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    let mut sentences: Vec<Sentence> = Vec::new();
    let mut current = Sentence::default();

    let close = |current: &mut Sentence, sentences: &mut Vec<Sentence>| {
        if current.tokens.is_empty() {
            return;
        }
        if current.has_word() {
            sentences.push(std::mem::take(current));
        } else if let Some(last) = sentences.last_mut() {
            last.tokens.append(&mut current.tokens);
        }
        // Otherwise the orphan punctuation stays in `current` and opens the
        // next sentence.
    };

    let mut i = 0;
    while i < n {
        let c = chars[i];
        if c.is_alphanumeric() {
            let start = i;
            i += 1;
            while i < n
                && (chars[i].is_alphanumeric()
                    || (is_joiner(chars[i]) && i + 1 < n && chars[i + 1].is_alphanumeric()))
            {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tags = lex.tag(&word);
            current.tokens.push(Token {
                text: word,
                kind: TokenKind::Word,
                char_len: i - start,
                tags,
            });
            continue;
        }
        if is_punctuation(c) {
            current.tokens.push(Token {
                text: c.to_string(),
                kind: TokenKind::Punctuation,
                char_len: 1,
                tags: Tags::empty(),
            });
            if is_terminal(c) && (i + 1 == n || chars[i + 1].is_whitespace()) {
                close(&mut current, &mut sentences);
            }
        }
        i += 1;
    }
    close(&mut current, &mut sentences);
    if !current.tokens.is_empty() {
        // Punctuation-only text.
        sentences.push(current);
    }
    Ok(TokenizedDocument {
        sentences,
        num_chars: n,
    })
}
