use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use super::tokenize::Tags;
use crate::error::{Error, Result};

/// Word lists and tagging rules used by the tokenizer.
///
/// Immutable once built; share it freely across threads. The bundled set
/// ([`LexiconSet::bundled`]) contains open word lists. Licensed dictionaries
/// can be dropped in through [`LexiconSet::load_dir`] using the same files.
#[derive(Debug, Clone)]
pub struct LexiconSet {
    pub modal_verbs: HashSet<String>,
    pub function_words: HashSet<String>,
    pub analytic_words: HashSet<String>,
    pub insight_words: HashSet<String>,
    pub pos_lexicon: HashMap<String, Tags>,
    pub suffix_rules: Vec<(String, Tags)>,
}

pub const MODAL_FILE: &str = "modal_verbs.txt";
pub const FUNCTION_FILE: &str = "function_words.txt";
pub const ANALYTIC_FILE: &str = "analytic.txt";
pub const INSIGHT_FILE: &str = "insight.txt";
pub const POS_FILE: &str = "pos_lexicon.tsv";
pub const SUFFIX_FILE: &str = "suffix_rules.tsv";

const BUNDLED: [(&str, &str); 6] = [
    (MODAL_FILE, include_str!("../../lexicons/modal_verbs.txt")),
    (
        FUNCTION_FILE,
        include_str!("../../lexicons/function_words.txt"),
    ),
    (ANALYTIC_FILE, include_str!("../../lexicons/analytic.txt")),
    (INSIGHT_FILE, include_str!("../../lexicons/insight.txt")),
    (POS_FILE, include_str!("../../lexicons/pos_lexicon.tsv")),
    (SUFFIX_FILE, include_str!("../../lexicons/suffix_rules.tsv")),
];

impl LexiconSet {
    /// The lexicons compiled into the library.
    pub fn bundled() -> Self {
        Self::from_sources(|name| {
            Ok(BUNDLED
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, text)| text.to_string())
                .expect("every lexicon file is bundled"))
        })
        .expect("bundled lexicons are valid")
    }

    /// Loads the six lexicon files from `dir`.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        Self::from_sources(|name| {
            fs::read_to_string(dir.join(name)).map_err(|e| Error::Lexicon {
                name: dir.join(name).display().to_string(),
                message: e.to_string(),
            })
        })
    }

    fn from_sources(read: impl Fn(&str) -> Result<String>) -> Result<Self> {
        let set = |name: &str| -> Result<HashSet<String>> { parse_word_list(name, &read(name)?) };
        let pos_lexicon = parse_tagged(POS_FILE, &read(POS_FILE)?)?
            .into_iter()
            .collect();
        let suffix_rules = parse_tagged(SUFFIX_FILE, &read(SUFFIX_FILE)?)?;
        Ok(Self {
            modal_verbs: set(MODAL_FILE)?,
            function_words: set(FUNCTION_FILE)?,
            analytic_words: set(ANALYTIC_FILE)?,
            insight_words: set(INSIGHT_FILE)?,
            pos_lexicon,
            suffix_rules,
        })
    }

    /// Assigns the tag set of a word: lexicon part of speech, else the
    /// first matching suffix rule, plus closed-class and category tags.
    pub fn tag(&self, word: &str) -> Tags {
        let lower = word.to_lowercase();
        let mut tags = match self.pos_lexicon.get(&lower) {
            Some(t) => *t,
            None => self.suffix_tag(&lower),
        };
        if self.modal_verbs.contains(&lower) {
            tags |= Tags::MODAL | Tags::VERB;
        }
        if self.function_words.contains(&lower) {
            tags |= Tags::FUNCTION;
        }
        if word == "I" || word == "i" {
            tags |= Tags::PRONOUN_I;
        }
        if self.analytic_words.contains(&lower) {
            tags |= Tags::ANALYTIC;
        }
        if self.insight_words.contains(&lower) {
            tags |= Tags::INSIGHT;
        }
        tags
    }

    fn suffix_tag(&self, lower: &str) -> Tags {
        let len = lower.chars().count();
        self.suffix_rules
            .iter()
            .find(|(suffix, _)| {
                lower.ends_with(suffix.as_str()) && len >= suffix.chars().count() + 2
            })
            .map_or(Tags::empty(), |(_, t)| *t)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn check_lowercase(name: &str, line: usize, word: &str) -> Result<()> {
    if word.chars().any(char::is_uppercase) {
        return Err(Error::Lexicon {
            name: name.into(),
            message: format!("line {line}: entry {word:?} is not lowercase"),
        });
    }
    Ok(())
}

fn parse_word_list(name: &str, text: &str) -> Result<HashSet<String>> {
    let mut out = HashSet::new();
    for (line, word) in content_lines(text) {
        check_lowercase(name, line, word)?;
        out.insert(word.to_string());
    }
    if out.is_empty() {
        return Err(Error::Lexicon {
            name: name.into(),
            message: "no entries".into(),
        });
    }
    Ok(out)
}

fn parse_tagged(name: &str, text: &str) -> Result<Vec<(String, Tags)>> {
    let mut out = Vec::new();
    for (line, entry) in content_lines(text) {
        let err = |message: String| Error::Lexicon {
            name: name.into(),
            message: format!("line {line}: {message}"),
        };
        let (word, tag_list) = entry
            .split_once('\t')
            .ok_or_else(|| err("expected `entry<TAB>tags`".into()))?;
        let word = word.trim();
        check_lowercase(name, line, word)?;
        let mut tags = Tags::empty();
        for t in tag_list.split(',') {
            tags |= Tags::from_lexicon_name(t.trim())
                .ok_or_else(|| err(format!("unknown tag {t:?}")))?;
        }
        if tags.contains(Tags::MODAL) {
            tags |= Tags::VERB;
        }
        out.push((word.to_string(), tags));
    }
    if out.is_empty() {
        return Err(Error::Lexicon {
            name: name.into(),
            message: "no entries".into(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_sets_are_nonempty_and_lowercase() {
        let lex = LexiconSet::bundled();
        for set in [
            &lex.modal_verbs,
            &lex.function_words,
            &lex.analytic_words,
            &lex.insight_words,
        ] {
            assert!(!set.is_empty());
            assert!(set.iter().all(|w| w.to_lowercase() == *w));
        }
        assert!(!lex.pos_lexicon.is_empty());
        assert!(!lex.suffix_rules.is_empty());
    }

    #[test]
    fn modal_implies_verb() {
        let lex = LexiconSet::bundled();
        for w in &lex.modal_verbs {
            assert!(lex.tag(w).contains(Tags::MODAL | Tags::VERB), "{w}");
        }
    }

    #[test]
    fn lexicon_before_suffix() {
        let lex = LexiconSet::bundled();
        // "family" ends in -ly but the lexicon says noun.
        assert_eq!(lex.tag("family") & Tags::POS, Tags::NOUN);
        assert_eq!(lex.tag("gloriously") & Tags::POS, Tags::ADVERB);
        assert_eq!(lex.tag("zorbous") & Tags::POS, Tags::ADJECTIVE);
        // Too short for the -ly rule.
        assert_eq!(lex.tag("fly") & Tags::POS, Tags::empty());
    }

    #[test]
    fn load_dir_matches_bundled() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("lexicons");
        let loaded = LexiconSet::load_dir(&dir).unwrap();
        let bundled = LexiconSet::bundled();
        assert_eq!(loaded.function_words, bundled.function_words);
        assert_eq!(loaded.pos_lexicon, bundled.pos_lexicon);
        assert_eq!(loaded.suffix_rules, bundled.suffix_rules);
    }

    #[test]
    fn rejects_uppercase_and_unknown_tags() {
        assert!(parse_word_list("x", "# c\nFoo\n").is_err());
        assert!(parse_word_list("x", "# only a comment\n").is_err());
        assert!(parse_tagged("x", "run\tverbish\n").is_err());
        assert!(parse_tagged("x", "run verb\n").is_err());
    }
}
