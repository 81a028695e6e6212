use std::collections::HashSet;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;

use super::{stem, CorpusError, RawDocument};

const DEFAULT_STOPWORDS: &str = include_str!("stopwords.txt");

/// A set of surface forms removed before stemming.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopWords(HashSet<String>);

impl StopWords {
    /// Parses one term per line; blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|w| !w.is_empty())
            .map(str::to_lowercase)
            .collect();
        StopWords(words)
    }

    pub fn from_file(path: &Path) -> Result<Self, CorpusError> {
        let text = fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })?;
        Ok(Self::parse(&text))
    }

    pub fn empty() -> Self {
        StopWords(HashSet::new())
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Default for StopWords {
    fn default() -> Self {
        Self::parse(DEFAULT_STOPWORDS)
    }
}

/// Splits on every character that is not an ASCII letter, lowercases, and
/// drops tokens shorter than two characters.
pub fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_ascii_alphabetic()).filter(|t| t.len() >= 2).map(str::to_ascii_lowercase)
}

/// Lowercase, strip, stopword-filter and stem one document.
pub fn preprocess(doc: &RawDocument, stopwords: &StopWords) -> Vec<String> {
    tokenize(&doc.text).filter(|t| !stopwords.contains(t)).map(|t| stem(&t)).collect()
}

type KeywordFilter = Arc<dyn Fn(&str) -> bool + Send + Sync>;

/// Preprocessing pipeline with an optional keyword filter applied to each
/// lowercased token after stopword removal and before stemming.
#[derive(Clone, Default)]
pub struct Preprocessor {
    stopwords: StopWords,
    keyword_filter: Option<KeywordFilter>,
}

impl Preprocessor {
    pub fn new(stopwords: StopWords) -> Self {
        Preprocessor { stopwords, keyword_filter: None }
    }

    pub fn with_keyword_filter(mut self, filter: impl Fn(&str) -> bool + Send + Sync + 'static) -> Self {
        self.keyword_filter = Some(Arc::new(filter));
        self
    }

    pub fn stopwords(&self) -> &StopWords {
        &self.stopwords
    }

    pub fn tokens(&self, doc: &RawDocument) -> Vec<String> {
        match &self.keyword_filter {
            None => preprocess(doc, &self.stopwords),
            Some(keep) => {
                tokenize(&doc.text).filter(|t| !self.stopwords.contains(t) && keep(t)).map(|t| stem(&t)).collect()
            }
        }
    }

    /// Preprocesses every document, in parallel. Output order follows input
    /// order.
    pub fn run(&self, docs: &[RawDocument]) -> PreprocessedCorpus {
        let tokens: Vec<Vec<String>> = docs.par_iter().map(|d| self.tokens(d)).collect();
        let docs: Vec<PreprocessedDoc> = docs
            .iter()
            .zip(tokens)
            .map(|(d, tokens)| PreprocessedDoc { id: d.id.clone(), label: d.label.clone(), tokens })
            .collect();
        let warnings = docs
            .iter()
            .filter(|d| d.tokens.is_empty())
            .map(|d| format!("document {} has no tokens after preprocessing", d.id))
            .collect();
        PreprocessedCorpus { docs, warnings }
    }
}

impl std::fmt::Debug for Preprocessor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Preprocessor")
            .field("stopwords", &self.stopwords.len())
            .field("keyword_filter", &self.keyword_filter.is_some())
            .finish()
    }
}

/// Shorthand for [`Preprocessor::run`] without a keyword filter.
pub fn preprocess_all(docs: &[RawDocument], stopwords: &StopWords) -> PreprocessedCorpus {
    Preprocessor::new(stopwords.clone()).run(docs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessedDoc {
    pub id: String,
    pub label: Option<String>,
    pub tokens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PreprocessedCorpus {
    pub docs: Vec<PreprocessedDoc>,
    /// One entry per document that preprocessing reduced to nothing. Such
    /// documents stay in `docs` so indices line up with the input.
    pub warnings: Vec<String>,
}

impl PreprocessedCorpus {
    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn labels(&self) -> Vec<Option<String>> {
        self.docs.iter().map(|d| d.label.clone()).collect()
    }

    pub fn ids(&self) -> Vec<String> {
        self.docs.iter().map(|d| d.id.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(text: &str) -> RawDocument {
        RawDocument::new("d", None, text)
    }

    #[test]
    fn preprocess_examples() {
        let sw = StopWords::default();
        assert_eq!(preprocess(&doc("The cats are running"), &sw), ["cat", "run"]);
        assert!(preprocess(&doc(""), &sw).is_empty());
        assert!(preprocess(&doc("and the of"), &sw).is_empty());
    }

    #[test]
    fn digits_and_punctuation_split_tokens() {
        let sw = StopWords::empty();
        assert_eq!(preprocess(&doc("x-ray42scanners, b.c. OK"), &sw), ["rai", "scanner", "ok"]);
    }

    #[test]
    fn stopword_file_syntax() {
        let sw = StopWords::parse("# header\nfoo\n\n  Bar  # trailing\n");
        assert_eq!(sw.len(), 2);
        assert!(sw.contains("foo") && sw.contains("bar"));
    }

    #[test]
    fn keyword_filter_hook() {
        let p = Preprocessor::new(StopWords::default()).with_keyword_filter(|t| t.starts_with('c'));
        assert_eq!(p.tokens(&doc("The cats are running")), ["cat"]);
    }

    #[test]
    fn zero_token_documents_are_kept_and_reported() {
        let docs = vec![RawDocument::new("a", None, "graph theory"), RawDocument::new("b", None, "the of and")];
        let pc = preprocess_all(&docs, &StopWords::default());
        assert_eq!(pc.len(), 2);
        assert!(pc.docs[1].tokens.is_empty());
        assert_eq!(pc.warnings.len(), 1);
        assert!(pc.warnings[0].contains('b'));
    }

    #[test]
    fn parallel_run_matches_sequential() {
        let docs: Vec<_> = (0..64)
            .map(|i| RawDocument::new(format!("d{i}"), None, format!("matrices {i} connected hyperlinks running")))
            .collect();
        let sw = StopWords::default();
        let par = preprocess_all(&docs, &sw);
        for (d, p) in docs.iter().zip(&par.docs) {
            assert_eq!(preprocess(d, &sw), p.tokens);
        }
    }
}
