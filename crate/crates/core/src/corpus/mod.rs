//! Corpus ingestion, text preprocessing and the term-document matrices.

mod matrix;
mod stem;
mod text;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use matrix::{TermDocumentMatrix, WeightedMatrix};
pub use stem::stem;
pub use text::{preprocess, preprocess_all, tokenize, PreprocessedCorpus, PreprocessedDoc, Preprocessor, StopWords};

pub fn build_term_document_matrix(corpus: &PreprocessedCorpus) -> Result<TermDocumentMatrix, CorpusError> {
    TermDocumentMatrix::build(corpus)
}

pub fn tfidf_matrix(tdm: &TermDocumentMatrix) -> WeightedMatrix {
    tdm.tfidf()
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{} is not a directory", .0.display())]
    NotADirectory(PathBuf),
    #[error("no documents found in {}", .0.display())]
    EmptyDirectory(PathBuf),
    #[error("empty documents: {}", list_paths(.0))]
    EmptyDocuments(Vec<PathBuf>),
    #[error("corpus contains no tokens after preprocessing")]
    NoTokens,
    #[error("document {0} has no tokens")]
    ZeroTokenDocument(usize),
    #[error("document index {index} out of range ({n_docs} documents)")]
    DocumentOutOfRange { index: usize, n_docs: usize },
    #[error("term {0:?} does not occur in the corpus")]
    UnknownTerm(String),
}

fn list_paths(paths: &[PathBuf]) -> String {
    paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", ")
}

/// One input document, as read from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub id: String,
    /// Ground-truth class, when the label rule yields one.
    pub label: Option<String>,
    pub text: String,
}

impl RawDocument {
    pub fn new(id: impl Into<String>, label: Option<String>, text: impl Into<String>) -> Self {
        RawDocument { id: id.into(), label, text: text.into() }
    }
}

/// How a document's class label is derived from its file name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelRule {
    /// Everything before the first `.`; no label if the name has no dot.
    #[default]
    FilenamePrefix,
    None,
}

impl LabelRule {
    pub fn label_for(self, file_name: &str) -> Option<String> {
        match self {
            LabelRule::FilenamePrefix => {
                file_name.split_once('.').map(|(prefix, _)| prefix).filter(|p| !p.is_empty()).map(str::to_string)
            }
            LabelRule::None => None,
        }
    }
}

impl fmt::Display for LabelRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelRule::FilenamePrefix => f.write_str("prefix"),
            LabelRule::None => f.write_str("none"),
        }
    }
}

impl std::str::FromStr for LabelRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prefix" => Ok(LabelRule::FilenamePrefix),
            "none" => Ok(LabelRule::None),
            other => Err(format!("unknown label rule {other:?} (expected prefix|none)")),
        }
    }
}

/// Loads every regular file in `dir` as one document, in lexicographic file
/// name order. Files whose content is empty or whitespace-only are rejected
/// together in a single error.
pub fn load_corpus(dir: &Path, rule: LabelRule) -> Result<Vec<RawDocument>, CorpusError> {
    if !dir.is_dir() {
        return Err(CorpusError::NotADirectory(dir.to_path_buf()));
    }
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CorpusError::Io { path, source }
    };
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err(dir))? {
        let entry = entry.map_err(io_err(dir))?;
        let path = entry.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    if files.is_empty() {
        return Err(CorpusError::EmptyDirectory(dir.to_path_buf()));
    }

    let mut docs = Vec::with_capacity(files.len());
    let mut empty = Vec::new();
    for path in files {
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        if text.trim().is_empty() {
            empty.push(path);
            continue;
        }
        let id = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let label = rule.label_for(&id);
        docs.push(RawDocument { id, label, text });
    }
    if !empty.is_empty() {
        return Err(CorpusError::EmptyDocuments(empty));
    }
    Ok(docs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_from_filename_prefix() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("health.1"), "blood pressure").unwrap();
        fs::write(dir.path().join("books.1"), "library science").unwrap();
        let docs = load_corpus(dir.path(), LabelRule::FilenamePrefix).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].id, "books.1");
        assert_eq!(docs[0].label.as_deref(), Some("books"));
        assert_eq!(docs[1].label.as_deref(), Some("health"));

        let unlabeled = load_corpus(dir.path(), LabelRule::None).unwrap();
        assert!(unlabeled.iter().all(|d| d.label.is_none()));
    }

    #[test]
    fn empty_file_is_named_in_error() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.1"), "text").unwrap();
        fs::write(dir.path().join("b.2"), "  \n").unwrap();
        let err = load_corpus(dir.path(), LabelRule::default()).unwrap_err();
        assert!(matches!(err, CorpusError::EmptyDocuments(ref p) if p.len() == 1));
        assert!(err.to_string().contains("b.2"));
    }

    #[test]
    fn empty_directory_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(load_corpus(dir.path(), LabelRule::default()), Err(CorpusError::EmptyDirectory(_))));
        assert!(matches!(
            load_corpus(&dir.path().join("missing"), LabelRule::default()),
            Err(CorpusError::NotADirectory(_))
        ));
    }

    #[test]
    fn invalid_utf8_names_the_file() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("bad.1"), [0xff, 0xfe, 0x41]).unwrap();
        let err = load_corpus(dir.path(), LabelRule::default()).unwrap_err();
        assert!(err.to_string().contains("bad.1"), "{err}");
    }

    #[test]
    fn label_rule_parsing() {
        assert_eq!("prefix".parse::<LabelRule>().unwrap(), LabelRule::FilenamePrefix);
        assert_eq!("none".parse::<LabelRule>().unwrap(), LabelRule::None);
        assert!("suffix".parse::<LabelRule>().is_err());
        assert_eq!(LabelRule::FilenamePrefix.label_for("noext"), None);
        assert_eq!(LabelRule::FilenamePrefix.label_for(".hidden"), None);
    }
}
