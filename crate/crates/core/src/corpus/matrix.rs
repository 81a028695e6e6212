use std::collections::BTreeMap;
use std::io::{self, Write};

use super::{CorpusError, PreprocessedCorpus};
use crate::vector::{DocVectors, SparseVector};

/// Term × document occurrence counts. Rows are the distinct stemmed terms in
/// lexicographic order; every row has at least one non-zero entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDocumentMatrix {
    vocabulary: Vec<String>,
    doc_ids: Vec<String>,
    /// Per term, `(document, count)` ascending by document.
    rows: Vec<Vec<(usize, u32)>>,
    doc_lengths: Vec<u32>,
}

impl TermDocumentMatrix {
    pub fn build(corpus: &PreprocessedCorpus) -> Result<Self, CorpusError> {
        let mut postings: BTreeMap<&str, Vec<(usize, u32)>> = BTreeMap::new();
        for (d, doc) in corpus.docs.iter().enumerate() {
            for token in &doc.tokens {
                let row = postings.entry(token.as_str()).or_default();
                match row.last_mut() {
                    Some((last, count)) if *last == d => *count += 1,
                    _ => row.push((d, 1)),
                }
            }
        }
        if postings.is_empty() {
            return Err(CorpusError::NoTokens);
        }
        let doc_lengths = corpus.docs.iter().map(|d| d.tokens.len() as u32).collect();
        let (vocabulary, rows) = postings.into_iter().map(|(term, row)| (term.to_string(), row)).unzip();
        Ok(TermDocumentMatrix { vocabulary, doc_ids: corpus.ids(), rows, doc_lengths })
    }

    pub fn vocabulary(&self) -> &[String] {
        &self.vocabulary
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn n_terms(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn n_docs(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn term_index(&self, term: &str) -> Option<usize> {
        self.vocabulary.binary_search_by(|t| t.as_str().cmp(term)).ok()
    }

    /// Documents containing term `t`, with their counts.
    pub fn postings(&self, t: usize) -> &[(usize, u32)] {
        &self.rows[t]
    }

    pub fn count(&self, t: usize, d: usize) -> u32 {
        let row = &self.rows[t];
        match row.binary_search_by_key(&d, |&(doc, _)| doc) {
            Ok(pos) => row[pos].1,
            Err(_) => 0,
        }
    }

    /// Total tokens in document `d`.
    pub fn doc_length(&self, d: usize) -> u32 {
        self.doc_lengths[d]
    }

    pub fn document_frequency(&self, t: usize) -> usize {
        self.rows[t].len()
    }

    /// Occurrences of `term` in document `doc` over the document's token
    /// count. An absent term has frequency 0.
    pub fn tf(&self, term: &str, doc: usize) -> Result<f64, CorpusError> {
        self.check_doc(doc)?;
        if self.doc_lengths[doc] == 0 {
            return Err(CorpusError::ZeroTokenDocument(doc));
        }
        Ok(match self.term_index(term) {
            Some(t) => self.tf_at(t, doc),
            None => 0.0,
        })
    }

    /// `ln(N / df(term))`.
    pub fn idf(&self, term: &str) -> Result<f64, CorpusError> {
        self.term_index(term).map(|t| self.idf_at(t)).ok_or_else(|| CorpusError::UnknownTerm(term.to_string()))
    }

    fn check_doc(&self, doc: usize) -> Result<(), CorpusError> {
        if doc >= self.n_docs() {
            return Err(CorpusError::DocumentOutOfRange { index: doc, n_docs: self.n_docs() });
        }
        Ok(())
    }

    fn tf_at(&self, t: usize, d: usize) -> f64 {
        f64::from(self.count(t, d)) / f64::from(self.doc_lengths[d])
    }

    fn idf_at(&self, t: usize) -> f64 {
        (self.n_docs() as f64 / self.document_frequency(t) as f64).ln()
    }

    /// Tf × Idf weights. Documents with no tokens get the zero vector.
    pub fn tfidf(&self) -> WeightedMatrix {
        let idf: Vec<f64> = (0..self.n_terms()).map(|t| self.idf_at(t)).collect();
        let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); self.n_docs()];
        for (t, row) in self.rows.iter().enumerate() {
            for &(d, count) in row {
                let tf = f64::from(count) / f64::from(self.doc_lengths[d]);
                columns[d].push((t, tf * idf[t]));
            }
        }
        let rows = columns.into_iter().map(SparseVector::from_pairs).collect();
        WeightedMatrix {
            vocabulary: self.vocabulary.clone(),
            doc_ids: self.doc_ids.clone(),
            vectors: DocVectors::new(self.n_terms(), rows),
        }
    }

    /// Writes a header line of tab-separated document ids, then one line per
    /// term: `term<TAB>c1<TAB>c2...`.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", self.doc_ids.join("\t"))?;
        for (t, term) in self.vocabulary.iter().enumerate() {
            write!(out, "{term}")?;
            let mut next = 0;
            for &(d, c) in &self.rows[t] {
                for _ in next..d {
                    out.write_all(b"\t0")?;
                }
                write!(out, "\t{c}")?;
                next = d + 1;
            }
            for _ in next..self.n_docs() {
                out.write_all(b"\t0")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Tf-Idf document vectors over the vocabulary of a [`TermDocumentMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMatrix {
    vocabulary: Vec<String>,
    doc_ids: Vec<String>,
    vectors: DocVectors,
}

impl WeightedMatrix {
    pub fn vocabulary(&self) -> &[String] {
        &self.vocabulary
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn n_docs(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn weight(&self, t: usize, d: usize) -> f64 {
        self.vectors.row(d).get(t)
    }

    /// Document vectors, one per column of the matrix.
    pub fn documents(&self) -> &DocVectors {
        &self.vectors
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::PreprocessedDoc;

    fn corpus(docs: &[&[&str]]) -> PreprocessedCorpus {
        PreprocessedCorpus {
            docs: docs
                .iter()
                .enumerate()
                .map(|(i, toks)| PreprocessedDoc {
                    id: format!("d{}", i + 1),
                    label: None,
                    tokens: toks.iter().map(|t| t.to_string()).collect(),
                })
                .collect(),
            warnings: vec![],
        }
    }

    #[test]
    fn counts_by_direct_counting() {
        let tdm = TermDocumentMatrix::build(&corpus(&[&["a", "a", "b"], &["b"]])).unwrap();
        assert_eq!(tdm.vocabulary(), ["a", "b"]);
        assert_eq!((tdm.count(0, 0), tdm.count(0, 1)), (2, 0));
        assert_eq!((tdm.count(1, 0), tdm.count(1, 1)), (1, 1));

        let single = TermDocumentMatrix::build(&corpus(&[&["x", "x"]])).unwrap();
        assert_eq!(single.n_terms(), 1);
        assert_eq!(single.count(0, 0), 2);
    }

    #[test]
    fn disjoint_vocabularies_are_block_diagonal() {
        let tdm = TermDocumentMatrix::build(&corpus(&[&["a", "b"], &["c", "d"]])).unwrap();
        for t in 0..4 {
            let d = if t < 2 { 0 } else { 1 };
            assert!(tdm.count(t, d) > 0);
            assert_eq!(tdm.count(t, 1 - d), 0);
        }
    }

    #[test]
    fn zero_tokens_is_an_error() {
        assert!(matches!(TermDocumentMatrix::build(&corpus(&[&[], &[]])), Err(CorpusError::NoTokens)));
    }

    #[test]
    fn tf_examples() {
        let tdm = TermDocumentMatrix::build(&corpus(&[&["a", "a", "b"], &["t"], &[]])).unwrap();
        assert_eq!(tdm.tf("a", 0).unwrap(), 2.0 / 3.0);
        assert_eq!(tdm.tf("zzz", 0).unwrap(), 0.0);
        assert_eq!(tdm.tf("t", 1).unwrap(), 1.0);
        assert!(matches!(tdm.tf("a", 2), Err(CorpusError::ZeroTokenDocument(2))));
        assert!(tdm.tf("a", 9).is_err());
    }

    #[test]
    fn idf_examples() {
        // Ten documents; "all" in every one, "one" in the first, "half" in five.
        let docs: Vec<Vec<&str>> = (0..10)
            .map(|i| {
                let mut d = vec!["all"];
                if i == 0 {
                    d.push("one");
                }
                if i < 5 {
                    d.push("half");
                }
                d
            })
            .collect();
        let refs: Vec<&[&str]> = docs.iter().map(Vec::as_slice).collect();
        let tdm = TermDocumentMatrix::build(&corpus(&refs)).unwrap();
        assert_eq!(tdm.idf("all").unwrap(), 0.0);
        assert!((tdm.idf("one").unwrap() - std::f64::consts::LN_10).abs() < 1e-6);
        assert!((tdm.idf("half").unwrap() - std::f64::consts::LN_2).abs() < 1e-6);
        assert!(matches!(tdm.idf("none"), Err(CorpusError::UnknownTerm(_))));
    }

    #[test]
    fn tfidf_examples() {
        let wm = TermDocumentMatrix::build(&corpus(&[&["a", "a", "b"], &["b"]])).unwrap().tfidf();
        // (2/3)·ln 2
        assert!((wm.weight(0, 0) - 0.462098).abs() < 1e-6);
        assert_eq!(wm.weight(0, 1), 0.0);
        // b occurs in both documents
        assert_eq!(wm.weight(1, 0), 0.0);
        assert_eq!(wm.weight(1, 1), 0.0);

        let one = TermDocumentMatrix::build(&corpus(&[&["p", "q", "q"]])).unwrap().tfidf();
        assert!(one.documents().rows().iter().all(|r| r.is_zero()));
    }

    #[test]
    fn zero_token_document_gets_zero_vector() {
        let wm = TermDocumentMatrix::build(&corpus(&[&["a"], &[], &["b"]])).unwrap().tfidf();
        assert_eq!(wm.n_docs(), 3);
        assert!(wm.documents().row(1).is_zero());
        assert!(wm.weight(0, 0) > 0.0);
    }

    #[test]
    fn tsv_export() {
        let tdm = TermDocumentMatrix::build(&corpus(&[&["a", "a", "b"], &["b"]])).unwrap();
        let mut buf = Vec::new();
        tdm.write_tsv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "d1\td2\na\t2\t0\nb\t1\t1\n");
    }
}
