//! Seeded synthetic corpora with known class structure.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use docmine_core::RawDocument;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::BenchError;

/// Letters used to spell terms. Vowels, `s` and `y` are left out so every
/// term is a fixed point of the stemmer and never a stopword.
const LETTERS: &[u8] = b"bcdfghjklmnpqrtvwxz";
const GROUP_SIZE: usize = 8;
const SIGNATURE_TERMS: usize = 12;
const CLASS_TOKENS: usize = 20;
const CORE_TERMS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthMode {
    /// Classes draw from overlapping pools; documents come in small groups
    /// that share a term signature.
    Topic,
    /// Disjoint class vocabularies with a core shared by every member.
    /// Every subset of a class is then frequent, so keep classes to a
    /// dozen or so documents.
    Separable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticSpec {
    pub classes: usize,
    pub docs: usize,
    pub vocab: usize,
    pub seed: u64,
    pub mode: SynthMode,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec { classes: 3, docs: 1000, vocab: 2000, seed: 42, mode: SynthMode::Topic }
    }
}

impl fmt::Display for SyntheticSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Semicolons keep the description a single CSV field.
        write!(f, "synthetic:classes={};docs={};vocab={};seed={}", self.classes, self.docs, self.vocab, self.seed)?;
        if self.mode == SynthMode::Separable {
            f.write_str(";mode=separable")?;
        }
        Ok(())
    }
}

impl FromStr for SyntheticSpec {
    type Err = BenchError;

    /// Parses `classes=3,docs=1000,vocab=2000,seed=42[,mode=topic|separable]`.
    /// Missing keys take their defaults.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: String| BenchError::Spec(msg);
        let mut spec = SyntheticSpec::default();
        for part in s.split([',', ';']).map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| bad(format!("expected key=value, got {part:?}")))?;
            let num = || value.parse::<u64>().map_err(|_| bad(format!("{key}: not a number: {value:?}")));
            match key {
                "classes" => spec.classes = num()? as usize,
                "docs" => spec.docs = num()? as usize,
                "vocab" => spec.vocab = num()? as usize,
                "seed" => spec.seed = num()?,
                "mode" => {
                    spec.mode = match value {
                        "topic" => SynthMode::Topic,
                        "separable" => SynthMode::Separable,
                        _ => return Err(bad(format!("unknown mode {value:?}"))),
                    }
                }
                _ => return Err(bad(format!("unknown key {key:?}"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |msg: &str| Err(BenchError::Spec(msg.to_string()));
        if self.classes == 0 || self.docs == 0 {
            return bad("classes and docs must be positive");
        }
        if self.docs < self.classes {
            return bad("need at least one document per class");
        }
        if self.vocab > LETTERS.len().pow(3) {
            return bad("vocab too large");
        }
        let per_class = self.vocab / self.classes;
        let needed = match self.mode {
            SynthMode::Topic => (SIGNATURE_TERMS + CLASS_TOKENS) * self.classes * 5 / 4,
            SynthMode::Separable => (CORE_TERMS + 4) * self.classes,
        };
        if self.vocab < needed || per_class == 0 {
            return bad("vocab too small for the number of classes");
        }
        Ok(())
    }

    pub fn generate(&self) -> Vec<RawDocument> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let terms: Vec<String> = (0..self.vocab).map(term).collect();
        let docs_of = |c: usize| (self.docs / self.classes) + usize::from(c < self.docs % self.classes);
        let mut out = Vec::with_capacity(self.docs);
        match self.mode {
            SynthMode::Topic => {
                let background = self.vocab / 5;
                let block = (self.vocab - background) / self.classes;
                for c in 0..self.classes {
                    let pool = &terms[background + c * block..background + (c + 1) * block];
                    let n = docs_of(c);
                    let mut signature = Vec::new();
                    for i in 0..n {
                        if i % GROUP_SIZE == 0 {
                            signature = pool.choose_multiple(&mut rng, SIGNATURE_TERMS).cloned().collect();
                        }
                        let mut tokens = signature.clone();
                        tokens.extend((0..CLASS_TOKENS).map(|_| pool[rng.gen_range(0..pool.len())].clone()));
                        let bg = rng.gen_range(5..=10);
                        tokens.extend((0..bg).map(|_| terms[rng.gen_range(0..background)].clone()));
                        tokens.shuffle(&mut rng);
                        out.push(document(c, i, &tokens));
                    }
                }
            }
            SynthMode::Separable => {
                let block = self.vocab / self.classes;
                for c in 0..self.classes {
                    let pool = &terms[c * block..(c + 1) * block];
                    let (core, rest) = pool.split_at(CORE_TERMS);
                    for i in 0..docs_of(c) {
                        let mut tokens = core.to_vec();
                        let extra = rng.gen_range(2..=6);
                        tokens.extend((0..extra).map(|_| rest[rng.gen_range(0..rest.len())].clone()));
                        tokens.shuffle(&mut rng);
                        out.push(document(c, i, &tokens));
                    }
                }
            }
        }
        out
    }

    /// Writes one file per document, named by its id, into `dir`.
    pub fn write_to_dir(&self, dir: &Path) -> io::Result<Vec<RawDocument>> {
        fs::create_dir_all(dir)?;
        let docs = self.generate();
        for d in &docs {
            fs::write(dir.join(&d.id), format!("{}\n", d.text))?;
        }
        Ok(docs)
    }
}

pub fn class_name(c: usize) -> String {
    format!("class{c}")
}

fn document(class: usize, index: usize, tokens: &[String]) -> RawDocument {
    RawDocument::new(format!("{}.{:05}", class_name(class), index + 1), Some(class_name(class)), tokens.join(" "))
}

fn term(i: usize) -> String {
    let b = LETTERS.len();
    let digits = [i / (b * b), (i / b) % b, i % b];
    let mut s = String::from("z");
    s.extend(digits.iter().map(|&d| LETTERS[d] as char));
    s
}

/// Reorders documents so that every prefix is balanced across labels:
/// first document of each label in order of first appearance, then the
/// second of each, and so on.
pub fn stratified_order<T, F: Fn(&T) -> Option<&str>>(docs: &[T], label: F) -> Vec<usize> {
    let mut buckets: Vec<(Option<&str>, Vec<usize>)> = Vec::new();
    for (i, d) in docs.iter().enumerate() {
        let l = label(d);
        match buckets.iter_mut().find(|(k, _)| *k == l) {
            Some((_, v)) => v.push(i),
            None => buckets.push((l, vec![i])),
        }
    }
    let longest = buckets.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    (0..longest).flat_map(|r| buckets.iter().filter_map(move |(_, v)| v.get(r).copied())).collect()
}
