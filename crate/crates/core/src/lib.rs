//! Frequent document-itemset mining and itemset-seeded document clustering.
//!
//! Documents are treated as items and keywords as transactions: a set of
//! documents is frequent when at least `min_sup` keywords occur in all of
//! them. The pipeline is
//!
//! 1. [`corpus`]: load, tokenize, stem, build term-document and Tf-Idf
//!    matrices;
//! 2. [`txdb`]: the binary keyword × document transaction database;
//! 3. [`miner`]: traditional or single-scan Apriori, then the maximal
//!    frequent itemsets;
//! 4. [`seeder`]: one seed cluster per maximal itemset;
//! 5. [`refine`]: fuzzy c-means, K-Means or cosine reassignment;
//! 6. [`evalx`]: F-measure against ground-truth labels.

pub mod bitset;
pub mod corpus;
pub mod evalx;
pub mod miner;
pub mod refine;
pub mod seeder;
pub mod txdb;
pub mod vector;

pub use corpus::{
    LabelRule, PreprocessedCorpus, Preprocessor, RawDocument, StopWords, TermDocumentMatrix, WeightedMatrix,
};
pub use evalx::{evaluate, f_measure, EvalReport};
pub use miner::{brute_force_mine, mine_modified, mine_traditional, Algorithm, MiningResult, MiningStats};
pub use refine::{ClusterAssignment, MembershipMatrix, RefineConfig, Technique};
pub use seeder::{seed_clusters, SeedClusters};
pub use txdb::{ItemId, Itemset, TransactionDB};
pub use vector::{DocVectors, SparseVector};
