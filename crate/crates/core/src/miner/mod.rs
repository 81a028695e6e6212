//! Level-wise frequent itemset mining: the traditional multi-scan Apriori
//! baseline, the single-scan miner over the in-memory bitset array, and a
//! brute-force reference.

mod candidates;
mod modified;
mod oracle;
mod traditional;

use std::collections::HashSet;
use std::fmt;
use std::io::{self, Write};
use std::time::Duration;

use thiserror::Error;

use crate::txdb::{ItemId, Itemset, TransactionDB};

pub use candidates::{join_candidates, prune_item_occurrence, prune_subsets};
pub use modified::mine_modified;
pub use oracle::{brute_force_mine, MAX_BRUTE_FORCE_ITEMS};
pub use traditional::mine_traditional;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MineError {
    #[error("min_sup must be at least 1")]
    ZeroMinSup,
    #[error("brute force refuses {0} items (limit {MAX_BRUTE_FORCE_ITEMS})")]
    TooManyItems(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Traditional,
    Modified,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Traditional, Algorithm::Modified];

    pub fn run(self, db: &TransactionDB, min_sup: usize) -> Result<(MiningResult, MiningStats), MineError> {
        match self {
            Algorithm::Traditional => mine_traditional(db, min_sup),
            Algorithm::Modified => mine_modified(db, min_sup),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Traditional => "traditional",
            Algorithm::Modified => "modified",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "traditional" => Ok(Algorithm::Traditional),
            "modified" => Ok(Algorithm::Modified),
            _ => Err(format!("unknown algorithm {s:?}")),
        }
    }
}

/// Frequent itemsets by level plus the maximal ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiningResult {
    min_sup: usize,
    /// `levels[i]` holds the frequent itemsets of size `i + 1` with their
    /// supports, in lexicographic order. No trailing empty levels.
    levels: Vec<Vec<(Itemset, usize)>>,
    maximal: Vec<Itemset>,
}

impl MiningResult {
    pub(crate) fn from_levels(min_sup: usize, mut levels: Vec<Vec<(Itemset, usize)>>) -> Self {
        while levels.last().is_some_and(Vec::is_empty) {
            levels.pop();
        }
        for level in &mut levels {
            level.sort();
        }
        let mut result = MiningResult { min_sup, levels, maximal: Vec::new() };
        result.maximal = maximal_itemsets(&result);
        result
    }

    pub fn min_sup(&self) -> usize {
        self.min_sup
    }

    pub fn levels(&self) -> &[Vec<(Itemset, usize)>] {
        &self.levels
    }

    /// Frequent itemsets of size `k` (1-based).
    pub fn level(&self, k: usize) -> &[(Itemset, usize)] {
        k.checked_sub(1).and_then(|i| self.levels.get(i)).map_or(&[], Vec::as_slice)
    }

    pub fn maximal(&self) -> &[Itemset] {
        &self.maximal
    }

    pub fn n_frequent(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Itemset, usize)> {
        self.levels.iter().flatten()
    }

    /// Writes `# L<k>` header lines and one `support<TAB>items` line per
    /// itemset, items named through `names` and listed in name order.
    pub fn write_itemsets<W: Write>(&self, names: &[String], mut out: W) -> io::Result<()> {
        for (i, level) in self.levels.iter().enumerate() {
            writeln!(out, "# L{}", i + 1)?;
            let mut lines: Vec<(Vec<&str>, usize)> = level
                .iter()
                .map(|(s, sup)| {
                    let mut tokens: Vec<&str> = s.items().iter().map(|&i| names[i as usize].as_str()).collect();
                    tokens.sort_unstable();
                    (tokens, *sup)
                })
                .collect();
            lines.sort();
            for (tokens, sup) in lines {
                writeln!(out, "{sup}\t{}", tokens.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Frequent itemsets with no frequent proper superset. By downward closure
/// only the next level up needs checking.
pub fn maximal_itemsets(result: &MiningResult) -> Vec<Itemset> {
    let mut covered: HashSet<Vec<ItemId>> = HashSet::new();
    for level in result.levels.iter().skip(1) {
        for (s, _) in level {
            for pos in 0..s.len() {
                if let Some(sub) = s.without(pos) {
                    covered.insert(sub.items().to_vec());
                }
            }
        }
    }
    let mut maximal: Vec<Itemset> =
        result.iter().filter(|(s, _)| !covered.contains(s.items())).map(|(s, _)| s.clone()).collect();
    maximal.sort();
    maximal
}

/// Work done at one level of a mining run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelStats {
    /// Itemset size at this level.
    pub k: usize,
    /// Candidates produced by the join (all live items at level 1).
    pub generated: usize,
    /// Candidates left after the item-occurrence prune. Equals `generated`
    /// for the traditional miner.
    pub after_occurrence_prune: usize,
    /// Candidates left after the subset prune; these are support-counted.
    pub counted: usize,
    pub frequent: usize,
    /// Candidate × transaction containment tests performed.
    pub work_units: u64,
    /// Items zeroed after this level.
    pub items_zeroed: usize,
    /// Transactions nulled after this level.
    pub tx_nulled: usize,
    pub generate_time: Duration,
    pub count_time: Duration,
    pub shrink_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiningStats {
    pub algorithm: Algorithm,
    pub levels: Vec<LevelStats>,
    pub db_scans: usize,
    /// The run stopped because fewer than `min_sup` transactions stayed live.
    pub early_exit: bool,
    pub elapsed: Duration,
}

impl MiningStats {
    pub(crate) fn new(algorithm: Algorithm) -> Self {
        MiningStats { algorithm, levels: Vec::new(), db_scans: 0, early_exit: false, elapsed: Duration::ZERO }
    }

    /// Levels whose candidates were actually support-counted.
    pub fn counted_levels(&self) -> usize {
        self.levels.iter().filter(|l| l.counted > 0).count()
    }

    pub fn candidates_total(&self) -> usize {
        self.levels.iter().map(|l| l.generated).sum()
    }

    pub fn candidates_pruned(&self) -> usize {
        self.levels.iter().map(|l| l.generated - l.counted).sum()
    }

    pub fn tx_nulled(&self) -> usize {
        self.levels.iter().map(|l| l.tx_nulled).sum()
    }

    pub fn items_zeroed(&self) -> usize {
        self.levels.iter().map(|l| l.items_zeroed).sum()
    }

    pub fn work_units(&self) -> u64 {
        self.levels.iter().map(|l| l.work_units).sum()
    }

    pub fn level(&self, k: usize) -> Option<&LevelStats> {
        self.levels.iter().find(|l| l.k == k)
    }

    /// Flat key/value view, in a fixed key order.
    pub fn key_values(&self) -> Vec<(&'static str, String)> {
        vec![
            ("algo", self.algorithm.to_string()),
            ("db_scans", self.db_scans.to_string()),
            ("levels", self.levels.len().to_string()),
            ("candidates_total", self.candidates_total().to_string()),
            ("candidates_pruned", self.candidates_pruned().to_string()),
            ("tx_nulled", self.tx_nulled().to_string()),
            ("items_zeroed", self.items_zeroed().to_string()),
            ("work_units", self.work_units().to_string()),
            ("early_exit", self.early_exit.to_string()),
            ("elapsed_ms", format!("{:.3}", self.elapsed.as_secs_f64() * 1e3)),
        ]
    }

    /// Per-level candidate counts as `k:generated/after_occurrence/counted`.
    pub fn level_summary(&self) -> String {
        self.levels
            .iter()
            .map(|l| format!("{}:{}/{}/{}", l.k, l.generated, l.after_occurrence_prune, l.counted))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub(crate) fn check_min_sup(min_sup: usize) -> Result<(), MineError> {
    if min_sup == 0 {
        return Err(MineError::ZeroMinSup);
    }
    Ok(())
}
