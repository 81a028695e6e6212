//! The binary transaction database: transactions as rows, items as columns,
//! held in memory as one bitset per item column.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::bitset::Bitset;
use crate::corpus::TermDocumentMatrix;

pub type ItemId = u32;

#[derive(Debug, Error)]
pub enum TxDbError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{} contains no transactions", .0.display())]
    EmptyFile(PathBuf),
    #[error("item {item} out of range ({n_items} items)")]
    ItemOutOfRange { item: ItemId, n_items: usize },
    #[error("an itemset needs at least one item")]
    EmptyItemset,
}

/// A non-empty, strictly ascending set of item ids. Ordering is
/// lexicographic over the ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Itemset(Vec<ItemId>);

impl Itemset {
    /// Sorts and deduplicates `items`.
    pub fn new(items: impl IntoIterator<Item = ItemId>) -> Result<Self, TxDbError> {
        let mut v: Vec<ItemId> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(TxDbError::EmptyItemset);
        }
        Ok(Itemset(v))
    }

    /// `items` must already be strictly ascending and non-empty.
    pub(crate) fn from_sorted(items: Vec<ItemId>) -> Self {
        debug_assert!(!items.is_empty() && items.windows(2).all(|w| w[0] < w[1]));
        Itemset(items)
    }

    pub fn singleton(item: ItemId) -> Self {
        Itemset(vec![item])
    }

    pub fn items(&self) -> &[ItemId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    pub fn is_subset_of(&self, other: &Itemset) -> bool {
        let mut theirs = other.0.iter();
        self.0.iter().all(|x| theirs.any(|y| y == x))
    }

    /// The itemset with the item at `pos` removed, or `None` for a singleton.
    pub fn without(&self, pos: usize) -> Option<Itemset> {
        if self.0.len() <= 1 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Itemset(v))
    }
}

impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Binary transaction × item matrix with live masks for the destructive
/// shrink steps of the single-scan miner.
///
/// `rows` keeps the original transactions (the horizontal dataset); the
/// column bitsets, sizes and live masks form the in-memory working array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionDB {
    item_names: Vec<String>,
    rows: Vec<Vec<ItemId>>,
    columns: Vec<Bitset>,
    tx_sizes: Vec<u32>,
    live_tx: Bitset,
    live_items: Bitset,
    warnings: Vec<String>,
}

impl TransactionDB {
    /// Builds from transactions given as item-id lists. Ids must be below
    /// `item_names.len()`; duplicates within a transaction are collapsed.
    pub fn from_transactions(item_names: Vec<String>, transactions: Vec<Vec<ItemId>>) -> Result<Self, TxDbError> {
        let n_items = item_names.len();
        let n_tx = transactions.len();
        let mut columns = vec![Bitset::new(n_tx); n_items];
        let mut rows = Vec::with_capacity(n_tx);
        for (t, mut row) in transactions.into_iter().enumerate() {
            row.sort_unstable();
            row.dedup();
            for &item in &row {
                let col = columns.get_mut(item as usize).ok_or(TxDbError::ItemOutOfRange { item, n_items })?;
                col.insert(t);
            }
            rows.push(row);
        }
        let tx_sizes = rows.iter().map(|r| r.len() as u32).collect();
        Ok(TransactionDB {
            item_names,
            rows,
            columns,
            tx_sizes,
            live_tx: Bitset::full(n_tx),
            live_items: Bitset::full(n_items),
            warnings: Vec::new(),
        })
    }

    /// Terms become transactions and documents become items: cell `(t, d)` is
    /// set iff term `t` occurs in document `d`.
    pub fn from_term_document_matrix(tdm: &TermDocumentMatrix) -> Self {
        let transactions =
            (0..tdm.n_terms()).map(|t| tdm.postings(t).iter().map(|&(d, _)| d as ItemId).collect()).collect();
        Self::from_transactions(tdm.doc_ids().to_vec(), transactions).expect("document ids are in range")
    }

    /// Parses a basket file: one transaction per line, whitespace-separated
    /// item tokens. Item ids follow first appearance. Blank lines are skipped
    /// with a warning.
    pub fn parse_baskets(text: &str) -> Self {
        let mut ids: HashMap<&str, ItemId> = HashMap::new();
        let mut names = Vec::new();
        let mut transactions = Vec::new();
        let mut warnings = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.is_empty() {
                warnings.push(format!("line {}: empty transaction skipped", lineno + 1));
                continue;
            }
            let row = tokens
                .into_iter()
                .map(|tok| {
                    *ids.entry(tok).or_insert_with(|| {
                        names.push(tok.to_string());
                        (names.len() - 1) as ItemId
                    })
                })
                .collect();
            transactions.push(row);
        }
        let mut db = Self::from_transactions(names, transactions).expect("ids assigned in range");
        db.warnings = warnings;
        db
    }

    pub fn load_baskets(path: &Path) -> Result<Self, TxDbError> {
        let text = fs::read_to_string(path).map_err(|source| TxDbError::Io { path: path.to_path_buf(), source })?;
        let db = Self::parse_baskets(&text);
        if db.n_transactions() == 0 {
            return Err(TxDbError::EmptyFile(path.to_path_buf()));
        }
        Ok(db)
    }

    pub fn n_items(&self) -> usize {
        self.item_names.len()
    }

    pub fn n_transactions(&self) -> usize {
        self.rows.len()
    }

    pub fn item_names(&self) -> &[String] {
        &self.item_names
    }

    pub fn item_name(&self, item: ItemId) -> &str {
        &self.item_names[item as usize]
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// The original transactions, as read. Unaffected by shrinks.
    pub fn rows(&self) -> &[Vec<ItemId>] {
        &self.rows
    }

    pub fn column(&self, item: ItemId) -> &Bitset {
        &self.columns[item as usize]
    }

    pub fn live_tx(&self) -> &Bitset {
        &self.live_tx
    }

    pub fn live_items(&self) -> &Bitset {
        &self.live_items
    }

    pub fn live_tx_count(&self) -> usize {
        self.live_tx.count_ones()
    }

    pub fn is_item_live(&self, item: ItemId) -> bool {
        self.live_items.contains(item as usize)
    }

    /// Live-item count of transaction `t`.
    pub fn tx_size(&self, t: usize) -> u32 {
        self.tx_sizes[t]
    }

    /// Number of live transactions containing every item of `itemset`.
    pub fn support(&self, itemset: &Itemset) -> Result<usize, TxDbError> {
        let mut cols = Vec::with_capacity(itemset.len());
        for &item in itemset.items() {
            let col =
                self.columns.get(item as usize).ok_or(TxDbError::ItemOutOfRange { item, n_items: self.n_items() })?;
            cols.push(col);
        }
        Ok(self.live_tx.and_count(&cols))
    }

    /// Unchecked support for ids already known to be in range.
    pub(crate) fn support_of(&self, items: &[ItemId]) -> usize {
        match items {
            [a] => self.live_tx.and_count(&[&self.columns[*a as usize]]),
            [a, b] => self.live_tx.and_count(&[&self.columns[*a as usize], &self.columns[*b as usize]]),
            _ => {
                let cols: Vec<&Bitset> = items.iter().map(|&i| &self.columns[i as usize]).collect();
                self.live_tx.and_count(&cols)
            }
        }
    }

    /// Zeroes the column of every live item not in `keep`, decrementing the
    /// sizes of the transactions it appeared in. Returns the number of items
    /// zeroed.
    pub fn zero_items(&mut self, keep: &Bitset) -> usize {
        let doomed: Vec<usize> = self.live_items.ones().filter(|&i| !keep.contains(i)).collect();
        for &i in &doomed {
            for t in self.columns[i].ones() {
                self.tx_sizes[t] -= 1;
            }
            self.columns[i].clear();
            self.live_items.remove(i);
        }
        doomed.len()
    }

    /// Removes every live transaction whose live-item count is at most `k`.
    /// Returns the number removed.
    pub fn null_small_transactions(&mut self, k: usize) -> usize {
        let doomed: Vec<usize> = self.live_tx.ones().filter(|&t| self.tx_sizes[t] as usize <= k).collect();
        for &t in &doomed {
            self.live_tx.remove(t);
        }
        doomed.len()
    }

    /// Writes each live transaction as a row of `0`/`1` characters, one
    /// column per item.
    pub fn dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut line = Vec::with_capacity(self.n_items() + 1);
        for t in self.live_tx.ones() {
            line.clear();
            line.extend(self.columns.iter().map(|c| if c.contains(t) { b'1' } else { b'0' }));
            line.push(b'\n');
            out.write_all(&line)?;
        }
        Ok(())
    }
}
