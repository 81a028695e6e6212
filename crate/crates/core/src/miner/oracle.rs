//! Exhaustive reference miner for small databases.

use super::{check_min_sup, MineError, MiningResult};
use crate::txdb::{ItemId, Itemset, TransactionDB};

pub const MAX_BRUTE_FORCE_ITEMS: usize = 20;

/// Enumerates every non-empty itemset and counts its support directly from
/// the live raw transactions.
pub fn brute_force_mine(db: &TransactionDB, min_sup: usize) -> Result<MiningResult, MineError> {
    check_min_sup(min_sup)?;
    let n = db.n_items();
    if n > MAX_BRUTE_FORCE_ITEMS {
        return Err(MineError::TooManyItems(n));
    }
    let masks: Vec<u32> = db
        .rows()
        .iter()
        .enumerate()
        .filter(|(t, _)| db.live_tx().contains(*t))
        .map(|(_, row)| row.iter().fold(0u32, |m, &i| m | (1 << i)))
        .collect();
    let mut levels: Vec<Vec<(Itemset, usize)>> = vec![Vec::new(); n];
    for set in 1u32..(1u32 << n) {
        let support = masks.iter().filter(|&&m| m & set == set).count();
        if support >= min_sup {
            let items: Vec<ItemId> = (0..n as ItemId).filter(|&i| set & (1 << i) != 0).collect();
            levels[items.len() - 1].push((Itemset::from_sorted(items), support));
        }
    }
    Ok(MiningResult::from_levels(min_sup, levels))
}
