//! Single-scan Apriori over the in-memory transaction × item bitset array.
//!
//! The database is loaded once. After each level the array is shrunk: items
//! that appear in no frequent itemset of the level are zeroed, and
//! transactions left with at most `k` live items are nulled, since neither
//! can contribute to a larger frequent itemset. Candidates are additionally
//! filtered by item occurrence before the subset prune.

use std::time::Instant;

use rayon::prelude::*;

use super::candidates::{join_candidates, prune_item_occurrence, prune_subsets};
use super::{check_min_sup, Algorithm, LevelStats, MineError, MiningResult, MiningStats};
use crate::bitset::Bitset;
use crate::txdb::{ItemId, Itemset, TransactionDB};

pub fn mine_modified(db: &TransactionDB, min_sup: usize) -> Result<(MiningResult, MiningStats), MineError> {
    check_min_sup(min_sup)?;
    let start = Instant::now();
    let mut stats = MiningStats::new(Algorithm::Modified);
    let mut work = db.clone();
    stats.db_scans = 1;

    let count_start = Instant::now();
    let live: Vec<ItemId> = work.live_items().ones().map(|i| i as ItemId).collect();
    let supports: Vec<usize> = live.par_iter().map(|&i| work.support_of(&[i])).collect();
    let l1: Vec<(Itemset, usize)> =
        live.iter().zip(supports).filter(|&(_, c)| c >= min_sup).map(|(&i, c)| (Itemset::singleton(i), c)).collect();
    stats.levels.push(LevelStats {
        k: 1,
        generated: live.len(),
        after_occurrence_prune: live.len(),
        counted: live.len(),
        frequent: l1.len(),
        work_units: (work.live_tx_count() * live.len()) as u64,
        count_time: count_start.elapsed(),
        ..LevelStats::default()
    });

    let mut levels = vec![l1];
    loop {
        let prev: Vec<Itemset> = levels.last().unwrap().iter().map(|(s, _)| s.clone()).collect();
        if prev.is_empty() {
            break;
        }
        let k = prev[0].len();

        let shrink_start = Instant::now();
        let mut keep = Bitset::new(work.n_items());
        for s in &prev {
            for &i in s.items() {
                keep.insert(i as usize);
            }
        }
        let current = stats.levels.last_mut().unwrap();
        current.items_zeroed = work.zero_items(&keep);
        current.tx_nulled = work.null_small_transactions(k);
        current.shrink_time = shrink_start.elapsed();
        let live_tx = work.live_tx_count();
        if live_tx < min_sup {
            stats.early_exit = true;
            break;
        }

        let gen_start = Instant::now();
        let joined = join_candidates(&prev);
        let generated = joined.len();
        let after_occurrence = prune_item_occurrence(joined, &prev);
        let after_occurrence_prune = after_occurrence.len();
        let candidates = prune_subsets(after_occurrence, &prev);
        let mut level = LevelStats {
            k: k + 1,
            generated,
            after_occurrence_prune,
            counted: candidates.len(),
            generate_time: gen_start.elapsed(),
            ..LevelStats::default()
        };
        if candidates.is_empty() {
            if generated > 0 {
                stats.levels.push(level);
            }
            break;
        }

        let count_start = Instant::now();
        let supports: Vec<usize> = candidates.par_iter().map(|c| work.support_of(c.items())).collect();
        level.work_units = (live_tx * candidates.len()) as u64;
        level.count_time = count_start.elapsed();

        let frequent: Vec<(Itemset, usize)> =
            candidates.into_iter().zip(supports).filter(|&(_, c)| c >= min_sup).collect();
        level.frequent = frequent.len();
        stats.levels.push(level);
        levels.push(frequent);
    }

    stats.elapsed = start.elapsed();
    Ok((MiningResult::from_levels(min_sup, levels), stats))
}
