//! Level-wise Apriori with one pass over the horizontal dataset per level.

use std::time::Instant;

use rayon::prelude::*;

use super::candidates::{join_candidates, prune_subsets};
use super::{check_min_sup, Algorithm, LevelStats, MineError, MiningResult, MiningStats};
use crate::txdb::{ItemId, Itemset, TransactionDB};

/// Candidates per parallel task when counting.
const CHUNK: usize = 4096;

pub fn mine_traditional(db: &TransactionDB, min_sup: usize) -> Result<(MiningResult, MiningStats), MineError> {
    check_min_sup(min_sup)?;
    let start = Instant::now();
    let mut stats = MiningStats::new(Algorithm::Traditional);
    let rows = db.rows();
    let n_tx = rows.len() as u64;

    // Level 1: one pass counting every item.
    let count_start = Instant::now();
    let mut item_counts = vec![0usize; db.n_items()];
    for row in rows {
        for &i in row {
            item_counts[i as usize] += 1;
        }
    }
    stats.db_scans += 1;
    let l1: Vec<(Itemset, usize)> = item_counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c >= min_sup)
        .map(|(i, &c)| (Itemset::singleton(i as ItemId), c))
        .collect();
    stats.levels.push(LevelStats {
        k: 1,
        generated: db.n_items(),
        after_occurrence_prune: db.n_items(),
        counted: db.n_items(),
        frequent: l1.len(),
        work_units: n_tx * db.n_items() as u64,
        count_time: count_start.elapsed(),
        ..LevelStats::default()
    });

    let mut levels = vec![l1];
    loop {
        let prev: Vec<Itemset> = levels.last().unwrap().iter().map(|(s, _)| s.clone()).collect();
        if prev.is_empty() {
            break;
        }
        let k = prev[0].len() + 1;
        let gen_start = Instant::now();
        let joined = join_candidates(&prev);
        let generated = joined.len();
        let candidates = prune_subsets(joined, &prev);
        let mut level = LevelStats {
            k,
            generated,
            after_occurrence_prune: generated,
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
        let counts = scan_count(rows, db.n_items(), &candidates);
        stats.db_scans += 1;
        level.work_units = n_tx * candidates.len() as u64;
        level.count_time = count_start.elapsed();

        let frequent: Vec<(Itemset, usize)> =
            candidates.into_iter().zip(counts).filter(|&(_, c)| c >= min_sup).collect();
        level.frequent = frequent.len();
        stats.levels.push(level);
        levels.push(frequent);
    }

    stats.elapsed = start.elapsed();
    Ok((MiningResult::from_levels(min_sup, levels), stats))
}

/// One pass over every transaction, testing each candidate for containment.
fn scan_count(rows: &[Vec<ItemId>], n_items: usize, candidates: &[Itemset]) -> Vec<usize> {
    candidates
        .par_chunks(CHUNK)
        .flat_map_iter(|chunk| {
            let mut counts = vec![0usize; chunk.len()];
            let mut present = vec![false; n_items];
            for row in rows {
                for &i in row {
                    present[i as usize] = true;
                }
                for (c, count) in chunk.iter().zip(counts.iter_mut()) {
                    if c.items().iter().all(|&i| present[i as usize]) {
                        *count += 1;
                    }
                }
                for &i in row {
                    present[i as usize] = false;
                }
            }
            counts
        })
        .collect()
}
