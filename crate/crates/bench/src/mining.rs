//! Runtime comparison of the traditional and modified miners.

use std::io::{self, Write};
use std::time::Instant;

use docmine_core::{Algorithm, MiningResult, MiningStats, TransactionDB};
use rayon::prelude::*;

use crate::{check_sizes, median, BenchCorpus, BenchError};

pub const MINING_HEADER: &str =
    "algo,dataset,n_docs,min_sup,elapsed_ms,db_scans,candidates_total,candidates_pruned,tx_nulled,items_zeroed";

#[derive(Debug, Clone)]
pub struct MiningBenchConfig {
    pub sizes: Vec<usize>,
    pub min_sup: usize,
    pub algos: Vec<Algorithm>,
    pub repeats: usize,
    /// Run the sizes concurrently. Rows then carry a contention warning.
    pub parallel: bool,
}

impl Default for MiningBenchConfig {
    fn default() -> Self {
        MiningBenchConfig {
            sizes: vec![200, 400, 600, 800, 1000],
            min_sup: 10,
            algos: Algorithm::ALL.to_vec(),
            repeats: 3,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MiningRow {
    pub algo: Algorithm,
    pub dataset: String,
    pub n_docs: usize,
    pub min_sup: usize,
    /// Median over the timed repeats.
    pub elapsed_ms: f64,
    pub db_scans: usize,
    pub candidates_total: usize,
    pub candidates_pruned: usize,
    pub tx_nulled: usize,
    pub items_zeroed: usize,
    pub warning: Option<String>,
}

impl MiningRow {
    pub fn write_csv<W: Write>(rows: &[MiningRow], mut out: W) -> io::Result<()> {
        let warn = rows.iter().any(|r| r.warning.is_some());
        write!(out, "{MINING_HEADER}")?;
        if warn {
            write!(out, ",warning")?;
        }
        writeln!(out)?;
        for r in rows {
            write!(
                out,
                "{},{},{},{},{:.3},{},{},{},{},{}",
                r.algo,
                r.dataset,
                r.n_docs,
                r.min_sup,
                r.elapsed_ms,
                r.db_scans,
                r.candidates_total,
                r.candidates_pruned,
                r.tx_nulled,
                r.items_zeroed
            )?;
            if warn {
                write!(out, ",{}", r.warning.as_deref().unwrap_or(""))?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Whitespace-separated blocks, one per algorithm, separated by two blank
/// lines so each is addressable with `index` in gnuplot.
pub fn write_gnuplot<W: Write>(rows: &[MiningRow], mut out: W) -> io::Result<()> {
    let mut first = true;
    for algo in Algorithm::ALL {
        let block: Vec<&MiningRow> = rows.iter().filter(|r| r.algo == algo).collect();
        if block.is_empty() {
            continue;
        }
        if !first {
            writeln!(out, "\n")?;
        }
        first = false;
        writeln!(out, "# {algo}")?;
        writeln!(out, "# n_docs min_sup elapsed_ms")?;
        for r in block {
            writeln!(out, "{} {} {:.3}", r.n_docs, r.min_sup, r.elapsed_ms)?;
        }
    }
    Ok(())
}

fn same_itemsets(a: &MiningResult, b: &MiningResult) -> bool {
    let flat = |r: &MiningResult| {
        let mut v: Vec<_> = r.iter().cloned().collect();
        v.sort();
        v
    };
    flat(a) == flat(b)
}

fn gate(a: &MiningResult, b: &MiningResult, n_docs: usize, min_sup: usize) -> Result<(), BenchError> {
    if same_itemsets(a, b) {
        Ok(())
    } else {
        Err(BenchError::GateFailed { n_docs, min_sup })
    }
}

fn time_runs(
    algo: Algorithm,
    db: &TransactionDB,
    min_sup: usize,
    repeats: usize,
) -> Result<(f64, MiningStats), BenchError> {
    // Warm-up, discarded.
    let (_, mut stats) = algo.run(db, min_sup)?;
    let mut times = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let start = Instant::now();
        let (_, s) = algo.run(db, min_sup)?;
        times.push(start.elapsed().as_secs_f64() * 1e3);
        stats = s;
    }
    Ok((median(&mut times), stats))
}

fn bench_size(corpus: &BenchCorpus, n: usize, cfg: &MiningBenchConfig) -> Result<Vec<MiningRow>, BenchError> {
    let (_, tdm) = corpus.matrix(n)?;
    let db = TransactionDB::from_term_document_matrix(&tdm);
    let (trad, _) = Algorithm::Traditional.run(&db, cfg.min_sup)?;
    let (modi, _) = Algorithm::Modified.run(&db, cfg.min_sup)?;
    gate(&trad, &modi, n, cfg.min_sup)?;
    let mut rows = Vec::new();
    for &algo in &cfg.algos {
        let (elapsed_ms, stats) = time_runs(algo, &db, cfg.min_sup, cfg.repeats)?;
        rows.push(MiningRow {
            algo,
            dataset: corpus.name.clone(),
            n_docs: n,
            min_sup: cfg.min_sup,
            elapsed_ms,
            db_scans: stats.db_scans,
            candidates_total: stats.candidates_total(),
            candidates_pruned: stats.candidates_pruned(),
            tx_nulled: stats.tx_nulled(),
            items_zeroed: stats.items_zeroed(),
            warning: cfg.parallel.then(|| "concurrent runs; timings contended".to_string()),
        });
    }
    Ok(rows)
}

/// One row per (size, algorithm). Every size must pass the correctness
/// gate before any of its timings are reported; a failure aborts the whole
/// run with no rows.
pub fn run_mining_bench(corpus: &BenchCorpus, cfg: &MiningBenchConfig) -> Result<Vec<MiningRow>, BenchError> {
    check_sizes(&cfg.sizes, corpus.len())?;
    if cfg.repeats == 0 {
        return Err(BenchError::NoRepeats);
    }
    let per_size: Vec<Result<Vec<MiningRow>, BenchError>> = if cfg.parallel {
        cfg.sizes.par_iter().map(|&n| bench_size(corpus, n, cfg)).collect()
    } else {
        cfg.sizes.iter().map(|&n| bench_size(corpus, n, cfg)).collect()
    };
    let mut rows = Vec::new();
    for r in per_size {
        rows.extend(r?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SyntheticSpec;

    fn tiny() -> BenchCorpus {
        BenchCorpus::synthetic(&"classes=2,docs=40,vocab=400,seed=1".parse::<SyntheticSpec>().unwrap())
    }

    #[test]
    fn smoke_rows_have_stats() {
        let cfg = MiningBenchConfig { sizes: vec![20, 40], min_sup: 8, repeats: 1, ..Default::default() };
        let rows = run_mining_bench(&tiny(), &cfg).unwrap();
        assert_eq!(rows.len(), 4);
        for r in &rows {
            assert!(r.candidates_total > 0);
            match r.algo {
                Algorithm::Modified => assert_eq!(r.db_scans, 1),
                Algorithm::Traditional => assert!(r.db_scans >= 2),
            }
        }
        let mut buf = Vec::new();
        MiningRow::write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), MINING_HEADER);
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn parallel_rows_carry_warning_column() {
        let cfg = MiningBenchConfig { sizes: vec![20], min_sup: 8, repeats: 1, parallel: true, ..Default::default() };
        let rows = run_mining_bench(&tiny(), &cfg).unwrap();
        let mut buf = Vec::new();
        MiningRow::write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(&format!("{MINING_HEADER},warning\n")));
        assert!(text.lines().nth(1).unwrap().ends_with(",concurrent runs; timings contended"));
    }

    #[test]
    fn rejects_oversized_requests() {
        let cfg = MiningBenchConfig { sizes: vec![41], repeats: 1, ..Default::default() };
        assert!(matches!(run_mining_bench(&tiny(), &cfg), Err(BenchError::TooFewDocuments { .. })));
        let cfg = MiningBenchConfig { sizes: vec![], ..Default::default() };
        assert!(matches!(run_mining_bench(&tiny(), &cfg), Err(BenchError::NoSizes)));
    }

    #[test]
    fn gate_rejects_differing_results() {
        let a = TransactionDB::parse_baskets("x y\nx y\n");
        let b = TransactionDB::parse_baskets("x y\nx\n");
        let (ra, _) = Algorithm::Modified.run(&a, 1).unwrap();
        let (rb, _) = Algorithm::Modified.run(&b, 1).unwrap();
        assert!(gate(&ra, &ra, 2, 1).is_ok());
        assert!(matches!(gate(&ra, &rb, 2, 1), Err(BenchError::GateFailed { n_docs: 2, min_sup: 1 })));
    }

    #[test]
    fn gnuplot_blocks() {
        let cfg = MiningBenchConfig { sizes: vec![20], min_sup: 8, repeats: 1, ..Default::default() };
        let rows = run_mining_bench(&tiny(), &cfg).unwrap();
        let mut buf = Vec::new();
        write_gnuplot(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# traditional\n"));
        assert!(text.contains("\n\n\n# modified\n"));
    }
}
