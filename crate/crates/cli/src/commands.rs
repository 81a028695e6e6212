use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use docmine_bench::{
    run_cluster_bench, run_mining_bench, write_gnuplot, BenchCorpus, BenchError, ClusterBenchConfig, ClusterRow,
    MiningBenchConfig, MiningRow, SyntheticSpec,
};
use docmine_core::corpus::load_corpus;
use docmine_core::refine::{refine, write_membership_csv, RefineConfig};
use docmine_core::seeder::SeedError;
use docmine_core::{
    evaluate, mine_modified, seed_clusters, Algorithm, MiningResult, MiningStats, PreprocessedCorpus, Preprocessor,
    StopWords, Technique, TermDocumentMatrix, TransactionDB,
};

use crate::{
    AlgoChoice, BenchCommand, BenchSource, Cli, ClusterArgs, Command, CorpusArgs, GenerateArgs, MineArgs, RefineChoice,
};

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NO_SEEDS: u8 = 3;
pub const EXIT_GATE: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

type Outcome = Result<(), Failure>;

fn input(error: impl Into<anyhow::Error>) -> Failure {
    Failure { code: EXIT_INPUT, error: error.into() }
}

fn from_bench(e: BenchError) -> Failure {
    let code = match e {
        BenchError::GateFailed { .. } => EXIT_GATE,
        BenchError::Seed(SeedError::NoClusters) => EXIT_NO_SEEDS,
        _ => EXIT_INPUT,
    };
    Failure { code, error: e.into() }
}

pub fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| input(anyhow!("cannot start thread pool: {e}")))?;
    }
    match cli.command {
        Command::Mine(a) => mine(a),
        Command::Cluster(a) => cluster(a),
        Command::Bench(b) => bench(b, cli.seed),
        Command::Generate(a) => generate(a, cli.seed),
    }
}

/// Parses `n` or `p%`. Percentages are of `n_transactions`, rounded up.
pub fn parse_min_sup(text: &str, n_transactions: usize) -> anyhow::Result<usize> {
    let text = text.trim();
    let min_sup = if let Some(p) = text.strip_suffix('%') {
        let p: f64 = p.trim().parse().with_context(|| format!("bad percentage {text:?}"))?;
        if !(0.0..=100.0).contains(&p) {
            return Err(anyhow!("percentage {text:?} outside 0..100"));
        }
        // Rounded to shed representation error before taking the ceiling.
        let exact = p * n_transactions as f64 / 100.0;
        let snapped = (exact * 1e9).round() / 1e9;
        snapped.ceil() as usize
    } else {
        text.parse().with_context(|| format!("bad min-sup {text:?}"))?
    };
    if min_sup == 0 {
        return Err(anyhow!("min-sup must be at least 1"));
    }
    Ok(min_sup)
}

fn preprocessor(args: &CorpusArgs) -> Result<Preprocessor, Failure> {
    let stopwords = match &args.stopwords {
        Some(path) => StopWords::from_file(path).map_err(input)?,
        None => StopWords::default(),
    };
    Ok(Preprocessor::new(stopwords))
}

fn read_corpus(dir: &Path, args: &CorpusArgs) -> Result<(PreprocessedCorpus, TermDocumentMatrix), Failure> {
    let raw = load_corpus(dir, args.label_rule).map_err(input)?;
    let corpus = preprocessor(args)?.run(&raw);
    warn_all(&corpus.warnings);
    let tdm = TermDocumentMatrix::build(&corpus).map_err(input)?;
    Ok((corpus, tdm))
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).with_context(|| format!("cannot create {}", path.display())).map_err(input)
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_err(e: io::Error) -> Failure {
    input(anyhow::Error::from(e).context("write failed"))
}

fn write_stats<W: Write>(stats: &MiningStats, mut out: W) -> io::Result<()> {
    for (k, v) in stats.key_values() {
        writeln!(out, "# {k}={v}")?;
    }
    writeln!(out, "# per_level={}", stats.level_summary())?;
    out.flush()
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn mine(a: MineArgs) -> Outcome {
    let db = if a.input.is_dir() {
        let (_, tdm) = read_corpus(&a.input, &a.corpus)?;
        TransactionDB::from_term_document_matrix(&tdm)
    } else {
        TransactionDB::load_baskets(&a.input).map_err(input)?
    };
    warn_all(db.warnings());
    let min_sup = parse_min_sup(&a.min_sup, db.n_transactions()).map_err(input)?;
    if let Some(p) = &a.dump_db {
        let mut w = create(p)?;
        db.dump(&mut w).and_then(|_| w.flush()).map_err(io_err)?;
    }
    let algos = match a.algo {
        AlgoChoice::Traditional => vec![Algorithm::Traditional],
        AlgoChoice::Modified => vec![Algorithm::Modified],
        AlgoChoice::Both => Algorithm::ALL.to_vec(),
    };
    let mut results: Vec<(Algorithm, MiningResult, MiningStats)> = Vec::new();
    for algo in algos {
        let (r, s) = algo.run(&db, min_sup).map_err(input)?;
        results.push((algo, r, s));
    }
    if let [(_, a_res, _), (_, b_res, _)] = results.as_slice() {
        if a_res != b_res {
            return Err(Failure { code: EXIT_GATE, error: anyhow!("miners disagree at min_sup={min_sup}") });
        }
    }
    let both = results.len() > 1;
    for (algo, result, stats) in &results {
        let path = a.out.as_ref().map(|p| if both { with_suffix(p, algo.name()) } else { p.clone() });
        let mut out = sink(path.as_deref())?;
        if both && path.is_none() {
            writeln!(out, "# algo={algo}").map_err(io_err)?;
        }
        result.write_itemsets(db.item_names(), &mut out).and_then(|_| out.flush()).map_err(io_err)?;
        if a.stats {
            match &path {
                Some(p) => write_stats(stats, create(&with_suffix(p, "stats"))?),
                None => write_stats(stats, io::stderr().lock()),
            }
            .map_err(io_err)?;
        }
    }
    Ok(())
}

fn technique(c: RefineChoice) -> Technique {
    match c {
        RefineChoice::Fcm => Technique::Fcm,
        RefineChoice::Kmeans => Technique::KMeans,
        RefineChoice::Vsm => Technique::Vsm,
    }
}

fn cluster(a: ClusterArgs) -> Outcome {
    let cfg = RefineConfig { m: a.m, epsilon: a.epsilon, max_iter: a.max_iter };
    cfg.validate().map_err(input)?;
    let (corpus, tdm) = read_corpus(&a.input, &a.corpus)?;
    if let Some(p) = &a.dump_matrix {
        let mut w = create(p)?;
        tdm.write_tsv(&mut w).and_then(|_| w.flush()).map_err(io_err)?;
    }
    let db = TransactionDB::from_term_document_matrix(&tdm);
    let min_sup = parse_min_sup(&a.min_sup, db.n_transactions()).map_err(input)?;
    let (mined, _) = mine_modified(&db, min_sup).map_err(input)?;
    let weights = tdm.tfidf();
    let seeds = seed_clusters(mined.maximal(), weights.documents()).map_err(|e| Failure {
        code: if matches!(e, SeedError::NoClusters) { EXIT_NO_SEEDS } else { EXIT_INPUT },
        error: e.into(),
    })?;
    let ids = corpus.ids();
    if let Some(p) = &a.dump_seeds {
        let mut w = create(p)?;
        seeds.write_members(&ids, &mut w).and_then(|_| w.flush()).map_err(io_err)?;
    }
    let outcome = refine(technique(a.refine), weights.documents(), &seeds, &cfg).map_err(input)?;
    let assignment = &outcome.assignment;
    warn_all(&assignment.warnings);
    if !assignment.converged {
        eprintln!("warning: stopped after {} iterations without converging", assignment.iterations);
    }
    let report = if a.eval { Some(evaluate(assignment, &corpus.labels()).map_err(input)?) } else { None };
    let mut out = sink(a.out.as_deref())?;
    match &outcome.membership {
        Some(u) => write_membership_csv(&ids, &assignment.labels, u, &mut out),
        None => assignment.write_csv(&ids, &mut out),
    }
    .map_err(io_err)?;
    if let Some(r) = report {
        writeln!(out, "# eval").and_then(|_| r.write_csv(&mut out)).map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    if let Some(p) = &a.trace {
        let mut w = create(p)?;
        assignment.write_trace(&mut w).and_then(|_| w.flush()).map_err(io_err)?;
    }
    Ok(())
}

fn synthetic_spec(text: &str, seed: Option<u64>) -> Result<SyntheticSpec, Failure> {
    let mut spec: SyntheticSpec = text.parse().map_err(input)?;
    if let Some(s) = seed {
        spec.seed = s;
    }
    Ok(spec)
}

fn bench_corpus(src: &BenchSource, seed: Option<u64>) -> Result<BenchCorpus, Failure> {
    match (&src.synthetic, &src.input) {
        (Some(text), _) => Ok(BenchCorpus::synthetic(&synthetic_spec(text, seed)?)),
        (None, Some(dir)) => {
            let raw = load_corpus(dir, src.corpus.label_rule).map_err(input)?;
            Ok(BenchCorpus::new(dir.display().to_string(), &raw, &preprocessor(&src.corpus)?))
        }
        (None, None) => Err(input(anyhow!("either --input or --synthetic is required"))),
    }
}

fn bench(cmd: BenchCommand, seed: Option<u64>) -> Outcome {
    match cmd {
        BenchCommand::Mining(a) => {
            let corpus = bench_corpus(&a.source, seed)?;
            let cfg = MiningBenchConfig {
                sizes: a.source.sizes.clone(),
                min_sup: a.source.min_sup,
                algos: match a.algo {
                    AlgoChoice::Traditional => vec![Algorithm::Traditional],
                    AlgoChoice::Modified => vec![Algorithm::Modified],
                    AlgoChoice::Both => Algorithm::ALL.to_vec(),
                },
                repeats: a.repeats,
                parallel: a.parallel,
            };
            let rows = run_mining_bench(&corpus, &cfg).map_err(from_bench)?;
            let mut out = sink(a.source.out.as_deref())?;
            MiningRow::write_csv(&rows, &mut out).and_then(|_| out.flush()).map_err(io_err)?;
            if let Some(p) = &a.gnuplot {
                let mut w = create(p)?;
                write_gnuplot(&rows, &mut w).and_then(|_| w.flush()).map_err(io_err)?;
            }
        }
        BenchCommand::Cluster(a) => {
            let corpus = bench_corpus(&a.source, seed)?;
            let cfg = ClusterBenchConfig {
                sizes: a.source.sizes.clone(),
                min_sup: a.source.min_sup,
                techniques: a.techniques.iter().map(|&t| technique(t)).collect(),
                refine: RefineConfig { m: a.m, epsilon: a.epsilon, max_iter: a.max_iter },
            };
            let rows = run_cluster_bench(&corpus, &cfg).map_err(from_bench)?;
            let mut out = sink(a.source.out.as_deref())?;
            ClusterRow::write_csv(&rows, &mut out).and_then(|_| out.flush()).map_err(io_err)?;
        }
    }
    Ok(())
}

fn generate(a: GenerateArgs, seed: Option<u64>) -> Outcome {
    let spec = synthetic_spec(&a.synthetic, seed)?;
    let docs = spec
        .write_to_dir(&a.out)
        .with_context(|| format!("cannot write corpus to {}", a.out.display()))
        .map_err(input)?;
    eprintln!("wrote {} documents to {}", docs.len(), a.out.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_sup_counts_and_percentages() {
        assert_eq!(parse_min_sup("3", 5).unwrap(), 3);
        assert_eq!(parse_min_sup("60%", 5).unwrap(), 3);
        assert_eq!(parse_min_sup("50%", 5).unwrap(), 3);
        assert_eq!(parse_min_sup("20%", 5).unwrap(), 1);
        assert_eq!(parse_min_sup("100%", 7).unwrap(), 7);
        assert!(parse_min_sup("0", 5).is_err());
        assert!(parse_min_sup("0%", 5).is_err());
        assert!(parse_min_sup("120%", 5).is_err());
        assert!(parse_min_sup("lots", 5).is_err());
    }

    #[test]
    fn bench_errors_map_to_exit_codes() {
        assert_eq!(from_bench(BenchError::GateFailed { n_docs: 1, min_sup: 1 }).code, EXIT_GATE);
        assert_eq!(from_bench(BenchError::Seed(SeedError::NoClusters)).code, EXIT_NO_SEEDS);
        assert_eq!(from_bench(BenchError::NoSizes).code, EXIT_INPUT);
    }

    #[test]
    fn suffixes_append() {
        assert_eq!(with_suffix(Path::new("out/x.txt"), "modified"), PathBuf::from("out/x.txt.modified"));
    }
}
