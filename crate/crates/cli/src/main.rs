//! `docmine`: frequent-itemset document clustering from the command line.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use docmine_core::LabelRule;

/// Mine frequent document itemsets, seed clusters from the maximal ones and
/// refine them.
#[derive(Debug, Parser)]
#[command(name = "docmine", version)]
pub struct Cli {
    /// Worker threads for mining and refinement (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Seed for the synthetic generator; overrides any seed in --synthetic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mine frequent itemsets from a corpus directory or a basket file.
    Mine(MineArgs),
    /// Mine, seed clusters from the maximal itemsets and refine them.
    Cluster(ClusterArgs),
    /// Benchmark the miners or the refinement techniques.
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Write a synthetic labelled corpus into a directory.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// How class labels are read from file names.
    #[arg(long, default_value_t = LabelRule::FilenamePrefix)]
    label_rule: LabelRule,
    /// Stopword list, one word per line, `#` comments allowed.
    #[arg(long, env = "DOCMINE_STOPWORDS")]
    stopwords: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoChoice {
    Traditional,
    Modified,
    Both,
}

#[derive(Debug, Args)]
struct MineArgs {
    /// Corpus directory (documents are items, terms are transactions) or
    /// basket file (one transaction per line).
    #[arg(long)]
    input: PathBuf,
    /// Minimum support: an absolute count, or a percentage such as `60%`
    /// rounded up.
    #[arg(long)]
    min_sup: String,
    #[arg(long, value_enum, default_value_t = AlgoChoice::Modified)]
    algo: AlgoChoice,
    /// Itemset output path; stdout if absent. With `--algo both` the files
    /// are `<out>.traditional` and `<out>.modified`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a stats block next to each itemset file (`<file>.stats`), or to
    /// stderr when writing to stdout.
    #[arg(long)]
    stats: bool,
    /// Write the transaction matrix as rows of 0/1 characters.
    #[arg(long)]
    dump_db: Option<PathBuf>,
    #[command(flatten)]
    corpus: CorpusArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RefineChoice {
    Fcm,
    Kmeans,
    Vsm,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    /// Corpus directory, one document per file.
    #[arg(long)]
    input: PathBuf,
    /// Minimum support as a count or percentage of terms.
    #[arg(long)]
    min_sup: String,
    #[arg(long, value_enum, default_value_t = RefineChoice::Fcm)]
    refine: RefineChoice,
    /// FCM fuzzifier, greater than 1.
    #[arg(long, default_value_t = 2.0)]
    m: f64,
    /// FCM stops once the membership change falls below this.
    #[arg(long, default_value_t = 1e-4)]
    epsilon: f64,
    #[arg(long, default_value_t = 300)]
    max_iter: usize,
    /// Assignment CSV path; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append an F-measure report computed from the document labels.
    #[arg(long)]
    eval: bool,
    /// Write the term-document count matrix as TSV.
    #[arg(long)]
    dump_matrix: Option<PathBuf>,
    /// Write seed cluster members as `cluster_id,doc_id`.
    #[arg(long)]
    dump_seeds: Option<PathBuf>,
    /// Write the objective value per iteration.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[command(flatten)]
    corpus: CorpusArgs,
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// Runtime of the traditional and modified miners per corpus size.
    Mining(MiningBenchArgs),
    /// F-measure of each refinement technique per corpus size.
    Cluster(ClusterBenchArgs),
}

#[derive(Debug, Args)]
struct BenchSource {
    /// Corpus directory to sample from.
    #[arg(long, conflicts_with = "synthetic", required_unless_present = "synthetic")]
    input: Option<PathBuf>,
    /// Generate the corpus instead, e.g. `classes=3,docs=1000,vocab=2000,seed=42`.
    #[arg(long)]
    synthetic: Option<String>,
    /// Comma-separated document counts.
    #[arg(long, value_delimiter = ',', default_value = "200,400,600,800,1000")]
    sizes: Vec<usize>,
    /// Absolute minimum support.
    #[arg(long, default_value_t = 10)]
    min_sup: usize,
    /// CSV output path; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    corpus: CorpusArgs,
}

#[derive(Debug, Args)]
struct MiningBenchArgs {
    #[command(flatten)]
    source: BenchSource,
    /// Timed runs per row; the median is reported after one discarded warm-up.
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, value_enum, default_value_t = AlgoChoice::Both)]
    algo: AlgoChoice,
    /// Run sizes concurrently; rows gain a warning column.
    #[arg(long)]
    parallel: bool,
    /// Also write a gnuplot-friendly data file.
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClusterBenchArgs {
    #[command(flatten)]
    source: BenchSource,
    /// Comma-separated techniques.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "fcm,kmeans,vsm")]
    techniques: Vec<RefineChoice>,
    #[arg(long, default_value_t = 2.0)]
    m: f64,
    #[arg(long, default_value_t = 1e-4)]
    epsilon: f64,
    #[arg(long, default_value_t = 300)]
    max_iter: usize,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// Generator parameters, e.g. `classes=3,docs=1000,vocab=2000,seed=42`.
    #[arg(long, default_value = "classes=3,docs=1000,vocab=2000,seed=42")]
    synthetic: String,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("docmine: {:#}", e.error);
            ExitCode::from(e.code)
        }
    }
}
