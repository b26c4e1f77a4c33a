use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use veritree::Method;

#[derive(Debug, Parser)]
#[command(
    name = "veritree",
    version,
    about = "Explainable deception detection over stylometric features"
)]
pub struct Cli {
    /// Seed for splits and background subsampling [default: 42]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory receiving every output file [default: out]
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Directory with the six lexicon files; the bundled lexicons otherwise
    #[arg(long, global = true)]
    pub lexicon_dir: Option<PathBuf>,
    /// Flat `key = value` settings file; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a hybrid train/test split
    Split(SplitArgs),
    /// Extract the feature table of a corpus
    Featurize(FeaturizeArgs),
    /// Train a boosted tree classifier
    Train(TrainArgs),
    /// Score a model on labeled data
    Evaluate(EvaluateArgs),
    /// Attribute model margins to features
    Explain(ExplainArgs),
    /// Run the four-model experiment end to end
    RunAll(RunAllArgs),
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    /// Disinformation corpus (JSONL)
    #[arg(long)]
    pub dis: PathBuf,
    /// Partner corpus (JSONL)
    #[arg(long)]
    pub partner: PathBuf,
    #[command(flatten)]
    pub sizes: SizeArgs,
}

#[derive(Debug, Args)]
pub struct SizeArgs {
    /// Training documents, half from the disinformation corpus [default: 200]
    #[arg(long = "train")]
    pub train_size: Option<usize>,
    /// Disinformation test documents [default: 20]
    #[arg(long = "test")]
    pub test_size: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FeaturizeArgs {
    /// Labeled corpus (JSONL)
    #[arg(long)]
    pub input: PathBuf,
    /// Output CSV [default: <out-dir>/features.csv]
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct BoostArgs {
    /// Boosting rounds [default: 100]
    #[arg(long)]
    pub rounds: Option<usize>,
    /// Maximum tree depth [default: 3]
    #[arg(long)]
    pub max_depth: Option<usize>,
    /// Shrinkage [default: 0.3]
    #[arg(long)]
    pub learning_rate: Option<f64>,
    /// L2 penalty on leaf weights [default: 1]
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Minimum split gain [default: 0]
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Minimum hessian sum per child [default: 1]
    #[arg(long)]
    pub min_child_weight: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Training data: labeled JSONL corpus or feature CSV
    #[arg(long)]
    pub train: PathBuf,
    #[command(flatten)]
    pub boost: BoostArgs,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Model file written by `train`
    #[arg(long)]
    pub model: PathBuf,
    /// Test data: labeled JSONL corpus or feature CSV
    #[arg(long)]
    pub test: PathBuf,
    /// Row label in the table
    #[arg(long, default_value = "model")]
    pub name: String,
}

#[derive(Debug, Args, Default)]
pub struct ExplainOptions {
    /// Attribution algorithm: exact or tree [default: tree]
    #[arg(long)]
    pub method: Option<Method>,
    /// Largest background set; bigger sets are subsampled [default: 200]
    #[arg(long)]
    pub background_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ExplainArgs {
    /// Model file written by `train`
    #[arg(long)]
    pub model: PathBuf,
    /// Instances to explain: labeled JSONL corpus or feature CSV
    #[arg(long)]
    pub instances: PathBuf,
    /// Background set, normally the training data
    #[arg(long)]
    pub background: PathBuf,
    #[command(flatten)]
    pub options: ExplainOptions,
}

#[derive(Debug, Args)]
pub struct RunAllArgs {
    /// Directory holding syn_dis.jsonl and the four partner corpora [default: data]
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
    #[command(flatten)]
    pub sizes: SizeArgs,
    #[command(flatten)]
    pub boost: BoostArgs,
    #[command(flatten)]
    pub options: ExplainOptions,
}
