use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use veritree::eval::{report_table, table_row};
use veritree::explain::{interaction_report, subsample_background, waterfall, GlobalSummary};
use veritree::gbm::{load_model, to_json, train_table, Training};
use veritree::io::write_atomic;
use veritree::{
    featurize_corpus, load_corpus, make_hybrid_split, Corpus, Explanation, FeatureTable,
    LexiconSet, Method, MetricsReport, Source, TrainConfig, TreeEnsemble,
};

use crate::args::{BoostArgs, Cli, Command, ExplainOptions, SizeArgs};
use crate::settings::ConfigFile;
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// Partner corpora of the four-model experiment, in table order.
pub const MODELS: [(&str, &str); 4] = [
    ("DIS+EN", "syn_en.jsonl"),
    ("DIS+FB", "syn_fb.jsonl"),
    ("DIS+NEG", "syn_neg.jsonl"),
    ("DIS+POS", "syn_pos.jsonl"),
];
pub const DIS_CORPUS: &str = "syn_dis.jsonl";

/// Files computed in memory and written only once every stage succeeded.
#[derive(Default)]
struct Outputs(Vec<(PathBuf, Vec<u8>)>);

impl Outputs {
    fn add(&mut self, path: PathBuf, content: impl Into<Vec<u8>>) {
        self.0.push((path, content.into()));
    }

    fn commit(self) -> Result<()> {
        for (path, bytes) in self.0 {
            write_atomic(&path, &bytes)?;
        }
        Ok(())
    }
}

struct Context {
    config: ConfigFile,
    seed: u64,
    out_dir: PathBuf,
    lexicons: LexiconSet,
}

pub fn run(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let lexicons = match config.pick_opt(cli.lexicon_dir, "lexicon_dir")? {
        Some(dir) => LexiconSet::load_dir(&dir)?,
        None => LexiconSet::bundled(),
    };
    let ctx = Context {
        seed: config.pick(cli.seed, "seed", 42)?,
        out_dir: config.pick(cli.out_dir, "out_dir", PathBuf::from("out"))?,
        lexicons,
        config,
    };
    match cli.command {
        Command::Split(a) => {
            let (train_size, test_size) = ctx.sizes(a.sizes)?;
            let dis = load_corpus(&a.dis, Source::Dis)?;
            let partner = load_corpus(&a.partner, Source::Syn)?;
            let split = make_hybrid_split(&dis, &partner, train_size, test_size, ctx.seed)?;
            let mut out = Outputs::default();
            out.add(ctx.out_dir.join("train.jsonl"), split.train.to_jsonl());
            out.add(ctx.out_dir.join("test.jsonl"), split.test.to_jsonl());
            out.commit()?;
            println!(
                "train: {} ({} {} + {} partner)",
                split.train.len(),
                split.recipe.dis_train(),
                Source::Dis,
                split.recipe.partner_train()
            );
            println!("test: {} {}", split.test.len(), Source::Dis);
        }
        Command::Featurize(a) => {
            let table = featurize_corpus(&load_corpus(&a.input, Source::Syn)?, &ctx.lexicons)?;
            let path = a.output.unwrap_or_else(|| ctx.out_dir.join("features.csv"));
            write_atomic(&path, table.to_csv().as_bytes())?;
            println!("{} rows -> {}", table.len(), path.display());
        }
        Command::Train(a) => {
            let cfg = ctx.train_config(a.boost)?;
            let table = ctx.load_table(&a.train)?;
            let training = train_table(&table, &cfg)?;
            let mut out = Outputs::default();
            add_training(&mut out, &ctx.out_dir, &training);
            out.commit()?;
            println!(
                "final training loss: {:.6}",
                training.round_loss.last().copied().unwrap_or(f64::NAN)
            );
        }
        Command::Evaluate(a) => {
            let model = load_model(&a.model)?;
            let table = ctx.load_table(&a.test)?;
            let report = evaluate_table(&model, &table)?;
            let mut out = Outputs::default();
            add_metrics(&mut out, &ctx.out_dir, &a.name, &report)?;
            out.commit()?;
            println!("{}", report_table(&[(a.name, report)])?.trim_end());
        }
        Command::Explain(a) => {
            let (method, cap) = ctx.explain_options(a.options)?;
            let model = load_model(&a.model)?;
            let instances = ctx.load_table(&a.instances)?;
            let background = ctx.load_table(&a.background)?;
            let result = explain(&model, &instances, &background, method, cap, ctx.seed)?;
            let mut out = Outputs::default();
            add_explanations(&mut out, &ctx.out_dir, &result)?;
            out.commit()?;
            println!("top features: {}", result.summary.top(3).join(", "));
        }
        Command::RunAll(a) => {
            let data_dir = ctx
                .config
                .pick(a.data_dir, "data_dir", PathBuf::from("data"))?;
            let sizes = ctx.sizes(a.sizes)?;
            let cfg = ctx.train_config(a.boost)?;
            let options = ctx.explain_options(a.options)?;
            run_all(&ctx, &data_dir, sizes, &cfg, options)?;
        }
    }
    Ok(())
}

impl Context {
    fn sizes(&self, s: SizeArgs) -> Result<(usize, usize)> {
        let train = self.config.pick(s.train_size, "train_size", 200)?;
        let test = self.config.pick(s.test_size, "test_size", 20)?;
        if train < 2 || test == 0 {
            return Err(CliError::Usage(
                "--train must be at least 2 and --test at least 1".into(),
            ));
        }
        Ok((train, test))
    }

    fn train_config(&self, b: BoostArgs) -> Result<TrainConfig> {
        let d = TrainConfig::default();
        let cfg = TrainConfig {
            num_rounds: self.config.pick(b.rounds, "rounds", d.num_rounds)?,
            max_depth: self.config.pick(b.max_depth, "max_depth", d.max_depth)?,
            learning_rate: self
                .config
                .pick(b.learning_rate, "learning_rate", d.learning_rate)?,
            lambda: self.config.pick(b.lambda, "lambda", d.lambda)?,
            gamma: self.config.pick(b.gamma, "gamma", d.gamma)?,
            min_child_weight: self.config.pick(
                b.min_child_weight,
                "min_child_weight",
                d.min_child_weight,
            )?,
            seed: self.seed,
        };
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }

    fn explain_options(&self, o: ExplainOptions) -> Result<(Method, usize)> {
        let method = self.config.pick(o.method, "method", Method::Tree)?;
        let cap = self.config.pick(o.background_cap, "background_cap", 200)?;
        if cap == 0 {
            return Err(CliError::Usage(
                "--background-cap must be at least 1".into(),
            ));
        }
        Ok((method, cap))
    }

    /// A `.csv` path is read as a feature table; anything else as a labeled
    /// JSONL corpus, featurized with the active lexicons.
    fn load_table(&self, path: &Path) -> Result<FeatureTable> {
        if path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
        {
            return Ok(FeatureTable::read_csv(path)?);
        }
        Ok(featurize_corpus(
            &load_corpus(path, Source::Syn)?,
            &self.lexicons,
        )?)
    }
}

fn check_names(model: &TreeEnsemble, table: &FeatureTable, what: &str) -> Result<()> {
    if model.feature_names != table.names {
        return Err(veritree::Error::Schema(format!(
            "{what} columns [{}] do not match the model features [{}]",
            table.names.join(", "),
            model.feature_names.join(", ")
        ))
        .into());
    }
    Ok(())
}

fn evaluate_table(model: &TreeEnsemble, table: &FeatureTable) -> Result<MetricsReport> {
    check_names(model, table, "test")?;
    Ok(veritree::evaluate(model, &table.x, &table.labels)?)
}

struct ExplainResult {
    feature_names: Vec<String>,
    explanations: Vec<Explanation>,
    summary: GlobalSummary,
}

fn explain(
    model: &TreeEnsemble,
    instances: &FeatureTable,
    background: &FeatureTable,
    method: Method,
    cap: usize,
    seed: u64,
) -> Result<ExplainResult> {
    check_names(model, instances, "instance")?;
    check_names(model, background, "background")?;
    let bg = subsample_background(&background.x, cap, seed)?;
    let explanations = method.explain_all(model, &instances.x, &bg)?;
    let summary = GlobalSummary::from_explanations(&explanations)?;
    Ok(ExplainResult {
        feature_names: model.feature_names.clone(),
        explanations,
        summary,
    })
}

fn loss_csv(round_loss: &[f64]) -> String {
    let mut s = String::from("round,loss\n");
    for (r, l) in round_loss.iter().enumerate() {
        let _ = writeln!(s, "{r},{l}");
    }
    s
}

fn add_training(out: &mut Outputs, dir: &Path, t: &Training) {
    out.add(dir.join("model.json"), to_json(&t.model));
    out.add(dir.join("train_loss.csv"), loss_csv(&t.round_loss));
}

fn add_metrics(out: &mut Outputs, dir: &Path, name: &str, r: &MetricsReport) -> Result<()> {
    out.add(dir.join("metrics.json"), r.to_json());
    out.add(
        dir.join("table.txt"),
        report_table(&[(name.to_string(), r.clone())])?,
    );
    out.add(dir.join("roc.csv"), r.roc_csv());
    Ok(())
}

/// `summary.json`, `waterfall/NNNN.json` per instance and
/// `interactions/<primary>__<coloring>.csv` for the two top-ranked features
/// against every other feature.
fn add_explanations(out: &mut Outputs, dir: &Path, r: &ExplainResult) -> Result<()> {
    out.add(dir.join("summary.json"), r.summary.to_json());
    for (i, e) in r.explanations.iter().enumerate() {
        out.add(
            dir.join("waterfall").join(format!("{i:04}.json")),
            waterfall(e).to_json(),
        );
    }
    for primary in r.summary.top(2) {
        for coloring in r.feature_names.iter().filter(|c| *c != primary) {
            let report = interaction_report(&r.explanations, &r.feature_names, primary, coloring)?;
            out.add(
                dir.join("interactions")
                    .join(format!("{primary}__{coloring}.csv")),
                report.to_csv(),
            );
        }
    }
    Ok(())
}

fn run_all(
    ctx: &Context,
    data_dir: &Path,
    (train_size, test_size): (usize, usize),
    cfg: &TrainConfig,
    (method, cap): (Method, usize),
) -> Result<()> {
    let dis = load_corpus(&data_dir.join(DIS_CORPUS), Source::Dis)?;
    let partners = MODELS
        .iter()
        .map(|(_, file)| load_corpus(&data_dir.join(file), Source::Syn))
        .collect::<veritree::Result<Vec<Corpus>>>()?;

    let mut out = Outputs::default();
    let mut rows = Vec::new();
    for ((name, _), partner) in MODELS.iter().zip(&partners) {
        let dir = ctx.out_dir.join(name);
        let split = make_hybrid_split(&dis, partner, train_size, test_size, ctx.seed)?;
        let train = featurize_corpus(&split.train, &ctx.lexicons)?;
        let test = featurize_corpus(&split.test, &ctx.lexicons)?;
        let training = train_table(&train, cfg)?;
        let report = evaluate_table(&training.model, &test)?;
        let result = explain(&training.model, &test, &train, method, cap, ctx.seed)?;

        out.add(dir.join("train.jsonl"), split.train.to_jsonl());
        out.add(dir.join("test.jsonl"), split.test.to_jsonl());
        out.add(dir.join("train_features.csv"), train.to_csv());
        out.add(dir.join("test_features.csv"), test.to_csv());
        add_training(&mut out, &dir, &training);
        add_metrics(&mut out, &dir, name, &report)?;
        add_explanations(&mut out, &dir, &result)?;
        println!(
            "{}  top: {}",
            table_row(name, &report),
            result.summary.top(3).join(", ")
        );
        rows.push((name.to_string(), report));
    }
    let table = report_table(&rows)?;
    out.add(ctx.out_dir.join("table.txt"), table.clone());
    out.commit()?;
    print!("{table}");
    Ok(())
}
