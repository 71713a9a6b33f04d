//! The `mevolve` command line: `stats`, `augment`, `train` and `evolve`.
//!
//! Data goes to stdout or files, diagnostics (including the resolved
//! configuration and seed of every run) to stderr. Exit status is 0 on
//! success, 2 for usage and input errors (bad flags, missing dataset
//! directory, malformed files) and 1 for anything that fails later.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::augment::{augment_dataset, AugmentConfig, Mapping};
use crate::data::{dataset_stats, load_tu_dataset, save_pool, TuDataset};
use crate::error::{Error, Result};
use crate::evolve::{run_experiment, stratified_split, write_report, EvolveConfig, PoolSource, SplitFractions};
use crate::models::{accuracy, save_model, ClassifierKind, GraphClassifier, ModelConfig};
use crate::seed::substream;

#[derive(Debug, Parser)]
#[command(name = "mevolve", version, about = "Graph augmentation and model evolution for graph classification")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Directory holding one sub-directory per dataset.
    #[arg(long, global = true, env = "MEVOLVE_DATA_DIR", default_value = "data")]
    pub data_dir: PathBuf,
    /// Dataset name; files are read from `<data-dir>/<name>/<name>_*.txt`.
    #[arg(long, global = true, default_value = "MUTAG")]
    pub name: String,
    /// Master seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Print machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dataset statistics.
    Stats,
    /// Augment every graph once and write the pool.
    Augment {
        #[command(flatten)]
        aug: AugmentArgs,
        /// Pool output file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a classifier on a stratified split and report its accuracy.
    Train {
        #[command(flatten)]
        model: ModelArgs,
        /// Write the trained model here.
        #[arg(long)]
        model_out: Option<PathBuf>,
    },
    /// Repeated evolution experiment.
    Evolve {
        #[command(flatten)]
        aug: AugmentArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 5)]
        iterations: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Augment the original training split every iteration instead of
        /// the grown one.
        #[arg(long)]
        pool_from_original: bool,
        /// JSON Lines report output.
        #[arg(long, default_value = "mevolve-report.jsonl")]
        report: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct AugmentArgs {
    #[arg(long, default_value = "motif-similarity")]
    pub mapping: Mapping,
    #[arg(long, default_value_t = 0.15)]
    pub beta: f64,
    #[arg(long, default_value_t = 2)]
    pub motif_length: usize,
    /// Allow deletions that split a component.
    #[arg(long)]
    pub no_connectivity: bool,
}

impl AugmentArgs {
    fn config(&self, seed: u64) -> AugmentConfig {
        AugmentConfig {
            mapping: self.mapping,
            beta: self.beta,
            motif_length: self.motif_length,
            preserve_connectivity: !self.no_connectivity,
            rng_seed: seed,
            ..AugmentConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, default_value = "knn")]
    pub classifier: ClassifierKind,
    /// Embedding dimension.
    #[arg(long, default_value_t = 128)]
    pub dims: usize,
    /// Neighbours for KNN.
    #[arg(long, default_value_t = 5)]
    pub k: usize,
}

impl ModelArgs {
    fn config(&self) -> ModelConfig {
        ModelConfig {
            embedding_dim: self.dims,
            classifier: self.classifier,
            knn_k: self.k,
            ..ModelConfig::default()
        }
    }
}

fn load(g: &GlobalArgs) -> Result<TuDataset> {
    let tu = load_tu_dataset(g.data_dir.join(&g.name), &g.name)?;
    for f in &tu.ignored_files {
        eprintln!("note: ignoring {f}");
    }
    if tu.self_loops_dropped > 0 {
        eprintln!("note: dropped {} self-loop lines", tu.self_loops_dropped);
    }
    Ok(tu)
}

fn echo_config(command: &str, g: &GlobalArgs, config: serde_json::Value) {
    let resolved = json!({
        "command": command,
        "dataset": g.data_dir.join(&g.name),
        "seed": g.seed,
        "workers": g.workers,
        "config": config,
    });
    eprintln!("resolved config: {resolved}");
    eprintln!("seed: {}", g.seed);
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn stdout_err(e: io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn cmd_stats(g: &GlobalArgs) -> Result<()> {
    echo_config("stats", g, json!({}));
    let tu = load(g)?;
    let s = dataset_stats(&tu.dataset)?;
    let mut out = io::stdout().lock();
    if g.json {
        let v = json!({ "dataset": g.name, "stats": s, "label_values": tu.label_values });
        writeln!(out, "{v}").map_err(stdout_err)?;
    } else {
        writeln!(
            out,
            "{:<10} {:>5} {:>4} {:>20} {:>20} {:>8}",
            "Dataset", "|D|", "|Y|", "Avg.|V| (Min/Max)", "Avg.|E| (Min/Max)", "bias(%)"
        )
        .map_err(stdout_err)?;
        writeln!(
            out,
            "{:<10} {:>5} {:>4} {:>20} {:>20} {:>8.1}",
            g.name,
            s.graph_count,
            s.class_count,
            format!("{:.2} ({}/{})", s.avg_vertices, s.min_vertices, s.max_vertices),
            format!("{:.2} ({}/{})", s.avg_edges, s.min_edges, s.max_edges),
            s.bias * 100.0
        )
        .map_err(stdout_err)?;
    }
    Ok(())
}

fn cmd_augment(g: &GlobalArgs, aug: &AugmentArgs, out_path: &PathBuf) -> Result<()> {
    let cfg = aug.config(g.seed);
    cfg.validate()?;
    echo_config("augment", g, json!({ "augment": cfg, "out": out_path }));
    let tu = load(g)?;
    let pooled = augment_dataset(&tu.dataset, &cfg, g.seed, 0);
    if pooled.pool.is_empty() {
        return Err(Error::input(format!(
            "{} could not augment any of the {} graphs (first reason: {})",
            cfg.mapping,
            tu.dataset.len(),
            pooled.skipped.first().map_or("none", |s| s.reason.as_str())
        )));
    }
    save_pool(&pooled.pool, out_path)?;
    let mut out = io::stdout().lock();
    if g.json {
        let skipped: Vec<_> = pooled
            .skipped
            .iter()
            .map(|s| json!({ "index": s.index, "reason": s.reason }))
            .collect();
        let v = json!({
            "pool_size": pooled.pool.len(),
            "skipped": skipped,
            "edges_added": pooled.edits,
            "edges_deleted": pooled.edits,
            "connectivity_relaxed": pooled.connectivity_relaxed,
            "dropped_swaps": pooled.dropped_swaps,
        });
        writeln!(out, "{v}").map_err(stdout_err)?;
    } else {
        for s in &pooled.skipped {
            writeln!(out, "skipped graph {}: {}", s.index, s.reason).map_err(stdout_err)?;
        }
        writeln!(
            out,
            "pool: {} of {} graphs, {} skipped; {} edges added, {} deleted; {} connectivity relaxations; {} dropped swaps",
            pooled.pool.len(),
            tu.dataset.len(),
            pooled.skipped.len(),
            pooled.edits,
            pooled.edits,
            pooled.connectivity_relaxed,
            pooled.dropped_swaps
        )
        .map_err(stdout_err)?;
        writeln!(out, "wrote {}", out_path.display()).map_err(stdout_err)?;
    }
    Ok(())
}

fn cmd_train(g: &GlobalArgs, model: &ModelArgs, model_out: Option<&PathBuf>) -> Result<()> {
    let cfg = model.config();
    let fractions = SplitFractions::default();
    echo_config("train", g, json!({ "model": cfg, "split": fractions }));
    let tu = load(g)?;
    let d = &tu.dataset;
    let split = stratified_split(d, fractions, &mut substream(g.seed, &[0]))?;
    let mut c = cfg.build();
    c.fit(&d.subset(&split.train))?;
    let val = accuracy(&c, &d.subset(&split.val))?;
    let test = accuracy(&c, &d.subset(&split.test))?;
    if let Some(p) = model_out {
        save_model(&c, p)?;
    }
    let (a, b, t) = split.sizes();
    let mut out = io::stdout().lock();
    if g.json {
        let v = json!({ "train_size": a, "val_size": b, "test_size": t, "val_accuracy": val, "test_accuracy": test });
        writeln!(out, "{v}").map_err(stdout_err)?;
    } else {
        writeln!(out, "split {a}/{b}/{t}: validation accuracy {val:.4}, test accuracy {test:.4}").map_err(stdout_err)?;
    }
    Ok(())
}

fn cmd_evolve(g: &GlobalArgs, cfg: &EvolveConfig, report_path: &PathBuf) -> Result<()> {
    cfg.validate()?;
    echo_config("evolve", g, json!({ "evolve": cfg, "report": report_path }));
    let tu = load(g)?;
    let report = run_experiment(&tu.dataset, cfg)?;
    let mut w = create(report_path)?;
    write_report(&report, &mut w).map_err(|e| Error::io(report_path, e))?;
    let mut out = io::stdout().lock();
    if g.json {
        let v = json!({
            "trials": report.trials.len(),
            "failed_trials": report.failures.len(),
            "mean_original_accuracy": report.mean_original_accuracy,
            "mean_evolved_accuracy": report.mean_evolved_accuracy,
            "mean_rimp": report.mean_rimp,
            "report": report_path,
        });
        writeln!(out, "{v}").map_err(stdout_err)?;
    } else {
        writeln!(
            out,
            "{} trials ({} failed), mapping {}",
            report.trials.len(),
            report.failures.len(),
            cfg.augment.mapping
        )
        .map_err(stdout_err)?;
        writeln!(
            out,
            "original accuracy {:.4} ± {:.4}",
            report.mean_original_accuracy, report.std_original_accuracy
        )
        .map_err(stdout_err)?;
        writeln!(
            out,
            "evolved accuracy  {:.4} ± {:.4}",
            report.mean_evolved_accuracy, report.std_evolved_accuracy
        )
        .map_err(stdout_err)?;
        writeln!(out, "mean RIMP {:+.2}%", report.mean_rimp * 100.0).map_err(stdout_err)?;
        writeln!(out, "wrote {}", report_path.display()).map_err(stdout_err)?;
    }
    Ok(())
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.global.workers {
        if n == 0 {
            return Err(Error::input("--workers must be positive"));
        }
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let g = &cli.global;
    match &cli.command {
        Command::Stats => cmd_stats(g),
        Command::Augment { aug, out } => cmd_augment(g, aug, out),
        Command::Train { model, model_out } => cmd_train(g, model, model_out.as_ref()),
        Command::Evolve {
            aug,
            model,
            iterations,
            trials,
            pool_from_original,
            report,
        } => {
            let cfg = EvolveConfig {
                augment: aug.config(g.seed),
                model: model.config(),
                iterations: *iterations,
                trials: *trials,
                rng_seed: g.seed,
                pool_source: if *pool_from_original {
                    PoolSource::Original
                } else {
                    PoolSource::Current
                },
                ..EvolveConfig::default()
            };
            cmd_evolve(g, &cfg, report)
        }
    }
}

/// Exit status for an error: 2 for bad input, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Io { .. } | Error::Parse { .. } | Error::Schema { .. } | Error::Split(_) => 2,
        _ => 1,
    }
}

/// Entry point of the binary; returns the process exit status.
pub fn main() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
