//! Command-line interface: argument parsing, worker-pool setup, and the
//! dispatch from subcommands to library calls.
//!
//! Reports go to standard output as structured records (JSON lines by
//! default, `--format csv|md` for the alternatives); `--verbose` adds a
//! human-readable table on standard error. Identical configuration and seed
//! produce byte-identical record output.
//!
//! Exit codes: 0 success (possibly with warnings on standard error),
//! 2 usage or input error, 3 internal error.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use crate::changes::{ChangeModel, FeatureSpace};
use crate::corpus::{
    is_bug_fixing, mine_corpus, read_history, BagSpec, Corpus, Heuristic, Transaction,
    TransactionBag, VcsConfig,
};
use crate::crossval::{compare_heuristics, run_crossval, CrossValSpec};
use crate::error::{Error, Result};
use crate::repair::{
    extract_shape, monte_carlo_median, repairability, MedianAttempts, RepairModel,
};
use crate::report::{
    csv_records, json_records, markdown_frequencies, markdown_repairability, markdown_sweep,
    markdown_table, series_points, OutputFormat,
};
use crate::stats::{agreement, frequencies, spearman_critical_value, spearman_rho, RatingMatrix};
use crate::syntax::Taxonomy;

/// Worker-count override; takes precedence over `--workers`.
pub const WORKERS_ENV: &str = "REPAIR_MINER_WORKERS";

/// Seed used when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 17;

#[derive(Debug, Parser)]
#[command(
    name = "repair-miner",
    version,
    about = "Mines fine-grained source changes and measures repair search spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format: json (one record per line), csv, or md.
    #[arg(long, global = true, default_value = "json", value_parser = parse_format)]
    format: OutputFormat,
    /// Report destination (for mine: the mined corpus destination).
    /// Defaults to standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized work such as simulation cross-checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for mining and cross-validation (0 = auto).
    /// The REPAIR_MINER_WORKERS environment variable overrides this.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Taxonomy configuration file; defaults to the built-in taxonomy.
    #[arg(long, global = true)]
    taxonomy: Option<PathBuf>,
    /// Also print a human-readable table to standard error.
    #[arg(long, global = true)]
    verbose: bool,
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_bag(s: &str) -> std::result::Result<BagSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_heuristic(s: &str) -> std::result::Result<Heuristic, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_model(s: &str) -> std::result::Result<ChangeModel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract transactions from a repository (or load a raw corpus file)
    /// and classify every source change.
    Mine(MineArgs),
    /// Select a bag of transactions from a mined corpus.
    Slice(SliceArgs),
    /// Frequency, correlation, and agreement statistics.
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Repair-effort analysis over mined fixes.
    #[command(subcommand)]
    Repair(RepairCommand),
    /// Leave-one-project-out repairability cross-validation.
    Crossval(CrossvalArgs),
    /// Evaluate a concrete mutation scenario file.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
struct MineArgs {
    /// Repository checkout to read history from.
    #[arg(long, conflicts_with = "corpus", required_unless_present = "corpus")]
    repo: Option<PathBuf>,
    /// Project name recorded on each transaction; defaults to the
    /// repository directory name.
    #[arg(long, requires = "repo")]
    project: Option<String>,
    /// Raw corpus file to mine instead of a repository.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// History tool configuration file (command templates).
    #[arg(long)]
    vcs_config: Option<PathBuf>,
    /// Change model for the summary table.
    #[arg(long, default_value = "ct", value_parser = parse_model)]
    model: ChangeModel,
}

#[derive(Debug, Args)]
struct SliceArgs {
    /// Mined corpus file.
    #[arg(long)]
    corpus: PathBuf,
    /// Bag to select: all, bfp, or nsc:N.
    #[arg(long, value_parser = parse_bag)]
    bag: BagSpec,
}

#[derive(Debug, Subcommand)]
enum StatsCommand {
    /// Per-action frequency table for one bag.
    Freq(FreqArgs),
    /// Pairwise rank correlation of per-project frequency profiles.
    Spearman(SpearmanArgs),
    /// Chance-corrected agreement for a ratings matrix CSV.
    Agreement(AgreementArgs),
}

#[derive(Debug, Args)]
struct FreqArgs {
    /// Mined corpus file.
    #[arg(long)]
    corpus: PathBuf,
    /// Bag to count: all, bfp, or nsc:N.
    #[arg(long, default_value = "all", value_parser = parse_bag)]
    bag: BagSpec,
    /// Change model: ct or ctet.
    #[arg(long, default_value = "ct", value_parser = parse_model)]
    model: ChangeModel,
}

#[derive(Debug, Args)]
struct SpearmanArgs {
    /// Mined corpus file.
    #[arg(long)]
    corpus: PathBuf,
    /// Bag each project profile is counted over.
    #[arg(long, default_value = "all", value_parser = parse_bag)]
    bag: BagSpec,
    /// Change model: ct or ctet.
    #[arg(long, default_value = "ct", value_parser = parse_model)]
    model: ChangeModel,
}

#[derive(Debug, Args)]
struct AgreementArgs {
    /// Ratings matrix CSV: one row per item, one column per category,
    /// cells count raters.
    #[arg(long)]
    ratings: PathBuf,
}

#[derive(Debug, Subcommand)]
enum RepairCommand {
    /// Median attempts to reproduce each mined fix under a trained model.
    Median(MedianArgs),
}

#[derive(Debug, Args)]
struct MedianArgs {
    /// Mined corpus file.
    #[arg(long)]
    corpus: PathBuf,
    /// Training bag: all, bfp, nsc:N, or eqp (uniform model).
    #[arg(long, default_value = "all", value_parser = parse_heuristic)]
    bag: Heuristic,
    /// Change model: ct or ctet.
    #[arg(long, default_value = "ct", value_parser = parse_model)]
    model: ChangeModel,
    /// Only evaluate fixes with exactly this many changes.
    #[arg(long)]
    size: Option<u32>,
    /// Cross-check each median by simulation with this many trials.
    #[arg(long)]
    trials: Option<u64>,
}

#[derive(Debug, Args)]
struct CrossvalArgs {
    /// Mined multi-project corpus file.
    #[arg(long)]
    corpus: PathBuf,
    /// Training heuristic: all, bfp, nsc:N, or eqp.
    #[arg(long, default_value = "all", value_parser = parse_heuristic, conflicts_with = "compare")]
    heuristic: Heuristic,
    /// Change model: ct or ctet.
    #[arg(long, default_value = "ct", value_parser = parse_model)]
    model: ChangeModel,
    /// Shape sizes to evaluate, comma-separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3, 4, 5, 6, 7, 8])]
    sizes: Vec<u32>,
    /// Compare these heuristics instead: per size, the median over
    /// held-out projects for each.
    #[arg(long, value_delimiter = ',', value_parser = parse_heuristic)]
    compare: Vec<Heuristic>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Scenario file: search-space geometry, operator rows, and the fix.
    #[arg(long)]
    scenario: PathBuf,
}

/// Parses `std::env::args`, runs the command, and returns the exit code.
pub fn run_from_env() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => 0,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        Err(_) => {
            eprintln!("error: internal failure");
            3
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    configure_workers(cli.workers)?;
    let loaded;
    let taxonomy: &Taxonomy = match &cli.taxonomy {
        Some(path) => {
            loaded = Taxonomy::load(readable(path, "taxonomy")?)?;
            &loaded
        }
        None => Taxonomy::default_taxonomy(),
    };
    match &cli.command {
        Command::Mine(args) => cmd_mine(&cli, args, taxonomy),
        Command::Slice(args) => cmd_slice(&cli, args),
        Command::Stats(StatsCommand::Freq(args)) => cmd_freq(&cli, args, taxonomy),
        Command::Stats(StatsCommand::Spearman(args)) => cmd_spearman(&cli, args, taxonomy),
        Command::Stats(StatsCommand::Agreement(args)) => cmd_agreement(&cli, args),
        Command::Repair(RepairCommand::Median(args)) => cmd_median(&cli, args, taxonomy),
        Command::Crossval(args) => cmd_crossval(&cli, args, taxonomy),
        Command::Simulate(args) => cmd_simulate(&cli, args),
    }
}

/// Applies the worker override: environment variable first, then the flag.
/// Zero means rayon's default (available parallelism).
fn configure_workers(flag: Option<usize>) -> Result<()> {
    let workers = match std::env::var(WORKERS_ENV) {
        Ok(value) => Some(value.parse().map_err(|_| {
            Error::Config(format!("invalid {WORKERS_ENV} value '{value}'"))
        })?),
        Err(_) => flag,
    };
    if let Some(n) = workers {
        // Ignores the error from a pool that is already built: the
        // override then simply has no effect on this process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Maps a missing or unreadable user-named path to an input error so the
/// process exits with 2 instead of the internal-error code.
fn readable<'p>(path: &'p Path, what: &str) -> Result<&'p Path> {
    if path.exists() {
        Ok(path)
    } else {
        Err(Error::Config(format!(
            "{what} path '{}' does not exist",
            path.display()
        )))
    }
}

fn load_corpus(path: &Path) -> Result<Corpus> {
    Corpus::load(readable(path, "corpus")?).map_err(|e| match e {
        Error::Io(e) => Error::Config(format!("cannot read corpus: {e}")),
        other => other,
    })
}

fn write_report(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Error::Config(format!("cannot write report to '{}': {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verbose_table(cli: &Cli, table: &str) {
    if cli.verbose {
        eprint!("{table}");
    }
}

#[derive(Debug, Serialize)]
struct MineSummary {
    transactions: usize,
    files: usize,
    skipped_files: usize,
    changes: usize,
    dropped_operations: usize,
}

fn cmd_mine(cli: &Cli, args: &MineArgs, taxonomy: &Taxonomy) -> Result<()> {
    let mut corpus = match (&args.repo, &args.corpus) {
        (Some(repo), None) => {
            let repo = readable(repo, "repository")?;
            let config = match &args.vcs_config {
                Some(path) => VcsConfig::load(readable(path, "history configuration")?)?,
                None => VcsConfig::default(),
            };
            let project = match &args.project {
                Some(name) => name.clone(),
                None => repo
                    .canonicalize()?
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "project".to_string()),
            };
            let (corpus, history) = read_history(repo, &project, &config)?;
            if history.unreadable_files > 0 {
                eprintln!(
                    "warning: {} file(s) could not be read and were skipped",
                    history.unreadable_files
                );
            }
            corpus
        }
        (None, Some(path)) => load_corpus(path)?,
        _ => unreachable!("clap enforces exactly one input"),
    };
    let report = mine_corpus(&mut corpus, taxonomy);
    if report.skipped_files > 0 || report.dropped_operations > 0 {
        eprintln!(
            "warning: {} file(s) skipped, {} operation(s) dropped",
            report.skipped_files, report.dropped_operations
        );
    }
    let summary = MineSummary {
        transactions: report.transactions,
        files: report.files,
        skipped_files: report.skipped_files,
        changes: report.changes,
        dropped_operations: report.dropped_operations,
    };
    let space = FeatureSpace::for_model(args.model, taxonomy);
    let bag = BagSpec::All.slice(&corpus)?;
    let table = frequencies(&bag, &space)?;
    let top = table.top(20);
    let rendered = markdown_frequencies(&table, 20);

    // The corpus goes to --out when given, otherwise it occupies standard
    // output and the summary moves to standard error.
    match &cli.out {
        Some(path) => {
            corpus.save(path).map_err(|e| {
                Error::Config(format!("cannot write corpus to '{}': {e}", path.display()))
            })?;
            let text = match cli.format {
                OutputFormat::Records => {
                    format!("{}{}", json_records(&[&summary])?, json_records(&top)?)
                }
                OutputFormat::Csv => {
                    eprintln!(
                        "mined {} transactions, {} changes",
                        summary.transactions, summary.changes
                    );
                    csv_records(&top)?
                }
                OutputFormat::Markdown => format!(
                    "mined {} transactions, {} changes\n\n{rendered}",
                    summary.transactions, summary.changes
                ),
            };
            print!("{text}");
        }
        None => {
            let stdout = std::io::stdout().lock();
            corpus.to_writer(stdout)?;
            eprintln!(
                "mined {} transactions, {} changes",
                summary.transactions, summary.changes
            );
        }
    }
    verbose_table(cli, &rendered);
    Ok(())
}

#[derive(Debug, Serialize)]
struct SliceRecord {
    id: String,
    project: String,
    changes: Option<usize>,
    bug_fixing: bool,
}

impl SliceRecord {
    fn of(t: &Transaction) -> SliceRecord {
        SliceRecord {
            id: t.id.clone(),
            project: t.project.clone(),
            changes: t.change_count(),
            bug_fixing: is_bug_fixing(&t.message),
        }
    }
}

fn cmd_slice(cli: &Cli, args: &SliceArgs) -> Result<()> {
    let corpus = load_corpus(&args.corpus)?;
    let bag = args.bag.slice(&corpus)?;
    let records: Vec<SliceRecord> = bag.members.iter().map(|t| SliceRecord::of(t)).collect();
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                r.id.clone(),
                r.project.clone(),
                r.changes.map_or_else(|| "-".into(), |c| c.to_string()),
                r.bug_fixing.to_string(),
            ]
        })
        .collect();
    let rendered = markdown_table(&["id", "project", "changes", "bug fixing"], &rows);
    let text = match cli.format {
        OutputFormat::Records => json_records(&records)?,
        OutputFormat::Csv => csv_records(&records)?,
        OutputFormat::Markdown => rendered.clone(),
    };
    write_report(&cli.out, &text)?;
    verbose_table(cli, &rendered);
    if cli.verbose {
        eprintln!("bag '{}': {} of {} transactions", bag.name, bag.members.len(), corpus.len());
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct FreqSummary {
    model: ChangeModel,
    bag: String,
    total: u64,
    zero_total: bool,
}

fn cmd_freq(cli: &Cli, args: &FreqArgs, taxonomy: &Taxonomy) -> Result<()> {
    let corpus = load_corpus(&args.corpus)?;
    let space = FeatureSpace::for_model(args.model, taxonomy);
    let bag = args.bag.slice(&corpus)?;
    let table = frequencies(&bag, &space)?;
    let summary = FreqSummary {
        model: table.model,
        bag: table.bag.clone(),
        total: table.total,
        zero_total: table.total == 0,
    };
    if summary.zero_total {
        eprintln!("warning: bag '{}' holds no changes; shares are undefined", summary.bag);
    }
    let rendered = markdown_frequencies(&table, space.len());
    let text = match cli.format {
        OutputFormat::Records => {
            format!("{}{}", json_records(&[&summary])?, json_records(&table.rows())?)
        }
        OutputFormat::Csv => csv_records(&table.rows())?,
        OutputFormat::Markdown => format!(
            "bag '{}' under {}: {} changes\n\n{rendered}",
            summary.bag, summary.model, summary.total
        ),
    };
    write_report(&cli.out, &text)?;
    verbose_table(cli, &rendered);
    Ok(())
}

#[derive(Debug, Serialize)]
struct PairCorrelation {
    left: String,
    right: String,
    features: usize,
    rho: Option<f64>,
    critical: f64,
    significant: bool,
}

fn cmd_spearman(cli: &Cli, args: &SpearmanArgs, taxonomy: &Taxonomy) -> Result<()> {
    let corpus = load_corpus(&args.corpus)?;
    let space = FeatureSpace::for_model(args.model, taxonomy);
    let bag = args.bag.slice(&corpus)?;
    let projects = corpus.projects();
    if projects.len() < 2 {
        return Err(Error::Config(format!(
            "correlation needs at least two projects, corpus has {}",
            projects.len()
        )));
    }
    let critical = spearman_critical_value(space.len(), 0.01)?;
    let mut profiles = Vec::with_capacity(projects.len());
    for project in &projects {
        let members: Vec<&Transaction> = bag
            .members
            .iter()
            .copied()
            .filter(|t| &t.project == project)
            .collect();
        let project_bag = TransactionBag { name: format!("{}/{project}", bag.name), members };
        let table = frequencies(&project_bag, &space)?;
        let profile: Vec<f64> = table.alpha.iter().map(|&a| a as f64).collect();
        profiles.push(profile);
    }
    let mut records = Vec::new();
    let mut undefined = 0usize;
    for i in 0..projects.len() {
        for j in i + 1..projects.len() {
            let rho = match spearman_rho(&profiles[i], &profiles[j]) {
                Ok(rho) => Some(rho),
                Err(Error::UndefinedCorrelation(_)) => {
                    undefined += 1;
                    None
                }
                Err(e) => return Err(e),
            };
            records.push(PairCorrelation {
                left: projects[i].clone(),
                right: projects[j].clone(),
                features: space.len(),
                rho,
                critical,
                significant: rho.is_some_and(|r| r.abs() > critical),
            });
        }
    }
    if undefined > 0 {
        eprintln!("warning: {undefined} pair(s) had a constant profile; correlation undefined");
    }
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                r.left.clone(),
                r.right.clone(),
                r.rho.map_or_else(|| "-".into(), |v| format!("{v:.4}")),
                format!("{:.3}", r.critical),
                r.significant.to_string(),
            ]
        })
        .collect();
    let rendered = markdown_table(&["left", "right", "rho", "critical", "significant"], &rows);
    let text = match cli.format {
        OutputFormat::Records => json_records(&records)?,
        OutputFormat::Csv => csv_records(&records)?,
        OutputFormat::Markdown => rendered.clone(),
    };
    write_report(&cli.out, &text)?;
    verbose_table(cli, &rendered);
    Ok(())
}

#[derive(Debug, Serialize)]
struct AgreementRecord {
    items: usize,
    categories: usize,
    raters: u64,
    observed: f64,
    expected: f64,
    kappa: Option<f64>,
}

fn cmd_agreement(cli: &Cli, args: &AgreementArgs) -> Result<()> {
    let matrix = RatingMatrix::from_csv_path(readable(&args.ratings, "ratings")?)?;
    let result = agreement(&matrix);
    let record = AgreementRecord {
        items: matrix.items(),
        categories: matrix.categories(),
        raters: matrix.raters(),
        observed: result.observed,
        expected: result.expected,
        kappa: result.kappa,
    };
    let rows = vec![vec![
        record.items.to_string(),
        record.categories.to_string(),
        record.raters.to_string(),
        format!("{:.6}", record.observed),
        format!("{:.6}", record.expected),
        record.kappa.map_or_else(|| "-".into(), |k| format!("{k:.6}")),
    ]];
    let rendered = markdown_table(
        &["items", "categories", "raters", "observed", "expected", "kappa"],
        &rows,
    );
    let text = match cli.format {
        OutputFormat::Records => json_records(&[&record])?,
        OutputFormat::Csv => csv_records(&[&record])?,
        OutputFormat::Markdown => rendered.clone(),
    };
    write_report(&cli.out, &text)?;
    verbose_table(cli, &rendered);
    Ok(())
}

#[derive(Debug, Serialize)]
struct MedianRecord {
    id: String,
    project: String,
    size: u32,
    probability: f64,
    median: MedianAttempts,
    simulated: Option<MedianAttempts>,
}

/// Trains the model the bag selector names; `eqp` is the uniform model.
fn training_model(corpus: &Corpus, space: &FeatureSpace, bag: Heuristic) -> Result<RepairModel> {
    let spec = match bag {
        Heuristic::Eqp => return Ok(RepairModel::uniform(space)),
        Heuristic::All => BagSpec::All,
        Heuristic::Bfp => BagSpec::Bfp,
        Heuristic::Nsc(n) => BagSpec::Nsc(n),
    };
    RepairModel::train(&spec.slice(corpus)?, space)
}

fn cmd_median(cli: &Cli, args: &MedianArgs, taxonomy: &Taxonomy) -> Result<()> {
    let corpus = load_corpus(&args.corpus)?;
    let space = FeatureSpace::for_model(args.model, taxonomy);
    let model = training_model(&corpus, &space, args.bag)?;
    let mut records = Vec::new();
    let mut skipped = 0usize;
    for t in &corpus.transactions {
        if args.size.is_some() && t.change_count().map(|c| c as u32) != args.size {
            continue;
        }
        let shape = match extract_shape(t, &space) {
            Ok(shape) => shape,
            Err(Error::EmptyShape(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let result = repairability(&shape, &model)?;
        let simulated = match args.trials {
            Some(trials) => Some(monte_carlo_median(&shape, &model, trials, cli.seed)?.median),
            None => None,
        };
        records.push(MedianRecord {
            id: t.id.clone(),
            project: t.project.clone(),
            size: shape.size(),
            probability: result.probability,
            median: result.median,
            simulated,
        });
    }
    if skipped > 0 {
        eprintln!("warning: {skipped} transaction(s) with no changes were skipped");
    }
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                r.id.clone(),
                r.project.clone(),
                r.size.to_string(),
                format!("{:.3e}", r.probability),
                r.median.to_string(),
                r.simulated.map_or_else(String::new, |m| m.to_string()),
            ]
        })
        .collect();
    let rendered = markdown_table(
        &["id", "project", "size", "probability", "median", "simulated"],
        &rows,
    );
    let text = match cli.format {
        OutputFormat::Records => json_records(&records)?,
        OutputFormat::Csv => csv_records(&records)?,
        OutputFormat::Markdown => rendered.clone(),
    };
    write_report(&cli.out, &text)?;
    verbose_table(cli, &rendered);
    Ok(())
}

fn cmd_crossval(cli: &Cli, args: &CrossvalArgs, taxonomy: &Taxonomy) -> Result<()> {
    let corpus = load_corpus(&args.corpus)?;
    let space = FeatureSpace::for_model(args.model, taxonomy);
    if !args.compare.is_empty() {
        let series = compare_heuristics(&corpus, &space, &args.compare, &args.sizes)?;
        let points = series_points(&series);
        let rows: Vec<Vec<String>> = points
            .iter()
            .map(|p| {
                vec![
                    p.heuristic.to_string(),
                    p.size.to_string(),
                    p.median.map_or_else(|| "-".into(), |m| m.to_string()),
                ]
            })
            .collect();
        let rendered = markdown_table(&["heuristic", "size", "median"], &rows);
        let text = match cli.format {
            OutputFormat::Records => json_records(&points)?,
            OutputFormat::Csv => csv_records(&points)?,
            OutputFormat::Markdown => rendered.clone(),
        };
        write_report(&cli.out, &text)?;
        verbose_table(cli, &rendered);
        return Ok(());
    }
    let spec = CrossValSpec::new(&corpus, &space, args.heuristic).with_sizes(args.sizes.clone());
    let table = run_crossval(&spec)?;
    let rendered = markdown_repairability(&table);
    let text = match cli.format {
        OutputFormat::Records => json_records(&table.records())?,
        OutputFormat::Csv => csv_records(&table.records())?,
        OutputFormat::Markdown => rendered.clone(),
    };
    write_report(&cli.out, &text)?;
    verbose_table(cli, &rendered);
    Ok(())
}

#[derive(Debug, Serialize)]
struct SimRecord {
    p_insert: f64,
    p_delete: f64,
    p_swap: f64,
    probability: f64,
    attempts: MedianAttempts,
}

fn cmd_simulate(cli: &Cli, args: &SimulateArgs) -> Result<()> {
    let scenario = crate::concrete::Scenario::load(readable(&args.scenario, "scenario")?)?;
    let sweep = scenario.run()?;
    let records: Vec<SimRecord> = sweep
        .iter()
        .map(|row| SimRecord {
            p_insert: row.operators.insert,
            p_delete: row.operators.delete,
            p_swap: row.operators.swap,
            probability: row.probability,
            attempts: row.time,
        })
        .collect();
    let rendered = markdown_sweep(&sweep);
    let text = match cli.format {
        OutputFormat::Records => json_records(&records)?,
        OutputFormat::Csv => csv_records(&records)?,
        OutputFormat::Markdown => rendered.clone(),
    };
    write_report(&cli.out, &text)?;
    verbose_table(cli, &rendered);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_line_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn unknown_format_is_rejected_at_parse_time() {
        let err = Cli::try_parse_from(["repair-miner", "simulate", "--scenario", "x", "--format", "yaml"])
            .unwrap_err();
        assert!(err.to_string().contains("yaml"));
    }

    #[test]
    fn mine_requires_exactly_one_input() {
        assert!(Cli::try_parse_from(["repair-miner", "mine"]).is_err());
        assert!(Cli::try_parse_from([
            "repair-miner", "mine", "--repo", "a", "--corpus", "b"
        ])
        .is_err());
        assert!(Cli::try_parse_from(["repair-miner", "mine", "--repo", "a"]).is_ok());
    }

    #[test]
    fn crossval_compare_conflicts_with_heuristic() {
        assert!(Cli::try_parse_from([
            "repair-miner", "crossval", "--corpus", "c", "--heuristic", "bfp", "--compare", "all,eqp"
        ])
        .is_err());
        let cli = Cli::try_parse_from([
            "repair-miner", "crossval", "--corpus", "c", "--compare", "all,eqp"
        ])
        .unwrap();
        match cli.command {
            Command::Crossval(args) => {
                assert_eq!(args.compare, vec![Heuristic::All, Heuristic::Eqp]);
                assert_eq!(args.sizes, vec![1, 2, 3, 4, 5, 6, 7, 8]);
            }
            _ => panic!("wrong command"),
        }
    }

    #[test]
    fn global_flags_parse_after_subcommand() {
        let cli = Cli::try_parse_from([
            "repair-miner", "stats", "freq", "--corpus", "c", "--format", "md", "--seed", "9"
        ])
        .unwrap();
        assert_eq!(cli.format, OutputFormat::Markdown);
        assert_eq!(cli.seed, 9);
    }

    #[test]
    fn bag_parser_rejects_eqp_for_slice() {
        assert!(Cli::try_parse_from(["repair-miner", "slice", "--corpus", "c", "--bag", "eqp"])
            .is_err());
        assert!(Cli::try_parse_from(["repair-miner", "slice", "--corpus", "c", "--bag", "nsc:0"])
            .is_err());
        assert!(Cli::try_parse_from(["repair-miner", "slice", "--corpus", "c", "--bag", "nsc:3"])
            .is_ok());
    }
}
