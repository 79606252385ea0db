// SPDX-License-Identifier: Apache-2.0

//! Command-line entry point.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sumcorrupt_core::agreement::{tally, KappaCategories};
use sumcorrupt_core::Language;

use crate::corpus::{
    combine_splits, compute_stats, read_corpus, read_drops, write_corpus, write_lines, CodeRecord, CorpusError, Split,
    SplitStats, TransformLabel,
};
use crate::eval::{corpus_bleu, read_indexed, EvalError};
use crate::human::{
    agreement_report, deblind, make_blind_tasks, read_jsonl, samples_from_predictions, to_jsonl, Annotation,
    FinalLabel, HumanError, KeyEntry, Sample,
};
use crate::transform::{transform_split, ConfigError, OutcomeCounts, TransformConfig, TransformKind, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(
    name = "sumcorrupt",
    version,
    about = "Corrupt code-summarization corpora and evaluate summarizers"
)]
pub struct Cli {
    /// Worker threads for per-record work (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a corruption to one split file.
    Corrupt(CorruptArgs),
    /// Concatenate a clean and a corrupted split.
    Combine(CombineArgs),
    /// Print split sizes and drop reasons as JSON.
    Stats(StatsArgs),
    /// Smoothed BLEU-4 of predictions against references.
    Eval(EvalArgs),
    /// Build a blinded task file and its key.
    Blind(BlindArgs),
    /// Agreement between two annotators.
    Agree(AgreeArgs),
    /// Count final labels per model.
    Tally(TallyArgs),
}

#[derive(Debug, Args)]
pub struct CorruptArgs {
    #[arg(long, value_parser = parse_language)]
    pub lang: Language,
    #[arg(long, value_enum)]
    pub transform: TransformKind,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Keep records the transform cannot apply to, unchanged.
    #[arg(long)]
    pub keep_ineligible: bool,
    /// Split name for the statistics (default: guessed from the file name, else train).
    #[arg(long, value_enum)]
    pub split: Option<Split>,
}

#[derive(Debug, Args)]
pub struct CombineArgs {
    /// Expected language (default: taken from the records' `language` field).
    #[arg(long, value_parser = parse_language)]
    pub lang: Option<Language>,
    #[arg(long)]
    pub clean: PathBuf,
    #[arg(long)]
    pub corrupted: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Default: taken from the records' `language` field.
    #[arg(long, value_parser = parse_language)]
    pub lang: Option<Language>,
    /// Split files; the split is guessed from each file name.
    #[arg(long, required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,
    /// Split of a single input whose name does not tell.
    #[arg(long, value_enum)]
    pub split: Option<Split>,
    /// Drop logs written by `corrupt`.
    #[arg(long, num_args = 1..)]
    pub drops: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "original")]
    pub label: TransformLabel,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// `index<TAB>summary` lines.
    #[arg(long)]
    pub predictions: PathBuf,
    /// `index<TAB>summary` lines, or a `.jsonl` corpus.
    #[arg(long)]
    pub references: PathBuf,
    /// Per-sample scores as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BlindArgs {
    /// JSONL samples `{task_id?, code, gold, model_1, model_2}`.
    #[arg(long, conflicts_with_all = ["corpus", "model1", "model2"], required_unless_present = "corpus")]
    pub samples: Option<PathBuf>,
    /// Corpus providing code and gold summaries.
    #[arg(long, requires_all = ["model1", "model2"])]
    pub corpus: Option<PathBuf>,
    #[arg(long)]
    pub model1: Option<PathBuf>,
    #[arg(long)]
    pub model2: Option<PathBuf>,
    /// Number of examples to draw at random.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub tasks: PathBuf,
    #[arg(long)]
    pub key: PathBuf,
}

#[derive(Debug, Args)]
pub struct AgreeArgs {
    #[arg(long)]
    pub key: PathBuf,
    #[arg(long)]
    pub first: PathBuf,
    #[arg(long)]
    pub second: PathBuf,
    /// Consensus labels, in annotation format, for tasks that needed discussion.
    #[arg(long)]
    pub discussion: Option<PathBuf>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub kappa_categories: u8,
    /// Write resolved labels here.
    #[arg(long = "final")]
    pub final_labels: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TallyArgs {
    /// Final labels `{task_id, label}` as written by `agree --final`.
    #[arg(long)]
    pub labels: PathBuf,
}

fn parse_language(s: &str) -> Result<Language, String> {
    s.parse()
        .map_err(|e: sumcorrupt_core::language::UnknownLanguage| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Data(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Corpus(c) => c.into(),
            EvalError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<HumanError> for CliError {
    fn from(e: HumanError) -> Self {
        match e {
            HumanError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn print_json(value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| CliError::Io(format!("stdout: {e}")))
}

/// `<output>.<suffix>`, next to the output.
pub fn sidecar(output: &Path, suffix: &str) -> PathBuf {
    let mut name = output.file_name().map(OsString::from).unwrap_or_default();
    name.push(".");
    name.push(suffix);
    output.with_file_name(name)
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    transform: TransformKind,
    seed: u64,
    language: Language,
    input_path: String,
    split: Split,
    keep_ineligible: bool,
    counts: OutcomeCounts,
    unchanged_reasons: &'a std::collections::BTreeMap<String, usize>,
    stats: &'a SplitStats,
}

fn corrupt(args: &CorruptArgs) -> Result<(), CliError> {
    let config = TransformConfig::new(args.transform, args.seed, args.lang)?.keep_ineligible(args.keep_ineligible);
    let split = args
        .split
        .or_else(|| Split::from_path(&args.input))
        .unwrap_or(Split::Train);
    let records = read_corpus(&args.input, args.lang)?;
    let out = transform_split(&records, &config, split);
    write_corpus(&out.records, &args.output)?;
    write_lines(&sidecar(&args.output, "drops.jsonl"), to_jsonl(&out.drops))?;
    let manifest = Manifest {
        transform: args.transform,
        seed: args.seed,
        language: args.lang,
        input_path: args.input.display().to_string(),
        split,
        keep_ineligible: args.keep_ineligible,
        counts: out.counts,
        unchanged_reasons: &out.unchanged_reasons,
        stats: &out.stats,
    };
    write_json(&sidecar(&args.output, "manifest.json"), &manifest)?;
    eprintln!(
        "{} {}: {} in, {} transformed, {} unchanged, {} dropped",
        args.lang, args.transform, out.counts.input, out.counts.transformed, out.counts.unchanged, out.counts.dropped
    );
    Ok(())
}

/// The `language` field of the first record, when it names a known language.
fn declared_language(records: &[CodeRecord]) -> Option<Language> {
    let raw = records.first()?.extra("language")?;
    serde_json::from_str::<String>(raw.get()).ok()?.parse().ok()
}

fn combine(args: &CombineArgs) -> Result<(), CliError> {
    let tag = args.lang.unwrap_or(Language::Python);
    let clean = read_corpus(&args.clean, tag)?;
    let corrupted = read_corpus(&args.corrupted, tag)?;
    let a = declared_language(&clean).or(args.lang);
    let b = declared_language(&corrupted).or(args.lang);
    for (x, y) in [(a, b), (a, args.lang), (args.lang, b)] {
        if let (Some(clean), Some(corrupted)) = (x, y) {
            if clean != corrupted {
                return Err(CorpusError::LanguageMismatch { clean, corrupted }.into());
            }
        }
    }
    let combined = combine_splits(&clean, &corrupted)?;
    write_corpus(&combined, &args.output)?;
    eprintln!(
        "combined {} + {} = {} records",
        clean.len(),
        corrupted.len(),
        combined.len()
    );
    Ok(())
}

fn stats(args: &StatsArgs) -> Result<(), CliError> {
    if args.split.is_some() && args.input.len() > 1 {
        return Err(CliError::Config("--split applies to a single --input".into()));
    }
    let mut inputs = Vec::new();
    for path in &args.input {
        let split = args
            .split
            .or_else(|| Split::from_path(path))
            .ok_or_else(|| CliError::Config(format!("cannot tell the split of {}; pass --split", path.display())))?;
        inputs.push((split, read_corpus(path, args.lang.unwrap_or(Language::Python))?));
    }
    let lang = args
        .lang
        .or_else(|| inputs.iter().find_map(|(_, r)| declared_language(r)))
        .ok_or_else(|| CliError::Config("the records do not name their language; pass --lang".into()))?;
    let mut total = SplitStats::empty(lang, args.label);
    for (split, records) in &inputs {
        total.merge(&compute_stats(lang, args.label, *split, records, &[]));
    }
    for path in &args.drops {
        let drops = read_drops(path)?;
        total.merge(&compute_stats(lang, args.label, Split::Train, &[], &drops));
    }
    print_json(&total)
}

fn eval(args: &EvalArgs) -> Result<(), CliError> {
    let predictions = read_indexed(&args.predictions)?;
    let references = read_indexed(&args.references)?;
    let report = corpus_bleu(&predictions, &references)?;
    if let Some(csv) = &args.csv {
        report
            .write_csv(csv)
            .map_err(|e| CliError::Io(format!("{}: {e}", csv.display())))?;
    }
    print_json(&report)
}

fn blind(args: &BlindArgs) -> Result<(), CliError> {
    let samples: Vec<Sample> = match (&args.samples, &args.corpus, &args.model1, &args.model2) {
        (Some(p), _, _, _) => read_jsonl(p)?,
        (None, Some(c), Some(m1), Some(m2)) => {
            let corpus = read_corpus(c, Language::Python)?;
            samples_from_predictions(&corpus, &read_indexed(m1)?, &read_indexed(m2)?)
        }
        _ => {
            return Err(CliError::Config(
                "pass --samples, or --corpus with --model1 and --model2".into(),
            ))
        }
    };
    let (tasks, keys) = make_blind_tasks(&samples, args.sample, args.seed)?;
    write_lines(&args.tasks, to_jsonl(&tasks))?;
    write_lines(&args.key, to_jsonl(&keys))?;
    eprintln!("{} tasks", tasks.len());
    Ok(())
}

fn agree(args: &AgreeArgs) -> Result<(), CliError> {
    let keys: Vec<KeyEntry> = read_jsonl(&args.key)?;
    let load = |p: &Path| -> Result<_, CliError> { Ok(deblind(&read_jsonl::<Annotation>(p)?, &keys)?) };
    let first = load(&args.first)?;
    let second = load(&args.second)?;
    let discussion = args.discussion.as_deref().map(load).transpose()?;
    let categories = if args.kappa_categories == 2 {
        KappaCategories::Two
    } else {
        KappaCategories::Three
    };
    let report = agreement_report(&first, &second, discussion.as_deref(), categories)?;
    if report.kappa.is_none() {
        eprintln!("kappa is undefined: chance agreement is 1");
    }
    if !report.needs_discussion.is_empty() {
        eprintln!("{} tasks still need discussion", report.needs_discussion.len());
    }
    if let Some(path) = &args.final_labels {
        let mut resolved = crate::human::resolve_ties(&first, &second)?;
        if let Some(d) = &discussion {
            resolved.merge_discussion(d);
        }
        write_lines(path, to_jsonl(&resolved.finals()))?;
    }
    print_json(&report)
}

fn tally_cmd(args: &TallyArgs) -> Result<(), CliError> {
    let labels: Vec<FinalLabel> = read_jsonl(&args.labels)?;
    let mut seen = std::collections::BTreeSet::new();
    if let Some(dup) = labels.iter().find(|l| !seen.insert(l.task_id.as_str())) {
        return Err(CliError::Data(format!("task `{}` has two final labels", dup.task_id)));
    }
    print_json(&tally(labels.iter().map(|l| l.label)))
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let work = || match &cli.command {
        Command::Corrupt(a) => corrupt(a),
        Command::Combine(a) => combine(a),
        Command::Stats(a) => stats(a),
        Command::Eval(a) => eval(a),
        Command::Blind(a) => blind(a),
        Command::Agree(a) => agree(a),
        Command::Tally(a) => tally_cmd(a),
    };
    match cli.jobs {
        Some(0) => Err(CliError::Config("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?
            .install(work),
        None => work(),
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_names() {
        assert_eq!(
            sidecar(Path::new("out/train.jsonl"), "drops.jsonl"),
            Path::new("out/train.jsonl.drops.jsonl")
        );
    }

    #[test]
    fn usage_errors_exit_1() {
        assert_eq!(main_with_args(["sumcorrupt", "bogus"]), 1);
        assert_eq!(main_with_args(["sumcorrupt", "corrupt", "--lang", "cobol"]), 1);
        assert_eq!(main_with_args(["sumcorrupt", "--help"]), 0);
    }

    #[test]
    fn deadcode_java_fails_before_io() {
        let code = main_with_args([
            "sumcorrupt",
            "corrupt",
            "--lang",
            "java",
            "--transform",
            "deadcode",
            "--input",
            "/nonexistent/in.jsonl",
            "--output",
            "/nonexistent/out.jsonl",
        ]);
        assert_eq!(code, 1);
    }
}
