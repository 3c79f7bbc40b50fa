use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};
use dhuraf_core::evidence::{
    import_search_log_from, interview_responses, merge_records, next_search_index,
    InterviewDistribution,
};
use dhuraf_core::reporting::{render_comparison, render_gap_report};
use dhuraf_core::schema::{builtin_framework, CANONICAL_FRAMEWORK_ID};
use dhuraf_core::scoring::{describe_score, Calibration};
use dhuraf_core::{
    attach_evidence, classify, compare, gap_report, interview_distribution, parse_assessment,
    render_indicator_table, serialize_assessment, suggest_availability, validate_assessment,
    what_if, Assessment, Classification, EvidencePayload, EvidenceRecord, Format, Framework,
    FrameworkRef, ItemPath, Override, Relevance, SubjectInfo,
};

#[derive(Parser)]
#[command(
    name = "dhuraf",
    version,
    about = "Digital humanities readiness assessment"
)]
struct Cli {
    /// Partial calibration file merged over the default ruleset.
    #[arg(long, global = true, value_name = "PATH")]
    ruleset: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a blank assessment for a framework.
    Init(InitArgs),
    /// Check a document against its framework.
    Validate { path: PathBuf },
    /// Rewrite a document in canonical form.
    Fmt {
        path: PathBuf,
        #[arg(long)]
        in_place: bool,
    },
    /// Print the readiness category.
    Classify {
        path: PathBuf,
        #[arg(long)]
        explain: bool,
        #[arg(long, value_enum, default_value_t = VerdictFormat::Plain)]
        format: VerdictFormat,
    },
    /// Render the indicator table.
    Report {
        path: PathBuf,
        #[arg(long, default_value = "markdown", value_parser = parse_format)]
        format: Format,
    },
    /// Rank items by importance-availability gap.
    Gaps {
        path: PathBuf,
        #[arg(long, default_value = "markdown", value_parser = parse_format)]
        format: Format,
    },
    /// Compare two assessments item by item.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "markdown", value_parser = parse_format)]
        format: Format,
    },
    /// Classify with hypothetical availability values.
    WhatIf {
        path: PathBuf,
        /// `Section/Item=kind:value`, repeatable.
        #[arg(long = "set", value_name = "OVERRIDE", required = true, value_parser = parse_override)]
        overrides: Vec<Override>,
        #[arg(long)]
        explain: bool,
        #[arg(long, value_enum, default_value_t = VerdictFormat::Plain)]
        format: VerdictFormat,
    },
    /// Manage the evidence ledger.
    #[command(subcommand)]
    Evidence(EvidenceCommand),
}

#[derive(Args)]
struct InitArgs {
    #[arg(long, default_value = CANONICAL_FRAMEWORK_ID)]
    framework: String,
    #[arg(long)]
    community: String,
    #[arg(long)]
    language: String,
    #[arg(long)]
    region: Option<String>,
    #[arg(long)]
    assessor: Option<String>,
    /// Defaults to today.
    #[arg(long)]
    date: Option<NaiveDate>,
}

#[derive(Subcommand)]
enum EvidenceCommand {
    /// Append search-log rows to a document's ledger.
    Import {
        csv: PathBuf,
        #[arg(long, value_name = "PATH")]
        into: PathBuf,
        #[arg(long)]
        in_place: bool,
    },
    /// Attach one record to an item.
    Add(AddArgs),
    /// Suggest an availability level from an item's evidence.
    Suggest {
        path: PathBuf,
        /// `Section/Item`.
        #[arg(value_parser = parse_item_path)]
        item: ItemPath,
    },
    /// Tabulate interview responses held in the ledger.
    Interviews {
        path: PathBuf,
        #[arg(long, default_value = "markdown", value_parser = parse_format)]
        format: Format,
    },
}

#[derive(Args)]
struct AddArgs {
    path: PathBuf,
    /// `Section/Item`.
    #[arg(long, value_parser = parse_item_path)]
    item: ItemPath,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    id: Option<String>,
    #[arg(long)]
    source: String,
    #[arg(long)]
    date: NaiveDate,
    #[arg(long)]
    query: Option<String>,
    #[arg(long)]
    result_count: Option<u64>,
    #[arg(long, value_parser = parse_relevance)]
    relevance: Option<Relevance>,
    #[arg(long)]
    subject: Option<String>,
    #[arg(long)]
    response: Option<String>,
    #[arg(long)]
    summary: Option<String>,
    #[arg(long)]
    approx_size: Option<u64>,
    #[arg(long)]
    in_place: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Search,
    Interview,
    Catalog,
    Priori,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerdictFormat {
    Plain,
    Json,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: dhuraf_core::Error| e.to_string())
}

fn parse_override(s: &str) -> Result<Override, String> {
    s.parse().map_err(|e: dhuraf_core::Error| e.to_string())
}

fn parse_item_path(s: &str) -> Result<ItemPath, String> {
    s.parse()
}

fn parse_relevance(s: &str) -> Result<Relevance, String> {
    s.parse()
}

/// Raised after violations have been reported; maps to exit code 1.
#[derive(Debug)]
struct Invalid;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            if !err.is::<Invalid>() {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(exit_code(&err))
        }
    }
}

/// 1 for semantic and validation failures, 2 for parse, I/O and usage.
fn exit_code(err: &anyhow::Error) -> u8 {
    use dhuraf_core::Error as E;
    for cause in err.chain() {
        if cause.is::<io::Error>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::Parse(_)
                | E::SearchLog { .. }
                | E::InvalidRuleset(_)
                | E::InvalidFormat(_)
                | E::InvalidOverride(..) => 2,
                _ => 1,
            };
        }
        if cause.is::<dhuraf_core::ParseError>() || cause.is::<Usage>() {
            return 2;
        }
    }
    1
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("document failed validation")
    }
}

impl std::error::Error for Invalid {}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let calibration = match &cli.ruleset {
        Some(path) => Calibration::from_json(&read(path)?)
            .with_context(|| format!("loading {}", path.display()))?,
        None => Calibration::default(),
    };
    let rules = &calibration.ruleset;

    match cli.command {
        Command::Init(args) => {
            let fw = builtin_framework(&args.framework)
                .ok_or_else(|| Usage(format!("unknown framework '{}'", args.framework)))?;
            let subject = SubjectInfo {
                community: args.community,
                language: args.language,
                region: args.region,
                assessor: args.assessor,
                date: args
                    .date
                    .unwrap_or_else(|| chrono::Local::now().date_naive()),
            };
            let a = Assessment::blank(FrameworkRef::Id(fw.id.clone()), &fw, subject);
            emit(&serialize_assessment(&a))?;
        }
        Command::Validate { path } => {
            let (a, fw) = load_unchecked(&path)?;
            let violations = validate_assessment(&a, &fw);
            let mut out = String::new();
            for v in &violations {
                out.push_str(&format!("{v}\n"));
            }
            emit(out.as_bytes())?;
            if !violations.is_empty() {
                eprintln!("{}: {} violation(s)", path.display(), violations.len());
                return Ok(ExitCode::from(1));
            }
        }
        Command::Fmt { path, in_place } => {
            let (a, _) = load_unchecked(&path)?;
            write_document(&path, &a, in_place)?;
        }
        Command::Classify {
            path,
            explain,
            format,
        } => {
            let (a, fw) = load(&path)?;
            let c = classify(&a, &fw, rules)?;
            emit(render_verdict(&c, None, explain, format).as_bytes())?;
        }
        Command::Report { path, format } => {
            let (a, fw) = load(&path)?;
            emit(render_indicator_table(&a, &fw, format)?.as_bytes())?;
        }
        Command::Gaps { path, format } => {
            let (a, fw) = load(&path)?;
            emit(render_gap_report(&gap_report(&a, &fw, rules), format)?.as_bytes())?;
        }
        Command::Compare { a, b, format } => {
            let (doc_a, fw) = load(&a)?;
            let (doc_b, _) = load(&b)?;
            let report = compare(&doc_a, &doc_b, &fw, rules)?;
            emit(render_comparison(&report, format)?.as_bytes())?;
        }
        Command::WhatIf {
            path,
            overrides,
            explain,
            format,
        } => {
            let (a, fw) = load(&path)?;
            let baseline = classify(&a, &fw, rules).ok();
            let c = what_if(&a, &overrides, &fw, rules)?;
            emit(render_verdict(&c, baseline.as_ref(), explain, format).as_bytes())?;
        }
        Command::Evidence(cmd) => run_evidence(cmd, &calibration)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn run_evidence(cmd: EvidenceCommand, calibration: &Calibration) -> anyhow::Result<()> {
    match cmd {
        EvidenceCommand::Import {
            csv,
            into,
            in_place,
        } => {
            let (a, _) = load(&into)?;
            let file =
                fs::File::open(&csv).with_context(|| format!("opening {}", csv.display()))?;
            let records = import_search_log_from(file, next_search_index(&a.evidence))
                .with_context(|| format!("importing {}", csv.display()))?;
            let count = records.len();
            let updated = merge_records(&a, records)?;
            write_document(&into, &updated, in_place)?;
            eprintln!("imported {count} record(s) from {}", csv.display());
        }
        EvidenceCommand::Add(args) => {
            let (a, _) = load(&args.path)?;
            let record = build_record(&args, &a)?;
            let updated = attach_evidence(&a, record, &args.item)?;
            write_document(&args.path, &updated, args.in_place)?;
        }
        EvidenceCommand::Suggest { path, item } => {
            let (a, _) = load(&path)?;
            match suggest_availability(&a, &item, &calibration.visibility, &calibration.ruleset)? {
                Some(s) => emit(format!("{}\n{}\n", s.level, s.rationale).as_bytes())?,
                None => bail!("'{item}' has no quantitative evidence"),
            }
        }
        EvidenceCommand::Interviews { path, format } => {
            let (a, _) = load(&path)?;
            let dist = interview_distribution(&interview_responses(&a.evidence))?;
            emit(render_interviews(&dist, format).as_bytes())?;
        }
    }
    Ok(())
}

fn build_record(args: &AddArgs, a: &Assessment) -> anyhow::Result<EvidenceRecord> {
    fn need<T: Clone>(v: &Option<T>, flag: &str, kind: &str) -> anyhow::Result<T> {
        v.clone()
            .ok_or_else(|| Usage(format!("--{flag} is required for {kind} records")).into())
    }
    let (payload, prefix) = match args.kind {
        KindArg::Search => (
            EvidencePayload::Search {
                query: need(&args.query, "query", "search")?,
                result_count: need(&args.result_count, "result-count", "search")?,
                relevance: args.relevance.unwrap_or(Relevance::Na),
            },
            "ev-search",
        ),
        KindArg::Interview => (
            EvidencePayload::Interview {
                subject: need(&args.subject, "subject", "interview")?,
                response: need(&args.response, "response", "interview")?,
            },
            "ev-int",
        ),
        KindArg::Catalog => (
            EvidencePayload::Catalog {
                summary: need(&args.summary, "summary", "catalog")?,
                approx_size: args.approx_size,
            },
            "ev-cat",
        ),
        KindArg::Priori => (
            EvidencePayload::Priori {
                summary: need(&args.summary, "summary", "priori")?,
                approx_size: args.approx_size,
            },
            "ev-pri",
        ),
    };
    let id = match &args.id {
        Some(id) => id.clone(),
        None => (1..)
            .map(|n| format!("{prefix}-{n}"))
            .find(|id| a.evidence_record(id).is_none())
            .expect("unbounded id search"),
    };
    Ok(EvidenceRecord {
        id,
        source: args.source.clone(),
        date: args.date,
        item_ref: Some(args.item.clone()),
        payload,
    })
}

fn render_verdict(
    c: &Classification,
    baseline: Option<&Classification>,
    explain: bool,
    format: VerdictFormat,
) -> String {
    if format == VerdictFormat::Json {
        let mut s = serde_json::to_string_pretty(c).expect("classification serializes");
        s.push('\n');
        return s;
    }
    let mut out = format!("{}\n", c.category);
    if !explain {
        return out;
    }
    if let Some(b) = baseline {
        out.push_str(&format!("\nbaseline: {}\n", b.category));
    }
    out.push_str("\nsections:\n");
    for s in &c.section_scores {
        let core = if s.core { " (core)" } else { "" };
        out.push_str(&format!("  {}{core}: {}", s.name, describe_score(s.score)));
        if !s.lower_bound_items.is_empty() {
            out.push_str(&format!(
                " [lower bound from {}]",
                s.lower_bound_items.join(", ")
            ));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "\ncore sections with evidence: {}\nmean core score: {}\n\ntrace:\n",
        c.core_evidence_count,
        describe_score(Some(c.mean_core_score))
    ));
    for rule in &c.trace {
        out.push_str(&format!("  {rule}\n"));
    }
    out
}

fn render_interviews(dist: &InterviewDistribution, format: Format) -> String {
    if format == Format::Json {
        let mut s = serde_json::to_string_pretty(dist).expect("distribution serializes");
        s.push('\n');
        return s;
    }
    let rows = dist.subjects.iter().flat_map(|s| {
        s.responses.iter().map(move |r| {
            [
                s.subject.clone(),
                r.response.clone(),
                r.count.to_string(),
                format!("{}%", fmt_percent(r.percentage)),
            ]
        })
    });
    let header = ["Subject", "Response", "Count", "Percentage"];
    match format {
        Format::Csv => {
            let mut out = header.join(",") + "\n";
            for row in rows {
                let cells: Vec<String> = row
                    .iter()
                    .map(|c| {
                        if c.contains([',', '"']) {
                            format!("\"{}\"", c.replace('"', "\"\""))
                        } else {
                            c.clone()
                        }
                    })
                    .collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        _ => {
            let mut out = format!("| {} |\n| --- | --- | --- | --- |\n", header.join(" | "));
            for row in rows {
                out.push_str(&format!("| {} |\n", row.join(" | ")));
            }
            out
        }
    }
}

fn fmt_percent(p: f64) -> String {
    let s = format!("{p:.2}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn read(path: &Path) -> anyhow::Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

/// Parses a document and resolves its framework without validating.
fn load_unchecked(path: &Path) -> anyhow::Result<(Assessment, Framework)> {
    let a =
        parse_assessment(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let fw = a.framework.resolve()?;
    Ok((a, fw))
}

/// Parses and validates; violations go to stderr.
fn load(path: &Path) -> anyhow::Result<(Assessment, Framework)> {
    let (a, fw) = load_unchecked(path)?;
    let violations = validate_assessment(&a, &fw);
    if !violations.is_empty() {
        for v in &violations {
            eprintln!("{}: {v}", path.display());
        }
        return Err(anyhow!(Invalid));
    }
    Ok((a, fw))
}

fn write_document(path: &Path, a: &Assessment, in_place: bool) -> anyhow::Result<()> {
    let bytes = serialize_assessment(a);
    if in_place {
        let dir = path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .unwrap_or(Path::new("."));
        let tmp = dir.join(format!(
            ".{}.tmp",
            path.file_name()
                .map(|n| n.to_string_lossy())
                .unwrap_or_default()
        ));
        fs::write(&tmp, &bytes).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, path).with_context(|| format!("replacing {}", path.display()))?;
        Ok(())
    } else {
        emit(&bytes)
    }
}

fn emit(bytes: &[u8]) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    match out.write_all(bytes).and_then(|_| out.flush()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => other.context("writing to stdout"),
    }
}
