//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or runtime error, 2 parse error,
//! 3 verification mismatch.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{no_worse_than, render_table, run_bench, BenchConfig, RORS, ROUND_ROBIN};
use crate::error::{ExecError, NtError};
use crate::executor::{materialize, ExecConfig, ExecutionMode};
use crate::generator::{self, GeneratorConfig};
use crate::model::{Dictionary, Triple, TripleStore};
use crate::ntriples::{parse_ntriples, write_ntriples, Strictness};
use crate::planner::{
    class_graph, display_groups, enumerate_strategies, export_dot, global_graph, Exclusions,
};
use crate::rules::{catalog_variant, CatalogVariant, RuleClass};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Paths enumerated over the whole catalog when no `--limit` is given.
const DEFAULT_GLOBAL_LIMIT: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "horst", version, about = "Forward-chaining OWL-Horst materialization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the closure of N-Triples input files.
    Materialize(MaterializeArgs),
    /// Print triple counts and the instance class mix.
    Stats(StatsArgs),
    /// Enumerate executable rule orders and export dependency graphs.
    Strategies(StrategiesArgs),
    /// Inspect the rule catalog.
    Rules {
        #[command(subcommand)]
        command: RulesCommand,
    },
    /// Write a synthetic university dataset.
    Generate(GenerateArgs),
    /// Compare strategies over repeated runs.
    Bench(BenchArgs),
}

#[derive(Subcommand, Debug)]
enum RulesCommand {
    /// Print every rule with its class and status.
    Dump {
        #[arg(long)]
        table1_literal: bool,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct ParseFlags {
    /// Abort on the first malformed line (default).
    #[arg(long, overrides_with = "lenient")]
    strict: bool,
    /// Skip malformed lines with a warning.
    #[arg(long, overrides_with = "strict")]
    lenient: bool,
}

impl ParseFlags {
    fn strictness(self) -> Strictness {
        if self.lenient {
            Strictness::Lenient
        } else {
            Strictness::Strict
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ModeArg {
    Paper,
    Fixpoint,
    Oracle,
}

impl From<ModeArg> for ExecutionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => ExecutionMode::PaperStrategy,
            ModeArg::Fixpoint => ExecutionMode::GlobalFixpoint,
            ModeArg::Oracle => ExecutionMode::NaiveOracle,
        }
    }
}

#[derive(Args, Debug)]
struct MaterializeArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Closure output; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// JSON report; defaults to `<output>.report.json`, or stderr without `--output`.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "paper")]
    mode: ModeArg,
    /// Sort output lines byte-wise.
    #[arg(long)]
    sorted: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
    /// Use the hasValue rule bodies exactly as tabulated.
    #[arg(long)]
    table1_literal: bool,
    #[arg(long, default_value_t = 10_000)]
    max_iterations: usize,
    /// Cross-check the result against the round-robin oracle.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    parse: ParseFlags,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    parse: ParseFlags,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ClassArg {
    Spo,
    Type,
    Sameas,
    Schema,
    All,
}

impl ClassArg {
    fn class(self) -> Option<RuleClass> {
        match self {
            ClassArg::Spo => Some(RuleClass::Spo),
            ClassArg::Type => Some(RuleClass::Type),
            ClassArg::Sameas => Some(RuleClass::SameAs),
            ClassArg::Schema => Some(RuleClass::Schema),
            ClassArg::All => None,
        }
    }
}

#[derive(Args, Debug)]
struct StrategiesArgs {
    #[arg(long, value_enum, default_value = "all")]
    class: ClassArg,
    /// Stop after this many paths.
    #[arg(long)]
    limit: Option<usize>,
    /// Write the dependency graph as DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Merge interchangeable rules (O7a/O7b, R4/R5, O11a/O11b, O12a/O12b).
    #[arg(long)]
    grouped: bool,
    /// Drop the O3/O7 exclusion.
    #[arg(long)]
    no_exclusions: bool,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, default_value_t = 10_000)]
    triples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Fraction of instance slots holding owl:sameAs alias links.
    #[arg(long, default_value_t = 0.0)]
    sameas_rate: f64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Dataset to use instead of a generated one.
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    triples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0.0)]
    sameas_rate: f64,
    /// Worker counts to measure, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    workers: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    runs: usize,
    #[arg(long)]
    table1_literal: bool,
    /// Also write the rows as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    #[command(flatten)]
    parse: ParseFlags,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Mismatch(_) => EXIT_MISMATCH,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ExecError> for Failure {
    fn from(e: ExecError) -> Self {
        match e {
            ExecError::ClosureMismatch { .. } => Failure::Mismatch(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn nt_failure(path: &Path, e: NtError) -> Failure {
    match e {
        NtError::Parse(d) => Failure::Parse(format!(
            "{}:{}: {}",
            path.display(),
            d.line_number,
            d.message
        )),
        other => Failure::Usage(format!("{}: {other}", path.display())),
    }
}

type Out<'a> = &'a mut dyn Write;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: Out<'_>, stderr: Out<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Materialize(a) => cmd_materialize(a, stdout, stderr),
        Command::Stats(a) => cmd_stats(a, stdout, stderr),
        Command::Strategies(a) => cmd_strategies(a, stdout),
        Command::Rules {
            command: RulesCommand::Dump {
                table1_literal,
                json,
            },
        } => cmd_rules_dump(table1_literal, json, stdout),
        Command::Generate(a) => cmd_generate(a, stdout),
        Command::Bench(a) => cmd_bench(a, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

fn load_inputs(
    paths: &[PathBuf],
    strictness: Strictness,
    stderr: Out<'_>,
) -> Result<(Dictionary, TripleStore), Failure> {
    let mut dict = Dictionary::new();
    let mut store = TripleStore::new(&mut dict);
    for path in paths {
        let file = File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let parsed = parse_ntriples(BufReader::new(file), &mut dict, strictness)
            .map_err(|e| nt_failure(path, e))?;
        for d in &parsed.diagnostics {
            writeln!(stderr, "warning: {}:{}: {}", path.display(), d.line_number, d.message)?;
        }
        store.insert(parsed.triples);
    }
    Ok((dict, store))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn variant(literal: bool) -> CatalogVariant {
    if literal {
        CatalogVariant::Table1Literal
    } else {
        CatalogVariant::Standard
    }
}

fn cmd_materialize(a: MaterializeArgs, stdout: Out<'_>, stderr: Out<'_>) -> Result<(), Failure> {
    let (dict, store) = load_inputs(&a.inputs, a.parse.strictness(), stderr)?;
    let cfg = ExecConfig::new(a.mode.into())
        .with_workers(a.workers as usize)
        .with_variant(variant(a.table1_literal))
        .with_max_iterations(a.max_iterations);
    let input = a.verify.then(|| store.clone());
    let (closure, report) = materialize(store, &dict, &cfg)?;

    match &a.output {
        Some(path) => write_ntriples(closure.triples(), &dict, a.sorted, create(path)?)
            .map_err(|e| nt_failure(path, e))?,
        None => write_ntriples(closure.triples(), &dict, a.sorted, &mut *stdout)
            .map_err(|e| nt_failure(Path::new("<stdout>"), e))?,
    }
    let report_json = serde_json::to_string_pretty(&report)?;
    let report_path = a
        .report
        .clone()
        .or_else(|| a.output.as_ref().map(|o| PathBuf::from(format!("{}.report.json", o.display()))));
    match report_path {
        Some(path) => {
            let mut w = create(&path)?;
            writeln!(w, "{report_json}")?;
            w.flush()?;
        }
        None => writeln!(stderr, "{report_json}")?,
    }

    if let Some(input) = input {
        let oracle_cfg = ExecConfig::new(ExecutionMode::NaiveOracle)
            .with_variant(cfg.variant)
            .with_max_iterations(cfg.max_iterations);
        let (oracle, _) = materialize(input, &dict, &oracle_cfg)?;
        let got: BTreeSet<Triple> = closure.triples().iter().copied().collect();
        let want: BTreeSet<Triple> = oracle.triples().iter().copied().collect();
        let ok = if cfg.mode.is_complete() {
            got == want
        } else {
            got.is_subset(&want)
        };
        if !ok {
            return Err(Failure::Mismatch(format!(
                "{} closure has {} triples, oracle has {}",
                cfg.mode,
                got.len(),
                want.len()
            )));
        }
        writeln!(stderr, "verified against oracle ({} triples)", want.len())?;
    }
    Ok(())
}

fn percent(x: f64) -> String {
    format!("{:.3}%", x * 100.0)
}

fn cmd_stats(a: StatsArgs, stdout: Out<'_>, stderr: Out<'_>) -> Result<(), Failure> {
    let (_, store) = load_inputs(&a.inputs, a.parse.strictness(), stderr)?;
    let p = store
        .class_proportions()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    if a.json {
        writeln!(stdout, "{}", serde_json::to_string_pretty(&p)?)?;
        return Ok(());
    }
    writeln!(stdout, "total     {}", p.total)?;
    writeln!(stdout, "schema    {}", p.schema_count)?;
    writeln!(stdout, "instance  {}", p.type_count + p.same_as_count + p.spo_count)?;
    match &p.instance {
        Some(mix) => {
            writeln!(stdout, "type      {:>9}  {}", percent(mix.type_fraction), p.type_count)?;
            writeln!(stdout, "sameAs    {:>9}  {}", percent(mix.same_as_fraction), p.same_as_count)?;
            writeln!(stdout, "SPO       {:>9}  {}", percent(mix.spo_fraction), p.spo_count)?;
        }
        None => writeln!(stdout, "no instance triples")?,
    }
    Ok(())
}

fn cmd_strategies(a: StrategiesArgs, stdout: Out<'_>) -> Result<(), Failure> {
    let exclusions = if a.no_exclusions {
        Exclusions::none()
    } else {
        Exclusions::default()
    };
    let (graph, limit, name) = match a.class.class() {
        Some(class) => {
            let g = class_graph(class, &exclusions);
            let g = if a.grouped {
                g.merged(&display_groups(class))
            } else {
                g
            };
            (g, a.limit, class.to_string())
        }
        None => (
            global_graph(&exclusions),
            Some(a.limit.unwrap_or(DEFAULT_GLOBAL_LIMIT)),
            "all".to_string(),
        ),
    };
    if let Some(path) = &a.dot {
        let mut w = create(path)?;
        w.write_all(export_dot(&graph).as_bytes())?;
        w.flush()?;
    }
    let e = enumerate_strategies(&graph, limit);
    let longest = e.strategies.first().map_or(0, |s| s.order.len());
    writeln!(
        stdout,
        "# {name}: {} nodes, {} edges, {} maximal paths{}, longest {} rules",
        graph.nodes().len(),
        graph.edge_count(),
        e.strategies.len(),
        if e.truncated { " (truncated)" } else { "" },
        longest
    )?;
    for s in &e.strategies {
        writeln!(stdout, "{}", s.display())?;
    }
    Ok(())
}

fn cmd_rules_dump(table1_literal: bool, json: bool, stdout: Out<'_>) -> Result<(), Failure> {
    let rules = catalog_variant(variant(table1_literal));
    if json {
        writeln!(stdout, "{}", serde_json::to_string_pretty(rules)?)?;
        return Ok(());
    }
    for r in rules {
        let status = if r.enabled { "" } else { "  (disabled)" };
        writeln!(stdout, "{:<7} {r}{status}", r.class.to_string())?;
    }
    Ok(())
}

fn cmd_generate(a: GenerateArgs, stdout: Out<'_>) -> Result<(), Failure> {
    if !(0.0..=1.0).contains(&a.sameas_rate) {
        return Err(Failure::Usage("--sameas-rate must lie in [0, 1]".into()));
    }
    let triples = generator::generate(&GeneratorConfig {
        triples: a.triples,
        seed: a.seed,
        same_as_rate: a.sameas_rate,
    });
    match &a.output {
        Some(path) => {
            let mut w = create(path)?;
            generator::write(&triples, &mut w)?;
            w.flush()?;
        }
        None => generator::write(&triples, &mut *stdout)?,
    }
    Ok(())
}

fn cmd_bench(a: BenchArgs, stdout: Out<'_>, stderr: Out<'_>) -> Result<(), Failure> {
    if a.workers.contains(&0) {
        return Err(Failure::Usage("--workers values must be positive".into()));
    }
    let (dict, store) = match &a.input {
        Some(path) => load_inputs(std::slice::from_ref(path), a.parse.strictness(), stderr)?,
        None => generator::generate_store(&GeneratorConfig {
            triples: a.triples,
            seed: a.seed,
            same_as_rate: a.sameas_rate,
        }),
    };
    let cfg = BenchConfig {
        runs: a.runs,
        workers: a.workers.clone(),
        ..Default::default()
    };
    let base = ExecConfig::default().with_variant(variant(a.table1_literal));
    let rows = run_bench(&store, &dict, &cfg, &base)?;
    writeln!(stdout, "dataset: {} triples", store.len())?;
    write!(stdout, "{}", render_table(&rows))?;
    writeln!(
        stdout,
        "{RORS} no worse than {ROUND_ROBIN}: {}",
        no_worse_than(&rows, RORS, ROUND_ROBIN)
    )?;
    if let Some(path) = &a.json {
        let mut w = create(path)?;
        writeln!(w, "{}", serde_json::to_string_pretty(&rows)?)?;
        w.flush()?;
    }
    Ok(())
}
