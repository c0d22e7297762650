mod input;
mod random;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use split_species::asymptotics::{self, MAX_REPORT_N};
use split_species::counting::{self, CountTable, OracleLimits};
use split_species::enumeration::{self, ClassTag, Structure};
use split_species::split::{self, SplitAnalysis};
use split_species::verify::{self, VerifyReport};
use split_species::{bijections, Error};

use input::read_input;

const THREADS_VAR: &str = "SPLIT_SPECIES_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "split-species",
    version,
    about = "Exact counts, classification and bijections for split graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count the structures of one class
    Count(CountArgs),
    /// List every labeled structure of one class on 0..n
    Enumerate(EnumerateArgs),
    /// Classify a split graph and report its swing vertices
    Classify(ClassifyArgs),
    /// Apply one of the species bijections to an input structure
    Biject(BijectArgs),
    /// Run a verification suite; exits 1 on any discrepancy
    Verify(VerifyArgs),
    /// Asymptotic ratio report
    Asym(AsymArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long, value_parser = parse_class)]
    class: ClassTag,
    #[arg(long, conflicts_with = "unlabeled")]
    labeled: bool,
    #[arg(long)]
    unlabeled: bool,
    /// A single order
    #[arg(long, required_unless_present = "max_n", conflicts_with = "max_n")]
    n: Option<usize>,
    /// Every order from 0 up to this one
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: TableFormat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StreamFormat {
    Jsonl,
    Json,
    Text,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, value_parser = parse_class)]
    class: ClassTag,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "jsonl")]
    format: StreamFormat,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Graph file, text edge list or JSON; `-` reads standard input
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BijectionMap {
    UkDecompose,
    UkCompose,
    AmbDecompose,
    AmbCompose,
    CukDecompose,
    CukCompose,
    SplitToBicolored,
    BicoloredToSplit,
}

#[derive(Args, Debug)]
struct BijectArgs {
    #[arg(long, value_enum)]
    map: BijectionMap,
    /// Input file; `-` reads standard input
    #[arg(long, alias = "graph")]
    input: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Identities,
    Formulas,
    Random,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long)]
    max_n: Option<usize>,
    /// Seed for the random suite
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random cases
    #[arg(long, default_value_t = 1000)]
    cases: usize,
    /// Count table reused and updated by the formulas suite
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct AsymArgs {
    #[arg(long, default_value_t = 200)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: ReportFormat,
    /// Add unlabeled rows up to this order, from canonical-code counts
    #[arg(long)]
    unlabeled: Option<usize>,
    /// Print the empirical thresholds instead of the ratio table
    #[arg(long)]
    thresholds: bool,
    /// Order up to which the ratio inequalities are checked for --thresholds
    #[arg(long, default_value_t = 500)]
    ratio_max_n: usize,
}

fn parse_class(s: &str) -> Result<ClassTag, String> {
    s.parse::<ClassTag>().map_err(|e| e.to_string())
}

enum Failure {
    Discrepancy(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

fn count(args: &CountArgs) -> Outcome {
    let ns: Vec<usize> = match (args.n, args.max_n) {
        (Some(n), _) => vec![n],
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => unreachable!("clap requires one of --n, --max-n"),
    };
    let table = if args.unlabeled {
        counting::unlabeled_table(args.class, &ns)?
    } else {
        counting::labeled_table(args.class, &ns)?
    };
    Ok(match args.format {
        TableFormat::Json => table.to_json(),
        TableFormat::Csv => {
            let mut out = String::from("n,value,provenance\n");
            for (n, e) in &table.values {
                let prov = serde_json::to_value(e.provenance).expect("enum");
                out.push_str(&format!(
                    "{n},{},{}\n",
                    e.value,
                    prov.as_str().unwrap_or_default()
                ));
            }
            out.pop();
            out
        }
        TableFormat::Text if args.n.is_some() => table
            .values
            .values()
            .next()
            .expect("one entry")
            .value
            .to_string(),
        TableFormat::Text => table
            .values
            .iter()
            .map(|(n, e)| format!("{n} {}", e.value))
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

/// Streams the structures to `out`; a closed pipe ends the listing early.
fn enumerate(args: &EnumerateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let mut items = enumeration::enumerate_labeled(args.n, args.class)?;
    let written = match args.format {
        StreamFormat::Jsonl => items
            .try_for_each(|s| writeln!(out, "{}", serde_json::to_string(&s).expect("plain data"))),
        StreamFormat::Json => {
            let all: Vec<Structure> = items.collect();
            writeln!(out, "{}", to_json(&all))
        }
        StreamFormat::Text => items.try_for_each(|s| {
            let (graph, green) = match &s {
                Structure::Graph(g) => (g, None),
                Structure::Colored(c) => (c.graph(), Some(c.green())),
                Structure::Bicolored(b) => (b.graph(), Some(b.green())),
            };
            out.write_all(graph.to_text().as_bytes())?;
            if let Some(green) = green {
                writeln!(out, "# green {:?}", green.to_vec())?;
            }
            writeln!(out)
        }),
    };
    match written.and_then(|_| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::Input(e.to_string())),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct Classification {
    class: split::SplitClass,
    swing: split::SwingReport,
    partitions: Vec<split::KSPartition>,
    s_max: Vec<split::KSPartition>,
    k_max: Vec<split::KSPartition>,
}

fn classify(args: &ClassifyArgs) -> Outcome {
    let g = input::read_graph(&args.graph)?;
    let an = SplitAnalysis::of(&g).ok_or(Error::NotSplit)?;
    let report = Classification {
        class: an.class,
        swing: split::swing_report(&g)?,
        s_max: an.s_max_partitions(),
        k_max: an.k_max_partitions(),
        partitions: an.partitions,
    };
    Ok(to_json(&report))
}

fn biject(args: &BijectArgs) -> Outcome {
    use input::{AmbPair, CukPair, UkPair};
    let value = match args.map {
        BijectionMap::UkDecompose => {
            let g = input::read_graph(&args.input)?;
            let (a, rest) = bijections::uk_decompose(&g)?;
            to_json(&UkPair { a, rest })
        }
        BijectionMap::UkCompose => {
            let p: UkPair = read_input(&args.input)?;
            to_json(&bijections::uk_compose(p.a, &p.rest)?)
        }
        BijectionMap::AmbDecompose => {
            let g = input::read_graph(&args.input)?;
            let (a, rest) = bijections::amb_decompose(&g)?;
            to_json(&AmbPair { a, rest })
        }
        BijectionMap::AmbCompose => {
            let p: AmbPair = read_input(&args.input)?;
            to_json(&bijections::amb_compose(p.a, &p.rest)?)
        }
        BijectionMap::CukDecompose => {
            let c = read_input(&args.input)?;
            let (pointed, rest) = bijections::cuk_decompose(&c)?;
            to_json(&CukPair { pointed, rest })
        }
        BijectionMap::CukCompose => {
            let p: CukPair = read_input(&args.input)?;
            to_json(&bijections::cuk_compose(&p.pointed, &p.rest)?)
        }
        BijectionMap::SplitToBicolored => {
            let c = read_input(&args.input)?;
            to_json(&bijections::split_to_bicolored(&c))
        }
        BijectionMap::BicoloredToSplit => {
            let b = read_input(&args.input)?;
            to_json(&bijections::bicolored_to_split(&b)?)
        }
    };
    Ok(value)
}

fn finish(report: &VerifyReport) -> Outcome {
    let json = report.to_json();
    if report.passed {
        Ok(json)
    } else {
        Err(Failure::Discrepancy(json))
    }
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    match args.suite {
        Suite::Identities => finish(&verify::identities_report(args.max_n.unwrap_or(6))?),
        Suite::Random => finish(&random::random_report(
            args.max_n.unwrap_or(7),
            args.cases,
            args.seed,
        )?),
        Suite::Formulas => {
            let max_n = args.max_n.unwrap_or(318);
            if max_n > counting::MAX_CROSS_CHECK_N {
                return Err(Error::TooLarge {
                    what: "formula cross-check order",
                    max: counting::MAX_CROSS_CHECK_N,
                    got: max_n,
                }
                .into());
            }
            let mut cache = match &args.cache {
                Some(p) if p.exists() => Some(CountTable::load(p)?),
                Some(_) => Some(CountTable::new(ClassTag::Split, true)),
                None => None,
            };
            let oracle = OracleLimits {
                labeled: Some(max_n.min(6)),
                unlabeled: None,
            };
            let report = counting::cross_check(max_n, oracle, cache.as_mut());
            if let (Some(p), Some(c)) = (&args.cache, &cache) {
                c.save(p)?;
            }
            let json = to_json(&report);
            if report.discrepancies.is_empty() {
                Ok(json)
            } else {
                Err(Failure::Discrepancy(json))
            }
        }
    }
}

fn asym(args: &AsymArgs) -> Outcome {
    if args.thresholds {
        return Ok(to_json(&asymptotics::thresholds(
            args.ratio_max_n,
            args.max_n,
        )?));
    }
    if args.max_n > MAX_REPORT_N {
        return Err(Error::TooLarge {
            what: "ratio report order",
            max: MAX_REPORT_N,
            got: args.max_n,
        }
        .into());
    }
    let mut report = asymptotics::ratio_report(args.max_n)?;
    if let Some(m) = args.unlabeled {
        let table = counting::unlabeled_table(ClassTag::Split, &(0..=m).collect::<Vec<_>>())?;
        let base: Vec<_> = table.values.into_values().map(|e| e.value).collect();
        report = asymptotics::with_unlabeled(report, &base)?;
    }
    Ok(match args.format {
        ReportFormat::Csv => report.to_csv().trim_end().to_string(),
        ReportFormat::Json => report.to_json(),
    })
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_VAR} must be a positive integer, got {value:?}"))?;
    if threads == 0 {
        return Err(format!("{THREADS_VAR} must be a positive integer, got 0"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Writes `text` and a newline to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let outcome = match &cli.command {
        Command::Count(a) => count(a),
        Command::Enumerate(a) => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            enumerate(a, &mut out).map(|_| String::new())
        }
        Command::Classify(a) => classify(a),
        Command::Biject(a) => biject(a),
        Command::Verify(a) => run_verify(a),
        Command::Asym(a) => asym(a),
    };
    match outcome {
        Ok(text) => {
            if !text.is_empty() {
                emit(&text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Discrepancy(text)) => {
            emit(&text);
            eprintln!("error: verification found discrepancies");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
