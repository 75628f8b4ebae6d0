use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sylowtab::app::{self, AppError, PrimeAnalysis};
use sylowtab::corpus::{self, CorpusSource};
use sylowtab::detect::Verdict;
use sylowtab::io::{self, emit_report, ReportFormat, ReportRow};
use sylowtab::oracle::DEFAULT_CAP;
use sylowtab::table::CharTable;

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "sylowtab", version, about = "Read Sylow commutator and center indices off character tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PrimeArgs {
    /// Analyze this prime only.
    #[arg(long = "p", value_name = "PRIME", conflicts_with = "all_primes")]
    p: Option<u64>,
    /// Analyze every prime dividing the group order (the default).
    #[arg(long)]
    all_primes: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run all detectors and block statistics on a character table.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        primes: PrimeArgs,
        /// The file is a GAP `MOT(...)` table instead of a JSON document.
        #[arg(long)]
        gap: bool,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate a permutation group, compute its table and ground truth,
    /// and cross-check the detectors.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        primes: PrimeArgs,
        #[arg(long, value_name = "CAP", default_value_t = DEFAULT_CAP)]
        max_elements: usize,
        /// Also write the computed table document to this path.
        #[arg(long, value_name = "PATH")]
        emit_table: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Sweep the embedded corpus over all primes dividing each order.
    Corpus {
        /// Only entries whose name contains this string.
        #[arg(long, value_name = "NAME")]
        filter: Option<String>,
        #[arg(long, value_name = "CAP", default_value_t = DEFAULT_CAP)]
        max_elements: usize,
        /// List entry names instead of running.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the generator document of a corpus entry.
    Export { name: String },
    /// Convert a GAP `MOT(...)` table to a JSON table document.
    ConvertGap { file: PathBuf },
}

enum Failure {
    Usage(String),
    Input(String),
    Mismatch,
}

impl From<AppError> for Failure {
    fn from(e: AppError) -> Self {
        match e {
            AppError::Usage(m) => Failure::Usage(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_verdict(label: &str, v: &Verdict) {
    println!("  {label}: {} [{}]", v.answer, v.code);
    for r in &v.reductions {
        println!("    reduction: {:?} removed {}, order now {}", r.kind, r.removed, r.result_order);
    }
    for line in &v.trace {
        println!("    {line}");
    }
}

fn print_analysis(t: &CharTable, a: &PrimeAnalysis) {
    println!("{} (order {}), p = {}", t.name().unwrap_or("table"), t.group_order(), a.p);
    print_verdict("|P:P'| = p^2", &a.commutator);
    print_verdict("|P:Z(P)| = p^2", &a.center);
    println!("  abelian Sylow: {}", a.abelian_sylow);
    println!(
        "  blocks: {}, principal block {:?}, p'-degree characters in it: {}",
        a.block_count, a.principal_block, a.height_zero_principal
    );
}

fn finish_rows(rows: &[ReportRow], json: bool) -> Result<(), Failure> {
    print!("{}", emit_report(rows, if json { ReportFormat::Json } else { ReportFormat::Text }));
    if app::has_mismatch(rows) {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file, primes, gap, json } => {
            let text = read(&file)?;
            let t = if gap {
                io::convert_gap_mot(&text).map_err(|e| Failure::Input(e.to_string()))?
            } else {
                io::parse_table(&text).map_err(|e| Failure::Input(e.to_string()))?
            };
            let analyses = app::select_primes(&t, primes.p)
                .into_iter()
                .map(|p| app::analyze_prime(&t, p))
                .collect::<Result<Vec<_>, _>>()?;
            if json {
                println!("{}", serde_json::to_string_pretty(&analyses).expect("analyses serialize"));
            } else {
                analyses.iter().for_each(|a| print_analysis(&t, a));
            }
            Ok(())
        }
        Command::Oracle { file, primes, max_elements, emit_table, json } => {
            let run = app::cmd_oracle(&read(&file)?, primes.p, max_elements)?;
            if let Some(path) = emit_table {
                std::fs::write(&path, io::emit_table(&run.table))
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            if !json {
                run.analyses.iter().for_each(|a| print_analysis(&run.table, a));
            }
            finish_rows(&run.rows, json)
        }
        Command::Corpus { filter, max_elements, list, json } => {
            let entries = corpus::entries();
            if list {
                entries.iter().for_each(|e| println!("{}", e.name));
                return Ok(());
            }
            let rows = app::cmd_corpus(&entries, filter.as_deref(), max_elements);
            if rows.is_empty() {
                return Err(Failure::Usage(format!("no corpus entry matches {:?}", filter.unwrap_or_default())));
            }
            finish_rows(&rows, json)
        }
        Command::Export { name } => {
            let entry = corpus::entries()
                .into_iter()
                .find(|e| e.name == name)
                .ok_or_else(|| Failure::Usage(format!("no corpus entry named {name}")))?;
            match entry.source {
                CorpusSource::Group(doc) => print!("{}", io::emit_group(&doc)),
                CorpusSource::Table(doc) => {
                    println!("{}", serde_json::to_string_pretty(&doc).expect("documents serialize"))
                }
            }
            Ok(())
        }
        Command::ConvertGap { file } => {
            let t = io::convert_gap_mot(&read(&file)?).map_err(|e| Failure::Input(e.to_string()))?;
            print!("{}", io::emit_table(&t));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Mismatch) => {
            eprintln!("error: detector verdicts disagree with the oracle");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
