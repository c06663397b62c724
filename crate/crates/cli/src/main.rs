use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use taucheck::algebra::Algebra;
use taucheck::corpus::{self, Family};
use taucheck::format;
use taucheck::suite::{self, CorpusEntry, Suite, SuiteConfig};
use taucheck::Error;

const EXIT_INPUT: u8 = 2;
const EXIT_UNDETERMINED: u8 = 3;

#[derive(Parser)]
#[command(name = "taucheck", version, about = "Check tau-tilting and delooping-level statements on small algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest Ext degree and resolution length examined.
    #[arg(long, default_value_t = taucheck::homology::DEFAULT_HORIZON)]
    horizon: usize,
    /// Largest total dimension of enumerated modules.
    #[arg(long, default_value_t = 4)]
    max_dim: usize,
    /// Candidate witnesses tried per delooping search.
    #[arg(long, default_value_t = 64)]
    budget: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> SuiteConfig {
        let mut c = SuiteConfig { seed: self.seed, horizon: self.horizon, max_dim: self.max_dim, ..Default::default() };
        c.dell.budget = self.budget;
        c
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify one module given as `.alg` and `.mod` files.
    Classify {
        algebra: PathBuf,
        module: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites over built-in families and algebra files.
    RunSuite {
        /// Comma-separated: thm1, thm2, counts, dell, conjectures or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Comma-separated family names such as `LinearA(3)`, or `standard`.
        #[arg(long)]
        corpus: Option<String>,
        /// Additional `.alg` files.
        #[arg(long = "algebra")]
        algebras: Vec<PathBuf>,
        /// Characteristic used for built-in families.
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[command(flatten)]
        common: Common,
    },
    /// List indecomposable modules up to the dimension cap.
    Enumerate {
        /// A family name or a path to an `.alg` file.
        algebra: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Also list basic tau-tilting and support tau-tilting modules.
        #[arg(long)]
        tilting: bool,
        #[command(flatten)]
        common: Common,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Undetermined(_) => EXIT_UNDETERMINED,
            Error::Parse { .. }
            | Error::Io(_)
            | Error::Dimension(_)
            | Error::Validation(_)
            | Error::Precondition(_)
            | Error::Unsupported(_)
            | Error::Infeasible(_) => EXIT_INPUT,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, msg: msg.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<Arc<Algebra>, Failure> {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("A");
    format::parse_algebra(&read(path)?, stem).map_err(|e| {
        let mut f = Failure::from(e);
        f.msg = format!("{}: {}", path.display(), f.msg);
        f
    })
}

fn parse_families(spec: &str) -> Result<Vec<Family>, Failure> {
    if spec.trim() == "standard" {
        return Ok(corpus::standard_corpus());
    }
    // split on commas outside parentheses
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in spec.chars().chain(std::iter::once(',')) {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(Family::parse(&cur).ok_or_else(|| input_error(format!("unknown family '{}'", cur.trim())))?);
                }
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    Ok(out)
}

fn parse_suites(spec: &str) -> Result<Vec<Suite>, Failure> {
    if spec.trim() == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    spec.split(',')
        .map(|s| Suite::parse(s.trim()).ok_or_else(|| input_error(format!("unknown suite '{}'", s.trim()))))
        .collect()
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_report(report: &suite::Report, common: &Common) -> Result<u8, Failure> {
    let text = match common.format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Text => report.to_text(),
    };
    emit(&text, &common.out)?;
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Classify { algebra, module, common } => {
            let alg = load_algebra(&algebra)?;
            let (name, m) = format::parse_module(&read(&module)?, &alg).map_err(|e| {
                let mut f = Failure::from(e);
                f.msg = format!("{}: {}", module.display(), f.msg);
                f
            })?;
            let report = suite::classify_module(&m, &name, &common.config())?;
            emit_report(&report, &common)
        }
        Command::RunSuite { suite, corpus, algebras, p, common } => {
            let suites = parse_suites(&suite)?;
            let mut entries = Vec::new();
            let families = match (&corpus, algebras.is_empty()) {
                (Some(c), _) => parse_families(c)?,
                (None, true) => corpus::standard_corpus(),
                (None, false) => vec![],
            };
            for f in &families {
                let a = corpus::build_checked(f, p)?;
                entries.push(CorpusEntry { algebra: a, family: Some(f.clone()) });
            }
            for path in &algebras {
                entries.push(CorpusEntry::from_algebra(load_algebra(path)?));
            }
            let report = suite::run_suite(&entries, &suites, &common.config())?;
            emit_report(&report, &common)
        }
        Command::Enumerate { algebra, p, tilting, common } => {
            let alg = match Family::parse(&algebra) {
                Some(f) => corpus::build_checked(&f, p)?,
                None => load_algebra(Path::new(&algebra))?,
            };
            let listing = suite::pool_listing(&alg, common.max_dim, tilting)?;
            let text = match common.format {
                OutputFormat::Json => listing.to_json(),
                OutputFormat::Text => listing.to_text(),
            };
            emit(&text, &common.out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("taucheck: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
