//! `nht`: check, search, transform and scramble with NHT matrices.
//!
//! Exit codes: 0 success, 1 domain failure (failed check, invalid key,
//! malformed container or catalog, refused search), 2 usage error, 3 I/O.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nht_core::catalog::{Catalog, CatalogEntry};
use nht_core::reference::{reproduce, PUBLISHED_TABLES};
use nht_core::search::DEFAULT_COST_GUARD;
use nht_core::{
    builtin_catalog, census, check_solution, descramble_stream, enumerate, forward,
    forward_unvalidated, inverse, is_identity, scramble_stream, Error, Modulus, NhtMatrix,
    ScrambleContainer, ScrambleKey, SearchOptions, SearchSpec,
};

const CATALOG_ENV: &str = "NHT_CATALOG";

#[derive(Parser)]
#[command(
    name = "nht",
    version,
    about = "Number theoretic Hilbert transform toolkit"
)]
struct Cli {
    /// Worker threads for search and census (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Largest m^(n/2) an exhaustive search may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_COST_GUARD)]
    cost_guard: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the orthogonality conditions N N^T = I (mod m).
    Check(KeyArgs),
    /// Find coefficient vectors that satisfy the conditions.
    Search(SearchArgs),
    /// Count all solutions and their orbits for one (n, m).
    Census(SizeArgs),
    /// Print the dense Gram matrix N N^T mod m.
    Gram(KeyArgs),
    /// Apply the forward (or inverse) transform to one block.
    Transform(TransformArgs),
    /// Scramble a file into an NHT container.
    Scramble(FileArgs),
    /// Restore the original file from an NHT container.
    Descramble(FileArgs),
    /// Regenerate the published transform tables and list discrepancies.
    Tables,
    /// Load a catalog, re-verify every entry and report.
    CatalogVerify(CatalogArgs),
}

#[derive(Args)]
struct SizeArgs {
    /// Block size (even, >= 4).
    #[arg(long)]
    n: usize,
    /// Modulus m >= 2.
    #[arg(long = "mod")]
    modulus: u64,
}

#[derive(Args)]
struct KeyArgs {
    #[command(flatten)]
    size: SizeArgs,
    /// Coefficients a,b,c,... (the odd positions of row 0).
    #[arg(long, value_delimiter = ',', required = true)]
    coeffs: Vec<u64>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    size: SizeArgs,
    /// Visit every coefficient vector in lexicographic order.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    exhaustive: bool,
    /// Sample coefficient vectors at random.
    #[arg(long, requires = "budget")]
    random: bool,
    /// Number of random trials.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop after this many solutions.
    #[arg(long)]
    limit: Option<usize>,
    /// Emit one representative per orbit.
    #[arg(long)]
    canonical: bool,
    /// Merge the results into the catalog file.
    #[arg(long)]
    save: bool,
    /// Catalog path used by --save.
    #[arg(long, env = CATALOG_ENV)]
    catalog: Option<PathBuf>,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    key: KeyArgs,
    /// Input block, comma-separated residues.
    #[arg(long, value_delimiter = ',', required = true)]
    input: Vec<u64>,
    /// Apply N^T instead of N.
    #[arg(long)]
    inverse: bool,
    /// Allow the forward transform with coefficients that fail the check.
    #[arg(long, conflicts_with = "inverse")]
    unchecked: bool,
}

#[derive(Args)]
struct FileArgs {
    #[command(flatten)]
    key: KeyArgs,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct CatalogArgs {
    /// Catalog file to verify.
    #[arg(long, env = CATALOG_ENV, required_unless_present = "builtin")]
    catalog: Option<PathBuf>,
    /// Verify the built-in catalog of published coefficient vectors.
    #[arg(long, conflicts_with = "catalog")]
    builtin: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => 3,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let options = SearchOptions {
        cost_guard: cli.cost_guard,
        workers: cli.workers,
    };
    match run(cli.command, options) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command, options: SearchOptions) -> CmdResult {
    match command {
        Command::Check(key) => cmd_check(&key),
        Command::Search(args) => cmd_search(&args, options),
        Command::Census(size) => cmd_census(&size, options),
        Command::Gram(key) => cmd_gram(&key),
        Command::Transform(args) => cmd_transform(&args),
        Command::Scramble(args) => cmd_scramble(&args),
        Command::Descramble(args) => cmd_descramble(&args),
        Command::Tables => cmd_tables(),
        Command::CatalogVerify(args) => cmd_catalog_verify(&args),
    }
}

fn modulus(m: u64) -> Result<Modulus, Failure> {
    Modulus::new(m).map_err(|e| Failure::usage(e.to_string()))
}

fn half_size(n: usize) -> Result<usize, Failure> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Failure::usage(format!(
            "--n must be even and at least 4, got {n}"
        )));
    }
    Ok(n / 2)
}

/// Validated `(m, matrix)` from key flags; the key itself may fail the check.
fn matrix_from(key: &KeyArgs) -> Result<NhtMatrix, Failure> {
    let m = modulus(key.size.modulus)?;
    let h = half_size(key.size.n)?;
    if key.coeffs.len() != h {
        return Err(Failure::usage(format!(
            "n = {} needs {h} coefficients, got {}",
            key.size.n,
            key.coeffs.len()
        )));
    }
    if let Some(c) = key.coeffs.iter().find(|&&c| c >= m.get()) {
        return Err(Failure::usage(format!(
            "coefficient {c} is not below modulus {m}"
        )));
    }
    NhtMatrix::from_coeffs(m, &key.coeffs).map_err(|e| Failure::usage(e.to_string()))
}

fn scramble_key(key: &KeyArgs) -> Result<ScrambleKey, Failure> {
    Ok(ScrambleKey::from_matrix(matrix_from(key)?)?)
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_check(key: &KeyArgs) -> CmdResult {
    let matrix = matrix_from(key)?;
    let verdict = check_solution(matrix.coeffs(), matrix.modulus())?;
    println!(
        "{} n={} m={} coeffs={}",
        if verdict.pass { "PASS" } else { "FAIL" },
        matrix.n(),
        matrix.modulus(),
        join(matrix.coeffs())
    );
    println!("diagonal-1 residual: {}", verdict.diagonal_residual);
    for (i, r) in verdict.lag_residuals.iter().enumerate() {
        println!("lag {} residual: {r}", i + 1);
    }
    Ok(if verdict.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_search(args: &SearchArgs, options: SearchOptions) -> CmdResult {
    let m = modulus(args.size.modulus)?;
    let h = half_size(args.size.n)?;
    let mut spec = if args.random {
        SearchSpec::random(h, m, args.budget.unwrap_or(0), args.seed)
    } else {
        SearchSpec::exhaustive(h, m)
    };
    spec.limit = args.limit;
    spec.canonical_only = args.canonical;
    spec.options = options;
    let records = enumerate(&spec)?;
    let mut out = String::new();
    for r in &records {
        writeln!(out, "{r}").expect("write to string");
    }
    print!("{out}");

    if args.save {
        let path = args
            .catalog
            .as_ref()
            .ok_or_else(|| Failure::usage(format!("--save needs --catalog or {CATALOG_ENV}")))?;
        let mut catalog = if path.exists() {
            Catalog::load_path(path)?
        } else {
            Catalog::new()
        };
        for r in &records {
            catalog.insert(CatalogEntry::try_from(r)?);
        }
        catalog.save_to_path(path)?;
        eprintln!("saved {} entries to {}", catalog.len(), path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_census(size: &SizeArgs, options: SearchOptions) -> CmdResult {
    let m = modulus(size.modulus)?;
    let h = half_size(size.n)?;
    let counts = census(h, m, &options)?;
    println!("n={} m={m}", size.n);
    println!("total solutions: {}", counts.total_solutions);
    println!("equivalence classes: {}", counts.equivalence_classes);
    Ok(ExitCode::SUCCESS)
}

fn cmd_gram(key: &KeyArgs) -> CmdResult {
    let matrix = matrix_from(key)?;
    let gram = matrix.gram()?;
    let width = (matrix.modulus().get() - 1).to_string().len();
    for row in gram.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        println!("{}", cells.join(" "));
    }
    let identity = is_identity(&gram, matrix.modulus());
    println!("identity: {}", if identity { "yes" } else { "no" });
    Ok(if identity {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_transform(args: &TransformArgs) -> CmdResult {
    let matrix = matrix_from(&args.key)?;
    if args.input.len() != matrix.n() {
        return Err(Failure::usage(format!(
            "--input needs {} values, got {}",
            matrix.n(),
            args.input.len()
        )));
    }
    if let Some(v) = args.input.iter().find(|&&v| v >= matrix.modulus().get()) {
        return Err(Failure::usage(format!(
            "input value {v} is not below modulus {}",
            matrix.modulus()
        )));
    }
    let output = if args.unchecked {
        forward_unvalidated(&matrix, &args.input)?
    } else {
        let key = ScrambleKey::from_matrix(matrix)?;
        if args.inverse {
            inverse(&key, &args.input)?
        } else {
            forward(&key, &args.input)?
        }
    };
    println!("{}", join(&output));
    Ok(ExitCode::SUCCESS)
}

fn cmd_scramble(args: &FileArgs) -> CmdResult {
    let key = scramble_key(&args.key)?;
    let data = fs::read(&args.input).map_err(Error::from)?;
    let container = scramble_stream(&key, &data);
    fs::write(&args.output, container.to_bytes()).map_err(Error::from)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_descramble(args: &FileArgs) -> CmdResult {
    let key = scramble_key(&args.key)?;
    let bytes = fs::read(&args.input).map_err(Error::from)?;
    let container = ScrambleContainer::from_bytes(&bytes)?;
    let data = descramble_stream(&container, &key)?;
    fs::write(&args.output, data).map_err(Error::from)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_tables() -> CmdResult {
    let mut errata = Vec::new();
    for table in PUBLISHED_TABLES {
        let report = reproduce(table);
        println!("{report}");
        for d in &report.discrepancies {
            let kind = if d.congruent(report.m) {
                "unreduced print"
            } else {
                "value differs mod m"
            };
            errata.push(format!(
                "{} row {} g({}): printed {}, computed {} ({kind})",
                report.name, d.row, d.position, d.printed, d.computed
            ));
        }
        if !report.verdict.pass {
            errata.push(format!(
                "{} coefficients {} fail the conditions mod {}: {}",
                report.name,
                join(&report.coeffs),
                report.m,
                report.verdict
            ));
        }
    }
    println!("Detected errata:");
    for e in &errata {
        println!("  - {e}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog_verify(args: &CatalogArgs) -> CmdResult {
    let catalog = if args.builtin {
        builtin_catalog()
    } else {
        let path = args
            .catalog
            .as_ref()
            .expect("clap requires --catalog without --builtin");
        Catalog::load_path(path)?
    };
    let mut failed = 0;
    for entry in catalog.entries() {
        if !entry.verified() {
            failed += 1;
        }
        println!(
            "{:<8} {entry}  [{}]",
            if entry.verified() {
                "VERIFIED"
            } else {
                "FAILED"
            },
            entry.source()
        );
    }
    println!(
        "{} entries, {} verified, {failed} failed",
        catalog.len(),
        catalog.len() - failed
    );
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
