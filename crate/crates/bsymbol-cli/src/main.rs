//! Command-line front end: construct codes, verify them exhaustively,
//! sweep parameter grids, and dump field tables.

mod grid;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use bsymbol::{verify_construction, Code, FieldCtx, Variant, FIELD_SIZE_CAP};
use grid::{BPolicy, SearchGrid};

/// Environment override for the field-size cap. The effective cap is the
/// minimum of this value and the built-in limit.
const CAP_ENV: &str = "BSYMBOL_FIELD_CAP";

#[derive(Parser)]
#[command(
    name = "bsymbol",
    version,
    about = "Trace codes for b-symbol read channels: construction, exhaustive \
             distance verification, and parameter-grid search."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one code and print its codewords, one line of symbol indices each.
    Construct(ConstructArgs),
    /// Exhaustively verify one code and emit a report.
    Verify(VerifyArgs),
    /// Verify every admissible point of a parameter grid.
    Search(SearchArgs),
    /// Print the exp/log tables of one finite field.
    DumpField(DumpFieldArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Full,
    Shortened,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Full => Variant::Full,
            VariantArg::Shortened => Variant::Shortened,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum VariantSelector {
    Full,
    Shortened,
    Both,
}

impl VariantSelector {
    fn variants(self) -> Vec<Variant> {
        match self {
            VariantSelector::Full => vec![Variant::Full],
            VariantSelector::Shortened => vec![Variant::Shortened],
            VariantSelector::Both => vec![Variant::Full, Variant::Shortened],
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct ConstructArgs {
    /// Field characteristic (prime).
    #[arg(long)]
    p: u64,
    /// Base-field degree: the code alphabet is GF(p^f).
    #[arg(long, default_value_t = 1)]
    f: u32,
    /// Extension degree over the alphabet; also the code dimension.
    #[arg(long)]
    s: u32,
    /// Index of the root subgroup: the length divides (Q-1)/e.
    #[arg(long, default_value_t = 1)]
    e: u64,
    #[arg(long, value_enum, default_value_t = VariantArg::Full)]
    variant: VariantArg,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    f: u32,
    #[arg(long)]
    s: u32,
    #[arg(long, default_value_t = 1)]
    e: u64,
    #[arg(long, value_enum, default_value_t = VariantArg::Full)]
    variant: VariantArg,
    /// Window widths: a comma list, `theorem` (2..=s-1), or `all`.
    #[arg(long, default_value = "theorem")]
    b: String,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the enumeration scans.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct SearchArgs {
    /// Comma list of characteristics.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    f: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    s: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    e: Vec<u64>,
    #[arg(long, value_enum, default_value_t = VariantSelector::Both)]
    variant: VariantSelector,
    #[arg(long, default_value = "theorem")]
    b: String,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct DumpFieldArgs {
    #[arg(long)]
    p: u64,
    /// Extension degree: dumps GF(p^f).
    #[arg(long, default_value_t = 1)]
    f: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// Ok(passed): the work ran; `passed` is false when an assertion failed.
/// Err: usage, construction, or I/O problems.
fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::Construct(args) => run_construct(args),
        Command::Verify(args) => run_verify(args),
        Command::Search(args) => run_search(args),
        Command::DumpField(args) => run_dump_field(args),
    }
}

fn effective_cap() -> Result<u64> {
    match std::env::var(CAP_ENV) {
        Ok(text) => {
            let value: u64 = text
                .trim()
                .parse()
                .with_context(|| format!("{CAP_ENV} must be a positive integer, got '{text}'"))?;
            Ok(value.min(FIELD_SIZE_CAP))
        }
        Err(std::env::VarError::NotPresent) => Ok(FIELD_SIZE_CAP),
        Err(err) => Err(err).context(CAP_ENV),
    }
}

fn check_cap(p: u64, f: u32, s: u32, cap: u64) -> Result<()> {
    let order = grid::ext_order(p, f, s);
    if order > u128::from(cap) {
        bail!("field order {order} exceeds the size cap {cap}");
    }
    Ok(())
}

fn init_jobs(jobs: usize) -> Result<()> {
    if jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .context("initializing the worker pool")?;
    Ok(())
}

fn write_out(content: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

/// Widths for a single-code run. Unlike grid search, an explicit list with an
/// out-of-range entry is a usage error here rather than a silent drop.
fn resolve_widths(policy: &BPolicy, code: &Code) -> Result<Vec<u32>> {
    match policy {
        BPolicy::Explicit(list) => {
            let max = code.length() - 1;
            for &b in list {
                if b < 2 || u64::from(b) > max {
                    bail!("width {b} is outside the valid range 2..={max}");
                }
            }
            let mut widths = list.clone();
            widths.sort_unstable();
            widths.dedup();
            Ok(widths)
        }
        other => Ok(other.widths_for(code.params().s, code.length())),
    }
}

fn run_construct(args: ConstructArgs) -> Result<bool> {
    check_cap(args.p, args.f, args.s, effective_cap()?)?;
    let code = Code::build(args.p, args.f, args.s, args.e, args.variant.into())?;
    let mut buf = Vec::new();
    code.write_dump(&mut buf)?;
    let content = String::from_utf8(buf).expect("dump output is ascii");
    write_out(&content, args.out.as_deref())?;
    Ok(true)
}

fn run_verify(args: VerifyArgs) -> Result<bool> {
    init_jobs(args.jobs)?;
    check_cap(args.p, args.f, args.s, effective_cap()?)?;
    let policy = BPolicy::parse(&args.b).map_err(|msg| anyhow::anyhow!("--b: {msg}"))?;
    let code = Code::build(args.p, args.f, args.s, args.e, args.variant.into())?;
    let widths = resolve_widths(&policy, &code)?;
    let report = verify_construction(&code, &widths)?;
    let content = match args.format {
        OutFormat::Json => {
            let mut text = report.to_json();
            text.push('\n');
            text
        }
        OutFormat::Csv => grid::to_csv(std::slice::from_ref(&report)),
    };
    write_out(&content, args.out.as_deref())?;
    for failure in report.failures() {
        eprintln!("failed: {failure}");
    }
    Ok(report.all_passed())
}

fn run_search(args: SearchArgs) -> Result<bool> {
    init_jobs(args.jobs)?;
    let policy = BPolicy::parse(&args.b).map_err(|msg| anyhow::anyhow!("--b: {msg}"))?;
    let search = SearchGrid {
        p: args.p,
        f: args.f,
        s: args.s,
        e: args.e,
        variants: args.variant.variants(),
        b_policy: policy,
        cap: effective_cap()?,
    };
    let outcome = grid::run_search(&search);
    for (point, reason) in &outcome.skipped {
        eprintln!("skipped {point}: {reason}");
    }
    let content = match args.format {
        OutFormat::Json => grid::to_json_array(&outcome.reports),
        OutFormat::Csv => grid::to_csv(&outcome.reports),
    };
    write_out(&content, args.out.as_deref())?;
    for report in &outcome.reports {
        for failure in report.failures() {
            eprintln!(
                "failed p={} f={} s={} e={} variant={}: {failure}",
                report.params.p, report.params.f, report.params.s, report.params.e, report.variant
            );
        }
    }
    Ok(outcome.all_passed())
}

fn run_dump_field(args: DumpFieldArgs) -> Result<bool> {
    check_cap(args.p, args.f, 1, effective_cap()?)?;
    let ctx = FieldCtx::build(args.p, args.f)?;
    let mut text = String::new();
    writeln!(
        text,
        "# field p={} m={} order={}",
        ctx.characteristic(),
        ctx.extension_degree(),
        ctx.order()
    )?;
    let modulus: Vec<String> = ctx.modulus().iter().map(u64::to_string).collect();
    writeln!(text, "# modulus {}", modulus.join(","))?;
    writeln!(text, "# gamma {}", ctx.gamma().index())?;
    for exp in 0..ctx.order() - 1 {
        writeln!(text, "{exp} {}", ctx.antilog(exp).index())?;
    }
    write_out(&text, args.out.as_deref())?;
    Ok(true)
}
