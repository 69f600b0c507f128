//! `sclbound` — exact bound tables and relation verification from the
//! command line.
//!
//! Exit status doubles as a CI gate: 0 means success with every requested
//! verification passing, 1 means some verification failed, 2 means the
//! invocation itself was invalid. Output for a fixed invocation is
//! byte-identical across runs.

use clap::{Args, Parser, Subcommand, ValueEnum};
use sclbound_core::bounds::{self, TypeSelection, TABLE_CSV_HEADER};
use sclbound_core::error::Error as CoreError;
use sclbound_core::homology;
use sclbound_core::rational::{decimal_string, display_fraction};
use sclbound_core::replay;
use sclbound_core::trace_words;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sclbound",
    version,
    about = "Exact upper bounds on stable commutator lengths of separating Dehn twists, \
             with homology-level verification of the twist relations behind them",
    after_help = "Exit status: 0 = success and all checks passed, 1 = a verification failed, \
                  2 = usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact bound for one (g, h), e.g. `bound --g 6 --h 2`
    Bound(BoundArgs),
    /// Bound table over a genus range
    Table(TableArgs),
    /// Run the homology-level relation suite over a genus range
    VerifyHomology(VerifyHomologyArgs),
    /// Certificate for the interleaving conjugacy on n generators
    #[command(name = "verify-lemma8")]
    VerifyLemma8(VerifyLemma8Args),
    /// Sweep the defect-coefficient aggregation identity
    VerifyIdentity(VerifyIdentityArgs),
    /// Replay the full bound derivation for one (g, h)
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct BoundArgs {
    /// Genus (g >= 2)
    #[arg(long)]
    g: usize,
    /// Separating type (0 <= h <= g)
    #[arg(long)]
    h: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Fractional digits in decimal renderings (presentation only; all
    /// computation is exact)
    #[arg(long, default_value_t = 8)]
    precision: usize,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Genus or genus range, e.g. `--g 6` or `--g 2..10` (inclusive)
    #[arg(long)]
    g: String,
    /// Separating type: a single h, a comma list, or `all` (= 1..g-1)
    #[arg(long, default_value = "all")]
    h: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, default_value_t = 8)]
    precision: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyHomologyArgs {
    /// Genus or genus range, e.g. `--g 2..8`
    #[arg(long)]
    g: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyLemma8Args {
    /// Number of generators of the commutation pattern (n >= 1)
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyIdentityArgs {
    /// Genus or genus range, e.g. `--g 2..300`
    #[arg(long)]
    g: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReplayArgs {
    /// Genus (g >= 2)
    #[arg(long)]
    g: usize,
    /// Separating type (1 <= h <= g/2)
    #[arg(long)]
    h: usize,
    /// Skip the homology identities (structural and ledger checks only)
    #[arg(long)]
    skip_homology: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// An invalid invocation: printed as a one-line diagnostic, exit 2.
struct UsageError(String);

impl From<CoreError> for UsageError {
    fn from(e: CoreError) -> Self {
        UsageError(e.to_string())
    }
}

struct Outcome {
    payload: String,
    all_passed: bool,
    out: Option<PathBuf>,
}

fn parse_genus_range(flag: &str, s: &str) -> Result<(usize, usize), UsageError> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| UsageError(format!("{flag} expects an integer or a..b range, got '{s}'")))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if hi < lo {
        return Err(UsageError(format!("{flag} range is empty: '{s}'")));
    }
    Ok((lo, hi))
}

fn parse_type_selection(flag: &str, s: &str) -> Result<TypeSelection, UsageError> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("all") {
        return Ok(TypeSelection::All);
    }
    let parse = |t: &str| {
        t.trim().parse::<usize>().map_err(|_| {
            UsageError(format!("{flag} expects an integer, a comma list, or 'all', got '{s}'"))
        })
    };
    if s.contains(',') {
        let hs = s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?;
        Ok(TypeSelection::List(hs))
    } else {
        Ok(TypeSelection::One(parse(s)?))
    }
}

fn reject_csv(format: Format, command: &str) -> Result<(), UsageError> {
    if format == Format::Csv {
        return Err(UsageError(format!("--format csv is not available for {command}")));
    }
    Ok(())
}

fn check_precision(precision: usize) -> Result<(), UsageError> {
    if precision == 0 {
        return Err(UsageError("--precision must be a positive integer".to_string()));
    }
    Ok(())
}

fn run_bound(args: BoundArgs) -> Result<Outcome, UsageError> {
    check_precision(args.precision)?;
    let result = bounds::bound(args.g, args.h)?;
    let payload = match args.format {
        Format::Text => {
            let mut line = format!(
                "{} (≈{})",
                display_fraction(&result.value),
                decimal_string(&result.value, args.precision)
            );
            if result.via_symmetry {
                line.push_str(&format!("  [via symmetry with h={}]", result.g - result.h));
            }
            line.push('\n');
            line
        }
        Format::Json => result.to_json() + "\n",
        Format::Csv => {
            let rows =
                bounds::table(args.g, args.g, &TypeSelection::One(args.h), args.precision)?;
            format!("{TABLE_CSV_HEADER}\n{}\n", rows[0].to_csv())
        }
    };
    Ok(Outcome { payload, all_passed: true, out: args.out })
}

fn run_table(args: TableArgs) -> Result<Outcome, UsageError> {
    check_precision(args.precision)?;
    let (g_min, g_max) = parse_genus_range("--g", &args.g)?;
    let selection = parse_type_selection("--h", &args.h)?;
    let rows = bounds::table(g_min, g_max, &selection, args.precision)?;
    let payload = match args.format {
        Format::Csv => {
            let mut s = String::from(TABLE_CSV_HEADER);
            for row in &rows {
                s.push('\n');
                s.push_str(&row.to_csv());
            }
            s.push('\n');
            s
        }
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
        Format::Text => {
            let fmt_opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            let mut s = format!(
                "{:>5} {:>5} {:>4} {:>4}  {:<20} {:<14} {:<12} {:<12}\n",
                "g", "h", "k", "r", "bound", "decimal", "lower_ref", "nonsep_ref"
            );
            for row in &rows {
                s.push_str(&format!(
                    "{:>5} {:>5} {:>4} {:>4}  {:<20} {:<14} {:<12} {:<12}\n",
                    row.g,
                    row.h,
                    fmt_opt(row.k),
                    fmt_opt(row.r),
                    display_fraction(&row.bound),
                    row.bound_decimal,
                    display_fraction(&row.lower_ref),
                    display_fraction(&row.nonsep_ref),
                ));
            }
            s
        }
    };
    Ok(Outcome { payload, all_passed: true, out: args.out })
}

fn run_verify_homology(args: VerifyHomologyArgs) -> Result<Outcome, UsageError> {
    reject_csv(args.format, "verify-homology")?;
    let (g_min, g_max) = parse_genus_range("--g", &args.g)?;
    let mut reports = Vec::new();
    for g in g_min..=g_max {
        reports.push(homology::verify_suite(g)?);
    }
    let all_passed = reports.iter().all(|r| r.passed);
    let payload = match args.format {
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
        _ => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.to_text());
            }
            s.push_str(&format!(
                "overall: {} ({} genus value{})\n",
                if all_passed { "all checks passed" } else { "FAILURES PRESENT" },
                reports.len(),
                if reports.len() == 1 { "" } else { "s" }
            ));
            s
        }
    };
    Ok(Outcome { payload, all_passed, out: args.out })
}

fn run_verify_lemma8(args: VerifyLemma8Args) -> Result<Outcome, UsageError> {
    reject_csv(args.format, "verify-lemma8")?;
    let cert = trace_words::verify_interleaving(args.n)?;
    let payload = match args.format {
        Format::Json => cert.to_json() + "\n",
        _ => cert.to_text(),
    };
    Ok(Outcome { payload, all_passed: cert.valid, out: args.out })
}

#[derive(Serialize)]
struct IdentitySweep {
    g_min: usize,
    g_max: usize,
    pairs_checked: usize,
    failures: Vec<(usize, usize)>,
    all_passed: bool,
}

fn run_verify_identity(args: VerifyIdentityArgs) -> Result<Outcome, UsageError> {
    reject_csv(args.format, "verify-identity")?;
    let (g_min, g_max) = parse_genus_range("--g", &args.g)?;
    if g_min < 2 {
        return Err(UsageError(format!("--g must be at least 2, got {g_min}")));
    }
    let mut pairs_checked = 0usize;
    let mut failures = Vec::new();
    for g in g_min..=g_max {
        for h in 1..=g / 2 {
            pairs_checked += 1;
            if !bounds::coefficient_identity_check(g, h)? {
                failures.push((g, h));
            }
        }
    }
    let sweep = IdentitySweep {
        g_min,
        g_max,
        pairs_checked,
        all_passed: failures.is_empty(),
        failures,
    };
    let payload = match args.format {
        Format::Json => serde_json::to_string_pretty(&sweep).expect("sweep serializes") + "\n",
        _ => {
            if sweep.all_passed {
                format!(
                    "coefficient identity holds for g in {}..{} ({} pairs checked)\n",
                    g_min, g_max, sweep.pairs_checked
                )
            } else {
                format!(
                    "coefficient identity FAILED at {:?} ({} pairs checked)\n",
                    sweep.failures, sweep.pairs_checked
                )
            }
        }
    };
    Ok(Outcome { payload, all_passed: sweep.all_passed, out: args.out })
}

fn run_replay(args: ReplayArgs) -> Result<Outcome, UsageError> {
    reject_csv(args.format, "replay")?;
    let options = replay::ReplayOptions { check_homology: !args.skip_homology };
    let report = replay::replay_report_with(args.g, args.h, options)?;
    let payload = match args.format {
        Format::Json => report.to_json() + "\n",
        _ => report.to_text(),
    };
    Ok(Outcome { payload, all_passed: report.all_checks_passed, out: args.out })
}

fn run(cli: Cli) -> Result<Outcome, UsageError> {
    match cli.command {
        Command::Bound(args) => run_bound(args),
        Command::Table(args) => run_table(args),
        Command::VerifyHomology(args) => run_verify_homology(args),
        Command::VerifyLemma8(args) => run_verify_lemma8(args),
        Command::VerifyIdentity(args) => run_verify_identity(args),
        Command::Replay(args) => run_replay(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            if let Some(path) = &outcome.out {
                if let Err(e) = std::fs::write(path, &outcome.payload) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", outcome.payload);
            }
            if outcome.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
