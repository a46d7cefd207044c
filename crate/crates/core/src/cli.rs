//! The `annuity` command-line front end.
//!
//! ```text
//! annuity price     --age 90 [--defer N]
//! annuity table     [--from AGE]
//! annuity deferred  --defer 10 (--age M | --sweep 5)
//! annuity yield     [--step 5]
//! annuity solvency  --age 90
//! annuity median    [--age M]
//! annuity validate  [PATH]
//! ```
//!
//! Shared flags: `--mortality <csv>`, `--interest <percent>` or
//! `--rate <lambda>`, `--annuity <amount>`, `--format csv|tsv|markdown`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};

use crate::error::{Error, MortalityError};
use crate::exact::{parse_amount, round_crowns, Amount};
use crate::mortality::{kersseboom, load_table, median_remaining_term, MortalityTable};
use crate::pricing::{
    deferred_price, display_percent, implied_yield, median_term_price, price_table,
    price_table_from, InterestBasis,
};
use crate::solvency::project_reserves;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Tsv,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(
    name = "annuity",
    version,
    about = "Price life annuities over a mortality table"
)]
struct Cli {
    #[command(flatten)]
    shared: Shared,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Shared {
    /// Mortality CSV (`age,survivors`); defaults to the built-in table.
    #[arg(long, global = true, value_name = "PATH")]
    mortality: Option<PathBuf>,
    /// Interest in percent per year.
    #[arg(long, global = true, value_name = "PERCENT", conflicts_with = "rate")]
    interest: Option<String>,
    /// Accumulation factor per year, e.g. 21/20.
    #[arg(long, global = true, value_name = "LAMBDA")]
    rate: Option<String>,
    /// Annual payment in crowns.
    #[arg(long, global = true, value_name = "AMOUNT", default_value = "100")]
    annuity: String,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Price of a life annuity at one age.
    Price {
        #[arg(long)]
        age: u32,
        /// Years until the first payment.
        #[arg(long, default_value_t = 1)]
        defer: u32,
    },
    /// Prices for every age at which a payment is still due.
    Table {
        #[arg(long, value_name = "AGE", default_value_t = 0)]
        from: u32,
    },
    /// Deferred annuity price at one age, or a table over ages.
    Deferred {
        #[arg(long, required_unless_present = "sweep", conflicts_with = "sweep")]
        age: Option<u32>,
        #[arg(long)]
        defer: u32,
        /// Age step of the table.
        #[arg(long, value_name = "STEP", value_parser = clap::value_parser!(u32).range(1..))]
        sweep: Option<u32>,
    },
    /// Annual payment as a percent of the price.
    Yield {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        step: u32,
    },
    /// Capital run-off of one cohort until extinction.
    Solvency {
        #[arg(long)]
        age: u32,
    },
    /// Median-lifespan baseline price against the exact price.
    Median {
        #[arg(long)]
        age: Option<u32>,
    },
    /// Check a mortality file.
    Validate { path: Option<PathBuf> },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{path}: {source}")]
    Table {
        path: String,
        source: MortalityError,
    },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("invalid --{flag}: {message}")]
    Argument { flag: &'static str, message: String },
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Argument { .. } => 2,
            _ => 1,
        }
    }
}

/// Parses `argv`, runs one subcommand and returns the process exit code:
/// 0 on success, 2 for argument errors, 1 for data errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 2;
            }
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

struct Context {
    table: MortalityTable,
    basis: InterestBasis,
    payment: Amount,
    format: OutputFormat,
}

fn read_table(path: &Path) -> Result<MortalityTable, CliError> {
    let shown = path.display().to_string();
    let file = File::open(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    load_table(io::BufReader::new(file)).map_err(|source| CliError::Table {
        path: shown,
        source,
    })
}

fn argument(flag: &'static str, e: impl ToString) -> CliError {
    CliError::Argument {
        flag,
        message: e.to_string(),
    }
}

impl Context {
    fn from_shared(shared: &Shared) -> Result<Self, CliError> {
        let table = match &shared.mortality {
            Some(path) => read_table(path)?,
            None => kersseboom(),
        };
        let basis = match (&shared.interest, &shared.rate) {
            (Some(percent), _) => parse_amount(percent)
                .and_then(|p| InterestBasis::from_percent(&p).map_err(Error::from))
                .map_err(|e| argument("interest", e))?,
            (None, Some(rate)) => rate
                .parse::<InterestBasis>()
                .map_err(|e| argument("rate", e))?,
            (None, None) => InterestBasis::five_percent(),
        };
        let payment = parse_amount(&shared.annuity).map_err(|e| argument("annuity", e))?;
        if !payment.is_positive() {
            return Err(argument("annuity", "annual payment must be positive"));
        }
        Ok(Self {
            table,
            basis,
            payment,
            format: shared.format,
        })
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    if let Command::Validate { path } = &cli.command {
        let path = path.as_ref().or(cli.shared.mortality.as_ref());
        let table = match path {
            Some(p) => read_table(p)?,
            None => kersseboom(),
        };
        writeln!(
            out,
            "ok: {} ages, radix {}, extinction age {}",
            table.extinction_age(),
            table.radix(),
            table.extinction_age()
        )?;
        return Ok(());
    }

    let ctx = Context::from_shared(&cli.shared)?;
    let (table, basis, r) = (&ctx.table, &ctx.basis, &ctx.payment);
    match &cli.command {
        Command::Price { age, defer } => {
            let x = deferred_price(table, basis, *age, *defer, r).map_err(Error::from)?;
            writeln!(out, "{}", round_crowns(&x))?;
        }
        Command::Table { from } => {
            let prices = price_table_from(table, basis, r, *from).map_err(Error::from)?;
            let rows = prices.priced_rows().map(|row| {
                vec![
                    row.age.to_string(),
                    row.survivors.to_string(),
                    row.display_price(),
                ]
            });
            render(out, ctx.format, &["age", "survivors", "price"], rows)?;
        }
        Command::Deferred { age, defer, sweep } => match (age, sweep) {
            (Some(age), _) => {
                let x = deferred_price(table, basis, *age, *defer, r).map_err(Error::from)?;
                writeln!(out, "{}", round_crowns(&x))?;
            }
            (None, Some(step)) => {
                let mut rows = Vec::new();
                for age in (0..table.extinction_age()).step_by(*step as usize) {
                    let x = deferred_price(table, basis, age, *defer, r).map_err(Error::from)?;
                    if x.is_zero() {
                        break;
                    }
                    rows.push(vec![age.to_string(), round_crowns(&x)]);
                }
                render(out, ctx.format, &["age", "price"], rows)?;
            }
            (None, None) => unreachable!("clap requires --age or --sweep"),
        },
        Command::Yield { step } => {
            let prices = price_table(table, basis, r).map_err(Error::from)?;
            let mut rows = Vec::new();
            for row in prices.priced_rows().filter(|row| row.age % step == 0) {
                let pct = implied_yield(&row.price, r).map_err(Error::from)?;
                rows.push(vec![row.age.to_string(), display_percent(&pct)]);
            }
            render(out, ctx.format, &["age", "percent"], rows)?;
        }
        Command::Solvency { age } => {
            let traj = project_reserves(table, basis, *age, r).map_err(Error::from)?;
            let rows = traj.rows.iter().map(|row| {
                vec![
                    row.year.to_string(),
                    row.age.to_string(),
                    row.survivors.to_string(),
                    round_crowns(&row.reserve),
                ]
            });
            render(
                out,
                ctx.format,
                &["year", "age", "survivors", "reserve"],
                rows,
            )?;
        }
        Command::Median { age } => {
            let ages: Vec<u32> = match age {
                Some(a) => vec![*a],
                None => (0..table.extinction_age()).collect(),
            };
            let prices = match age {
                Some(a) => price_table_from(table, basis, r, *a),
                None => price_table(table, basis, r),
            }
            .map_err(Error::from)?;
            let mut rows = Vec::new();
            for a in ages {
                let term = median_remaining_term(table, a).map_err(Error::from)?;
                let baseline = median_term_price(table, basis, a, r)?;
                let exact = prices.price(a).expect("age is within the swept table");
                rows.push(vec![
                    a.to_string(),
                    table.survivors(a).to_string(),
                    term.to_string(),
                    round_crowns(&baseline),
                    round_crowns(exact),
                    round_crowns(&(&baseline - exact)),
                ]);
            }
            render(
                out,
                ctx.format,
                &[
                    "age",
                    "survivors",
                    "median_term",
                    "median_price",
                    "price",
                    "gap",
                ],
                rows,
            )?;
        }
        Command::Validate { .. } => unreachable!("handled above"),
    }
    Ok(())
}

/// Writes a header and rows in the chosen layout.
pub fn render<R>(
    out: &mut dyn Write,
    format: OutputFormat,
    header: &[&str],
    rows: impl IntoIterator<Item = R>,
) -> io::Result<()>
where
    R: AsRef<[String]>,
{
    match format {
        OutputFormat::Csv | OutputFormat::Tsv => {
            let sep = if format == OutputFormat::Csv {
                ","
            } else {
                "\t"
            };
            writeln!(out, "{}", header.join(sep))?;
            for row in rows {
                writeln!(out, "{}", row.as_ref().join(sep))?;
            }
        }
        OutputFormat::Markdown => {
            writeln!(out, "| {} |", header.join(" | "))?;
            let rule: Vec<&str> = header.iter().map(|_| "---:").collect();
            writeln!(out, "|{}|", rule.join("|"))?;
            for row in rows {
                writeln!(out, "| {} |", row.as_ref().join(" | "))?;
            }
        }
    }
    Ok(())
}
