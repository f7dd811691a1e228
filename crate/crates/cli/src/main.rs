use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dasym_cli::commands::{self, Outcome};
use dasym_cli::{CliError, CliResult, OutputFormat, RunConfig};
use dasym_core::expansion::RenderStyle;
use dasym_core::numerics::BigReal;
use dasym_core::{Law, Rational};

#[derive(Parser)]
#[command(name = "dasym", version, about = "Asymptotic expansions of reciprocal Dirichlet series")]
struct Cli {
    /// Expansion threshold p/q: keep bases at or above it.
    #[arg(long, global = true, default_value = "1/5", value_parser = parse_rational)]
    threshold: Rational,
    /// Maximum number of terms an expansion may hold.
    #[arg(long, global = true, default_value_t = 512)]
    term_cap: usize,
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, default_value_t = 256)]
    bits: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LawArg {
    #[value(name = "V", alias = "v")]
    V,
    #[value(name = "A", alias = "a")]
    A,
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    Reduced,
    Powers,
}

#[derive(Subcommand)]
enum Command {
    /// List the cataloged series.
    Catalog,
    /// Reciprocal expansion of a series down to the threshold.
    Expand {
        series: String,
        #[arg(long, value_enum, default_value_t = Style::Reduced)]
        style: Style,
    },
    /// Coefficient of one base by tuple enumeration.
    Oracle {
        series: String,
        #[arg(value_parser = parse_rational)]
        base: Rational,
        #[arg(long, default_value_t = 64)]
        depth_cap: usize,
    },
    /// Compare term signs with a rational Liouville law.
    Audit {
        series: String,
        #[arg(long, value_enum, default_value_t = LawArg::V)]
        law: LawArg,
    },
    /// Residual of the expansion against the evaluated function at s.
    Validate {
        series: String,
        #[arg(long, value_parser = parse_real)]
        s: Option<BigReal>,
    },
    /// Evaluate a limit probe; lists probes when none is named.
    Limits {
        probe: Option<String>,
        #[arg(long, value_parser = parse_real)]
        x: Option<BigReal>,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Diff bundled fixtures against computed expansions.
    Fixtures { series: Option<String> },
    /// Run the acceptance criteria.
    Acceptance {
        /// Run a single criterion (1 to 9).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=9))]
        only: Option<u8>,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_real(s: &str) -> Result<BigReal, String> {
    BigReal::parse_decimal(s, 1024).ok_or_else(|| format!("{s:?} is not a decimal number"))
}

fn run(cli: Cli) -> CliResult<Outcome> {
    let format = match cli.format {
        Format::Text => OutputFormat::Text,
        Format::Json => OutputFormat::Json,
    };
    let config = RunConfig::new(cli.threshold, cli.term_cap, cli.bits, format)?;
    match cli.command {
        Command::Catalog => commands::cmd_catalog(&config),
        Command::Expand { series, style } => {
            let style = match style {
                Style::Reduced => RenderStyle::Reduced,
                Style::Powers => RenderStyle::LeadingPowers,
            };
            commands::cmd_expand(&series, &config, style)
        }
        Command::Oracle { series, base, depth_cap } => commands::cmd_oracle(&series, &base, depth_cap, &config),
        Command::Audit { series, law } => {
            let law = match law {
                LawArg::V => Law::V,
                LawArg::A => Law::A,
            };
            commands::cmd_audit(&series, law, &config)
        }
        Command::Validate { series, s } => {
            let s = match s {
                Some(s) => s,
                None => BigReal::from_i64(commands::default_s(&series)?.into()),
            };
            commands::cmd_validate(&series, &s, &config)
        }
        Command::Limits { probe, x, n } => commands::cmd_limits(probe.as_deref(), x.as_ref(), n, &config),
        Command::Fixtures { series } => commands::cmd_fixtures(series.as_deref(), &config),
        Command::Acceptance { only } => commands::cmd_acceptance(only, &config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &CliError) -> ExitCode {
    ExitCode::from(e.exit_code() as u8)
}
