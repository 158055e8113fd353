use clap::{Parser, Subcommand as ClapSubcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use zgb_cli::{error_object, run, Format, RunConfig, Subcommand, TABLE_DIR_ENV};

#[derive(Parser, Debug)]
#[command(
    name = "zgb",
    version,
    about = "Zeta zero ordinates and bounds for their reciprocal sum"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,

    /// Write the report (or, for `zeros` and `ingest`, the table) here
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cache directory for computed tables
    #[arg(long, global = true, env = TABLE_DIR_ENV)]
    table_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(ClapSubcommand, Debug)]
enum Command {
    /// Build, audit and persist the ordinates up to a height
    Zeros {
        #[arg(long, allow_negative_numbers = true)]
        t_max: f64,
    },
    /// N(T) against the envelope F(T) ± R(T)
    Count {
        #[arg(long, allow_negative_numbers = true)]
        at: f64,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// A(T), M(T) and their difference
    Sum {
        #[arg(long, allow_negative_numbers = true)]
        at: f64,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// γ₁, c_au and c_al with their comparisons
    Constants,
    /// Sweep 3/50 < A(T) − M(T) < 109/250 over a range
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        t_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        t_max: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Parse a published ordinate file and cross-validate it
    Ingest {
        #[arg(long)]
        file: PathBuf,
        /// Compare only up to this height
        #[arg(long, allow_negative_numbers = true)]
        t_max: Option<f64>,
    },
}

fn config_from(cli: Cli) -> RunConfig {
    let sub = match &cli.command {
        Command::Zeros { .. } => Subcommand::Zeros,
        Command::Count { .. } => Subcommand::Count,
        Command::Sum { .. } => Subcommand::Sum,
        Command::Constants => Subcommand::Constants,
        Command::Verify { .. } => Subcommand::Verify,
        Command::Ingest { .. } => Subcommand::Ingest,
    };
    let mut cfg = RunConfig::new(sub);
    cfg.format = cli.format;
    cfg.output = cli.out;
    cfg.table_dir = cli.table_dir;
    match cli.command {
        Command::Zeros { t_max } => cfg.t_max = Some(t_max),
        Command::Count { at, table } | Command::Sum { at, table } => {
            cfg.at = Some(at);
            cfg.table = table;
        }
        Command::Constants => {}
        Command::Verify {
            t_min,
            t_max,
            samples,
            table,
        } => {
            cfg.t_min = t_min;
            cfg.t_max = t_max;
            cfg.samples = samples;
            cfg.table = table;
        }
        Command::Ingest { file, t_max } => {
            cfg.input = Some(file);
            cfg.t_max = t_max;
        }
    }
    cfg
}

fn fail(err: &anyhow::Error) -> ExitCode {
    eprintln!("{}", error_object(err));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&anyhow::anyhow!(e.to_string().trim().to_string())),
    };
    let config = config_from(cli);
    let outcome = match run(&config) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    // zeros and ingest write their table to --out; the report goes to stdout
    let report_to_file = !matches!(config.subcommand, Subcommand::Zeros | Subcommand::Ingest);
    let written = match (&config.output, report_to_file) {
        (Some(path), true) => std::fs::write(path, &outcome.report).map_err(anyhow::Error::from),
        _ => std::io::stdout()
            .write_all(outcome.report.as_bytes())
            .map_err(anyhow::Error::from),
    };
    if let Err(e) = written {
        return fail(&e);
    }
    if let Some(notes) = &outcome.notes {
        eprint!("{notes}");
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
