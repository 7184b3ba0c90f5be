use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equistar_cli::{
    cmd_coeff, cmd_lx, cmd_star, cmd_suite_all, cmd_verify, cmd_zp, parse_rational, CliError, CommandOutput, Format,
};
use equistar_core::SuiteConfig;

#[derive(Parser)]
#[command(name = "equistar", version, about = "Exact projectively equivariant star products on polynomial symbols")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Dimension of the base (variables u1..un, xi1..xin).
    #[arg(long, global = true, default_value_t = 1)]
    n: usize,
    /// Exact rational parameter, e.g. 1/2.
    #[arg(long, global = true, default_value = "1/2", allow_hyphen_values = true)]
    lambda: String,
    /// Highest coefficient index shown by `star`.
    #[arg(long = "p-max", global = true)]
    p_max: Option<u32>,
    /// Maximal total degree of random symbols.
    #[arg(long = "max-degree", global = true, default_value_t = 4)]
    max_degree: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random cases per suite.
    #[arg(long, global = true, default_value_t = 64)]
    cases: usize,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Worker threads for suites (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Report elapsed_ms as 0 so reports are byte-identical across runs.
    #[arg(long = "no-timing", global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients C_0..C_pmax of phi * psi.
    Star {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        psi: String,
    },
    /// A single coefficient C_p.
    Coeff {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        psi: String,
        #[arg(long)]
        p: u32,
    },
    /// Normal form of the invariant operator Z_p.
    Zp {
        #[arg(long)]
        p: u32,
    },
    /// The operator L^x for a matrix spec such as e10 or 2*e01 - e10.
    Lx {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Run one verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
    /// Run every verification suite.
    SuiteAll {
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
}

fn run(cli: Cli) -> Result<CommandOutput, CliError> {
    let c = &cli.common;
    if c.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let lambda = parse_rational(&c.lambda).map_err(|e| CliError::Parse("--lambda".into(), e))?;
    let format = match c.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let config = |p: u32| SuiteConfig {
        n: c.n,
        lambda: lambda.clone(),
        p,
        max_degree: c.max_degree,
        seed: c.seed,
        cases: c.cases,
        jobs: c.jobs,
    };
    match &cli.command {
        Command::Star { phi, psi } => cmd_star(c.n, &lambda, phi, psi, c.p_max, format),
        Command::Coeff { phi, psi, p } => cmd_coeff(c.n, &lambda, phi, psi, *p, format),
        Command::Zp { p } => cmd_zp(c.n, *p, format),
        Command::Lx { x } => cmd_lx(c.n, x, format),
        Command::Verify { suite, p } => cmd_verify(suite, &config(*p), format, !c.no_timing),
        Command::SuiteAll { p } => cmd_suite_all(&config(*p), format, !c.no_timing),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.common.out.clone();
    match run(cli) {
        Ok(output) => {
            match out_path {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &output.rendered) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", output.rendered),
            }
            if output.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
