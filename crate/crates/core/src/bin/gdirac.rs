use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use grassmann_dirac::cli::{
    cmd_analyze, cmd_bracket, cmd_lattice, parse_checks, AnalyzeOptions, BracketChoice, CliError,
    ExitStatus, LatticeOptions, RunReport,
};
use grassmann_dirac::lattice::Tolerances;

#[derive(Parser)]
#[command(
    name = "gdirac",
    version,
    about = "Graded brackets, constraint analysis and lattice Dirac-field checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the constraint pipeline on a .gham model.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Random samples per algebra identity.
        #[arg(long, default_value_t = 60)]
        samples: usize,
        /// Skip the graded-algebra identity checks.
        #[arg(long)]
        no_identities: bool,
        /// Also report identities for the gd1/gd2 variants (informational).
        #[arg(long)]
        variants: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluate one bracket of two phase-space expressions.
    Bracket {
        file: PathBuf,
        f: String,
        g: String,
        #[arg(long, default_value = "gd", value_parser = ["gp", "gd", "gd1", "gd2"])]
        bracket: String,
    },
    /// Run lattice Dirac-field checks from a config file.
    Lattice {
        config: PathBuf,
        /// Comma-separated check names or `all`; overrides the config's list.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: TolArgs,
    },
}

#[derive(Args)]
struct TolArgs {
    #[arg(long)]
    tol_derived: Option<f64>,
    #[arg(long)]
    tol_constructional: Option<f64>,
    #[arg(long)]
    tol_lemma: Option<f64>,
    #[arg(long)]
    tol_theorem1: Option<f64>,
    #[arg(long)]
    tol_eom: Option<f64>,
    #[arg(long)]
    tol_series_tail: Option<f64>,
}

impl TolArgs {
    fn resolve(&self) -> Tolerances {
        let mut t = Tolerances::default();
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut t.derived, self.tol_derived);
        set(&mut t.constructional, self.tol_constructional);
        set(&mut t.lemma, self.tol_lemma);
        set(&mut t.theorem1, self.tol_theorem1);
        set(&mut t.eom, self.tol_eom);
        set(&mut t.series_tail, self.tol_series_tail);
        t
    }
}

fn emit(report: &RunReport, json: Option<&PathBuf>) -> Result<ExitStatus, CliError> {
    print!("{}", report.render());
    if let Some(path) = json {
        std::fs::write(path, report.to_json()).map_err(|e| {
            CliError::new(ExitStatus::InputError, format!("{}: {e}", path.display()))
        })?;
    }
    Ok(report.status())
}

fn run(cli: Cli) -> Result<ExitStatus, CliError> {
    match cli.command {
        Command::Analyze {
            file,
            seed,
            samples,
            no_identities,
            variants,
            json,
        } => {
            let opts = AnalyzeOptions {
                seed,
                samples,
                identities: !no_identities,
                variants,
            };
            emit(&cmd_analyze(&file, &opts)?, json.as_ref())
        }
        Command::Bracket {
            file,
            f,
            g,
            bracket,
        } => {
            let choice = BracketChoice::parse(&bracket).expect("clap restricts values");
            print!("{}", cmd_bracket(&file, &f, &g, choice)?.render());
            Ok(ExitStatus::Pass)
        }
        Command::Lattice {
            config,
            checks,
            json,
            seed,
            tol,
        } => {
            let checks = checks.as_deref().map(parse_checks).transpose()?;
            let opts = LatticeOptions {
                checks,
                seed,
                tolerances: tol.resolve(),
            };
            emit(&cmd_lattice(&config, &opts)?, json.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let status = run(cli).unwrap_or_else(|e| {
        eprintln!("error: {}", e.message);
        e.status
    });
    ExitCode::from(status.code() as u8)
}
