use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use expwell_cli::{
    cmd_potential, cmd_spectrum, cmd_tables, cmd_wavefunction, run_verify, write_file, CliError, CliResult,
    Grid, MethodChoice, OutputFormat, RunConfig, EXIT_OK, EXIT_VERIFY_FAILED, POTENTIAL_A_MINUS,
};

#[derive(Parser)]
#[command(
    name = "expwell",
    version,
    about = "Bound states of the exponentially confining well"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy levels for one parameter set.
    Spectrum(CommonArgs),
    /// Regenerate table1.csv..table4.csv.
    Tables {
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// V(x) traces, one column per A- value.
    Potential {
        #[command(flatten)]
        common: CommonArgs,
        /// A- values, comma separated.
        #[arg(long = "aminus-list", value_delimiter = ',', allow_hyphen_values = true)]
        a_minus_list: Option<Vec<f64>>,
    },
    /// Sampled wavefunctions with an energies/potential sidecar.
    Wavefunction {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of states, starting from the ground state.
        #[arg(long, default_value_t = 6)]
        states: usize,
        /// Rescale each state to unit norm on the grid.
        #[arg(long)]
        normalize: bool,
    },
    /// Run the verification suite and print a JSON report.
    Verify {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Accepted for compatibility; the report is always JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(long = "aminus", default_value_t = 8.0, allow_hyphen_values = true)]
    a_minus: f64,
    #[arg(long = "aplus", default_value_t = 2.0)]
    a_plus: f64,
    #[arg(long, value_enum)]
    method: Option<MethodChoice>,
    /// Laguerre basis parameter.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    nu: f64,
    /// Laguerre basis size.
    #[arg(long, default_value_t = 100)]
    k: usize,
    /// Levels reported by the Laguerre method.
    #[arg(long, default_value_t = 8)]
    count: usize,
    #[arg(long, allow_hyphen_values = true)]
    xmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    xmax: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

impl CommonArgs {
    fn config(&self, default_method: MethodChoice, default_grid: Grid) -> RunConfig {
        RunConfig {
            lambda: self.lambda,
            a_minus: self.a_minus,
            a_plus: self.a_plus,
            method: self.method.unwrap_or(default_method),
            nu: self.nu,
            k: self.k,
            count: self.count,
            grid: Grid {
                xmin: self.xmin.unwrap_or(default_grid.xmin),
                xmax: self.xmax.unwrap_or(default_grid.xmax),
                points: self.points.unwrap_or(default_grid.points),
            },
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Spectrum(args) => {
            let table = cmd_spectrum(&args.config(MethodChoice::Tra, Grid::WAVEFUNCTION))?;
            emit(args.out.as_ref(), &table.render(args.format))?;
        }
        Command::Tables { out } => {
            for path in cmd_tables(&out)? {
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Potential { common, a_minus_list } => {
            let list = a_minus_list.unwrap_or_else(|| POTENTIAL_A_MINUS.to_vec());
            let table = cmd_potential(&common.config(MethodChoice::Tra, Grid::POTENTIAL), &list)?;
            emit(common.out.as_ref(), &table.render(common.format))?;
        }
        Command::Wavefunction {
            common,
            states,
            normalize,
        } => {
            let cfg = common.config(MethodChoice::Laguerre, Grid::WAVEFUNCTION);
            let wf = cmd_wavefunction(&cfg, states, normalize)?;
            let sidecar = serde_json::to_string_pretty(&wf.sidecar).expect("sidecar serializes") + "\n";
            match common.format {
                OutputFormat::Csv => {
                    emit(common.out.as_ref(), &wf.table.to_csv())?;
                    if let Some(path) = &common.out {
                        let side = path.with_extension("json");
                        write_file(&side, &sidecar)?;
                        eprintln!("wrote {} and {}", path.display(), side.display());
                    }
                }
                OutputFormat::Json => {
                    let doc = serde_json::json!({ "table": wf.table.to_json(), "sidecar": wf.sidecar });
                    let text = serde_json::to_string_pretty(&doc).expect("document serializes") + "\n";
                    emit(common.out.as_ref(), &text)?;
                }
            }
        }
        Command::Verify { out, json: _ } => {
            let report = run_verify();
            for c in &report.checks {
                eprintln!(
                    "{} {} residual {:e} tolerance {:e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.check,
                    c.max_residual,
                    c.tolerance
                );
            }
            emit(out.as_ref(), &report.to_json())?;
            if !report.pass {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(CliError::exit_code(&e) as u8)
        }
    }
}
