use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use njc::model::{critical_detuning_single, critical_detuning_two, SingleModeParams, TwoModeParams};
use njc::output::{fmt_g, write_timeseries};
use njc::scenario::{preset, preset_names, ModelKind, ScenarioConfig};
use njc::tables::{table1, table2, write_table, TABLE_TOL};
use njc::validate::{run_validation, Mutation};
use njc::Result;

#[derive(Parser)]
#[command(name = "njc", version, about = "Deformed Jaynes-Cummings dynamics: time series, tables and self-checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a CSV time series for one scenario.
    Timeseries(ScenarioArgs),
    /// Recompute a published table of time averages as long-format CSV.
    Table {
        which: Table,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the closed form with the brute-force oracle and check identities.
    Validate {
        /// Flip the sign of the coupling matrix element (the suite must fail).
        #[arg(long, hide = true)]
        mutate_eta_sign: bool,
    },
    /// Print the critical detuning for a mean photon number.
    CriticalDetuning {
        #[arg(long, value_enum, default_value_t = Model::Single)]
        model: Model,
        /// Mean photon number (total over both modes for the two-mode model).
        #[arg(long)]
        mean: Option<f64>,
        #[arg(long = "k")]
        k: f64,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        omega1: Option<f64>,
        #[arg(long)]
        omega2: Option<f64>,
    },
    /// Print the resolved configuration, or list presets when none is given.
    Describe(ScenarioArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Table1,
    Table2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Single,
    Two,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Named figure panel, e.g. fig1a or fig8d.
    #[arg(long)]
    preset: Option<String>,
    /// key=value file applied after the preset.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    state: Option<String>,
    #[arg(long)]
    amp: Option<String>,
    #[arg(long = "k")]
    k: Option<String>,
    /// A number or `critical`.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    omega1: Option<String>,
    #[arg(long)]
    omega2: Option<String>,
    /// Final time in units of 1/lambda.
    #[arg(long)]
    tmax: Option<String>,
    /// Step in units of 1/lambda.
    #[arg(long)]
    dt: Option<String>,
    /// Fock cutoff or `auto`.
    #[arg(long)]
    nmax: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

impl ScenarioArgs {
    fn is_empty(&self) -> bool {
        self.preset.is_none() && self.config.is_none() && self.flags().iter().all(|(_, v)| v.is_none())
    }

    fn flags(&self) -> [(&'static str, &Option<String>); 12] {
        [
            ("model", &self.model),
            ("state", &self.state),
            ("amp", &self.amp),
            ("k", &self.k),
            ("delta", &self.delta),
            ("lambda", &self.lambda),
            ("omega1", &self.omega1),
            ("omega2", &self.omega2),
            ("tmax", &self.tmax),
            ("dt", &self.dt),
            ("nmax", &self.nmax),
            ("out", &self.out),
        ]
    }

    /// Preset, then config file, then flags.
    fn config(&self) -> Result<ScenarioConfig> {
        let mut c = match &self.preset {
            Some(name) => preset(name)?,
            None => ScenarioConfig::default(),
        };
        if let Some(path) = &self.config {
            c.apply_text(&std::fs::read_to_string(path)?)?;
        }
        for (key, value) in self.flags() {
            if let Some(v) = value {
                c.set(key, v)?;
            }
        }
        Ok(c)
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Timeseries(args) => {
            let config = args.config()?;
            let scenario = config.resolve()?;
            write_timeseries(&scenario, open_output(config.out.as_deref())?)?;
        }
        Command::Table { which, out } => {
            let entries = match which {
                Table::Table1 => table1()?,
                Table::Table2 => table2()?,
            };
            write_table(&entries, open_output(out.as_deref())?)?;
            let ok = entries.iter().filter(|e| e.within_tolerance()).count();
            eprintln!("{ok}/{} entries within ±{TABLE_TOL} of the published values", entries.len());
        }
        Command::Validate { mutate_eta_sign } => {
            let report = run_validation(Mutation { flip_eta_sign: mutate_eta_sign })?;
            println!("{report}\n");
            print!("{}", report.machine_readable());
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::CriticalDetuning { model, mean, k, lambda, omega1, omega2 } => {
            let value = match model {
                Model::Single => {
                    let p = SingleModeParams::new(omega1.unwrap_or(1.0), lambda.unwrap_or(1e-3), k, 0.0)?;
                    critical_detuning_single(mean.unwrap_or(30.0), &p)?
                }
                Model::Two => {
                    let p = TwoModeParams::new(
                        omega1.unwrap_or(0.5),
                        omega2.unwrap_or(0.5),
                        lambda.unwrap_or(2e-3),
                        k,
                        0.0,
                    )?;
                    critical_detuning_two(mean.unwrap_or(3.0), &p)?
                }
            };
            println!("{}", fmt_g(value));
        }
        Command::Describe(args) => {
            if args.is_empty() {
                for name in preset_names() {
                    println!("{name}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let config = args.config()?;
            let scenario = config.resolve()?;
            print!("{}", config.to_text());
            println!("# resolved: delta={} n_max={} mean={}", scenario.delta(), scenario.n_max, fmt_g(scenario.mean));
            if config.model == ModelKind::Two {
                println!("# columns: lambda_t,W_T,T_A_FF,T_AF1_F2,T_AF2_F1,E,coherence");
            } else {
                println!("# columns: lambda_t,W_S,L,coherence");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
