use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use microroll::{
    cmd_analyze, cmd_calibrate, cmd_simulate, cmd_sweep, load_config, load_sweep_spec, resolve_config_path,
    CalibrationTargets, CliError, RunOverrides, CONFIG_DIR_ENV,
};

#[derive(Parser)]
#[command(name = "microroll", version, about = "Milligram rolling robot simulator")]
struct Cli {
    /// Robot description (TOML). Defaults to default.toml in the config
    /// directory, then to the built-in reference robot.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory holding configs.
    #[arg(long, global = true, env = CONFIG_DIR_ENV)]
    config_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the static torque, coil and mass budget.
    Analyze,
    /// Run a scenario and write the CSV trace.
    Simulate {
        #[arg(long, default_value = "supercap")]
        scenario: String,
        /// Output CSV; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Time step, s.
        #[arg(long)]
        dt: Option<f64>,
        /// Run length, s.
        #[arg(long)]
        duration: Option<f64>,
    },
    /// Fit quiescent draw, net stroke and rolling radius to measurements.
    Calibrate {
        #[arg(long = "runtime-s")]
        runtime_s: Option<f64>,
        #[arg(long = "wheel-rate-dps")]
        wheel_rate_dps: Option<f64>,
        #[arg(long = "speed-mm-s")]
        speed_mm_s: Option<f64>,
        /// Where to write the calibrated config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep one parameter and tabulate objectives.
    Sweep {
        /// Sweep description (TOML).
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let path = resolve_config_path(cli.config.as_deref(), cli.config_dir.as_deref());
    let cfg = load_config(path.as_deref())?;
    match cli.command {
        Command::Analyze => print!("{}", cmd_analyze(&cfg)?),
        Command::Simulate { scenario, out, dt, duration } => {
            let trace = cmd_simulate(&cfg, &scenario, RunOverrides { dt, duration }, out.as_deref())?;
            if out.is_some() {
                let s = trace.summary;
                eprintln!(
                    "runtime {:.4} s, distance {:.6} m, wheel rate {:.3} deg/s, coil power {:.4} mW",
                    s.runtime,
                    s.distance,
                    s.mean_wheel_rate,
                    s.mean_coil_power * 1e3
                );
            }
        }
        Command::Calibrate { runtime_s, wheel_rate_dps, speed_mm_s, out } => {
            let targets = CalibrationTargets {
                runtime: runtime_s,
                wheel_rate: wheel_rate_dps,
                speed: speed_mm_s.map(|v| v * 1e-3),
            };
            let cal = cmd_calibrate(&cfg, targets, out.as_deref())?;
            print!("{}", cal.render());
            if out.is_none() {
                print!("\n{}", cal.config.to_toml_string());
            }
        }
        Command::Sweep { spec, out } => {
            let spec = load_sweep_spec(&spec)?;
            let rows = cmd_sweep(&cfg, &spec, out.as_deref())?;
            for row in rows.iter().filter(|r| r.outcome.is_err()) {
                log::warn!("{} = {} failed", spec.parameter, row.value);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(1))
        }
    }
}
