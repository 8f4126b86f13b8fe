use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spin_manifold::dynamics::BrachistochroneMode;
use spin_manifold::{build_initial_state, evolve, SystemConfig};
use spin_manifold_cli::grid::parse_number;
use spin_manifold_cli::sweep::FIGURE_C_COUNT;
use spin_manifold_cli::{
    run_sweep, validate_suite, CliError, CliResult, Grid, OutputFormat, Quantity, SweepSpec,
    ValidateOptions,
};

#[derive(Parser)]
#[command(
    name = "spin-manifold",
    version,
    about = "Geometry, phases, speed limits and entanglement of N spin-s particles under the long-range Ising model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate one quantity over a parameter grid
    Sweep {
        /// metric, curvature, euler, phase, aa_phase, speed, distance, brachistochrone, concurrence or fig1..fig5
        quantity: Quantity,
        #[command(flatten)]
        args: Common,
    },
    /// Curvature versus concurrence
    Fig1(Common),
    /// Geometric phase versus concurrence
    Fig2(Common),
    /// Evolution speed versus concurrence
    Fig3(Common),
    /// Geodesic distance versus concurrence
    Fig4(Common),
    /// Optimal time versus concurrence
    Fig5(Common),
    /// Gauss–Bonnet report; defaults to N=2, s=1/2, xi_max=pi
    Euler(Common),
    /// Minimal evolution time over a grid of xi
    Brachistochrone(Common),
    /// Run the oracle-equivalence battery
    Validate {
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Scale every closed-form curvature (mutation fixture)
        #[arg(long, hide = true, default_value_t = 1.0)]
        tamper_curvature: f64,
    },
    /// Print the evolved state vector as JSON
    State(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Optimal,
    Equatorial,
}

#[derive(Args, Clone)]
struct Common {
    /// Number of spins [default: 2]
    #[arg(long)]
    n: Option<usize>,
    /// 2s, a positive integer [default: 1]
    #[arg(long)]
    twice_spin: Option<u32>,
    /// Exchange constant J [default: 1]
    #[arg(long)]
    coupling: Option<f64>,
    /// Polar angle grid `a:b:k` or a single value; `pi` is understood
    #[arg(long)]
    theta: Option<Grid>,
    /// Azimuth grid `a:b:k` or a single value
    #[arg(long)]
    phi: Option<Grid>,
    /// Dimensionless time Jt, grid `a:b:k` or a single value
    #[arg(long)]
    xi: Option<Grid>,
    /// Concurrence grid as fractions of C_max; figure presets use only the count
    #[arg(long)]
    c: Option<Grid>,
    /// Short-time horizon used by the concurrence formulas [default: 1e-3]
    #[arg(long)]
    xi_prime_max: Option<f64>,
    /// Upper time limit for euler and aa_phase
    #[arg(long, value_parser = parse_number)]
    xi_max: Option<f64>,
    /// Pole cutoffs for euler, comma separated [default: 1e-2,1e-3,1e-4]
    #[arg(long, value_delimiter = ',', value_parser = parse_number)]
    epsilon: Vec<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Optimal)]
    mode: ModeArg,
    /// Unwrap global and geometric phases along xi
    #[arg(long)]
    unwrap: bool,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
}

impl Common {
    fn config(&self) -> CliResult<SystemConfig> {
        Ok(SystemConfig::from_twice_spin(
            self.n.unwrap_or(2),
            self.twice_spin.unwrap_or(1),
            self.coupling.unwrap_or(1.0),
        )?)
    }

    fn supplied(&self, flag: &str) -> bool {
        match flag {
            "n" => self.n.is_some(),
            "twice-spin" => self.twice_spin.is_some(),
            "coupling" => self.coupling.is_some(),
            "theta" => self.theta.is_some(),
            "phi" => self.phi.is_some(),
            "xi" => self.xi.is_some(),
            "xi-prime-max" => self.xi_prime_max.is_some(),
            _ => false,
        }
    }

    fn spec(&self, quantity: Quantity) -> CliResult<SweepSpec> {
        if quantity.is_figure() {
            return self.figure_spec(quantity);
        }
        let mut spec = SweepSpec::new(quantity, self.config()?);
        if let Some(g) = self.theta {
            spec.theta = g;
        }
        if let Some(g) = self.phi {
            spec.phi = g;
        }
        if let Some(g) = self.xi {
            spec.xi = g;
        }
        if let Some(g) = self.c {
            spec.c = g;
        }
        if let Some(x) = self.xi_prime_max {
            spec.xi_prime_max = x;
        }
        spec.xi_max = self.xi_max;
        if !self.epsilon.is_empty() {
            spec.epsilon = self.epsilon.clone();
        }
        spec.mode = match self.mode {
            ModeArg::Optimal => BrachistochroneMode::Optimal,
            ModeArg::Equatorial => BrachistochroneMode::Equatorial,
        };
        spec.unwrap = self.unwrap;
        spec.format = self.format;
        spec.out = self.out.clone();
        Ok(spec)
    }

    fn figure_spec(&self, quantity: Quantity) -> CliResult<SweepSpec> {
        for flag in quantity.preset_overrides() {
            if self.supplied(flag) {
                eprintln!("warning: {quantity} fixes --{flag}; the supplied value is ignored");
            }
        }
        let count = match self.c {
            Some(g) => {
                if g.start != 0.0 || g.stop != 1.0 {
                    eprintln!("warning: {quantity} always spans C in [0, C_max]; only the count of --c is used");
                }
                g.count
            }
            None => FIGURE_C_COUNT,
        };
        let mut spec = SweepSpec::figure(quantity, count, self.xi_prime_max.unwrap_or(1e-3))?;
        spec.format = self.format;
        spec.out = self.out.clone();
        Ok(spec)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn sweep(spec: &SweepSpec) -> CliResult<()> {
    let result = run_sweep(spec)?;
    emit(&result.render(spec.format), spec.out.as_ref())
}

fn single(grid: Option<Grid>, name: &'static str, default: f64) -> CliResult<f64> {
    match grid {
        None => Ok(default),
        Some(g) => g
            .single()
            .ok_or_else(|| CliError::usage(name, "expects a single value")),
    }
}

fn run(command: Command) -> CliResult<ExitCode> {
    match command {
        Command::Sweep { quantity, args } => sweep(&args.spec(quantity)?)?,
        Command::Fig1(a) => sweep(&a.spec(Quantity::Fig1)?)?,
        Command::Fig2(a) => sweep(&a.spec(Quantity::Fig2)?)?,
        Command::Fig3(a) => sweep(&a.spec(Quantity::Fig3)?)?,
        Command::Fig4(a) => sweep(&a.spec(Quantity::Fig4)?)?,
        Command::Fig5(a) => sweep(&a.spec(Quantity::Fig5)?)?,
        Command::Euler(mut a) => {
            a.xi_max = a.xi_max.or(Some(PI));
            sweep(&a.spec(Quantity::Euler)?)?
        }
        Command::Brachistochrone(a) => sweep(&a.spec(Quantity::Brachistochrone)?)?,
        Command::State(a) => {
            let config = a.config()?;
            let theta = single(a.theta, "theta", PI / 2.0)?;
            let phi = single(a.phi, "phi", 0.0)?;
            let xi = single(a.xi, "xi", 0.0)?;
            let state = evolve(&build_initial_state(&config, theta, phi)?, xi);
            let mut text = state.to_json();
            text.push('\n');
            emit(&text, a.out.as_ref())?
        }
        Command::Validate {
            format,
            out,
            tamper_curvature,
        } => {
            let report = validate_suite(&ValidateOptions {
                curvature_scale: tamper_curvature,
            })?;
            let text = match format {
                ReportFormat::Text => report.render(),
                ReportFormat::Json => {
                    let mut t = serde_json::to_string_pretty(&report).expect("report serializes");
                    t.push('\n');
                    t
                }
            };
            emit(&text, out.as_ref())?;
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
