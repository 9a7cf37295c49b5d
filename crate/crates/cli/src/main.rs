use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use deltascat_cli::run::Io;
use deltascat_cli::{CliError, FileConfig, Mode, RunConfig};

/// Scattering off arrays of delta-function potentials.
#[derive(Debug, Parser)]
#[command(name = "deltascat", version)]
struct Cli {
    /// JSON config file; flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Suppress the summary.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Amplitudes, T, R and interior coefficients for one system.
    Solve(SystemArgs),
    /// T and R over a parameter grid, as CSV.
    Sweep(SystemArgs),
    /// Sampled ψ(y), ψ'(y) and |ψ|², as CSV.
    Wavefunction(SystemArgs),
    /// Parameter values where the reflection vanishes, as CSV.
    Resonances(SystemArgs),
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Dimensionless strengths ξ, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    xi: Option<Vec<f64>>,
    /// Reduced strengths 2mV₀/ħ², comma separated (needs --k).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    vtilde: Option<Vec<f64>>,
    /// Wavenumber for --vtilde.
    #[arg(long)]
    k: Option<f64>,
    /// Dimensionless gaps between neighbouring sites.
    #[arg(long, value_delimiter = ',')]
    gaps: Option<Vec<f64>>,
    /// One gap for every pair of neighbours.
    #[arg(long)]
    gap: Option<f64>,
    /// Equal unit gaps unless --gap says otherwise.
    #[arg(long)]
    gaps_uniform: bool,
    /// Physical site positions for --vtilde.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    positions: Option<Vec<f64>>,
    /// Position of the first site.
    #[arg(long, allow_hyphen_values = true)]
    y0: Option<f64>,
    /// Swept parameter: dtilde, xi or k.
    #[arg(long)]
    param: Option<String>,
    /// Lower end of the sweep, or of the sampling window.
    #[arg(long, allow_hyphen_values = true)]
    min: Option<f64>,
    /// Upper end of the sweep, or of the sampling window.
    #[arg(long, allow_hyphen_values = true)]
    max: Option<f64>,
    /// Grid points (sweeps) or samples (wavefunction).
    #[arg(long)]
    steps: Option<usize>,
    /// Largest |r|² counted as a resonance.
    #[arg(long)]
    tol: Option<f64>,
}

impl SystemArgs {
    fn into_config(self, mode: Mode, out: Option<PathBuf>) -> (FileConfig, bool) {
        let cfg = FileConfig {
            mode: Some(mode),
            xi: self.xi,
            vtilde: self.vtilde,
            k: self.k,
            gaps: self.gaps,
            gap: self.gap,
            positions: self.positions,
            y0: self.y0,
            param: self.param,
            min: self.min,
            max: self.max,
            steps: self.steps,
            tol: self.tol,
            out,
        };
        (cfg, self.gaps_uniform)
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let (mode, args) = match cli.command {
        Command::Solve(a) => (Mode::Solve, a),
        Command::Sweep(a) => (Mode::Sweep, a),
        Command::Wavefunction(a) => (Mode::Wavefunction, a),
        Command::Resonances(a) => (Mode::Resonances, a),
    };
    let (flags, uniform) = args.into_config(mode, cli.out);
    let base = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let config = RunConfig::resolve(base.merge(flags), uniform)?;

    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let res = deltascat_cli::run(
        &config,
        &mut Io {
            stdout: &mut out,
            stderr: &mut err,
            quiet: cli.quiet,
        },
    );
    out.flush()?;
    res
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("deltascat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
