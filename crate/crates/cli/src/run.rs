//! Dispatch for each mode.

use std::fs::File;
use std::io::{BufWriter, Write};

use deltascat::analysis::{self, SweepSpec};
use deltascat::{direct, transfer, wavefunction, AmplitudeSolution, Complex64};

use crate::config::{Mode, RunConfig};
use crate::error::CliError;
use crate::format::{self, float};

/// `|T + R - 1|` allowed for a solve.
pub const UNITARITY_TOL: f64 = 1e-10;
/// `|T + R - 1|` allowed per sweep record.
pub const SWEEP_UNITARITY_TOL: f64 = 1e-9;
/// Largest componentwise gap between the direct and transfer routes.
pub const CROSS_CHECK_TOL: f64 = 1e-9;
/// Largest analytic derivative-jump residual accepted for a wavefunction.
pub const JUMP_TOL: f64 = 1e-10;

/// Output sinks. CSV goes to `--out` when given, otherwise to `stdout`; the
/// summary then moves to `stderr` so the CSV stays clean.
pub struct Io<'a> {
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
    pub quiet: bool,
}

fn complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() && float(z.im) != "0" {
        '-'
    } else {
        '+'
    };
    format!("{} {sign} {}i", float(z.re), float(z.im.abs()))
}

fn max_component_gap(a: &AmplitudeSolution, b: &AmplitudeSolution) -> f64 {
    a.regions()
        .iter()
        .zip(b.regions())
        .flat_map(|(x, y)| [x.0 - y.0, x.1 - y.1])
        .chain([a.r - b.r, a.t - b.t])
        .map(|d| d.re.abs().max(d.im.abs()))
        .fold(0.0, f64::max)
}

pub fn run(config: &RunConfig, io: &mut Io<'_>) -> Result<(), CliError> {
    match config.mode {
        Mode::Solve => solve(config, io),
        Mode::Sweep => sweep(config, io),
        Mode::Resonances => resonances(config, io),
        Mode::Wavefunction => wave(config, io),
    }
}

/// Runs `body` against the CSV sink and returns the summary sink.
fn with_csv<F>(config: &RunConfig, io: &mut Io<'_>, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    match &config.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => body(&mut *io.stdout)?,
    }
    Ok(())
}

fn summary<'b>(config: &RunConfig, io: &'b mut Io<'_>) -> Option<&'b mut dyn Write> {
    if io.quiet {
        None
    } else if config.out.is_some() {
        Some(&mut *io.stdout)
    } else {
        Some(&mut *io.stderr)
    }
}

fn solve(config: &RunConfig, io: &mut Io<'_>) -> Result<(), CliError> {
    let sys = config.system.system()?;
    let d = direct::solve_amplitudes(&sys)?;
    let m = transfer::solve_amplitudes(&sys)?;
    let defect = d.unitarity_defect();
    let gap = max_component_gap(&d, &m);
    let unitarity_ok = defect <= UNITARITY_TOL;
    let cross_ok = gap <= CROSS_CHECK_TOL;

    let mut text = String::new();
    let mut line = |s: String| {
        text.push_str(&s);
        text.push('\n');
    };
    line(format!("sites: {}", sys.len()));
    line(format!("r = {}", complex(d.r)));
    line(format!("t = {}", complex(d.t)));
    line(format!("T = {}", float(d.transmission())));
    line(format!("R = {}", float(d.reflection())));
    for (j, (a, b)) in d.interior.iter().enumerate() {
        line(format!(
            "region {}: a = {}, b = {}",
            j + 2,
            complex(*a),
            complex(*b)
        ));
    }
    line(format!(
        "unitarity: {} (|T+R-1| = {})",
        if unitarity_ok { "PASS" } else { "FAIL" },
        float(defect)
    ));
    line(format!(
        "cross-check: {} (max |direct - transfer| = {})",
        if cross_ok { "PASS" } else { "FAIL" },
        float(gap)
    ));

    match &config.out {
        Some(path) => std::fs::write(path, &text)?,
        None if !io.quiet => io.stdout.write_all(text.as_bytes())?,
        None => {}
    }
    if !unitarity_ok {
        return Err(CliError::Check(format!(
            "|T+R-1| = {defect:e} exceeds {UNITARITY_TOL:e}"
        )));
    }
    if !cross_ok {
        return Err(CliError::Check(format!(
            "direct and transfer amplitudes differ by {gap:e} (> {CROSS_CHECK_TOL:e})"
        )));
    }
    Ok(())
}

fn sweep_spec(config: &RunConfig) -> Result<SweepSpec, CliError> {
    let param = config
        .param
        .ok_or_else(|| CliError::Config("missing `param`".into()))?;
    let (Some(lo), Some(hi)) = (config.min, config.max) else {
        return Err(CliError::Config("missing `min`/`max`".into()));
    };
    let spec = SweepSpec::new(
        config.system.template()?,
        param,
        lo,
        hi,
        config.steps.unwrap_or(analysis::DEFAULT_STEPS),
    );
    spec.validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(spec)
}

fn sweep(config: &RunConfig, io: &mut Io<'_>) -> Result<(), CliError> {
    let spec = sweep_spec(config)?;
    let out = analysis::sweep(&spec)?;
    if out.records.is_empty() {
        let first = out.skipped.into_iter().next().map(|(_, e)| e);
        return Err(match first {
            Some(e) => CliError::Solver(e),
            None => CliError::Check("sweep produced no points".into()),
        });
    }
    with_csv(config, io, |w| format::write_sweep(w, &out.records))?;
    let worst = out
        .records
        .iter()
        .map(|r| (r.transmission + r.reflection - 1.0).abs())
        .fold(0.0, f64::max);
    if let Some(w) = summary(config, io) {
        writeln!(
            w,
            "sweep over {}: {} points, {} skipped",
            spec.param,
            out.records.len(),
            out.skipped.len()
        )?;
        for (p, e) in &out.skipped {
            writeln!(w, "  skipped {}: {e}", float(*p))?;
        }
        writeln!(w, "max |T+R-1| = {}", float(worst))?;
    }
    if worst > SWEEP_UNITARITY_TOL {
        return Err(CliError::Check(format!(
            "sweep record with |T+R-1| = {worst:e}"
        )));
    }
    Ok(())
}

fn resonances(config: &RunConfig, io: &mut Io<'_>) -> Result<(), CliError> {
    let spec = sweep_spec(config)?;
    let tol = config.tol.unwrap_or(analysis::DEFAULT_RESONANCE_TOL);
    let hits = analysis::find_resonances(&spec, tol)?;
    with_csv(config, io, |w| format::write_resonances(w, &hits))?;
    if let Some(w) = summary(config, io) {
        writeln!(
            w,
            "{} resonance(s) in {} ∈ [{}, {}] with |r|² ≤ {} ({} grid points)",
            hits.len(),
            spec.param,
            float(spec.lo),
            float(spec.hi),
            float(tol),
            spec.steps
        )?;
    }
    Ok(())
}

fn wave(config: &RunConfig, io: &mut Io<'_>) -> Result<(), CliError> {
    let sys = config.system.system()?;
    let sol = direct::solve_amplitudes(&sys)?;
    let (lo, hi) = wavefunction::default_window(&sys);
    let lo = config.min.unwrap_or(lo);
    let hi = config.max.unwrap_or(hi);
    let count = config.steps.unwrap_or(wavefunction::DEFAULT_SAMPLES);
    let samples = wavefunction::sample(&sys, &sol, lo, hi, count)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let report = wavefunction::verify_matching(&sys, &sol, wavefunction::DEFAULT_PROBE_STEP)?;
    with_csv(config, io, |w| format::write_wavefunction(w, &samples))?;
    if let Some(w) = summary(config, io) {
        writeln!(
            w,
            "{} samples on [{}, {}]",
            samples.len(),
            float(lo),
            float(hi)
        )?;
        writeln!(
            w,
            "T = {}, R = {}",
            float(sol.transmission()),
            float(sol.reflection())
        )?;
        writeln!(
            w,
            "max jump residual = {}",
            float(report.max_jump_residual())
        )?;
    }
    if report.max_jump_residual() > JUMP_TOL {
        return Err(CliError::Check(format!(
            "derivative jump residual {:e} exceeds {JUMP_TOL:e}",
            report.max_jump_residual()
        )));
    }
    Ok(())
}
