//! Run configuration: JSON file plus command-line overrides.

use std::path::{Path, PathBuf};

use deltascat::analysis::{SweepParam, Template};
use deltascat::{DimensionlessSystem, PotentialArray};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Solve,
    Sweep,
    Wavefunction,
    Resonances,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Solve => "solve",
            Mode::Sweep => "sweep",
            Mode::Wavefunction => "wavefunction",
            Mode::Resonances => "resonances",
        })
    }
}

/// Every key the JSON config accepts. All optional; command-line flags are
/// merged on top with [`FileConfig::merge`].
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub mode: Option<Mode>,
    pub xi: Option<Vec<f64>>,
    pub vtilde: Option<Vec<f64>>,
    pub k: Option<f64>,
    pub gaps: Option<Vec<f64>>,
    pub gap: Option<f64>,
    pub positions: Option<Vec<f64>>,
    pub y0: Option<f64>,
    pub param: Option<String>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub steps: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merge(self, over: FileConfig) -> FileConfig {
        FileConfig {
            mode: over.mode.or(self.mode),
            xi: over.xi.or(self.xi),
            vtilde: over.vtilde.or(self.vtilde),
            k: over.k.or(self.k),
            gaps: over.gaps.or(self.gaps),
            gap: over.gap.or(self.gap),
            positions: over.positions.or(self.positions),
            y0: over.y0.or(self.y0),
            param: over.param.or(self.param),
            min: over.min.or(self.min),
            max: over.max.or(self.max),
            steps: over.steps.or(self.steps),
            tol: over.tol.or(self.tol),
            out: over.out.or(self.out),
        }
    }
}

/// Where the sites sit and how strong they are.
#[derive(Debug, Clone, PartialEq)]
pub enum SystemSpec {
    Dimensionless {
        xi: Vec<f64>,
        gaps: Vec<f64>,
        y0: f64,
    },
    Physical {
        vtilde: Vec<f64>,
        positions: Vec<f64>,
        k: f64,
    },
}

impl SystemSpec {
    pub fn template(&self) -> Result<Template, CliError> {
        Ok(match self {
            SystemSpec::Dimensionless { xi, gaps, y0 } => Template::Dimensionless {
                xi: xi.clone(),
                gaps: gaps.clone(),
                y0: *y0,
            },
            SystemSpec::Physical {
                vtilde,
                positions,
                k,
            } => Template::Physical(PotentialArray::new(vtilde.clone(), positions.clone(), *k)?),
        })
    }

    pub fn system(&self) -> Result<DimensionlessSystem, CliError> {
        Ok(self.template()?.system()?)
    }
}

/// A validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub system: SystemSpec,
    pub param: Option<SweepParam>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub steps: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
}

fn uniform_gaps(n: usize, gap: f64) -> Vec<f64> {
    vec![gap; n.saturating_sub(1)]
}

impl RunConfig {
    /// Checks the merged config and resolves the system description.
    /// `uniform` asks for equal gaps, taken from `gap` (default 1).
    pub fn resolve(cfg: FileConfig, uniform: bool) -> Result<RunConfig, CliError> {
        let mode = cfg
            .mode
            .ok_or_else(|| CliError::Config("no mode given".into()))?;
        let system = match (cfg.xi, cfg.vtilde) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "give either `xi` or `vtilde`, not both".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Config(
                    "one of `xi` or `vtilde` is required".into(),
                ))
            }
            (Some(xi), None) => {
                if cfg.k.is_some() {
                    return Err(CliError::Config(
                        "`k` only applies to `vtilde` input".into(),
                    ));
                }
                if cfg.positions.is_some() {
                    return Err(CliError::Config(
                        "`positions` only applies to `vtilde` input; use `gaps` and `y0`".into(),
                    ));
                }
                let gaps = Self::gaps(xi.len(), cfg.gaps, cfg.gap, uniform)?;
                SystemSpec::Dimensionless {
                    xi,
                    gaps,
                    y0: cfg.y0.unwrap_or(0.0),
                }
            }
            (None, Some(vtilde)) => {
                let k = cfg
                    .k
                    .ok_or_else(|| CliError::Config("`vtilde` input needs `k`".into()))?;
                if cfg.y0.is_some() {
                    return Err(CliError::Config(
                        "`y0` only applies to `xi` input; use `positions`".into(),
                    ));
                }
                let positions = match cfg.positions {
                    Some(p) => {
                        if cfg.gaps.is_some() || cfg.gap.is_some() {
                            return Err(CliError::Config(
                                "give either `positions` or gaps, not both".into(),
                            ));
                        }
                        p
                    }
                    None => {
                        let gaps = Self::gaps(vtilde.len(), cfg.gaps, cfg.gap, uniform)?;
                        std::iter::once(0.0)
                            .chain(gaps.iter().scan(0.0, |x, g| {
                                *x += g;
                                Some(*x)
                            }))
                            .collect()
                    }
                };
                SystemSpec::Physical {
                    vtilde,
                    positions,
                    k,
                }
            }
        };

        let param = cfg.param.map(|p| p.parse::<SweepParam>()).transpose()?;
        if matches!(mode, Mode::Sweep | Mode::Resonances) {
            if param.is_none() {
                return Err(CliError::Config(format!("{mode} needs `param`")));
            }
            if cfg.min.is_none() || cfg.max.is_none() {
                return Err(CliError::Config(format!("{mode} needs `min` and `max`")));
            }
        }
        if let Some(tol) = cfg.tol {
            if tol.is_nan() || tol <= 0.0 {
                return Err(CliError::Config(format!(
                    "`tol` must be positive, got {tol}"
                )));
            }
        }
        let config = RunConfig {
            mode,
            system,
            param,
            min: cfg.min,
            max: cfg.max,
            steps: cfg.steps,
            tol: cfg.tol,
            out: cfg.out,
        };
        // Surface length and ordering problems as config errors up front.
        config.system.system().map_err(|e| match e {
            CliError::Solver(inner) => CliError::Config(inner.to_string()),
            other => other,
        })?;
        Ok(config)
    }

    fn gaps(
        n: usize,
        gaps: Option<Vec<f64>>,
        gap: Option<f64>,
        uniform: bool,
    ) -> Result<Vec<f64>, CliError> {
        let gaps = match (gaps, gap) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "give either `gaps` or `gap`, not both".into(),
                ))
            }
            (Some(g), None) => {
                if uniform {
                    return Err(CliError::Config(
                        "`gaps-uniform` conflicts with a gap list".into(),
                    ));
                }
                g
            }
            (None, Some(g)) => uniform_gaps(n, g),
            (None, None) if uniform || n == 1 => uniform_gaps(n, 1.0),
            (None, None) => {
                return Err(CliError::Config(format!(
                    "{n} sites need {} gaps (`gaps`, `gap` or `--gaps-uniform`)",
                    n - 1
                )))
            }
        };
        if gaps.len() + 1 != n {
            return Err(CliError::Config(format!(
                "{n} strengths need {} gaps, got {}",
                n - 1,
                gaps.len()
            )));
        }
        Ok(gaps)
    }
}
