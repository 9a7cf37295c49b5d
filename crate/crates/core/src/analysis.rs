//! Parameter sweeps of `T`/`R` and the transmission-resonance finder.
//!
//! Every point goes through the transfer route. Points are independent and
//! evaluated in parallel; results always come back in grid order.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{DimensionlessSystem, PotentialArray};
use crate::transfer;

/// Grid density used when the caller does not pick one. Resonances narrower
/// than one grid cell can be missed.
pub const DEFAULT_STEPS: usize = 2000;
/// Default acceptance threshold on `|r|²` for a resonance.
pub const DEFAULT_RESONANCE_TOL: f64 = 1e-10;
/// Bracket width at which golden-section refinement stops.
pub const REFINE_WIDTH: f64 = 1e-12;
/// Hits closer than this are merged.
pub const DEDUP_DISTANCE: f64 = 1e-9;

/// The array a sweep starts from.
#[derive(Debug, Clone, PartialEq)]
pub enum Template {
    /// Strengths `ξᵢ`, gaps `d̃ᵢ` and first-site position `y₀`.
    Dimensionless {
        xi: Vec<f64>,
        gaps: Vec<f64>,
        y0: f64,
    },
    /// Reduced strengths `Ṽ₀ᵢ`, positions `xᵢ` and wavenumber `k`.
    Physical(PotentialArray),
}

impl Template {
    pub fn dimensionless(xi: Vec<f64>, gaps: Vec<f64>) -> Self {
        Template::Dimensionless { xi, gaps, y0: 0.0 }
    }

    /// `n` equal sites of strength `xi` spaced `gap`.
    pub fn uniform(n: usize, xi: f64, gap: f64) -> Self {
        Self::dimensionless(vec![xi; n], vec![gap; n.saturating_sub(1)])
    }

    pub fn len(&self) -> usize {
        match self {
            Template::Dimensionless { xi, .. } => xi.len(),
            Template::Physical(a) => a.reduced_strengths().len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The unswept system.
    pub fn system(&self) -> Result<DimensionlessSystem> {
        match self {
            Template::Dimensionless { xi, gaps, y0 } => {
                DimensionlessSystem::from_gaps(xi.clone(), gaps, *y0)
            }
            Template::Physical(a) => a.to_dimensionless(),
        }
    }

    /// A dimensionless template reads as a physical array at `k = 1`.
    fn as_physical(&self) -> Result<PotentialArray> {
        match self {
            Template::Physical(a) => Ok(a.clone()),
            Template::Dimensionless { .. } => {
                let sys = self.system()?;
                PotentialArray::new(sys.xi().to_vec(), sys.y().to_vec(), 1.0)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParam {
    /// Every gap set to the swept value.
    Gap,
    /// Every strength set to the swept value.
    Strength,
    /// Wavenumber; rescales both `ξᵢ = Ṽ₀ᵢ/k` and `yᵢ = k xᵢ`.
    Wavenumber,
}

impl std::str::FromStr for SweepParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dtilde" | "gap" | "d" => Ok(SweepParam::Gap),
            "xi" | "strength" => Ok(SweepParam::Strength),
            "k" | "wavenumber" => Ok(SweepParam::Wavenumber),
            other => Err(Error::Sweep(format!("unknown sweep parameter `{other}`"))),
        }
    }
}

impl std::fmt::Display for SweepParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SweepParam::Gap => "dtilde",
            SweepParam::Strength => "xi",
            SweepParam::Wavenumber => "k",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub template: Template,
    pub param: SweepParam,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn new(template: Template, param: SweepParam, lo: f64, hi: f64, steps: usize) -> Self {
        Self {
            template,
            param,
            lo,
            hi,
            steps,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lo.is_finite() || !self.hi.is_finite() || !(self.lo < self.hi) {
            return Err(Error::Sweep(format!(
                "range [{}, {}] is empty",
                self.lo, self.hi
            )));
        }
        if self.steps < 2 {
            return Err(Error::Sweep(format!(
                "need at least 2 steps, got {}",
                self.steps
            )));
        }
        if matches!(self.param, SweepParam::Gap | SweepParam::Wavenumber) && !(self.lo > 0.0) {
            return Err(Error::Sweep(format!(
                "{} sweep must start above 0",
                self.param
            )));
        }
        if self.template.is_empty() {
            return Err(Error::Length("template has no sites".into()));
        }
        self.template.system().map(|_| ())
    }

    /// The `steps` grid values, endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps;
        let span = self.hi - self.lo;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.hi
                } else {
                    self.lo + span * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }

    /// The template with the swept parameter set to `value`.
    pub fn system_at(&self, value: f64) -> Result<DimensionlessSystem> {
        match self.param {
            SweepParam::Gap => {
                let base = self.template.system()?;
                let gaps = vec![value; base.len() - 1];
                DimensionlessSystem::from_gaps(base.xi().to_vec(), &gaps, base.y()[0])
            }
            SweepParam::Strength => {
                let base = self.template.system()?;
                DimensionlessSystem::new(vec![value; base.len()], base.y().to_vec())
            }
            SweepParam::Wavenumber => self
                .template
                .as_physical()?
                .with_k(value)?
                .to_dimensionless(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub param: f64,
    pub transmission: f64,
    pub reflection: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    /// Grid points that failed, with the reason.
    pub skipped: Vec<(f64, Error)>,
}

fn point(spec: &SweepSpec, p: f64) -> Result<SweepRecord> {
    let (transmission, reflection) = transfer::probabilities(&spec.system_at(p)?)?;
    Ok(SweepRecord {
        param: p,
        transmission,
        reflection,
    })
}

pub fn sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    spec.validate()?;
    let results: Vec<(f64, Result<SweepRecord>)> = spec
        .grid()
        .into_par_iter()
        .map(|p| (p, point(spec, p)))
        .collect();
    let mut records = Vec::with_capacity(results.len());
    let mut skipped = Vec::new();
    for (p, r) in results {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => skipped.push((p, e)),
        }
    }
    Ok(SweepOutcome { records, skipped })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceHit {
    pub param: f64,
    /// `|r|²` at `param`.
    pub residual: f64,
}

/// Golden-section minimisation of `f` on `[a, b]`. Returns the best point
/// seen.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, width: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let (mut best_x, mut best_f) = if fc <= fd { (c, fc) } else { (d, fd) };
    for (x, fx) in [(a, f(a)), (b, f(b))] {
        if fx < best_f {
            best_x = x;
            best_f = fx;
        }
    }
    for _ in 0..300 {
        let floor = width.max(4.0 * f64::EPSILON * a.abs().max(b.abs()));
        if b - a <= floor {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc < best_f {
                best_x = c;
                best_f = fc;
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd < best_f {
                best_x = d;
                best_f = fd;
            }
        }
    }
    (best_x, best_f)
}

/// Locates parameter values with `|r|² ≤ tol`.
///
/// `|r|²` never changes sign, so resonances are found as local minima: the
/// grid is scanned for them and each bracket is refined by golden-section
/// search.
pub fn find_resonances(spec: &SweepSpec, tol: f64) -> Result<Vec<ResonanceHit>> {
    spec.validate()?;
    if !(tol > 0.0) {
        return Err(Error::Sweep(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let refl = |p: f64| -> f64 {
        spec.system_at(p)
            .and_then(|s| transfer::probabilities(&s))
            .map(|(_, r)| r)
            .unwrap_or(f64::INFINITY)
    };
    let grid = spec.grid();
    let values: Vec<f64> = grid.par_iter().map(|&p| refl(p)).collect();
    let last = grid.len() - 1;

    let mut brackets = Vec::new();
    for i in 0..=last {
        let left = if i == 0 { f64::INFINITY } else { values[i - 1] };
        let right = if i == last {
            f64::INFINITY
        } else {
            values[i + 1]
        };
        if values[i].is_finite() && values[i] <= left && values[i] <= right {
            brackets.push((grid[i.saturating_sub(1)], grid[(i + 1).min(last)]));
        }
    }

    let mut hits: Vec<ResonanceHit> = brackets
        .into_par_iter()
        .map(|(a, b)| {
            let (param, residual) = golden_section(refl, a, b, REFINE_WIDTH);
            ResonanceHit { param, residual }
        })
        .filter(|h| h.residual <= tol)
        .collect();

    hits.sort_by(|a, b| a.param.total_cmp(&b.param));
    let mut deduped: Vec<ResonanceHit> = Vec::with_capacity(hits.len());
    for h in hits {
        match deduped.last_mut() {
            Some(prev) if (h.param - prev.param).abs() <= DEDUP_DISTANCE => {
                if h.residual < prev.residual {
                    *prev = h;
                }
            }
            _ => deduped.push(h),
        }
    }
    Ok(deduped)
}
