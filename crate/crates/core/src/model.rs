//! Physical and dimensionless descriptions of a delta array.
//!
//! ```text
//! PhysicalInput (m, ħ, E, V₀ᵢ, xᵢ)
//!     │  Ṽ₀ᵢ = 2 m V₀ᵢ / ħ²,  k = √(2 m E) / ħ
//!     ▼
//! PotentialArray (Ṽ₀ᵢ, xᵢ, k)
//!     │  ξᵢ = Ṽ₀ᵢ / k,  yᵢ = k xᵢ
//!     ▼
//! DimensionlessSystem (ξᵢ, yᵢ)
//! ```

use crate::error::{Error, Result};

/// Smallest admissible dimensionless gap between neighbouring sites.
pub const MIN_SEPARATION: f64 = 1e-12;

/// A delta array in physical units.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalInput {
    pub mass: f64,
    pub hbar: f64,
    pub energy: f64,
    /// `V₀ᵢ`, in energy × length.
    pub potential_strengths: Vec<f64>,
    pub positions: Vec<f64>,
}

/// Strengths reduced by `2m/ħ²`, positions still in length units.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialArray {
    reduced_strengths: Vec<f64>,
    positions: Vec<f64>,
    k: f64,
}

/// The solver's canonical input: strengths `ξᵢ` and site positions `yᵢ`.
///
/// Construction validates that there is at least one site, that every value
/// is finite and that positions increase by at least [`MIN_SEPARATION`].
/// A strength of zero is allowed and switches the site off.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionlessSystem {
    xi: Vec<f64>,
    y: Vec<f64>,
}

fn check_positions(positions: &[f64], min_gap: f64) -> Result<()> {
    if let Some(i) = positions.iter().position(|p| !p.is_finite()) {
        return Err(Error::Domain(format!("position #{i} is not finite")));
    }
    for (i, w) in positions.windows(2).enumerate() {
        let gap = w[1] - w[0];
        if !(gap >= min_gap) {
            return Err(Error::Ordering(format!(
                "positions {i} and {} are not strictly increasing (gap {gap:e})",
                i + 1
            )));
        }
    }
    Ok(())
}

fn check_lengths(strengths: usize, positions: usize) -> Result<()> {
    if strengths == 0 {
        return Err(Error::Length("at least one site is required".into()));
    }
    if strengths != positions {
        return Err(Error::Length(format!(
            "{strengths} strengths but {positions} positions"
        )));
    }
    Ok(())
}

impl PhysicalInput {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mass", self.mass),
            ("hbar", self.hbar),
            ("energy", self.energy),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        check_lengths(self.potential_strengths.len(), self.positions.len())?;
        if self.potential_strengths.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("potential strengths must be finite".into()));
        }
        // Physical positions only need to increase; the minimum gap is
        // enforced after scaling.
        check_positions(&self.positions, f64::MIN_POSITIVE)
    }

    /// `Ṽ₀ᵢ = 2 m V₀ᵢ / ħ²` and `k = √(2 m E) / ħ`.
    pub fn to_reduced(&self) -> Result<PotentialArray> {
        self.validate()?;
        let scale = 2.0 * self.mass / (self.hbar * self.hbar);
        let k = (2.0 * self.mass * self.energy).sqrt() / self.hbar;
        PotentialArray::new(
            self.potential_strengths.iter().map(|v| scale * v).collect(),
            self.positions.clone(),
            k,
        )
    }
}

impl PotentialArray {
    pub fn new(reduced_strengths: Vec<f64>, positions: Vec<f64>, k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::Domain(format!(
                "wavenumber must be positive, got {k}"
            )));
        }
        check_lengths(reduced_strengths.len(), positions.len())?;
        if reduced_strengths.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("reduced strengths must be finite".into()));
        }
        check_positions(&positions, f64::MIN_POSITIVE)?;
        Ok(Self {
            reduced_strengths,
            positions,
            k,
        })
    }

    pub fn reduced_strengths(&self) -> &[f64] {
        &self.reduced_strengths
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Same strengths and positions at a different wavenumber.
    pub fn with_k(&self, k: f64) -> Result<Self> {
        Self::new(self.reduced_strengths.clone(), self.positions.clone(), k)
    }

    /// `ξᵢ = Ṽ₀ᵢ / k`, `yᵢ = k xᵢ`.
    pub fn to_dimensionless(&self) -> Result<DimensionlessSystem> {
        let k = self.k;
        DimensionlessSystem::new(
            self.reduced_strengths.iter().map(|v| v / k).collect(),
            self.positions.iter().map(|x| k * x).collect(),
        )
    }
}

/// Free-function form of [`PhysicalInput::to_reduced`].
pub fn physical_to_reduced(input: &PhysicalInput) -> Result<PotentialArray> {
    input.to_reduced()
}

/// Free-function form of [`PotentialArray::to_dimensionless`].
pub fn to_dimensionless(array: &PotentialArray) -> Result<DimensionlessSystem> {
    array.to_dimensionless()
}

impl DimensionlessSystem {
    pub fn new(xi: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        check_lengths(xi.len(), y.len())?;
        if let Some(i) = xi.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("strength #{i} is not finite")));
        }
        check_positions(&y, MIN_SEPARATION)?;
        Ok(Self { xi, y })
    }

    /// Builds positions from the first site `y0` and the `n - 1` gaps.
    pub fn from_gaps(xi: Vec<f64>, gaps: &[f64], y0: f64) -> Result<Self> {
        if gaps.len() + 1 != xi.len() {
            return Err(Error::Length(format!(
                "{} strengths need {} gaps, got {}",
                xi.len(),
                xi.len().saturating_sub(1),
                gaps.len()
            )));
        }
        if let Some(g) = gaps.iter().find(|g| !(**g >= MIN_SEPARATION)) {
            return Err(Error::Ordering(format!(
                "gap {g:e} is below the minimum separation"
            )));
        }
        let mut y = Vec::with_capacity(xi.len());
        let mut pos = y0;
        y.push(pos);
        for g in gaps {
            pos += g;
            y.push(pos);
        }
        Self::new(xi, y)
    }

    /// `n` sites of strength `xi`, spaced `gap` apart, the first at `y = 0`.
    pub fn uniform(n: usize, xi: f64, gap: f64) -> Result<Self> {
        Self::from_gaps(vec![xi; n], &vec![gap; n.saturating_sub(1)], 0.0)
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// `d̃ᵢ = yᵢ₊₁ - yᵢ`.
    pub fn gaps(&self) -> Vec<f64> {
        self.y.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn sites(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xi.iter().copied().zip(self.y.iter().copied())
    }

    /// Every site moved by `shift`.
    pub fn translated(&self, shift: f64) -> Result<Self> {
        Self::new(self.xi.clone(), self.y.iter().map(|y| y + shift).collect())
    }

    /// Adds a site at `y`. Fails if it would land on (or too close to) an
    /// existing site.
    pub fn with_site(&self, xi: f64, y: f64) -> Result<Self> {
        let at = self.y.partition_point(|p| *p < y);
        let mut xs = self.xi.clone();
        let mut ys = self.y.clone();
        xs.insert(at, xi);
        ys.insert(at, y);
        Self::new(xs, ys)
    }
}
