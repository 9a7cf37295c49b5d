//! Piecewise wavefunction rebuilt from an [`AmplitudeSolution`].

use num_complex::Complex64;

use crate::c64;
use crate::direct::AmplitudeSolution;
use crate::error::{Error, Result};
use crate::model::DimensionlessSystem;

pub const DEFAULT_SAMPLES: usize = 2001;
/// Margin added on both sides of the outermost sites for the default window.
pub const DEFAULT_MARGIN: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSample {
    pub y: f64,
    pub psi: Complex64,
    pub dpsi: Complex64,
    pub density: f64,
}

impl WaveSample {
    /// Probability current `Im(ψ* ψ')`.
    pub fn current(&self) -> f64 {
        (self.psi.conj() * self.dpsi).im
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteResidual {
    pub y: f64,
    /// `|ψ(y + h) - ψ(y - h)|`, which is `O(h)`.
    pub continuity_residual: f64,
    /// `|ψ_R(y) - ψ_L(y)|` from the region coefficients.
    pub continuity_exact: f64,
    /// `|ψ'_R(y) - ψ'_L(y) - ξ ψ(y)|` from the region coefficients.
    pub jump_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchingReport {
    pub sites: Vec<SiteResidual>,
}

impl MatchingReport {
    pub fn max_jump_residual(&self) -> f64 {
        self.sites
            .iter()
            .map(|s| s.jump_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_continuity_residual(&self) -> f64 {
        self.sites
            .iter()
            .map(|s| s.continuity_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_continuity_exact(&self) -> f64 {
        self.sites
            .iter()
            .map(|s| s.continuity_exact)
            .fold(0.0, f64::max)
    }
}

/// Index of the region containing `y`. A point sitting exactly on a site
/// belongs to the region on its left.
pub fn region_of(sys: &DimensionlessSystem, y: f64) -> usize {
    sys.y().partition_point(|s| *s < y)
}

/// `(ψ, ψ')` for coefficients `(a, b)` at `y`.
pub fn eval_region((a, b): (Complex64, Complex64), y: f64) -> (Complex64, Complex64) {
    let e = Complex64::from_polar(1.0, y);
    let right = a * e;
    let left = b * e.conj();
    let i = c64(0.0, 1.0);
    (right + left, i * (right - left))
}

pub fn eval(sys: &DimensionlessSystem, sol: &AmplitudeSolution, y: f64) -> WaveSample {
    let (psi, dpsi) = eval_region(sol.region(region_of(sys, y)), y);
    WaveSample {
        y,
        psi,
        dpsi,
        density: psi.norm_sqr(),
    }
}

/// `[y₁ - 3, yₙ + 3]`.
pub fn default_window(sys: &DimensionlessSystem) -> (f64, f64) {
    let y = sys.y();
    (y[0] - DEFAULT_MARGIN, y[y.len() - 1] + DEFAULT_MARGIN)
}

/// `count` evenly spaced samples on `[ymin, ymax]`, endpoints included.
pub fn sample(
    sys: &DimensionlessSystem,
    sol: &AmplitudeSolution,
    ymin: f64,
    ymax: f64,
    count: usize,
) -> Result<Vec<WaveSample>> {
    if !(ymin < ymax) || !ymin.is_finite() || !ymax.is_finite() {
        return Err(Error::Domain(format!(
            "sampling window [{ymin}, {ymax}] is empty"
        )));
    }
    if count < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 samples, got {count}"
        )));
    }
    check_regions(sys, sol)?;
    let step = (ymax - ymin) / (count - 1) as f64;
    Ok((0..count)
        .map(|k| {
            let y = if k == count - 1 {
                ymax
            } else {
                ymin + step * k as f64
            };
            eval(sys, sol, y)
        })
        .collect())
}

fn check_regions(sys: &DimensionlessSystem, sol: &AmplitudeSolution) -> Result<()> {
    if sol.region_count() != sys.len() + 1 {
        return Err(Error::Length(format!(
            "solution has {} regions, system needs {}",
            sol.region_count(),
            sys.len() + 1
        )));
    }
    Ok(())
}

/// Default step for the numeric continuity probe.
pub const DEFAULT_PROBE_STEP: f64 = 1e-6;

/// Checks both matching conditions at every site.
pub fn verify_matching(
    sys: &DimensionlessSystem,
    sol: &AmplitudeSolution,
    h: f64,
) -> Result<MatchingReport> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!(
            "probe step must be positive, got {h}"
        )));
    }
    check_regions(sys, sol)?;
    let sites = sys
        .sites()
        .enumerate()
        .map(|(j, (xi, y))| {
            let (psi_l, dpsi_l) = eval_region(sol.region(j), y);
            let (psi_r, dpsi_r) = eval_region(sol.region(j + 1), y);
            let before = eval_region(sol.region(j), y - h).0;
            let after = eval_region(sol.region(j + 1), y + h).0;
            SiteResidual {
                y,
                continuity_residual: (after - before).norm(),
                continuity_exact: (psi_r - psi_l).norm(),
                jump_residual: (dpsi_r - dpsi_l - xi * psi_l).norm(),
            }
        })
        .collect();
    Ok(MatchingReport { sites })
}

/// `Im(ψ*ψ')` evaluated at the midpoint of each region (one unit outside
/// the array for the two unbounded ones).
pub fn region_currents(sys: &DimensionlessSystem, sol: &AmplitudeSolution) -> Vec<f64> {
    let y = sys.y();
    let n = y.len();
    (0..=n)
        .map(|j| {
            let at = match j {
                0 => y[0] - 1.0,
                j if j == n => y[n - 1] + 1.0,
                j => 0.5 * (y[j - 1] + y[j]),
            };
            let (psi, dpsi) = eval_region(sol.region(j), at);
            (psi.conj() * dpsi).im
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{direct, transfer};

    #[test]
    fn free_plane_wave_has_unit_density() {
        let sys = DimensionlessSystem::new(vec![0.0], vec![0.0]).unwrap();
        let sol = direct::solve_amplitudes(&sys).unwrap();
        for s in sample(&sys, &sol, -5.0, 5.0, 101).unwrap() {
            assert!((s.density - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn six_site_tail_density() {
        let sys = DimensionlessSystem::uniform(6, 1.0, 1.0).unwrap();
        let sol = direct::solve_amplitudes(&sys).unwrap();
        let (lo, hi) = default_window(&sys);
        let samples = sample(&sys, &sol, lo, hi, DEFAULT_SAMPLES).unwrap();
        assert_eq!(samples.len(), 2001);
        assert_eq!(samples[0].y, -3.0);
        assert_eq!(samples[2000].y, 8.0);
        for s in samples.iter().filter(|s| s.y > 5.0) {
            assert!((s.density - 0.236).abs() < 5e-3);
            assert!((s.density - sol.transmission()).abs() < 1e-14);
        }
    }

    #[test]
    fn six_site_k2_tail_density() {
        // Unit physical spacing at k = 2 reproduces the reported 0.8902.
        let sys = DimensionlessSystem::uniform(6, 0.5, 1.0).unwrap();
        let sol = transfer::solve_amplitudes(&sys).unwrap();
        let s = eval(&sys, &sol, 7.3);
        assert!((s.density - 0.8902).abs() < 5e-3);
    }

    #[test]
    fn on_site_points_use_left_region() {
        let sys = DimensionlessSystem::uniform(2, 1.0, 1.0).unwrap();
        assert_eq!(region_of(&sys, 0.0), 0);
        assert_eq!(region_of(&sys, 0.5), 1);
        assert_eq!(region_of(&sys, 1.0), 1);
        assert_eq!(region_of(&sys, 1.0 + 1e-12), 2);

        let sol = direct::solve_amplitudes(&sys).unwrap();
        let s = eval(&sys, &sol, 0.0);
        let (_, dpsi_left) = eval_region(sol.region(0), 0.0);
        assert_eq!(s.dpsi, dpsi_left);
    }

    #[test]
    fn jump_matches_strength_times_psi() {
        let sys = DimensionlessSystem::uniform(2, 1.0, 1.0).unwrap();
        let sol = direct::solve_amplitudes(&sys).unwrap();
        let (psi, dl) = eval_region(sol.region(0), 0.0);
        let (_, dr) = eval_region(sol.region(1), 0.0);
        assert!((dr - dl - 1.0 * psi).norm() < 1e-10);

        let report = verify_matching(&sys, &sol, DEFAULT_PROBE_STEP).unwrap();
        assert!(report.max_jump_residual() < 1e-10);
        assert!(report.max_continuity_exact() < 1e-12);
        assert!(report.max_continuity_residual() < 1e-5);
    }

    #[test]
    fn switched_off_site_has_no_kink() {
        let sys = DimensionlessSystem::from_gaps(vec![1.0, 0.0, -2.0], &[0.8, 1.3], 0.0).unwrap();
        let sol = direct::solve_amplitudes(&sys).unwrap();
        let y = sys.y()[1];
        let (_, dl) = eval_region(sol.region(1), y);
        let (_, dr) = eval_region(sol.region(2), y);
        assert!((dr - dl).norm() < 1e-10);
    }

    #[test]
    fn continuity_probe_scales_with_step() {
        let sys = DimensionlessSystem::from_gaps(vec![2.0, -1.0], &[0.9], 0.0).unwrap();
        let sol = direct::solve_amplitudes(&sys).unwrap();
        let coarse = verify_matching(&sys, &sol, 1e-3)
            .unwrap()
            .max_continuity_residual();
        let fine = verify_matching(&sys, &sol, 1e-5)
            .unwrap()
            .max_continuity_residual();
        assert!(fine < coarse / 50.0);
    }

    #[test]
    fn incident_side_density_formula() {
        let sys = DimensionlessSystem::from_gaps(vec![1.2, -0.4, 0.9], &[0.6, 1.4], 0.0).unwrap();
        let sol = direct::solve_amplitudes(&sys).unwrap();
        for s in sample(&sys, &sol, -6.0, 0.0, 61).unwrap() {
            let expect =
                1.0 + sol.r.norm_sqr() + 2.0 * (sol.r * Complex64::from_polar(1.0, -2.0 * s.y)).re;
            assert!((s.density - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_arguments() {
        let sys = DimensionlessSystem::uniform(2, 1.0, 1.0).unwrap();
        let sol = direct::solve_amplitudes(&sys).unwrap();
        assert!(sample(&sys, &sol, 1.0, 1.0, 10).is_err());
        assert!(sample(&sys, &sol, 0.0, 1.0, 1).is_err());
        assert!(verify_matching(&sys, &sol, 0.0).is_err());
        let other = DimensionlessSystem::uniform(3, 1.0, 1.0).unwrap();
        assert!(matches!(
            sample(&other, &sol, 0.0, 1.0, 5),
            Err(Error::Length(_))
        ));
    }

    #[test]
    fn current_is_the_same_in_every_region() {
        let sys = DimensionlessSystem::from_gaps(vec![3.0, -2.0, 0.5, 4.0], &[0.3, 2.2, 1.0], 1.0)
            .unwrap();
        let sol = direct::solve_amplitudes(&sys).unwrap();
        let currents = region_currents(&sys, &sol);
        for c in &currents {
            assert!((c - sol.transmission()).abs() < 1e-10);
        }
    }
}
