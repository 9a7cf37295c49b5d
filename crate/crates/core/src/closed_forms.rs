//! Hand-derived amplitudes for small arrays.
//!
//! These are regression oracles for the numeric routes. Every function
//! returns `(t, r)` and places the first site at `y = 0` unless it takes an
//! explicit position.

use num_complex::Complex64;

use crate::c64;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `e^{2i·m·d̃}`.
fn phase(m: f64, dt: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * m * dt)
}

/// One site of strength `xi` at `y0`:
/// `t = 2i/(2i - ξ)`, `r = ξ e^{2iy₀}/(2i - ξ)`.
pub fn single(xi: f64, y0: f64) -> (Complex64, Complex64) {
    let den = 2.0 * I - xi;
    let t = 2.0 * I / den;
    let r = xi * phase(1.0, y0) / den;
    (t, r)
}

/// Two equal sites at `0` and `dt`.
pub fn double_equal(xi: f64, dt: f64) -> (Complex64, Complex64) {
    let e = phase(1.0, dt);
    let xi2 = xi * xi;
    let den = xi2 * (e - 1.0) + 4.0 * (I * xi + 1.0);
    let t = 4.0 / den;
    let r = (xi2 * (1.0 - e) - 2.0 * I * xi * (e + 1.0)) / den;
    (t, r)
}

/// Two sites of different strength at `0` and `dt`.
pub fn double_general(xi1: f64, xi2: f64, dt: f64) -> (Complex64, Complex64) {
    let e = phase(1.0, dt);
    let p = xi1 * xi2;
    let den = p * (e - 1.0) + 2.0 * I * (xi1 + xi2) + 4.0;
    let t = 4.0 / den;
    let r = (p * (1.0 - e) - 2.0 * I * (xi1 + xi2 * e)) / den;
    (t, r)
}

/// Three sites at `0`, `dt1`, `dt1 + dt2`.
///
/// `t = -8i/(γ + ω)`, `r = (λ + β)/(γ + ω)`.
pub fn triple(xi1: f64, xi2: f64, xi3: f64, dt1: f64, dt2: f64) -> (Complex64, Complex64) {
    let e1 = phase(1.0, dt1);
    let e2 = phase(1.0, dt2);
    let e12 = e1 * e2;
    let p123 = xi1 * xi2 * xi3;

    let gamma = -p123 * (e12 - e1 - e2 + 1.0) + 2.0 * I * xi1 * xi2 * (1.0 - e1);
    let lambda = 2.0 * I * xi2 * xi3 * (e12 - e1) - 4.0 * (xi1 + xi2 * e1 + xi3 * e12);
    let beta = -p123 * (e1 + e2 - e12 - 1.0)
        + 2.0 * I * xi1 * xi2 * (e1 - 1.0)
        + 2.0 * I * xi1 * xi3 * (e12 - 1.0);
    let omega = 2.0 * I * xi1 * xi3 * (1.0 - e12)
        + 2.0 * I * xi2 * xi3 * (1.0 - e2)
        + 4.0 * (xi1 + xi2 + xi3)
        - 8.0 * I;

    let den = gamma + omega;
    (-8.0 * I / den, (lambda + beta) / den)
}

/// `α₀ … α₆` for six equal sites spaced `dt`. Each row lists the constant
/// term, then the coefficients of `e^{2id̃}` through `e^{10id̃}`.
const SIX_ALPHA: [[Complex64; 6]; 7] = {
    const fn r(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }
    const fn i(v: f64) -> Complex64 {
        Complex64::new(0.0, v)
    }
    [
        [r(64.0), r(0.0), r(0.0), r(0.0), r(0.0), r(0.0)],
        [i(192.0), r(0.0), r(0.0), r(0.0), r(0.0), r(0.0)],
        [r(-240.0), r(80.0), r(64.0), r(48.0), r(32.0), r(16.0)],
        [i(-160.0), i(160.0), i(64.0), r(0.0), i(-32.0), i(-32.0)],
        [r(60.0), r(-120.0), r(24.0), r(48.0), r(12.0), r(-24.0)],
        [i(12.0), i(-40.0), i(40.0), r(0.0), i(-20.0), i(8.0)],
        [r(-1.0), r(5.0), r(-10.0), r(10.0), r(-5.0), r(1.0)],
    ]
};

/// `β₁ … β₆`, same layout as [`SIX_ALPHA`].
const SIX_BETA: [[Complex64; 6]; 6] = {
    const fn r(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }
    const fn i(v: f64) -> Complex64 {
        Complex64::new(0.0, v)
    }
    [
        [i(-32.0), i(-32.0), i(-32.0), i(-32.0), i(-32.0), i(-32.0)],
        [r(80.0), r(48.0), r(16.0), r(-16.0), r(-48.0), r(-80.0)],
        [i(80.0), i(-16.0), i(-64.0), i(-64.0), i(-16.0), i(80.0)],
        [r(-40.0), r(56.0), r(32.0), r(-32.0), r(-56.0), r(40.0)],
        [i(-10.0), i(30.0), i(-20.0), i(-20.0), i(30.0), i(-10.0)],
        [r(1.0), r(-5.0), r(10.0), r(-10.0), r(5.0), r(-1.0)],
    ]
};

fn eval_row(row: &[Complex64; 6], dt: f64) -> Complex64 {
    row.iter()
        .enumerate()
        .map(|(m, c)| c * phase(m as f64, dt))
        .sum()
}

/// `αᵢ(d̃)` for `i = 0..=6`.
pub fn six_alpha(dt: f64) -> [Complex64; 7] {
    std::array::from_fn(|i| eval_row(&SIX_ALPHA[i], dt))
}

/// `βᵢ(d̃)` for `i = 1..=6`, stored at index `i - 1`.
pub fn six_beta(dt: f64) -> [Complex64; 6] {
    std::array::from_fn(|i| eval_row(&SIX_BETA[i], dt))
}

/// Six equal sites spaced `dt`, first at `y = 0`:
/// `t = α₀ / Σ ξⁱαᵢ`, `r = Σ ξⁱβᵢ / Σ ξⁱαᵢ`.
pub fn six_equal(xi: f64, dt: f64) -> (Complex64, Complex64) {
    let alpha = six_alpha(dt);
    let beta = six_beta(dt);
    // Horner, highest power first.
    let den = alpha
        .iter()
        .rev()
        .fold(Complex64::default(), |acc, a| acc * xi + a);
    let num = beta
        .iter()
        .rev()
        .fold(Complex64::default(), |acc, b| acc * xi + b)
        * xi;
    (alpha[0] / den, num / den)
}

/// Distance from `dt` to the nearest multiple of π below which
/// [`double_resonance_strength`] reports a pole.
pub const RESONANCE_POLE_TOL: f64 = 1e-9;

/// Strength of two equal sites spaced `dt` that transmits perfectly:
/// `ξ = -2 / tan(d̃)`.
pub fn double_resonance_strength(dt: f64) -> Result<f64> {
    let nearest = (dt / std::f64::consts::PI).round() * std::f64::consts::PI;
    if (dt - nearest).abs() <= RESONANCE_POLE_TOL {
        return Err(Error::Pole(dt));
    }
    let xi = -2.0 / dt.tan();
    // tan(π/2) evaluates to ~1.6e16 rather than infinity.
    Ok(if xi.abs() < 1e-15 { 0.0 } else { xi })
}

/// `e^{2iy₀}`, the factor relating a single site's reflection at `y₀` to the one at the origin.
pub fn reflection_phase(y0: f64) -> Complex64 {
    c64(0.0, 2.0 * y0).exp()
}
