//! Transfer-matrix route: one `2 × 2` matrix per site, composed left to
//! right.
//!
//! A site of strength `ξ` at `y₀` maps the coefficients `(A, B)` of the
//! region on its left to `(C, D)` on its right. Write `p = e^{2iy₀}`.
//! Continuity and the derivative jump give
//!
//! ```text
//! C e^{iy₀} + D e^{-iy₀}             = A e^{iy₀} + B e^{-iy₀}
//! i(C e^{iy₀} - D e^{-iy₀}) - i(A e^{iy₀} - B e^{-iy₀}) = ξ (A e^{iy₀} + B e^{-iy₀})
//! ```
//!
//! and solving for `C`, `D`:
//!
//! ```text
//! ⎡C⎤   ⎡ 1 - iξ/2      -iξ/2 · p̄ ⎤ ⎡A⎤
//! ⎣D⎦ = ⎣ iξ/2 · p       1 + iξ/2 ⎦ ⎣B⎦
//! ```
//!
//! with determinant `(1 + ξ²/4) - ξ²/4 = 1`. The position phase lives inside
//! the site matrix, so there is no separate propagation step.
//!
//! Products are accumulated in double-double precision ([`ExtendedMatrix`]);
//! see [`total_matrix_extended`].

use num_complex::Complex64;

use crate::c64;
use crate::ddouble::ComplexDd;
use crate::direct::AmplitudeSolution;
use crate::error::{Error, Result};
use crate::model::DimensionlessSystem;

/// `|m22|` at or below this value is reported as a pole.
pub const DEGENERATE_M22: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl TransferMatrix {
    pub fn identity() -> Self {
        let one = c64(1.0, 0.0);
        let zero = Complex64::default();
        Self {
            m11: one,
            m12: zero,
            m21: zero,
            m22: one,
        }
    }

    /// Matrix of a single site of strength `xi` at `y0`.
    pub fn delta(xi: f64, y0: f64) -> Self {
        let h = c64(0.0, xi / 2.0);
        let p = Complex64::from_polar(1.0, 2.0 * y0);
        Self {
            m11: 1.0 - h,
            m12: -h * p.conj(),
            m21: h * p,
            m22: 1.0 + h,
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// `other · self`: apply `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        other.mul(self)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
        }
    }

    pub fn apply(&self, (a, b): (Complex64, Complex64)) -> (Complex64, Complex64) {
        (self.m11 * a + self.m12 * b, self.m21 * a + self.m22 * b)
    }

    /// Amplitudes from the condition `(t, 0)ᵀ = M (1, r)ᵀ`.
    ///
    /// Returns `(t, r)`.
    pub fn amplitudes(&self) -> Result<(Complex64, Complex64)> {
        let m22 = self.m22.norm();
        if !(m22 > DEGENERATE_M22) {
            return Err(Error::DegenerateMatrix(m22));
        }
        let r = -self.m21 / self.m22;
        let t = self.det() / self.m22;
        Ok((t, r))
    }
}

impl std::ops::Mul for TransferMatrix {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        TransferMatrix::mul(&self, &rhs)
    }
}

pub fn delta_matrix(xi: f64, y0: f64) -> TransferMatrix {
    TransferMatrix::delta(xi, y0)
}

/// A transfer matrix with double-double entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedMatrix {
    m: [ComplexDd; 4],
}

impl From<TransferMatrix> for ExtendedMatrix {
    fn from(t: TransferMatrix) -> Self {
        Self {
            m: [t.m11.into(), t.m12.into(), t.m21.into(), t.m22.into()],
        }
    }
}

impl ExtendedMatrix {
    pub fn identity() -> Self {
        TransferMatrix::identity().into()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let [a11, a12, a21, a22] = self.m;
        let [b11, b12, b21, b22] = rhs.m;
        Self {
            m: [
                a11 * b11 + a12 * b21,
                a11 * b12 + a12 * b22,
                a21 * b11 + a22 * b21,
                a21 * b12 + a22 * b22,
            ],
        }
    }

    /// `other · self`.
    pub fn then(&self, other: &Self) -> Self {
        other.mul(self)
    }

    /// Determinant evaluated in double-double, then rounded.
    pub fn det(&self) -> Complex64 {
        let [a11, a12, a21, a22] = self.m;
        (a11 * a22 - a12 * a21).to_c64()
    }

    /// Entries rounded to `f64`.
    pub fn round(&self) -> TransferMatrix {
        let [m11, m12, m21, m22] = self.m.map(ComplexDd::to_c64);
        TransferMatrix { m11, m12, m21, m22 }
    }

    /// `(t, r)` using the accurate determinant.
    pub fn amplitudes(&self) -> Result<(Complex64, Complex64)> {
        let m = self.round();
        let m22 = m.m22.norm();
        if !(m22 > DEGENERATE_M22) {
            return Err(Error::DegenerateMatrix(m22));
        }
        Ok((self.det() / m.m22, -m.m21 / m.m22))
    }
}

/// Ordered product `Mₙ ⋯ M₂ M₁` over sites in increasing `y`, accumulated
/// in double-double.
pub fn total_matrix_extended(sys: &DimensionlessSystem) -> ExtendedMatrix {
    sys.sites()
        .fold(ExtendedMatrix::identity(), |acc, (xi, y)| {
            acc.then(&TransferMatrix::delta(xi, y).into())
        })
}

/// [`total_matrix_extended`] rounded to `f64`. The determinant of the
/// rounded matrix is only accurate to about `ε/T`; use the extended form
/// when it matters.
pub fn total_matrix(sys: &DimensionlessSystem) -> TransferMatrix {
    total_matrix_extended(sys).round()
}

/// `(t, r)` from a composed matrix.
pub fn amplitudes_from_matrix(m: &TransferMatrix) -> Result<(Complex64, Complex64)> {
    m.amplitudes()
}

/// Full solution through the transfer route. Interior coefficients come from
/// pushing `(1, r)` through the sites one at a time.
pub fn solve_amplitudes(sys: &DimensionlessSystem) -> Result<AmplitudeSolution> {
    let (t, r) = total_matrix_extended(sys).amplitudes()?;
    let n = sys.len();
    let mut coeffs = (c64(1.0, 0.0), r);
    let mut interior = Vec::with_capacity(n.saturating_sub(1));
    for (xi, y) in sys.sites().take(n - 1) {
        coeffs = TransferMatrix::delta(xi, y).apply(coeffs);
        interior.push(coeffs);
    }
    Ok(AmplitudeSolution { r, t, interior })
}

/// `(T, R)` without building interior coefficients. This is the sweep path.
pub fn probabilities(sys: &DimensionlessSystem) -> Result<(f64, f64)> {
    let (t, r) = total_matrix_extended(sys).amplitudes()?;
    Ok((t.norm_sqr(), r.norm_sqr()))
}
