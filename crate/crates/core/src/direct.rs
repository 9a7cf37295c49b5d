//! Direct solution of the matching conditions as one dense linear system.
//!
//! With `n` sites there are `n + 1` regions. Region `j` carries
//! `aⱼ e^{iy} + bⱼ e^{-iy}`, with the incident side fixed to `(1, r)` and the
//! transmitted side to `(t, 0)`. That leaves `2n` unknowns, ordered
//!
//! ```text
//! (r, a₂, b₂, a₃, b₃, …, aₙ, bₙ, t)
//! ```
//!
//! Each site contributes two rows, continuity first and then the derivative
//! jump:
//!
//! ```text
//! ψ_L(yⱼ) - ψ_R(yⱼ)            = 0
//! ψ'_R(yⱼ) - ψ'_L(yⱼ) - ξⱼ ψ_L(yⱼ) = 0
//! ```
//!
//! Terms involving the known incident amplitude move to the right-hand side.

use num_complex::Complex64;

use crate::c64;
use crate::error::Result;
use crate::linalg::{self, ComplexMatrix};
use crate::model::DimensionlessSystem;

/// The assembled matching system `matrix · x = rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub matrix: ComplexMatrix,
    pub rhs: Vec<Complex64>,
}

impl LinearSystem {
    pub fn size(&self) -> usize {
        self.rhs.len()
    }

    pub fn residual(&self, x: &[Complex64]) -> f64 {
        linalg::residual_inf(&self.matrix, x, &self.rhs)
    }
}

/// Reflection and transmission amplitudes plus every interior region's
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSolution {
    pub r: Complex64,
    pub t: Complex64,
    /// `(aⱼ, bⱼ)` for the `n - 1` regions strictly between sites.
    pub interior: Vec<(Complex64, Complex64)>,
}

impl AmplitudeSolution {
    /// `T = |t|²`.
    pub fn transmission(&self) -> f64 {
        self.t.norm_sqr()
    }

    /// `R = |r|²`.
    pub fn reflection(&self) -> f64 {
        self.r.norm_sqr()
    }

    /// `|T + R - 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.transmission() + self.reflection() - 1.0).abs()
    }

    pub fn region_count(&self) -> usize {
        self.interior.len() + 2
    }

    /// Coefficients `(a, b)` of region `j`, counting from 0 on the incident
    /// side up to `n` on the transmitted side.
    pub fn region(&self, j: usize) -> (Complex64, Complex64) {
        let n = self.interior.len() + 1;
        match j {
            0 => (c64(1.0, 0.0), self.r),
            j if j == n => (self.t, Complex64::default()),
            j if j < n => self.interior[j - 1],
            _ => panic!("region {j} out of range for {n} sites"),
        }
    }

    pub fn regions(&self) -> Vec<(Complex64, Complex64)> {
        (0..self.region_count()).map(|j| self.region(j)).collect()
    }
}

#[derive(Clone, Copy)]
enum Amp {
    Known(Complex64),
    Unknown(usize),
    Zero,
}

fn region_amps(j: usize, n: usize) -> (Amp, Amp) {
    if j == 0 {
        (Amp::Known(c64(1.0, 0.0)), Amp::Unknown(0))
    } else if j == n {
        (Amp::Unknown(2 * n - 1), Amp::Zero)
    } else {
        (Amp::Unknown(2 * j - 1), Amp::Unknown(2 * j))
    }
}

/// Builds the `2n × 2n` system for `sys`.
pub fn assemble_system(sys: &DimensionlessSystem) -> LinearSystem {
    let n = sys.len();
    let size = 2 * n;
    let mut matrix = ComplexMatrix::zeros(size);
    let mut rhs = vec![Complex64::default(); size];
    let i = c64(0.0, 1.0);

    let mut put = |row: usize, amp: Amp, coef: Complex64| match amp {
        Amp::Unknown(col) => matrix[(row, col)] += coef,
        Amp::Known(v) => rhs[row] -= coef * v,
        Amp::Zero => {}
    };

    for (site, (xi, y)) in sys.sites().enumerate() {
        let e = Complex64::from_polar(1.0, y);
        let ebar = e.conj();
        let (al, bl) = region_amps(site, n);
        let (ar, br) = region_amps(site + 1, n);
        let cont = 2 * site;
        let jump = cont + 1;

        put(cont, al, e);
        put(cont, bl, ebar);
        put(cont, ar, -e);
        put(cont, br, -ebar);

        put(jump, ar, i * e);
        put(jump, br, -i * ebar);
        put(jump, al, -i * e - xi * e);
        put(jump, bl, i * ebar - xi * ebar);
    }
    LinearSystem { matrix, rhs }
}

/// Solves an assembled system.
pub fn solve_linear(ls: &LinearSystem) -> Result<Vec<Complex64>> {
    linalg::solve(&ls.matrix, &ls.rhs)
}

/// Unpacks a solution vector in the documented unknown order.
pub fn unpack(x: &[Complex64]) -> AmplitudeSolution {
    let size = x.len();
    assert!(
        size >= 2 && size.is_multiple_of(2),
        "solution vector must have even length ≥ 2"
    );
    let interior = x[1..size - 1]
        .chunks_exact(2)
        .map(|p| (p[0], p[1]))
        .collect();
    AmplitudeSolution {
        r: x[0],
        t: x[size - 1],
        interior,
    }
}

/// Assemble, solve and unpack.
pub fn solve_amplitudes(sys: &DimensionlessSystem) -> Result<AmplitudeSolution> {
    let ls = assemble_system(sys);
    let x = solve_linear(&ls)?;
    Ok(unpack(&x))
}
