//! Number formatting and CSV emission.

use std::io::{self, Write};

use deltascat::analysis::{ResonanceHit, SweepRecord};
use deltascat::wavefunction::WaveSample;

pub const SIGNIFICANT_DIGITS: usize = 12;

pub const SWEEP_HEADER: &str = "param,T,R";
pub const WAVEFUNCTION_HEADER: &str = "y,psi_re,psi_im,dpsi_re,dpsi_im,density";
pub const RESONANCE_HEADER: &str = "param,residual";

/// Rounds to 12 significant digits and prints the shortest string that
/// reads back as the rounded value. Plain notation for magnitudes in
/// `[1e-5, 1e16)`, exponent notation otherwise.
pub fn float(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v)
        .parse()
        .unwrap_or(v);
    if rounded == 0.0 {
        return "0".into();
    }
    let a = rounded.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn write_sweep<W: Write>(mut w: W, records: &[SweepRecord]) -> io::Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{}",
            float(r.param),
            float(r.transmission),
            float(r.reflection)
        )?;
    }
    Ok(())
}

pub fn write_wavefunction<W: Write>(mut w: W, samples: &[WaveSample]) -> io::Result<()> {
    writeln!(w, "{WAVEFUNCTION_HEADER}")?;
    for s in samples {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            float(s.y),
            float(s.psi.re),
            float(s.psi.im),
            float(s.dpsi.re),
            float(s.dpsi.im),
            float(s.density)
        )?;
    }
    Ok(())
}

pub fn write_resonances<W: Write>(mut w: W, hits: &[ResonanceHit]) -> io::Result<()> {
    writeln!(w, "{RESONANCE_HEADER}")?;
    for h in hits {
        writeln!(w, "{},{}", float(h.param), float(h.residual))?;
    }
    Ok(())
}
