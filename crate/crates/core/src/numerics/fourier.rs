//! Position ↔ momentum representation on uniform grids.
//!
//! Continuum convention: `ψ̃(p) = (2π)^{-1/2} ∫ ψ(q) e^{-ipq} dq`. On a grid
//! of `N` points with spacing `Δq` the conjugate grid has spacing
//! `Δp = 2π/(NΔq)` and is centred on zero. The discrete pair below is
//! exactly unitary with respect to `Σ|ψ|²Δq`; it is evaluated with an FFT
//! plus the phase factors that shift both grids off the origin.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::Grid1D;
use crate::error::Result;

/// Momentum grid conjugate to `qgrid`.
pub fn conjugate_grid(qgrid: &Grid1D) -> Grid1D {
    let n = qgrid.count();
    let dp = 2.0 * PI / (n as f64 * qgrid.spacing());
    let p0 = -((n / 2) as f64) * dp;
    Grid1D::new(p0, p0 + (n - 1) as f64 * dp, n).expect("conjugate grid is valid")
}

/// Planned transform between a position grid and its conjugate momentum grid.
#[derive(Clone)]
pub struct FourierPair {
    qgrid: Grid1D,
    pgrid: Grid1D,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for FourierPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FourierPair")
            .field("qgrid", &self.qgrid)
            .field("pgrid", &self.pgrid)
            .finish()
    }
}

impl FourierPair {
    pub fn new(qgrid: Grid1D) -> Self {
        let mut planner = FftPlanner::new();
        let n = qgrid.count();
        FourierPair {
            qgrid,
            pgrid: conjugate_grid(&qgrid),
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn qgrid(&self) -> &Grid1D {
        &self.qgrid
    }

    pub fn pgrid(&self) -> &Grid1D {
        &self.pgrid
    }

    /// Position samples to momentum samples.
    pub fn forward(&self, field: &[Complex64]) -> Result<Vec<Complex64>> {
        self.qgrid.check_len(field.len())?;
        let dq = self.qgrid.spacing();
        let dp = self.pgrid.spacing();
        let (q0, p0) = (self.qgrid.min(), self.pgrid.min());

        let mut buf: Vec<Complex64> = field
            .iter()
            .enumerate()
            .map(|(j, &v)| v * Complex64::cis(-p0 * dq * j as f64))
            .collect();
        self.forward.process(&mut buf);

        let norm = dq / (2.0 * PI).sqrt();
        Ok(buf
            .into_iter()
            .enumerate()
            .map(|(k, v)| v * Complex64::cis(-(p0 + k as f64 * dp) * q0) * norm)
            .collect())
    }

    /// Momentum samples back to position samples.
    pub fn inverse(&self, spectrum: &[Complex64]) -> Result<Vec<Complex64>> {
        self.pgrid.check_len(spectrum.len())?;
        let dq = self.qgrid.spacing();
        let dp = self.pgrid.spacing();
        let (q0, p0) = (self.qgrid.min(), self.pgrid.min());

        let mut buf: Vec<Complex64> = spectrum
            .iter()
            .enumerate()
            .map(|(k, &v)| v * Complex64::cis(k as f64 * dp * q0))
            .collect();
        self.inverse.process(&mut buf);

        let norm = dp / (2.0 * PI).sqrt();
        Ok(buf
            .into_iter()
            .enumerate()
            .map(|(j, v)| v * Complex64::cis(p0 * (q0 + j as f64 * dq)) * norm)
            .collect())
    }
}

/// `ψ(q) ↦ (ψ̃(p), p-grid)`.
pub fn q_to_p_transform(field: &[Complex64], grid: &Grid1D) -> Result<(Vec<Complex64>, Grid1D)> {
    let pair = FourierPair::new(*grid);
    let out = pair.forward(field)?;
    Ok((out, *pair.pgrid()))
}

/// Inverse of [`q_to_p_transform`]; `qgrid` is the position grid the
/// spectrum was produced from.
pub fn p_to_q_transform(
    spectrum: &[Complex64],
    pgrid: &Grid1D,
    qgrid: &Grid1D,
) -> Result<Vec<Complex64>> {
    let pair = FourierPair::new(*qgrid);
    pgrid.check_len(spectrum.len())?;
    pair.inverse(spectrum)
}

/// `ψ(q) = (2π)^{-1/2} Σₖ ψ̃(pₖ) e^{ipₖq} Δp` at an arbitrary `q`, by explicit
/// kernel sum.
pub fn p_to_q_at(spectrum: &[Complex64], pgrid: &Grid1D, q: f64) -> Result<Complex64> {
    pgrid.check_len(spectrum.len())?;
    let norm = pgrid.spacing() / (2.0 * PI).sqrt();
    Ok(spectrum
        .iter()
        .zip(pgrid.points())
        .map(|(&v, p)| v * Complex64::cis(p * q))
        .sum::<Complex64>()
        * norm)
}
