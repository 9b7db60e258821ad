//! The standard-ordered distribution `S(q,p)` of a thermal state, its real
//! part (Margenau-Hill) and its complex conjugate (Kirkwood).
//!
//! `S(q,p) = (2π)^{-1} ∫ dy ⟨q+y|ρ̂|q⟩ e^{-iyp} = ⟨q|p⟩⟨p|ρ̂|q⟩`. For a thermal
//! state it has the closed form
//!
//! ```text
//! S(q,p) = exp[(−2σ²(p² + q²) + 2ipq)/(1 + 4σ⁴)] / (π √(1 + 4σ⁴))
//! ```
//!
//! Two routes that never touch the closed form are provided as oracles: a
//! Fock-basis sum and a quadrature over the P-distribution.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{hermite_psi_all, quadrature_weights, Grid1D};
use crate::states::{fock_weights, ThermalState};

/// A point `(q, p)` of phase space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    pub fn new(q: f64, p: f64) -> Result<Self> {
        if !q.is_finite() || !p.is_finite() {
            return Err(Error::invalid(
                "phase point",
                format!("coordinates must be finite, got ({q}, {p})"),
            ));
        }
        Ok(PhasePoint { q, p })
    }

    pub fn origin() -> Self {
        PhasePoint { q: 0.0, p: 0.0 }
    }
}

/// Complex coherent amplitude `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherentAmplitude {
    pub re: f64,
    pub im: f64,
}

impl CoherentAmplitude {
    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `ln⟨x|α⟩ = −x²/2 + √2 αx − |α|²/2 − α²/2 − ¼ ln π`.
    pub fn ln_wavefunction(&self, x: f64) -> Complex64 {
        let a = self.as_complex();
        -0.25 * PI.ln() - 0.5 * x * x + 2f64.sqrt() * a * x - 0.5 * a.norm_sqr() - 0.5 * a * a
    }

    /// Quadrature wavefunction `⟨x|α⟩`.
    pub fn wavefunction(&self, x: f64) -> Complex64 {
        self.ln_wavefunction(x).exp()
    }
}

/// Which distribution a [`ComplexPhaseField`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistributionLabel {
    StandardOrdered,
    Kirkwood,
    /// Real part of the standard-ordered distribution; imaginary parts are
    /// stored as zero.
    MargenauHill,
}

impl DistributionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            DistributionLabel::StandardOrdered => "standard-ordered",
            DistributionLabel::Kirkwood => "kirkwood",
            DistributionLabel::MargenauHill => "margenau-hill",
        }
    }
}

/// `1 + 4σ⁴`.
fn denominator(state: &ThermalState) -> f64 {
    1.0 + 4.0 * state.sigma2() * state.sigma2()
}

/// Closed-form standard-ordered distribution.
pub fn s_closed(state: &ThermalState, pt: PhasePoint) -> Complex64 {
    let d = denominator(state);
    let (q, p) = (pt.q, pt.p);
    let exponent = Complex64::new(-2.0 * state.sigma2() * (p * p + q * q), 2.0 * p * q) / d;
    exponent.exp() / (PI * d.sqrt())
}

/// Margenau-Hill distribution `Re S(q,p)`.
pub fn margenau_hill(state: &ThermalState, pt: PhasePoint) -> f64 {
    s_closed(state, pt).re
}

/// Kirkwood distribution `⟨q|ρ̂|p⟩⟨p|q⟩ = S(q,p)*`.
pub fn kirkwood(state: &ThermalState, pt: PhasePoint) -> Complex64 {
    s_closed(state, pt).conj()
}

/// `S(q,p)` from the Fock decomposition of `ρ̂`:
/// `S = ⟨q|p⟩ Σₙ ρₙ ⟨p|n⟩⟨n|q⟩` with `⟨p|n⟩ = (−i)ⁿψₙ(p)`.
pub fn s_oracle_fock(state: &ThermalState, pt: PhasePoint, tail_tol: f64) -> Result<Complex64> {
    let mixture = fock_weights(state, tail_tol)?;
    let n_max = mixture.truncation();
    let psi_q = hermite_psi_all(n_max, pt.q)?;
    let psi_p = hermite_psi_all(n_max, pt.p)?;

    // Accumulate real and imaginary parts by parity of n: (−i)ⁿ cycles
    // through 1, −i, −1, i.
    let mut sum = Complex64::new(0.0, 0.0);
    for (n, rho) in mixture.iter() {
        let term = rho * psi_q[n] * psi_p[n];
        sum += match n % 4 {
            0 => Complex64::new(term, 0.0),
            1 => Complex64::new(0.0, -term),
            2 => Complex64::new(-term, 0.0),
            _ => Complex64::new(0.0, term),
        };
    }
    let q_p = Complex64::cis(pt.p * pt.q) / (2.0 * PI).sqrt();
    Ok(q_p * sum)
}

/// Quadrature settings for [`s_oracle_pintegral_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PIntegralConfig {
    /// Half-width of the α grid in units of the per-component standard
    /// deviation `√(⟨n̂⟩/2)` of the P-distribution.
    pub extent_sigmas: f64,
    /// Points per axis.
    pub points: usize,
}

impl Default for PIntegralConfig {
    fn default() -> Self {
        PIntegralConfig {
            extent_sigmas: 8.0,
            points: 801,
        }
    }
}

/// `S(q,p)` as a quadrature of the P-distribution against coherent-state
/// wavefunctions, with the default grid.
pub fn s_oracle_pintegral(state: &ThermalState, pt: PhasePoint) -> Result<Complex64> {
    s_oracle_pintegral_with(state, pt, PIntegralConfig::default())
}

/// `S(q,p) = (2π)^{-1} ∫d²α P(α) ∫dy ⟨q+y|α⟩⟨α|q⟩ e^{-iyp}`.
///
/// The inner `y` integral is Gaussian and done in closed form:
/// `∫dy ⟨q+y|α⟩e^{-iyp} = e^{ipq} π^{-1/4} √(2π) exp[(√2α − ip)²/2 − |α|²/2 − α²/2]`.
/// The outer integral over the α plane is a 2-D composite quadrature.
pub fn s_oracle_pintegral_with(
    state: &ThermalState,
    pt: PhasePoint,
    cfg: PIntegralConfig,
) -> Result<Complex64> {
    if state.mean_n() <= 0.0 {
        return Err(Error::DeltaDistribution);
    }
    let half = cfg.extent_sigmas * (state.mean_n() / 2.0).sqrt();
    let axis = Grid1D::symmetric(half, cfg.points)?;
    let weights = quadrature_weights(&axis);
    let (q, p) = (pt.q, pt.p);
    let ln_norm = -0.25 * PI.ln() - 0.5 * (2.0 * PI).ln();

    let rows: Vec<Complex64> = axis
        .to_vec()
        .par_iter()
        .zip(weights.par_iter())
        .map(|(&a_re, &w_re)| {
            let mut row = Complex64::new(0.0, 0.0);
            for (a_im, &w_im) in axis.points().zip(&weights) {
                let alpha = CoherentAmplitude { re: a_re, im: a_im };
                let a = alpha.as_complex();
                let y_integral = Complex64::new(0.0, p * q)
                    + (2f64.sqrt() * a - Complex64::new(0.0, p)).powi(2) / 2.0
                    - 0.5 * a.norm_sqr()
                    - 0.5 * a * a;
                let bra = alpha.ln_wavefunction(q).conj();
                let weight = state.p_distribution(a_re, a_im).expect("mean_n > 0");
                row += (y_integral + bra + ln_norm).exp() * (weight * w_im);
            }
            row * w_re
        })
        .collect();
    Ok(rows.into_iter().sum())
}

/// A complex distribution sampled on a `(q, p)` grid, rows indexed by `q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexPhaseField {
    qgrid: Grid1D,
    pgrid: Grid1D,
    #[serde(skip)]
    values: Vec<Complex64>,
    label: DistributionLabel,
}

impl ComplexPhaseField {
    pub fn qgrid(&self) -> &Grid1D {
        &self.qgrid
    }

    pub fn pgrid(&self) -> &Grid1D {
        &self.pgrid
    }

    pub fn label(&self) -> DistributionLabel {
        self.label
    }

    /// Row-major values, `values[i * pgrid.count() + j]` at `(qᵢ, pⱼ)`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.pgrid.count() + j]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        let n = self.pgrid.count();
        &self.values[i * n..(i + 1) * n]
    }

    /// Smallest real part and the grid point where it occurs (first in
    /// row-major order on ties).
    pub fn min_real(&self) -> (f64, PhasePoint) {
        let n = self.pgrid.count();
        let (idx, v) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |(bi, bv), (i, z)| {
                if z.re < bv {
                    (i, z.re)
                } else {
                    (bi, bv)
                }
            });
        let pt = PhasePoint {
            q: self.qgrid.point(idx / n),
            p: self.pgrid.point(idx % n),
        };
        (v, pt)
    }

    /// `∬ values dq dp` by tensor-product quadrature.
    pub fn integral(&self) -> Complex64 {
        let wq = quadrature_weights(&self.qgrid);
        let wp = quadrature_weights(&self.pgrid);
        wq.iter()
            .enumerate()
            .map(|(i, a)| {
                self.row(i)
                    .iter()
                    .zip(&wp)
                    .map(|(z, b)| z * b)
                    .sum::<Complex64>()
                    * a
            })
            .sum()
    }
}

/// Dense evaluation of the selected distribution on `qgrid × pgrid`.
pub fn eval_grid(
    state: &ThermalState,
    qgrid: &Grid1D,
    pgrid: &Grid1D,
    which: DistributionLabel,
) -> ComplexPhaseField {
    let ps = pgrid.to_vec();
    let values: Vec<Complex64> = qgrid
        .to_vec()
        .par_iter()
        .flat_map_iter(|&q| {
            ps.iter().map(move |&p| {
                let s = s_closed(state, PhasePoint { q, p });
                match which {
                    DistributionLabel::StandardOrdered => s,
                    DistributionLabel::Kirkwood => s.conj(),
                    DistributionLabel::MargenauHill => Complex64::new(s.re, 0.0),
                }
            })
        })
        .collect();
    ComplexPhaseField {
        qgrid: *qgrid,
        pgrid: *pgrid,
        values,
        label: which,
    }
}
