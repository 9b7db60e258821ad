//! Thermal single-mode states and blackbody occupation numbers.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Reduced Planck constant, CODATA 2018 (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, CODATA 2018 (J/K).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Default tail tolerance for Fock truncations.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// Above this `ħω/kT` the occupation number underflows and is reported as 0.
pub const OCCUPATION_EXPONENT_LIMIT: f64 = 700.0;

/// A single-mode thermal state, parameterized by its mean photon number.
///
/// Each quadrature has variance `σ² = ⟨n̂⟩ + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalState {
    mean_n: f64,
    sigma2: f64,
}

impl ThermalState {
    pub fn from_mean_n(mean_n: f64) -> Result<Self> {
        if !mean_n.is_finite() || mean_n < 0.0 {
            return Err(Error::invalid(
                "mean_n",
                format!("must be finite and non-negative, got {mean_n}"),
            ));
        }
        Ok(ThermalState {
            mean_n,
            sigma2: mean_n + 0.5,
        })
    }

    pub fn vacuum() -> Self {
        ThermalState {
            mean_n: 0.0,
            sigma2: 0.5,
        }
    }

    pub fn mean_n(&self) -> f64 {
        self.mean_n
    }

    /// Quadrature variance `σ²`.
    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// Quadrature standard deviation `σ`.
    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }

    /// Ratio `⟨n̂⟩/(1+⟨n̂⟩)` of successive Fock weights.
    pub fn boltzmann_ratio(&self) -> f64 {
        self.mean_n / (1.0 + self.mean_n)
    }

    /// Glauber-Sudarshan P-distribution `e^{-|α|²/⟨n̂⟩}/(π⟨n̂⟩)`; `None` for the
    /// vacuum where it degenerates to a point mass.
    pub fn p_distribution(&self, alpha_re: f64, alpha_im: f64) -> Option<f64> {
        if self.mean_n == 0.0 {
            return None;
        }
        let r2 = alpha_re * alpha_re + alpha_im * alpha_im;
        Some((-r2 / self.mean_n).exp() / (PI * self.mean_n))
    }
}

/// `thermal_from_mean_n` under its operation name.
pub fn thermal_from_mean_n(mean_n: f64) -> Result<ThermalState> {
    ThermalState::from_mean_n(mean_n)
}

/// Diagonal Fock-basis weights `ρₙ`, truncated once the geometric tail drops
/// below a tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockMixture {
    weights: Vec<f64>,
    tail: f64,
}

impl FockMixture {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Highest Fock number kept.
    pub fn truncation(&self) -> usize {
        self.weights.len() - 1
    }

    /// Probability mass beyond the truncation.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.weights.iter().copied().enumerate()
    }
}

/// Thermal Fock weights `ρₙ = ⟨n̂⟩ⁿ/(1+⟨n̂⟩)ⁿ⁺¹` for `n = 0..=N`, with the
/// smallest `N` whose tail `(⟨n̂⟩/(1+⟨n̂⟩))^{N+1}` is at most `tail_tol`.
pub fn fock_weights(state: &ThermalState, tail_tol: f64) -> Result<FockMixture> {
    if !(tail_tol > 0.0 && tail_tol <= 1e-3) {
        return Err(Error::invalid(
            "tail_tol",
            format!("must lie in (0, 1e-3], got {tail_tol}"),
        ));
    }
    let ratio = state.boltzmann_ratio();
    let mut weights = Vec::new();
    let mut w = 1.0 / (1.0 + state.mean_n());
    // Tail after pushing ρ_N is ratio^{N+1}.
    let mut tail = 1.0;
    loop {
        weights.push(w);
        tail *= ratio;
        if tail <= tail_tol {
            break;
        }
        w *= ratio;
    }
    Ok(FockMixture { weights, tail })
}

/// Gaussian quadrature marginal `⟨q|ρ̂|q⟩ = e^{-q²/2σ²}/√(2πσ²)`.
pub fn q_marginal_pdf(state: &ThermalState, q: f64) -> f64 {
    let s2 = state.sigma2();
    (-q * q / (2.0 * s2)).exp() / (2.0 * PI * s2).sqrt()
}

/// A blackbody field mode at angular frequency `ω` and temperature `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlackbodyMode {
    angular_frequency: f64,
    temperature: f64,
}

impl BlackbodyMode {
    /// `angular_frequency` in rad/s, `temperature` in kelvin.
    pub fn new(angular_frequency: f64, temperature: f64) -> Result<Self> {
        if !(angular_frequency.is_finite() && angular_frequency > 0.0) {
            return Err(Error::invalid(
                "angular_frequency",
                format!("must be finite and positive, got {angular_frequency}"),
            ));
        }
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::invalid(
                "temperature",
                format!("must be finite and positive, got {temperature}"),
            ));
        }
        Ok(BlackbodyMode {
            angular_frequency,
            temperature,
        })
    }

    /// Mode at ordinary frequency `f` in Hz.
    pub fn from_frequency(frequency_hz: f64, temperature: f64) -> Result<Self> {
        Self::new(2.0 * PI * frequency_hz, temperature)
    }

    pub fn angular_frequency(&self) -> f64 {
        self.angular_frequency
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Dimensionless `ħω/kT`.
    pub fn reduced_energy(&self) -> f64 {
        HBAR * self.angular_frequency / (BOLTZMANN * self.temperature)
    }
}

/// Result of [`occupation_number`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Occupation {
    pub mean_n: f64,
    /// Set when `ħω/kT` exceeded [`OCCUPATION_EXPONENT_LIMIT`] and `mean_n`
    /// was flushed to zero.
    pub underflow: bool,
}

/// Planck occupation `1/(e^{ħω/kT} − 1)`.
pub fn occupation_number(mode: &BlackbodyMode) -> Occupation {
    occupation_from_reduced_energy(mode.reduced_energy())
}

/// Planck occupation as a function of `x = ħω/kT`.
pub fn occupation_from_reduced_energy(x: f64) -> Occupation {
    if x > OCCUPATION_EXPONENT_LIMIT {
        return Occupation {
            mean_n: 0.0,
            underflow: true,
        };
    }
    Occupation {
        mean_n: 1.0 / x.exp_m1(),
        underflow: false,
    }
}

/// Which maximum of the Planck spectrum Wien's displacement law refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WienConvention {
    /// Peak of the spectral radiance per unit wavelength, `x = 5(1 − e^{-x})`.
    #[default]
    WavelengthPeak,
    /// Peak per unit frequency, `x = 3(1 − e^{-x})`.
    FrequencyPeak,
}

impl WienConvention {
    fn coefficient(self) -> f64 {
        match self {
            WienConvention::WavelengthPeak => 5.0,
            WienConvention::FrequencyPeak => 3.0,
        }
    }

    /// `ħω/kT` at the peak: the positive root of `x = c(1 − e^{-x})`.
    pub fn reduced_energy(self) -> f64 {
        let c = self.coefficient();
        // Newton from x = c converges monotonically to the positive root.
        let mut x = c;
        for _ in 0..100 {
            let f = x - c * (1.0 - (-x).exp());
            let df = 1.0 - c * (-x).exp();
            let step = f / df;
            x -= step;
            if step.abs() < 1e-15 * x {
                break;
            }
        }
        x
    }
}

/// Occupation number at the Planck peak. Independent of temperature.
pub fn wien_peak_occupation(convention: WienConvention) -> f64 {
    occupation_from_reduced_energy(convention.reduced_energy()).mean_n
}
