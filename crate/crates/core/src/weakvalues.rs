//! Weak values postselected on the quadrature `q`.
//!
//! For a thermal state the weak value of `p²` is the inverted parabola
//! `(σ² + 4σ⁶ − q²)/(4σ⁴)`, negative for `|q| > √(σ² + 4σ⁶)`, whereas any
//! classical stochastic model of the field gives a conditional mean of `p²`
//! that is never negative.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{erfc, hermite_psi_all, MAX_HERMITE_ORDER, integrate, integrate_complex, Grid1D};
use crate::quasiprob::{s_closed, PhasePoint};
use crate::states::{fock_weights, q_marginal_pdf, ThermalState, DEFAULT_TAIL_TOL};

/// Highest moment accepted by [`moment_weak_integral`].
pub const MAX_MOMENT: usize = 8;

/// Marginal densities below this are treated as outside the support.
pub const MIN_MARGINAL: f64 = 1e-300;

/// Observable whose weak value is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Observable {
    P2,
    Hamiltonian,
    PMoment(usize),
}

/// How a weak value is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeakValueMethod {
    ClosedForm,
    ConditionalMomentIntegral,
}

/// Weak values sampled over a grid of postselected `q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakValueCurve {
    pub state: ThermalState,
    pub qgrid: Grid1D,
    pub values: Vec<f64>,
    pub observable: Observable,
    pub method: WeakValueMethod,
}

/// Closed-form `(p²)_w(q) = (σ² + 4σ⁶ − q²)/(4σ⁴)`.
pub fn p2_weak_closed(state: &ThermalState, q: f64) -> f64 {
    let s2 = state.sigma2();
    let s4 = s2 * s2;
    (s2 + 4.0 * s4 * s2 - q * q) / (4.0 * s4)
}

/// Real part of `(pⁿ)_w(q)` in closed form.
///
/// Conditioned on `q`, `S(q,p)/⟨q|ρ̂|q⟩` is a Gaussian in `p` with variance
/// `v = (1 + 4σ⁴)/(4σ²)` and imaginary mean `μ = iq/(2σ²)`, so
/// `(pⁿ)_w = Σₖ C(n,2k) μ^{n−2k} vᵏ (2k−1)!!`.
pub fn moment_weak_closed(state: &ThermalState, n: usize, q: f64) -> f64 {
    let s2 = state.sigma2();
    let v = (1.0 + 4.0 * s2 * s2) / (4.0 * s2);
    let mu = Complex64::new(0.0, q / (2.0 * s2));
    let mut sum = Complex64::new(0.0, 0.0);
    let mut binom = 1.0_f64; // C(n, 2k)
    let mut double_fact = 1.0_f64; // (2k−1)!!
    for k in 0..=n / 2 {
        if k > 0 {
            let j = 2 * k;
            binom *= ((n - j + 2) * (n - j + 1)) as f64 / ((j - 1) * j) as f64;
            double_fact *= (2 * k - 1) as f64;
        }
        sum += mu.powu((n - 2 * k) as u32) * (binom * v.powi(k as i32) * double_fact);
    }
    sum.re
}

/// Real part of `(pⁿ)_w(q) = ∫dp pⁿ S(q,p) / ⟨q|ρ̂|q⟩`, evaluated by
/// quadrature over samples of the closed-form `S`.
pub fn moment_weak_integral(state: &ThermalState, n: usize, q: f64) -> Result<f64> {
    if n > MAX_MOMENT {
        return Err(Error::UnsupportedOrder {
            order: n,
            max: MAX_MOMENT,
        });
    }
    if !q.is_finite() {
        return Err(Error::invalid("q", format!("must be finite, got {q}")));
    }
    let marginal = q_marginal_pdf(state, q);
    if marginal < MIN_MARGINAL {
        return Err(Error::OutOfSupport { q, marginal });
    }
    // |S(q,p)| is a Gaussian in p with standard deviation √v.
    let s2 = state.sigma2();
    let width = ((1.0 + 4.0 * s2 * s2) / (4.0 * s2)).sqrt();
    let pgrid = Grid1D::symmetric(16.0 * width, 3201)?;
    let samples: Vec<Complex64> = pgrid
        .points()
        .map(|p| s_closed(state, PhasePoint { q, p }) * p.powi(n as i32))
        .collect();
    let moment = integrate_complex(&samples, &pgrid)?;
    Ok(moment.re / marginal)
}

/// `H_w(q) = ⟨q|ρ̂Ĥ|q⟩/⟨q|ρ̂|q⟩` from the Fock decomposition,
/// `⟨q|ρ̂Ĥ|q⟩ = Σₙ ρₙ (n + 1/2) ψₙ(q)²`.
///
/// The truncation adapts to `q`: far out in the tails the marginal is tiny
/// and higher Fock states dominate, so the sum is extended until the
/// remaining weight (with `ψₙ² ≤ 1`) is below `1e-16` of the partial sum.
pub fn hamiltonian_weak(state: &ThermalState, q: f64) -> Result<f64> {
    let ratio = state.boltzmann_ratio();
    let mut n_max = fock_weights(state, DEFAULT_TAIL_TOL)?.truncation();
    loop {
        let psi = hermite_psi_all(n_max, q)?;
        let (mut num, mut den) = (0.0, 0.0);
        let mut rho = 1.0 / (1.0 + state.mean_n());
        for (n, p) in psi.iter().enumerate() {
            let d = rho * p * p;
            num += d * (n as f64 + 0.5);
            den += d;
            rho *= ratio;
        }
        if den < MIN_MARGINAL {
            return Err(Error::OutOfSupport { q, marginal: den });
        }
        // Remaining weight ratio^{N+1}, each term carrying a factor ≤ (n + 1/2).
        let tail = ratio.powi(n_max as i32 + 1) * (n_max as f64 + 1.5) / (1.0 - ratio).powi(2);
        if ratio == 0.0 || tail <= 1e-16 * den {
            return Ok(num / den);
        }
        if n_max == MAX_HERMITE_ORDER {
            return Err(Error::UnsupportedOrder {
                order: 2 * n_max,
                max: MAX_HERMITE_ORDER,
            });
        }
        n_max = (2 * n_max.max(4)).min(MAX_HERMITE_ORDER);
    }
}

/// `|q|` beyond which `(p²)_w` is negative: `√(σ² + 4σ⁶)`.
pub fn negativity_threshold(state: &ThermalState) -> f64 {
    let s2 = state.sigma2();
    (s2 + 4.0 * s2 * s2 * s2).sqrt()
}

/// Evaluation route for [`negativity_probability`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbabilityMethod {
    /// `erfc √(1/2 + 2σ⁴)`.
    Closed,
    /// Quadrature of the marginal over both tails beyond the threshold.
    Quadrature,
}

/// Probability that the postselected `q` lands where `(p²)_w < 0`.
pub fn negativity_probability(state: &ThermalState, method: ProbabilityMethod) -> f64 {
    match method {
        ProbabilityMethod::Closed => {
            let s2 = state.sigma2();
            erfc((0.5 + 2.0 * s2 * s2).sqrt())
        }
        ProbabilityMethod::Quadrature => {
            let t = negativity_threshold(state);
            // Each tail integrated over [t, t + 40σ]; the mass beyond is
            // below e^{-800}.
            let grid = Grid1D::new(t, t + 40.0 * state.sigma(), 40_001).expect("valid tail grid");
            let upper = integrate(&grid.sample(|q| q_marginal_pdf(state, q)), &grid)
                .expect("sample count matches grid");
            let grid = Grid1D::new(-t - 40.0 * state.sigma(), -t, 40_001).expect("valid tail grid");
            let lower = integrate(&grid.sample(|q| q_marginal_pdf(state, q)), &grid)
                .expect("sample count matches grid");
            lower + upper
        }
    }
}

/// Threshold and probability of a negative weak value for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NegativityStats {
    pub state: ThermalState,
    pub threshold_q: f64,
    pub probability: f64,
}

impl NegativityStats {
    pub fn new(state: ThermalState) -> Self {
        NegativityStats {
            state,
            threshold_q: negativity_threshold(&state),
            probability: negativity_probability(&state, ProbabilityMethod::Closed),
        }
    }
}

/// `E[p² | q]` when `q` and `p` are independent classical Gaussian variables
/// of variance `σ²`: always `σ²`.
pub fn classical_weak_value_p2(state: &ThermalState, _q: f64) -> f64 {
    state.sigma2()
}

/// Sample a weak-value curve over `qgrid`.
pub fn weak_value_curve(
    state: &ThermalState,
    qgrid: &Grid1D,
    observable: Observable,
    method: WeakValueMethod,
) -> Result<WeakValueCurve> {
    let values = qgrid
        .points()
        .map(|q| weak_value(state, observable, method, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeakValueCurve {
        state: *state,
        qgrid: *qgrid,
        values,
        observable,
        method,
    })
}

fn weak_value(
    state: &ThermalState,
    observable: Observable,
    method: WeakValueMethod,
    q: f64,
) -> Result<f64> {
    use WeakValueMethod::*;
    Ok(match (observable, method) {
        (Observable::P2, ClosedForm) => p2_weak_closed(state, q),
        (Observable::P2, ConditionalMomentIntegral) => moment_weak_integral(state, 2, q)?,
        (Observable::PMoment(n), ClosedForm) => {
            if n > MAX_MOMENT {
                return Err(Error::UnsupportedOrder {
                    order: n,
                    max: MAX_MOMENT,
                });
            }
            moment_weak_closed(state, n, q)
        }
        (Observable::PMoment(n), ConditionalMomentIntegral) => moment_weak_integral(state, n, q)?,
        // H = (p² + q²)/2 and q is sharp after postselection.
        (Observable::Hamiltonian, ClosedForm) => 0.5 * (p2_weak_closed(state, q) + q * q),
        (Observable::Hamiltonian, ConditionalMomentIntegral) => {
            0.5 * (moment_weak_integral(state, 2, q)? + q * q)
        }
    })
}
