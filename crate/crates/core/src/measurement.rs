//! Grid simulation of a weak measurement of `p²` postselected on `q`.
//!
//! The object (a thermal mode) couples to a pointer through
//! `U = exp(−i g p̂² ⊗ P̂)`, where `P̂` is the pointer momentum, so every
//! object momentum component `p` translates the pointer by `g p²`. The object
//! quadrature `q` is then measured projectively and only runs landing in a
//! small bin around the chosen `q` are kept. The mean pointer displacement of
//! the kept runs, divided by `g`, tends to `Re (p²)_w(q)` as `g → 0`. It can be
//! negative, which no classical model of the field can produce.
//!
//! The interaction is applied exactly, not perturbatively:
//!
//! 1. each object Fock component `ψₙ` is taken to the momentum representation;
//! 2. the pointer is shifted by `g p²` for every object momentum sample, as a
//!    phase `e^{-i g p² k}` on the pointer momentum `k`;
//! 3. the object is returned to the position representation at quadrature
//!    nodes inside the postselection bin;
//! 4. the conditional pointer densities are accumulated over bin nodes,
//!    object Fock components and pointer mixture components, in a fixed order.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{hermite_psi, hermite_psi_all, quadrature_weights, FourierPair, Grid1D};
use crate::states::{fock_weights, ThermalState, DEFAULT_TAIL_TOL};
use crate::weakvalues::p2_weak_closed;

/// Largest tolerated pointer current density.
pub const MAX_CURRENT_DENSITY: f64 = 1e-10;

/// Postselection probabilities below this are rejected.
pub const MIN_POSTSELECT_PROBABILITY: f64 = 1e-12;

/// Default pointer width in object quadrature units.
pub const DEFAULT_POINTER_WIDTH: f64 = 10.0;

/// Tail tolerance for the Fock mixture of a thermal pointer.
pub const POINTER_TAIL_TOL: f64 = 1e-10;

/// Default bin half-width as a fraction of the object `σ`.
pub const DEFAULT_BIN_FRACTION: f64 = 1.0 / 50.0;

/// A pointer state: a pure wavefunction or a mixture of them, sampled on a
/// uniform grid of the pointer coordinate `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointerState {
    grid: Grid1D,
    components: Vec<(f64, Vec<Complex64>)>,
    mean_x: f64,
    current_density_max: f64,
}

impl PointerState {
    /// A pure pointer state; `amplitudes` are normalized on the grid.
    pub fn pure(grid: Grid1D, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::mixture(grid, vec![(1.0, amplitudes)])
    }

    /// A mixture `Σ wₘ |φₘ⟩⟨φₘ|`. Weights are rescaled to sum to one and
    /// every component is normalized on the grid.
    pub fn mixture(grid: Grid1D, components: Vec<(f64, Vec<Complex64>)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::invalid("pointer", "mixture has no components"));
        }
        let total: f64 = components.iter().map(|(w, _)| *w).sum();
        if components.iter().any(|(w, _)| !(w.is_finite() && *w >= 0.0)) || total <= 0.0 {
            return Err(Error::invalid("pointer", "weights must be non-negative with positive sum"));
        }
        let dx = grid.spacing();
        let mut normalized = Vec::with_capacity(components.len());
        for (w, amps) in components {
            grid.check_len(amps.len())?;
            let norm = (amps.iter().map(|a| a.norm_sqr()).sum::<f64>() * dx).sqrt();
            if !(norm.is_finite() && norm > 0.0) {
                return Err(Error::invalid("pointer", "component has zero or non-finite norm"));
            }
            normalized.push((w / total, amps.into_iter().map(|a| a / norm).collect::<Vec<_>>()));
        }

        let mut density = vec![0.0; grid.count()];
        let mut current = vec![0.0; grid.count()];
        for (w, amps) in &normalized {
            for (i, a) in amps.iter().enumerate() {
                density[i] += w * a.norm_sqr();
            }
            // j = Im(φ* ∂φ), central differences in the interior.
            for i in 1..amps.len() - 1 {
                let d = (amps[i + 1] - amps[i - 1]) / (2.0 * dx);
                current[i] += w * (amps[i].conj() * d).im;
            }
        }
        let mean_x = grid.points().zip(&density).map(|(x, d)| x * d).sum::<f64>() * dx;
        let current_density_max = current.iter().fold(0.0_f64, |m, j| m.max(j.abs()));
        Ok(PointerState {
            grid,
            components: normalized,
            mean_x,
            current_density_max,
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    /// `(weight, amplitudes)` pairs.
    pub fn components(&self) -> &[(f64, Vec<Complex64>)] {
        &self.components
    }

    pub fn is_pure(&self) -> bool {
        self.components.len() == 1
    }

    pub fn mean_x(&self) -> f64 {
        self.mean_x
    }

    pub fn current_density_max(&self) -> f64 {
        self.current_density_max
    }

    pub fn norm(&self) -> f64 {
        let dx = self.grid.spacing();
        self.components
            .iter()
            .map(|(w, a)| w * a.iter().map(|v| v.norm_sqr()).sum::<f64>() * dx)
            .sum()
    }

    pub fn position_variance(&self) -> f64 {
        let dx = self.grid.spacing();
        let second: f64 = self
            .components
            .iter()
            .map(|(w, a)| {
                w * a
                    .iter()
                    .zip(self.grid.points())
                    .map(|(v, x)| x * x * v.norm_sqr())
                    .sum::<f64>()
                    * dx
            })
            .sum();
        second - self.mean_x * self.mean_x
    }

    /// The same state multiplied by `e^{ikx}`: a pointer carrying current.
    pub fn boosted(&self, k: f64) -> Result<Self> {
        let comps = self
            .components
            .iter()
            .map(|(w, a)| {
                let amps = a
                    .iter()
                    .zip(self.grid.points())
                    .map(|(v, x)| v * Complex64::cis(k * x))
                    .collect();
                (*w, amps)
            })
            .collect();
        Self::mixture(self.grid, comps)
    }

    /// Reject pointers whose current density does not vanish.
    pub fn validate(&self) -> Result<()> {
        if self.current_density_max >= MAX_CURRENT_DENSITY {
            return Err(Error::InvalidPointer {
                current: self.current_density_max,
            });
        }
        Ok(())
    }
}

/// Real Gaussian pointer with position standard deviation `width`.
pub fn gaussian_pointer(grid: Grid1D, width: f64) -> Result<PointerState> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::invalid("width", format!("must be positive, got {width}")));
    }
    if grid.min() > -6.0 * width || grid.max() < 6.0 * width {
        return Err(Error::GridTooNarrow(format!(
            "pointer grid [{}, {}] must span ±6·width = ±{}",
            grid.min(),
            grid.max(),
            6.0 * width
        )));
    }
    let norm = (2.0 * PI * width * width).powf(-0.25);
    let amps = grid
        .points()
        .map(|x| Complex64::from(norm * (-x * x / (4.0 * width * width)).exp()))
        .collect();
    PointerState::pure(grid, amps)
}

/// Thermal pointer: Fock states `ψₘ(x/s)/√s` mixed with thermal weights.
///
/// At `mean_n = 0` this is the Gaussian pointer of width `scale/√2`. The
/// position variance is `scale²·(mean_n + 1/2)`.
pub fn thermal_pointer(grid: Grid1D, mean_n: f64, scale: f64) -> Result<PointerState> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::invalid("scale", format!("must be positive, got {scale}")));
    }
    let state = ThermalState::from_mean_n(mean_n)?;
    let mixture = fock_weights(&state, POINTER_TAIL_TOL)?;
    let n_max = mixture.truncation();
    let turning = (2.0 * n_max as f64 + 1.0).sqrt();
    let reach = scale * (turning + 5.0);
    if grid.min() > -reach || grid.max() < reach {
        return Err(Error::GridTooNarrow(format!(
            "thermal pointer up to Fock order {n_max} needs the grid to span ±{reach}"
        )));
    }
    if grid.spacing() > scale / turning {
        return Err(Error::GridTooNarrow(format!(
            "pointer grid spacing {} does not resolve Fock order {n_max} at scale {scale}",
            grid.spacing()
        )));
    }
    let columns: Vec<Vec<f64>> = grid
        .points()
        .map(|x| hermite_psi_all(n_max, x / scale))
        .collect::<Result<_>>()?;
    let amp_scale = scale.powf(-0.5);
    let components = mixture
        .iter()
        .map(|(m, w)| {
            let amps = columns
                .iter()
                .map(|col| Complex64::from(col[m] * amp_scale))
                .collect();
            (w, amps)
        })
        .collect();
    PointerState::mixture(grid, components)
}

/// A pointer grid suited to [`gaussian_pointer`] of the given width.
pub fn default_gaussian_grid(width: f64) -> Result<Grid1D> {
    Grid1D::symmetric(8.0 * width, 321)
}

/// A pointer grid suited to [`thermal_pointer`] with the given parameters.
pub fn default_thermal_grid(mean_n: f64, scale: f64) -> Result<Grid1D> {
    let state = ThermalState::from_mean_n(mean_n)?;
    let n_max = fock_weights(&state, POINTER_TAIL_TOL)?.truncation();
    let turning = (2.0 * n_max as f64 + 1.0).sqrt();
    let half = scale * (turning + 6.0);
    let spacing = scale / (4.0 * turning);
    let count = 2 * (half / spacing).ceil() as usize + 1;
    Grid1D::symmetric(half, count)
}

/// Pointer families offered by [`pointer_with_width`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointerKind {
    Gaussian,
    Thermal,
}

impl PointerKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PointerKind::Gaussian => "gaussian",
            PointerKind::Thermal => "thermal",
        }
    }
}

/// A pointer of the given family with position standard deviation `width`,
/// on its default grid. `thermal_mean_n` is ignored for Gaussian pointers.
pub fn pointer_with_width(kind: PointerKind, width: f64, thermal_mean_n: f64) -> Result<PointerState> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::invalid("width", format!("must be positive, got {width}")));
    }
    match kind {
        PointerKind::Gaussian => gaussian_pointer(default_gaussian_grid(width)?, width),
        PointerKind::Thermal => {
            let state = ThermalState::from_mean_n(thermal_mean_n)?;
            let scale = width / state.sigma();
            thermal_pointer(default_thermal_grid(thermal_mean_n, scale)?, thermal_mean_n, scale)
        }
    }
}

/// Coupling strength and postselection window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingConfig {
    g: f64,
    postselect_q: f64,
    bin_halfwidth: f64,
}

impl CouplingConfig {
    /// `bin_halfwidth` must not exceed a tenth of the object's `σ`.
    pub fn new(object: &ThermalState, g: f64, postselect_q: f64, bin_halfwidth: f64) -> Result<Self> {
        if !(g > 0.0 && g <= 1.0) {
            return Err(Error::invalid("g", format!("must lie in (0, 1], got {g}")));
        }
        if !postselect_q.is_finite() {
            return Err(Error::invalid("postselect_q", "must be finite"));
        }
        let limit = object.sigma() / 10.0;
        if !(bin_halfwidth > 0.0 && bin_halfwidth <= limit) {
            return Err(Error::invalid(
                "bin_halfwidth",
                format!("must lie in (0, σ/10 = {limit}], got {bin_halfwidth}"),
            ));
        }
        Ok(CouplingConfig {
            g,
            postselect_q,
            bin_halfwidth,
        })
    }

    /// Bin half-width `σ/50`.
    pub fn with_default_bin(object: &ThermalState, g: f64, postselect_q: f64) -> Result<Self> {
        Self::new(object, g, postselect_q, object.sigma() * DEFAULT_BIN_FRACTION)
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn postselect_q(&self) -> f64 {
        self.postselect_q
    }

    pub fn bin_halfwidth(&self) -> f64 {
        self.bin_halfwidth
    }
}

/// Outcome of one simulated weak measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationReport {
    pub estimated_weak_value: f64,
    pub analytic_weak_value: f64,
    pub g_used: f64,
    pub postselect_q: f64,
    pub bin_halfwidth: f64,
    pub postselect_probability: f64,
    pub residual: f64,
    pub initial_pointer_mean: f64,
    pub conditional_pointer_mean: f64,
}

impl SimulationReport {
    pub fn relative_residual(&self) -> f64 {
        self.residual / self.analytic_weak_value.abs()
    }
}

/// Discretization of the object side of the simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulatorGrid {
    /// Position grid of the object; its conjugate grid carries the momenta.
    pub object: Grid1D,
    /// Odd number of quadrature nodes across the postselection bin.
    pub bin_nodes: usize,
}

impl Default for SimulatorGrid {
    fn default() -> Self {
        SimulatorGrid {
            object: Grid1D::symmetric(16.0, 257).expect("valid grid"),
            bin_nodes: 9,
        }
    }
}

/// Weak measurement of `p²` postselected on `q`, default object grid.
pub fn simulate_weak_p2(
    object: &ThermalState,
    pointer: &PointerState,
    cfg: &CouplingConfig,
) -> Result<SimulationReport> {
    Simulator::new(object, SimulatorGrid::default())?.run(pointer, cfg)
}

/// One report per coupling in `g_list` (strictly decreasing, each in `(0, 1]`),
/// postselecting on `q` with the default bin.
pub fn convergence_sweep(
    object: &ThermalState,
    pointer: &PointerState,
    q: f64,
    g_list: &[f64],
) -> Result<Vec<SimulationReport>> {
    if g_list.is_empty() {
        return Err(Error::invalid("g_list", "must not be empty"));
    }
    if g_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::invalid("g_list", "must be strictly decreasing"));
    }
    let sim = Simulator::new(object, SimulatorGrid::default())?;
    g_list
        .iter()
        .map(|&g| {
            let cfg = CouplingConfig::with_default_bin(object, g, q)?;
            sim.run(pointer, &cfg)
        })
        .collect()
}

/// Object state prepared in the momentum representation, reusable across
/// pointers and couplings.
#[derive(Debug, Clone)]
pub struct Simulator {
    object: ThermalState,
    grid: SimulatorGrid,
    pgrid: Grid1D,
    /// `(ρₙ, ψ̃ₙ(p))` per Fock component.
    components: Vec<(f64, Vec<Complex64>)>,
}

impl Simulator {
    pub fn new(object: &ThermalState, grid: SimulatorGrid) -> Result<Self> {
        if grid.bin_nodes < 3 || grid.bin_nodes.is_multiple_of(2) {
            return Err(Error::invalid("bin_nodes", "must be odd and at least 3"));
        }
        let mixture = fock_weights(object, DEFAULT_TAIL_TOL)?;
        let pair = FourierPair::new(grid.object);
        let n_max = mixture.truncation();
        let turning = (2.0 * n_max as f64 + 1.0).sqrt();
        if grid.object.min() > -(turning + 5.0) || grid.object.max() < turning + 5.0 {
            return Err(Error::GridTooNarrow(format!(
                "object grid must span ±{} for Fock order {n_max}",
                turning + 5.0
            )));
        }
        let components = mixture
            .iter()
            .map(|(n, rho)| {
                let psi: Vec<Complex64> = grid
                    .object
                    .points()
                    .map(|q| hermite_psi(n, q).map(Complex64::from))
                    .collect::<Result<_>>()?;
                Ok((rho, pair.forward(&psi)?))
            })
            .collect::<Result<_>>()?;
        Ok(Simulator {
            object: *object,
            grid,
            pgrid: *pair.pgrid(),
            components,
        })
    }

    pub fn object(&self) -> &ThermalState {
        &self.object
    }

    /// Momentum grid of the object.
    pub fn pgrid(&self) -> &Grid1D {
        &self.pgrid
    }

    fn interaction_phases(&self, pointer_pair: &FourierPair, g: f64) -> Vec<Vec<Complex64>> {
        let ks = pointer_pair.pgrid().to_vec();
        self.pgrid
            .points()
            .map(|p| ks.iter().map(|&k| Complex64::cis(-g * p * p * k)).collect())
            .collect()
    }

    /// Total norm of the joint object-pointer state after the interaction,
    /// for each object Fock component and each pointer component.
    pub fn joint_norms_after_interaction(&self, pointer: &PointerState, g: f64) -> Result<Vec<f64>> {
        let pair = FourierPair::new(*pointer.grid());
        let phases = self.interaction_phases(&pair, g);
        let dx = pointer.grid().spacing();
        let dp = self.pgrid.spacing();
        let mut norms = Vec::new();
        for (_, spectrum) in &self.components {
            for (_, amps) in pointer.components() {
                let tilde = pair.forward(amps)?;
                let mut total = 0.0;
                for (c, phase) in spectrum.iter().zip(&phases) {
                    let shifted: Vec<Complex64> =
                        tilde.iter().zip(phase).map(|(a, e)| a * e).collect();
                    let x = pair.inverse(&shifted)?;
                    total += c.norm_sqr() * dp * x.iter().map(|v| v.norm_sqr()).sum::<f64>() * dx;
                }
                norms.push(total);
            }
        }
        Ok(norms)
    }

    /// Unnormalized conditional pointer density after postselection.
    pub fn conditional_density(&self, pointer: &PointerState, cfg: &CouplingConfig) -> Result<Vec<f64>> {
        pointer.validate()?;
        let pair = FourierPair::new(*pointer.grid());
        let phases = self.interaction_phases(&pair, cfg.g);

        let bin = Grid1D::new(
            cfg.postselect_q - cfg.bin_halfwidth,
            cfg.postselect_q + cfg.bin_halfwidth,
            self.grid.bin_nodes,
        )?;
        let bin_weights = quadrature_weights(&bin);
        let pointer_tilde: Vec<(f64, Vec<Complex64>)> = pointer
            .components()
            .iter()
            .map(|(w, a)| Ok((*w, pair.forward(a)?)))
            .collect::<Result<_>>()?;

        let dp = self.pgrid.spacing();
        let kernel_norm = dp / (2.0 * PI).sqrt();
        let nx = pointer.grid().count();

        let per_component: Vec<Vec<f64>> = self
            .components
            .par_iter()
            .map(|(rho, spectrum)| -> Result<Vec<f64>> {
                let mut density = vec![0.0; nx];
                for (q, wq) in bin.points().zip(&bin_weights) {
                    // A(k) = Σⱼ ⟨q|pⱼ⟩ψ̃ₙ(pⱼ)Δp · e^{-i g pⱼ² k}
                    let mut a = vec![Complex64::new(0.0, 0.0); nx];
                    for ((c, p), phase) in spectrum.iter().zip(self.pgrid.points()).zip(&phases) {
                        let coeff = c * Complex64::cis(p * q) * kernel_norm;
                        if coeff.norm_sqr() == 0.0 {
                            continue;
                        }
                        for (ak, e) in a.iter_mut().zip(phase) {
                            *ak += coeff * e;
                        }
                    }
                    for (wm, tilde) in &pointer_tilde {
                        let joint: Vec<Complex64> = tilde.iter().zip(&a).map(|(t, ak)| t * ak).collect();
                        let x = pair.inverse(&joint)?;
                        let scale = rho * wm * wq;
                        for (d, v) in density.iter_mut().zip(&x) {
                            *d += scale * v.norm_sqr();
                        }
                    }
                }
                Ok(density)
            })
            .collect::<Result<_>>()?;

        let mut total = vec![0.0; nx];
        for density in &per_component {
            for (t, d) in total.iter_mut().zip(density) {
                *t += d;
            }
        }
        Ok(total)
    }

    /// Simulate one weak measurement.
    pub fn run(&self, pointer: &PointerState, cfg: &CouplingConfig) -> Result<SimulationReport> {
        let density = self.conditional_density(pointer, cfg)?;
        let dx = pointer.grid().spacing();
        let probability = density.iter().sum::<f64>() * dx;
        if probability.is_nan() || probability < MIN_POSTSELECT_PROBABILITY {
            return Err(Error::InsufficientStatistics { probability });
        }
        let mean = pointer
            .grid()
            .points()
            .zip(&density)
            .map(|(x, d)| x * d)
            .sum::<f64>()
            * dx
            / probability;
        let estimated = (mean - pointer.mean_x()) / cfg.g;
        let analytic = p2_weak_closed(&self.object, cfg.postselect_q);
        Ok(SimulationReport {
            estimated_weak_value: estimated,
            analytic_weak_value: analytic,
            g_used: cfg.g,
            postselect_q: cfg.postselect_q,
            bin_halfwidth: cfg.bin_halfwidth,
            postselect_probability: probability,
            residual: (estimated - analytic).abs(),
            initial_pointer_mean: pointer.mean_x(),
            conditional_pointer_mean: mean,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weakvalues::{classical_weak_value_p2, negativity_threshold};

    fn gaussian(width: f64) -> PointerState {
        gaussian_pointer(default_gaussian_grid(width).unwrap(), width).unwrap()
    }

    #[test]
    fn pointer_width_matches_request() {
        for kind in [PointerKind::Gaussian, PointerKind::Thermal] {
            let p = pointer_with_width(kind, 7.0, 1.0).unwrap();
            assert!((p.position_variance().sqrt() - 7.0).abs() < 1e-6, "{kind:?}");
            assert!(p.current_density_max() < MAX_CURRENT_DENSITY);
        }
        assert!(pointer_with_width(PointerKind::Gaussian, 0.0, 1.0).is_err());
    }

    #[test]
    fn gaussian_pointer_moments() {
        let grid = Grid1D::symmetric(80.0, 641).unwrap();
        let p = gaussian_pointer(grid, 10.0).unwrap();
        assert!((p.norm() - 1.0).abs() < 1e-10);
        assert!(p.mean_x().abs() < 1e-12);
        assert!((p.position_variance() - 100.0).abs() < 1e-6);
        assert!(p.current_density_max() < 1e-12);
        assert!(p.is_pure());
        assert!(matches!(
            gaussian_pointer(Grid1D::symmetric(50.0, 201).unwrap(), 10.0),
            Err(Error::GridTooNarrow(_))
        ));
    }

    #[test]
    fn thermal_pointer_at_zero_is_gaussian() {
        let grid = Grid1D::symmetric(80.0, 641).unwrap();
        let t = thermal_pointer(grid, 0.0, 10.0).unwrap();
        let g = gaussian_pointer(grid, 10.0 / 2f64.sqrt()).unwrap();
        assert!(t.is_pure());
        for (a, b) in t.components()[0].1.iter().zip(&g.components()[0].1) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn thermal_pointer_mixture() {
        let grid = default_thermal_grid(1.0, 10.0).unwrap();
        let t = thermal_pointer(grid, 1.0, 10.0).unwrap();
        assert!((t.norm() - 1.0).abs() < 1e-10);
        let w: Vec<f64> = t.components().iter().map(|(w, _)| *w).collect();
        assert!((w[0] - 0.5).abs() < 1e-9 && (w[1] - 0.25).abs() < 1e-9 && (w[2] - 0.125).abs() < 1e-9);
        assert!(w[..3].iter().sum::<f64>() > 0.87);
        assert!(t.current_density_max() < 1e-12);
        assert!((t.position_variance() - 150.0).abs() < 1e-6);
        assert!(thermal_pointer(Grid1D::symmetric(60.0, 401).unwrap(), 1.0, 10.0).is_err());
    }

    #[test]
    fn boosted_pointer_is_rejected() {
        let p = gaussian(10.0);
        let boosted = p.boosted(0.3).unwrap();
        assert!(boosted.current_density_max() > 1e-4);
        let v = ThermalState::vacuum();
        let cfg = CouplingConfig::with_default_bin(&v, 0.01, 0.0).unwrap();
        assert!(matches!(
            simulate_weak_p2(&v, &boosted, &cfg),
            Err(Error::InvalidPointer { .. })
        ));
    }

    #[test]
    fn coupling_validation() {
        let v = ThermalState::vacuum();
        assert!(CouplingConfig::new(&v, 0.0, 0.0, 0.01).is_err());
        assert!(CouplingConfig::new(&v, 1.5, 0.0, 0.01).is_err());
        assert!(CouplingConfig::new(&v, 0.1, 0.0, 0.1).is_err());
        assert!(CouplingConfig::new(&v, 0.1, f64::NAN, 0.01).is_err());
        let c = CouplingConfig::with_default_bin(&v, 0.1, 1.0).unwrap();
        assert!((c.bin_halfwidth() - 0.5f64.sqrt() / 50.0).abs() < 1e-15);
    }

    #[test]
    fn interaction_is_unitary() {
        let sim = Simulator::new(&ThermalState::from_mean_n(0.3).unwrap(), SimulatorGrid::default()).unwrap();
        let pointer = gaussian(10.0);
        for norm in sim.joint_norms_after_interaction(&pointer, 0.1).unwrap() {
            assert!((norm - 1.0).abs() < 1e-10, "{norm}");
        }
    }

    #[test]
    fn vacuum_at_origin() {
        let v = ThermalState::vacuum();
        let cfg = CouplingConfig::with_default_bin(&v, 0.01, 0.0).unwrap();
        let r = simulate_weak_p2(&v, &gaussian(10.0), &cfg).unwrap();
        assert!((r.estimated_weak_value - 1.0).abs() < 0.02, "{r:?}");
    }

    #[test]
    fn negative_beyond_threshold() {
        let s = ThermalState::from_mean_n(0.01).unwrap();
        let q = 1.2 * negativity_threshold(&s);
        let cfg = CouplingConfig::with_default_bin(&s, 0.01, q).unwrap();
        let r = simulate_weak_p2(&s, &gaussian(10.0), &cfg).unwrap();
        assert!(r.estimated_weak_value < 0.0);
        assert!(r.relative_residual() < 0.05, "{r:?}");
        assert!(classical_weak_value_p2(&s, q) > 0.0);
    }

    #[test]
    fn far_outside_support() {
        let v = ThermalState::vacuum();
        let cfg = CouplingConfig::with_default_bin(&v, 0.1, 40.0).unwrap();
        assert!(matches!(
            simulate_weak_p2(&v, &gaussian(10.0), &cfg),
            Err(Error::InsufficientStatistics { .. })
        ));
    }

    #[test]
    fn sweep_validation() {
        let v = ThermalState::vacuum();
        let p = gaussian(10.0);
        assert!(convergence_sweep(&v, &p, 2.0, &[0.1, 0.2]).is_err());
        assert!(convergence_sweep(&v, &p, 2.0, &[]).is_err());
        assert!(convergence_sweep(&v, &p, 2.0, &[2.0, 0.1]).is_err());
    }
}
