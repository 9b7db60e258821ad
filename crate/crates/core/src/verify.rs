//! Cross-oracle self-check suite.
//!
//! Each check compares a production code path against an independent
//! reference over a fixed, deterministic set of inputs and records the
//! worst absolute deviation. A fault can be injected into any named check
//! to confirm that the harness really fails loudly.

use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{integrate, Grid1D};
use crate::quasiprob::{eval_grid, s_closed, s_oracle_fock, s_oracle_pintegral, DistributionLabel, PhasePoint};
use crate::states::{q_marginal_pdf, ThermalState, DEFAULT_TAIL_TOL};
use crate::weakvalues::{
    hamiltonian_weak, moment_weak_integral, negativity_probability, p2_weak_closed, ProbabilityMethod,
};

/// Relative size of an injected fault.
pub const FAULT_MAGNITUDE: f64 = 1e-3;

pub const CHECK_NAMES: [&str; 7] = [
    "closed-vs-fock",
    "closed-vs-p-integral",
    "moment-integral-vs-closed",
    "hamiltonian-identity",
    "probability-closed-vs-quadrature",
    "q-marginal",
    "normalization",
];

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<34} samples={:<5} max_error={:.3e} tolerance={:.0e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.samples,
                c.max_error,
                c.tolerance
            )?;
        }
        write!(f, "elapsed {:.2} s", self.elapsed.as_secs_f64())
    }
}

/// Deviation accumulator for one check.
struct Tally {
    name: &'static str,
    tolerance: f64,
    faulty: bool,
    samples: usize,
    max_error: f64,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64, fault: Option<&str>) -> Self {
        Tally {
            name,
            tolerance,
            faulty: fault == Some(name),
            samples: 0,
            max_error: 0.0,
        }
    }

    fn perturb(&self, x: f64) -> f64 {
        if self.faulty {
            x * (1.0 + FAULT_MAGNITUDE) + FAULT_MAGNITUDE
        } else {
            x
        }
    }

    fn compare(&mut self, value: f64, reference: f64) {
        self.compare_complex(Complex64::new(value, 0.0), Complex64::new(reference, 0.0));
    }

    fn compare_complex(&mut self, value: Complex64, reference: Complex64) {
        let value = Complex64::new(self.perturb(value.re), self.perturb(value.im));
        let err = (value - reference).norm();
        self.samples += 1;
        // A NaN deviation must stick and fail the check.
        if err.is_nan() || err > self.max_error {
            self.max_error = err;
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            samples: self.samples,
            max_error: self.max_error,
            tolerance: self.tolerance,
            passed: self.max_error <= self.tolerance,
        }
    }
}

fn states(mean_ns: &[f64]) -> Result<Vec<ThermalState>> {
    mean_ns.iter().map(|&m| ThermalState::from_mean_n(m)).collect()
}

fn sample_points() -> Vec<PhasePoint> {
    let mut pts = Vec::new();
    for &q in &[-2.5, -1.1, 0.0, 0.4, 1.7] {
        for &p in &[-2.0, -0.6, 0.0, 0.9, 2.3] {
            pts.push(PhasePoint { q, p });
        }
    }
    pts
}

/// The standard weak-value sweep: 41 points on `[-5, 5]`.
pub fn standard_q_sweep() -> Vec<f64> {
    Grid1D::symmetric(5.0, 41).expect("static grid").to_vec()
}

/// Mean occupations of the standard weak-value sweep.
pub const SWEEP_MEAN_N: [f64; 4] = [0.0, 0.01, 0.3, 1.0];

fn closed_vs_fock(fault: Option<&str>) -> Result<CheckOutcome> {
    let mut t = Tally::new("closed-vs-fock", 1e-8, fault);
    for s in states(&[0.0, 0.01, 0.3, 1.0, 2.0])? {
        for pt in sample_points() {
            t.compare_complex(s_closed(&s, pt), s_oracle_fock(&s, pt, DEFAULT_TAIL_TOL)?);
        }
    }
    Ok(t.finish())
}

fn closed_vs_pintegral(fault: Option<&str>) -> Result<CheckOutcome> {
    let mut t = Tally::new("closed-vs-p-integral", 1e-6, fault);
    let pts = [
        PhasePoint { q: 0.0, p: 0.0 },
        PhasePoint { q: 0.7, p: -0.4 },
        PhasePoint { q: -1.3, p: 1.9 },
    ];
    for s in states(&[0.01, 0.5, 2.0])? {
        for pt in pts {
            t.compare_complex(s_closed(&s, pt), s_oracle_pintegral(&s, pt)?);
        }
    }
    Ok(t.finish())
}

fn moment_integral_vs_closed(fault: Option<&str>) -> Result<CheckOutcome> {
    let mut t = Tally::new("moment-integral-vs-closed", 1e-8, fault);
    for s in states(&SWEEP_MEAN_N)? {
        for q in standard_q_sweep() {
            t.compare(moment_weak_integral(&s, 2, q)?, p2_weak_closed(&s, q));
        }
    }
    Ok(t.finish())
}

fn hamiltonian_identity(fault: Option<&str>) -> Result<CheckOutcome> {
    let mut t = Tally::new("hamiltonian-identity", 1e-8, fault);
    for s in states(&SWEEP_MEAN_N)? {
        for q in standard_q_sweep() {
            t.compare(2.0 * hamiltonian_weak(&s, q)? - q * q, p2_weak_closed(&s, q));
        }
    }
    Ok(t.finish())
}

fn probability_closed_vs_quadrature(fault: Option<&str>) -> Result<CheckOutcome> {
    let mut t = Tally::new("probability-closed-vs-quadrature", 1e-9, fault);
    for m in Grid1D::new(0.0, 2.0, 50)?.points() {
        let s = ThermalState::from_mean_n(m)?;
        t.compare(
            negativity_probability(&s, ProbabilityMethod::Closed),
            negativity_probability(&s, ProbabilityMethod::Quadrature),
        );
    }
    Ok(t.finish())
}

/// `∫ S(q, p) dp` against the closed-form position marginal.
fn q_marginal(fault: Option<&str>) -> Result<CheckOutcome> {
    let mut t = Tally::new("q-marginal", 1e-8, fault);
    for s in states(&[0.0, 0.01, 1.0])? {
        let d = 1.0 + 4.0 * s.sigma2() * s.sigma2();
        let pwidth = (d / (4.0 * s.sigma2())).sqrt();
        let pgrid = Grid1D::symmetric(16.0 * pwidth, 2001)?;
        for q in [-3.0, -1.0, 0.0, 0.5, 2.0] {
            let re = pgrid.sample(|p| s_closed(&s, PhasePoint { q, p }).re);
            let im = pgrid.sample(|p| s_closed(&s, PhasePoint { q, p }).im);
            t.compare_complex(
                Complex64::new(integrate(&re, &pgrid)?, integrate(&im, &pgrid)?),
                Complex64::new(q_marginal_pdf(&s, q), 0.0),
            );
        }
    }
    Ok(t.finish())
}

fn normalization(fault: Option<&str>) -> Result<CheckOutcome> {
    let mut t = Tally::new("normalization", 1e-8, fault);
    for s in states(&[0.0, 0.01, 1.0])? {
        let half = 12.0 * s.sigma().max(1.0);
        let grid = Grid1D::symmetric(half, 601)?;
        for label in [DistributionLabel::StandardOrdered, DistributionLabel::MargenauHill] {
            let field = eval_grid(&s, &grid, &grid, label);
            t.compare_complex(field.integral(), Complex64::new(1.0, 0.0));
        }
    }
    Ok(t.finish())
}

/// Run every check. `fault` names a check whose production values are
/// perturbed by [`FAULT_MAGNITUDE`]; it must be one of [`CHECK_NAMES`].
pub fn run_verification(fault: Option<&str>) -> Result<VerificationReport> {
    if let Some(name) = fault {
        if !CHECK_NAMES.contains(&name) {
            return Err(Error::invalid(
                "inject-fault",
                format!("unknown check `{name}`; expected one of {}", CHECK_NAMES.join(", ")),
            ));
        }
    }
    let start = Instant::now();
    type CheckFn = fn(Option<&str>) -> Result<CheckOutcome>;
    let checks: [CheckFn; 7] = [
        closed_vs_fock,
        closed_vs_pintegral,
        moment_integral_vs_closed,
        hamiltonian_identity,
        probability_closed_vs_quadrature,
        q_marginal,
        normalization,
    ];
    let checks = checks
        .par_iter()
        .map(|check| check(fault))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        checks,
        elapsed: start.elapsed(),
    })
}
