//! Release acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thermoweak::measurement::{convergence_sweep, pointer_with_width, simulate_weak_p2, DEFAULT_POINTER_WIDTH};
use thermoweak::numerics::erfc;
use thermoweak::quasiprob::{eval_grid, margenau_hill, s_closed, s_oracle_fock, s_oracle_pintegral};
use thermoweak::states::{occupation_number, wien_peak_occupation, DEFAULT_TAIL_TOL};
use thermoweak::verify::{standard_q_sweep, SWEEP_MEAN_N};
use thermoweak::weakvalues::{
    classical_weak_value_p2, hamiltonian_weak, moment_weak_integral, negativity_probability,
    negativity_threshold, p2_weak_closed, ProbabilityMethod,
};
use thermoweak::{
    BlackbodyMode, CouplingConfig, DistributionLabel, Grid1D, PhasePoint, PointerKind, ThermalState,
    WienConvention,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn state(mean_n: f64) -> ThermalState {
    ThermalState::from_mean_n(mean_n).expect("valid occupation")
}

/// Minimum of `Re S` along the diagonal `p = −q` (where the phase term is
/// most negative), by golden-section search on `q ∈ [0, 8σ]` after a coarse
/// bracket scan.
fn diagonal_minimum(s: &ThermalState) -> f64 {
    let f = |t: f64| margenau_hill(s, PhasePoint { q: t, p: -t });
    let hi = 8.0 * s.sigma();
    let n = 4000;
    let k = (0..=n)
        .map(|i| hi * i as f64 / n as f64)
        .enumerate()
        .min_by(|a, b| f(a.1).total_cmp(&f(b.1)))
        .unwrap()
        .0;
    let (mut a, mut b) = (hi * k.saturating_sub(1) as f64 / n as f64, hi * (k + 1).min(n) as f64 / n as f64);
    let r = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let (c, d) = (b - r * (b - a), a + r * (b - a));
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    f(0.5 * (a + b))
}

fn c1_closed_form_validation() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let (mut worst_fock, mut worst_pint, mut n_pint) = (0.0f64, 0.0f64, 0);
    for _ in 0..100 {
        let mean_n = rng.gen_range(0.0..=2.0);
        let pt = PhasePoint {
            q: rng.gen_range(-4.0..4.0),
            p: rng.gen_range(-4.0..4.0),
        };
        let s = state(mean_n);
        let closed = s_closed(&s, pt);
        worst_fock = worst_fock.max((closed - s_oracle_fock(&s, pt, DEFAULT_TAIL_TOL).unwrap()).norm());
        // The P-distribution of the vacuum is a point mass; it has no
        // quadrature oracle.
        if mean_n > 0.0 {
            worst_pint = worst_pint.max((closed - s_oracle_pintegral(&s, pt).unwrap()).norm());
            n_pint += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst_fock < 1e-8 && worst_pint < 1e-6 && n_pint > 0 && secs < 10.0,
        format!("fock max dev {worst_fock:.2e} (<1e-8), P-integral max dev {worst_pint:.2e} (<1e-6, {n_pint} pts), {secs:.2} s (<10 s)"),
    )
}

fn c2_cold_light_minima() -> Outcome {
    let grid = Grid1D::symmetric(3.0, 601).unwrap();
    let vac = state(0.0);
    let (vac_grid_min, _) = eval_grid(&vac, &grid, &grid, DistributionLabel::MargenauHill).min_real();
    let vac_oracle = diagonal_minimum(&vac);
    let cold = state(0.01);
    let (cold_min, at) = eval_grid(&cold, &grid, &grid, DistributionLabel::MargenauHill).min_real();
    let cold_oracle = diagonal_minimum(&cold);
    check(
        cold_min < 0.0
            && (cold_min - cold_oracle).abs() < 5e-4
            && (vac_grid_min - vac_oracle).abs() < 5e-4
            && (vac_oracle + 0.0151).abs() < 5e-4,
        format!(
            "<n>=0.01 grid min {cold_min:.6e} at ({:.2},{:.2}), oracle {cold_oracle:.6e}; vacuum grid min {vac_grid_min:.6e}, oracle {vac_oracle:.6e} (target -0.0151 +/- 5e-4)",
            at.q, at.p
        ),
    )
}

fn c3_warm_light_minimum() -> Outcome {
    // Wide enough to contain the global minimum of the mean_n = 1 surface.
    let grid = Grid1D::symmetric(6.0, 1201).unwrap();
    let s = state(1.0);
    let (min, at) = eval_grid(&s, &grid, &grid, DistributionLabel::MargenauHill).min_real();
    let oracle = diagonal_minimum(&s);
    check(
        min.abs() < 1e-4,
        format!(
            "<n>=1 grid min {min:.6e} at ({:.2},{:.2}), diagonal oracle {oracle:.6e}; required |min| < 1e-4",
            at.q, at.p
        ),
    )
}

fn c4_moment_consistency() -> Outcome {
    let mut worst = 0.0f64;
    for &m in &SWEEP_MEAN_N {
        let s = state(m);
        for q in standard_q_sweep() {
            worst = worst.max((moment_weak_integral(&s, 2, q).unwrap() - p2_weak_closed(&s, q)).abs());
        }
    }
    check(worst < 1e-8, format!("max |integral - closed| = {worst:.2e} over 4 x 41 points (<1e-8)"))
}

fn c5_negativity_curve() -> Outcome {
    let grid = Grid1D::new(0.0, 1.0, 50).unwrap();
    let (mut dev_oracle, mut dev_quad) = (0.0f64, 0.0f64);
    let mut values = Vec::new();
    for m in grid.points() {
        let s = state(m);
        let p = negativity_probability(&s, ProbabilityMethod::Closed);
        let sig4 = s.sigma2() * s.sigma2();
        dev_oracle = dev_oracle.max((p - erfc((0.5 + 2.0 * sig4).sqrt())).abs());
        dev_quad = dev_quad.max((p - negativity_probability(&s, ProbabilityMethod::Quadrature)).abs());
        values.push(p);
    }
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    let (p0, p1) = (values[0], *values.last().unwrap());
    let p0_ok = (p0 - 0.1573).abs() < 5e-5;
    let p1_ok = (p1 - 4.1e-6).abs() < 5e-8;
    check(
        dev_oracle < 1e-9 && dev_quad < 1e-9 && decreasing && p0_ok && p1_ok,
        format!(
            "dev vs erfc {dev_oracle:.1e}, vs quadrature {dev_quad:.1e} (<1e-9, 50 pts); decreasing={decreasing}; P(0)={p0:.6} (~0.1573: {p0_ok}); P(1)={p1:.6e} (~4.1e-6: {p1_ok})"
        ),
    )
}

fn c6_hamiltonian_identity() -> Outcome {
    let mut worst = 0.0f64;
    for &m in &SWEEP_MEAN_N {
        let s = state(m);
        for q in standard_q_sweep() {
            let h = hamiltonian_weak(&s, q).unwrap();
            worst = worst.max((2.0 * h - q * q - p2_weak_closed(&s, q)).abs());
        }
    }
    check(worst < 1e-8, format!("max |2H_w - q^2 - (p^2)_w| = {worst:.2e} (<1e-8)"))
}

fn c7_simulator_convergence() -> Outcome {
    let start = Instant::now();
    let pointer = pointer_with_width(PointerKind::Gaussian, DEFAULT_POINTER_WIDTH, 0.0).unwrap();
    let reports = convergence_sweep(&state(0.0), &pointer, 2.0, &[0.2, 0.1, 0.05, 0.01]).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let residuals: Vec<f64> = reports.iter().map(|r| r.residual).collect();
    let shown: Vec<String> = residuals.iter().map(|r| format!("{r:.3e}")).collect();
    let last = reports.last().unwrap();
    let monotone = residuals.windows(2).all(|w| w[1] < w[0]);
    let rel = last.relative_residual();
    check(
        (last.analytic_weak_value + 3.0).abs() < 1e-12 && rel < 0.05 && monotone && secs < 60.0,
        format!(
            "estimate {:.8} vs -3 at g=0.01 (rel {rel:.2e} < 0.05); residuals [{}] monotone={monotone}; {secs:.2} s (<60 s)",
            last.estimated_weak_value,
            shown.join(", ")
        ),
    )
}

fn c8_nonclassicality() -> Outcome {
    let s = state(0.01);
    let q = 1.2 * negativity_threshold(&s);
    let pointer = pointer_with_width(PointerKind::Gaussian, DEFAULT_POINTER_WIDTH, 0.0).unwrap();
    let cfg = CouplingConfig::with_default_bin(&s, 0.01, q).unwrap();
    let r = simulate_weak_p2(&s, &pointer, &cfg).unwrap();
    let shift = r.conditional_pointer_mean - r.initial_pointer_mean;
    let classical = classical_weak_value_p2(&s, q);
    check(
        shift < 0.0 && r.estimated_weak_value < 0.0 && (classical - 0.51).abs() < 1e-12 && classical > 0.0,
        format!(
            "q={q:.6}: pointer shift {shift:.4e} (estimate {:.6}) < 0 while classical E[p^2|q] = {classical:.6} > 0",
            r.estimated_weak_value
        ),
    )
}

fn c9_pointer_independence() -> Outcome {
    let s = state(0.01);
    let gaussian = pointer_with_width(PointerKind::Gaussian, DEFAULT_POINTER_WIDTH, 0.0).unwrap();
    let thermal = pointer_with_width(PointerKind::Thermal, DEFAULT_POINTER_WIDTH, 1.0).unwrap();
    let mut worst = 0.0f64;
    for q in [0.0, 0.6, 1.2 * negativity_threshold(&s)] {
        let cfg = CouplingConfig::with_default_bin(&s, 0.01, q).unwrap();
        let a = simulate_weak_p2(&s, &gaussian, &cfg).unwrap().estimated_weak_value;
        let b = simulate_weak_p2(&s, &thermal, &cfg).unwrap().estimated_weak_value;
        worst = worst.max(((a - b) / a).abs());
    }
    let cfg = CouplingConfig::with_default_bin(&s, 0.01, 0.6).unwrap();
    let rejected = [gaussian.boosted(0.3).unwrap(), thermal.boosted(0.3).unwrap()]
        .iter()
        .all(|p| matches!(simulate_weak_p2(&s, p, &cfg), Err(e) if e.kind() == "invalid-pointer"));
    check(
        worst < 0.05 && rejected,
        format!("max relative gaussian/thermal difference {worst:.2e} (<0.05) at 3 points; boosted pointers rejected={rejected}"),
    )
}

/// `x = k(1 − e^{−x})` by bisection, the independent reference for the Wien peaks.
fn wien_root(k: f64) -> f64 {
    let (mut lo, mut hi) = (1.0, k);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid - k * (1.0 - (-mid).exp()) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn c10_blackbody() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (conv, k, quoted) in [
        (WienConvention::WavelengthPeak, 5.0, "7.0e-3"),
        (WienConvention::FrequencyPeak, 3.0, "6.3e-2"),
    ] {
        let n = wien_peak_occupation(conv);
        let oracle = 1.0 / wien_root(k).exp_m1();
        let rel = ((n - oracle) / oracle).abs();
        let shown = format!("{n:.1e}");
        let order = (1e-3..1e-1).contains(&n);
        ok &= rel < 1e-4 && shown == quoted && order;
        parts.push(format!("{n:.6e} (oracle rel {rel:.1e}, 2 s.f. {shown} vs {quoted})"));
    }
    let cold = occupation_number(&BlackbodyMode::from_frequency(100e3, 1e-6).unwrap()).mean_n;
    let cold_ok = (1e-3..1e-1).contains(&cold);
    ok &= cold_ok;
    check(
        ok,
        format!("Wien {}; 1 uK/100 kHz <n> = {cold:.4e} (order 1e-2: {cold_ok})", parts.join(", ")),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed-form validation against both oracles", c1_closed_form_validation),
        ("cold-light Margenau-Hill grid minima", c2_cold_light_minima),
        ("negative regions vanish at <n> = 1", c3_warm_light_minimum),
        ("conditional-moment integral vs closed form", c4_moment_consistency),
        ("negativity probability curve", c5_negativity_curve),
        ("Hamiltonian weak-value identity", c6_hamiltonian_identity),
        ("simulator convergence (vacuum, q = 2)", c7_simulator_convergence),
        ("nonclassical sign gap", c8_nonclassicality),
        ("pointer independence and current rejection", c9_pointer_independence),
        ("blackbody occupation numbers", c10_blackbody),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
