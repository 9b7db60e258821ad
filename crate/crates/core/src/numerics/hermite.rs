//! Normalized harmonic-oscillator eigenfunctions `ψₙ(q) = ⟨q|n⟩`.
//!
//! Evaluated with the three-term recurrence
//! `ψₙ = √(2/n)·q·ψₙ₋₁ − √((n−1)/n)·ψₙ₋₂`, never as polynomial times
//! Gaussian. The Gaussian factor is carried as a separate log-scale so that
//! high orders far out in the tails neither overflow nor underflow early.

use crate::error::{Error, Result};

/// Largest supported oscillator order.
pub const MAX_HERMITE_ORDER: usize = 1000;

const RESCALE_ABOVE: f64 = 1e150;

/// `ψₙ(q)` with `ħ = m = ω = 1`.
pub fn hermite_psi(n: usize, q: f64) -> Result<f64> {
    Ok(*hermite_psi_all(n, q)?.last().expect("n + 1 values"))
}

/// `[ψ₀(q), ψ₁(q), …, ψₙ(q)]`.
pub fn hermite_psi_all(n_max: usize, q: f64) -> Result<Vec<f64>> {
    if n_max > MAX_HERMITE_ORDER {
        return Err(Error::UnsupportedOrder {
            order: n_max,
            max: MAX_HERMITE_ORDER,
        });
    }
    if !q.is_finite() {
        return Err(Error::invalid("q", format!("must be finite, got {q}")));
    }

    // Recurrence runs on ψₙ·e^{q²/2}·e^{-log_scale}.
    let gauss_log = -0.5 * q * q;
    let mut log_scale = 0.0_f64;
    let mut out = Vec::with_capacity(n_max + 1);

    let norm0 = std::f64::consts::PI.powf(-0.25);
    let mut prev = 0.0_f64;
    let mut cur = norm0;
    out.push(norm0 * gauss_log.exp());

    for n in 1..=n_max {
        let nf = n as f64;
        let next = (2.0 / nf).sqrt() * q * cur - ((nf - 1.0) / nf).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            prev /= RESCALE_ABOVE;
            cur /= RESCALE_ABOVE;
            log_scale += RESCALE_ABOVE.ln();
        }
        out.push(cur * (gauss_log + log_scale).exp());
    }
    Ok(out)
}
