//! Composite Newton-Cotes quadrature on uniform grids.
//!
//! Odd point counts use Simpson's rule; even counts use Simpson on all but
//! the last three intervals and the 3/8 rule on those. Two points fall back
//! to the trapezoid rule.

use num_complex::Complex64;

use super::Grid1D;
use crate::error::Result;

/// Quadrature weights for `grid`, so that `∫f ≈ Σ wᵢ f(xᵢ)`.
pub fn quadrature_weights(grid: &Grid1D) -> Vec<f64> {
    let n = grid.count();
    let h = grid.spacing();
    let mut w = vec![0.0; n];
    if n == 2 {
        w[0] = h / 2.0;
        w[1] = h / 2.0;
        return w;
    }
    let simpson_points = if n % 2 == 1 { n } else { n - 3 };
    if simpson_points >= 3 {
        for (i, wi) in w.iter_mut().enumerate().take(simpson_points) {
            *wi = if i == 0 || i == simpson_points - 1 {
                h / 3.0
            } else if i % 2 == 1 {
                4.0 * h / 3.0
            } else {
                2.0 * h / 3.0
            };
        }
    }
    if n.is_multiple_of(2) {
        let s = n - 4;
        for (k, c) in [1.0, 3.0, 3.0, 1.0].into_iter().enumerate() {
            w[s + k] += 3.0 * h / 8.0 * c;
        }
    }
    w
}

/// `∫ f` over the grid span from samples `f(xᵢ)`.
pub fn integrate(samples: &[f64], grid: &Grid1D) -> Result<f64> {
    grid.check_len(samples.len())?;
    Ok(quadrature_weights(grid)
        .iter()
        .zip(samples)
        .map(|(w, f)| w * f)
        .sum())
}

pub fn integrate_complex(samples: &[Complex64], grid: &Grid1D) -> Result<Complex64> {
    grid.check_len(samples.len())?;
    Ok(quadrature_weights(grid)
        .iter()
        .zip(samples)
        .map(|(w, f)| f * w)
        .sum())
}
