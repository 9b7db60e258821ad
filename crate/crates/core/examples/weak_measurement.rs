//! Simulate the weak measurement of `p²` postselected on `q` and watch the
//! pointer reading converge to the (negative) weak value as the coupling
//! weakens.
//!
//! ```bash
//! cargo run --release --example weak_measurement
//! ```

use thermoweak::measurement::{convergence_sweep, default_gaussian_grid, gaussian_pointer, DEFAULT_POINTER_WIDTH};
use thermoweak::weakvalues::{classical_weak_value_p2, negativity_threshold};
use thermoweak::ThermalState;

fn main() -> thermoweak::Result<()> {
    let pointer = gaussian_pointer(default_gaussian_grid(DEFAULT_POINTER_WIDTH)?, DEFAULT_POINTER_WIDTH)?;
    let couplings = [0.2, 0.1, 0.05, 0.025, 0.01];

    for (label, object, q) in [
        ("vacuum, q = 2", ThermalState::vacuum(), 2.0),
        ("<n> = 0.01, q = 1.2 x threshold", ThermalState::from_mean_n(0.01)?, 0.0),
    ] {
        let q = if q == 0.0 { 1.2 * negativity_threshold(&object) } else { q };
        println!("{label} (q = {q:.6})");
        println!("{:>8} {:>16} {:>16} {:>12} {:>12}", "g", "estimate", "analytic", "residual", "P(post)");
        for r in convergence_sweep(&object, &pointer, q, &couplings)? {
            println!(
                "{:>8.3} {:>16.10} {:>16.10} {:>12.3e} {:>12.3e}",
                r.g_used, r.estimated_weak_value, r.analytic_weak_value, r.residual, r.postselect_probability
            );
        }
        println!(
            "classical model predicts E[p^2 | q] = {:.4} > 0\n",
            classical_weak_value_p2(&object, q)
        );
    }
    Ok(())
}
