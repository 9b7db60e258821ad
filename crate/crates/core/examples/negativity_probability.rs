//! Probability that a position postselection yields a negative weak value
//! of `p²`, as thermal occupation grows.
//!
//! ```bash
//! cargo run --example negativity_probability
//! ```

use thermoweak::weakvalues::{negativity_probability, ProbabilityMethod};
use thermoweak::{Grid1D, NegativityStats, ThermalState};

fn main() -> thermoweak::Result<()> {
    println!("{:>8} {:>12} {:>18} {:>18}", "<n>", "threshold", "P (erfc)", "P (quadrature)");
    for mean_n in Grid1D::new(0.0, 2.0, 21)?.points() {
        let state = ThermalState::from_mean_n(mean_n)?;
        let stats = NegativityStats::new(state);
        println!(
            "{:>8.2} {:>12.6} {:>18.10e} {:>18.10e}",
            mean_n,
            stats.threshold_q,
            stats.probability,
            negativity_probability(&state, ProbabilityMethod::Quadrature)
        );
    }
    Ok(())
}
