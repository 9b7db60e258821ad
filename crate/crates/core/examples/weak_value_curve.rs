//! Weak value of `p²` postselected on position, by closed form and by direct
//! integration of the conditional moment, with its negativity threshold.
//!
//! ```bash
//! cargo run --example weak_value_curve
//! ```

use thermoweak::weakvalues::{
    hamiltonian_weak, moment_weak_integral, negativity_threshold, p2_weak_closed,
};
use thermoweak::{Grid1D, ThermalState};

fn main() -> thermoweak::Result<()> {
    for mean_n in [0.0, 0.01, 0.3, 1.0] {
        let state = ThermalState::from_mean_n(mean_n)?;
        println!(
            "<n> = {mean_n}: (p^2)_w < 0 for |q| > {:.6}",
            negativity_threshold(&state)
        );
        println!("{:>8} {:>16} {:>16} {:>16}", "q", "closed", "integral", "2H_w - q^2");
        for q in Grid1D::symmetric(5.0, 11)?.points() {
            println!(
                "{:>8.2} {:>16.10} {:>16.10} {:>16.10}",
                q,
                p2_weak_closed(&state, q),
                moment_weak_integral(&state, 2, q)?,
                2.0 * hamiltonian_weak(&state, q)? - q * q
            );
        }
        println!();
    }
    Ok(())
}
