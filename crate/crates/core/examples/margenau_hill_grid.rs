//! Evaluate the Margenau-Hill distribution of thermal light on a phase-space
//! grid and locate its negative regions.
//!
//! ```bash
//! cargo run --example margenau_hill_grid
//! ```

use thermoweak::quasiprob::{eval_grid, margenau_hill};
use thermoweak::{DistributionLabel, Grid1D, PhasePoint, ThermalState};

fn main() -> thermoweak::Result<()> {
    let grid = Grid1D::symmetric(3.0, 601)?;
    println!("{:>8} {:>14} {:>22} {:>14}", "<n>", "S(0,0)", "grid minimum at (q,p)", "minimum");
    for mean_n in [0.0, 0.01, 0.1, 0.3, 1.0] {
        let state = ThermalState::from_mean_n(mean_n)?;
        let field = eval_grid(&state, &grid, &grid, DistributionLabel::MargenauHill);
        let (min, at) = field.min_real();
        println!(
            "{:>8.2} {:>14.10} {:>10.3},{:>10.3} {:>14.6e}",
            mean_n,
            margenau_hill(&state, PhasePoint::origin()),
            at.q,
            at.p,
            min
        );
    }

    // A coarse picture of the mean_n = 0.01 distribution: '-' marks negative values.
    let state = ThermalState::from_mean_n(0.01)?;
    let coarse = Grid1D::symmetric(2.5, 41)?;
    println!("\n<n> = 0.01, q down, p across, [-2.5, 2.5]:");
    for q in coarse.points() {
        let row: String = coarse
            .points()
            .map(|p| {
                let v = margenau_hill(&state, PhasePoint { q, p });
                if v < -1e-3 {
                    '-'
                } else if v < 1e-3 {
                    ' '
                } else if v < 0.05 {
                    '.'
                } else {
                    '#'
                }
            })
            .collect();
        println!("  {row}");
    }
    Ok(())
}
