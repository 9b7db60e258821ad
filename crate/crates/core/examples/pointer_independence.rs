//! The weak-measurement estimate does not depend on the pointer, as long as
//! the pointer carries no current: a Gaussian and a thermal pointer of equal
//! width give the same reading, while a momentum-boosted pointer is refused.
//!
//! ```bash
//! cargo run --release --example pointer_independence
//! ```

use thermoweak::measurement::{pointer_with_width, simulate_weak_p2, DEFAULT_POINTER_WIDTH};
use thermoweak::{CouplingConfig, PointerKind, ThermalState};

fn main() -> thermoweak::Result<()> {
    let width = DEFAULT_POINTER_WIDTH;
    let gaussian = pointer_with_width(PointerKind::Gaussian, width, 0.0)?;
    let thermal = pointer_with_width(PointerKind::Thermal, width, 1.0)?;
    let object = ThermalState::from_mean_n(0.01)?;

    println!("pointer width {width}, <n>_object = 0.01, g = 0.01");
    println!("{:>8} {:>16} {:>16} {:>16} {:>12}", "q", "analytic", "gaussian", "thermal", "rel. diff");
    for q in [0.0, 1.0, 1.5] {
        let cfg = CouplingConfig::with_default_bin(&object, 0.01, q)?;
        let a = simulate_weak_p2(&object, &gaussian, &cfg)?;
        let b = simulate_weak_p2(&object, &thermal, &cfg)?;
        println!(
            "{:>8.2} {:>16.10} {:>16.10} {:>16.10} {:>12.3e}",
            q,
            a.analytic_weak_value,
            a.estimated_weak_value,
            b.estimated_weak_value,
            ((a.estimated_weak_value - b.estimated_weak_value) / a.estimated_weak_value).abs()
        );
    }

    let boosted = gaussian.boosted(0.5)?;
    let cfg = CouplingConfig::with_default_bin(&object, 0.01, 1.0)?;
    match simulate_weak_p2(&object, &boosted, &cfg) {
        Err(e) => println!("\nboosted pointer rejected: {e}"),
        Ok(_) => println!("\nboosted pointer unexpectedly accepted"),
    }
    Ok(())
}
