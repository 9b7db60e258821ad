//! Check the closed-form quasi-probability against two independent oracles
//! (Fock-basis sum and Glauber-Sudarshan P-integral), then run the full
//! self-check suite.
//!
//! ```bash
//! cargo run --example oracle_cross_check
//! ```

use thermoweak::quasiprob::{s_closed, s_oracle_fock, s_oracle_pintegral};
use thermoweak::states::DEFAULT_TAIL_TOL;
use thermoweak::verify::run_verification;
use thermoweak::{PhasePoint, ThermalState};

fn main() -> thermoweak::Result<()> {
    let pt = PhasePoint::new(0.8, -1.2)?;
    println!("S(q={}, p={})", pt.q, pt.p);
    for mean_n in [0.01, 0.5, 2.0] {
        let state = ThermalState::from_mean_n(mean_n)?;
        let closed = s_closed(&state, pt);
        let fock = s_oracle_fock(&state, pt, DEFAULT_TAIL_TOL)?;
        let pint = s_oracle_pintegral(&state, pt)?;
        println!(
            "  <n> = {mean_n:<5} closed {:.12} | fock dev {:.1e} | P-integral dev {:.1e}",
            closed,
            (closed - fock).norm(),
            (closed - pint).norm()
        );
    }

    println!();
    let report = run_verification(None)?;
    println!("{report}");
    if !report.all_passed() {
        std::process::exit(1);
    }
    Ok(())
}
