//! Thermal occupation numbers for blackbody modes: at the two Wien peaks,
//! and for a cold low-frequency oscillator.
//!
//! ```bash
//! cargo run --example blackbody_occupation
//! ```

use thermoweak::states::{occupation_number, wien_peak_occupation};
use thermoweak::weakvalues::negativity_probability;
use thermoweak::weakvalues::ProbabilityMethod;
use thermoweak::{BlackbodyMode, ThermalState, WienConvention};

fn main() -> thermoweak::Result<()> {
    for (label, conv) in [
        ("wavelength peak", WienConvention::WavelengthPeak),
        ("frequency peak", WienConvention::FrequencyPeak),
    ] {
        let n = wien_peak_occupation(conv);
        let p = negativity_probability(&ThermalState::from_mean_n(n)?, ProbabilityMethod::Closed);
        println!(
            "Wien {label:<16} x = {:.12}  <n> = {n:.6e}  P(negative) = {p:.4}",
            conv.reduced_energy()
        );
    }

    let mode = BlackbodyMode::from_frequency(100e3, 1e-6)?;
    let occ = occupation_number(&mode);
    println!(
        "f = 100 kHz, T = 1 uK:     x = {:.6}  <n> = {:.6e}",
        mode.reduced_energy(),
        occ.mean_n
    );

    // ħω/kT = ln 2 gives exactly one photon on average.
    let t = 1.0;
    let omega = std::f64::consts::LN_2 * thermoweak::states::BOLTZMANN * t / thermoweak::states::HBAR;
    println!(
        "hbar w / kT = ln 2:         <n> = {:.12}",
        occupation_number(&BlackbodyMode::new(omega, t)?).mean_n
    );
    Ok(())
}
