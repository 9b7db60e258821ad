//! Numerics for the nonclassicality of thermal single-mode radiation.
//!
//! A thermal state has a positive, regular P-distribution, yet its
//! standard-ordered (Kirkwood) distribution has a real part, the
//! Margenau-Hill distribution, that goes negative. The observable
//! consequence is a negative weak value of the positive observable `p²`
//! when postselecting on a large quadrature value `q`.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: Hermite functions, `erfc`, quadrature and the
//!   position/momentum transform.
//! - [`states`]: [`ThermalState`], Fock weights, the quadrature marginal and
//!   blackbody occupation numbers.
//! - [`quasiprob`]: the standard-ordered distribution in closed form, two
//!   independent oracles for it, and dense grid evaluation.
//! - [`weakvalues`]: weak values of `p²`, `pⁿ` and `H` postselected on `q`,
//!   the negativity threshold and its probability.
//! - [`measurement`]: a grid simulator of the weak-measurement protocol.
//! - [`export`] and [`verify`]: deterministic CSV/JSON data files and the
//!   cross-oracle verification suite behind the `thermoweak` binary.
//!
//! Units are dimensionless quadratures with `ħ = 1`, `[q, p] = i` and
//! `H = (p² + q²)/2`. The position/momentum kernel is
//! `⟨q|p⟩ = e^{ipq}/√(2π)`, so `⟨p|n⟩ = (-i)ⁿ ψₙ(p)`.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run --example margenau_hill_grid
//! cargo run --example weak_value_curve
//! cargo run --example negativity_probability
//! cargo run --example blackbody_occupation
//! cargo run --example oracle_cross_check
//! cargo run --release --example weak_measurement
//! cargo run --release --example pointer_independence
//! ```

pub mod error;
pub mod export;
pub mod measurement;
pub mod numerics;
pub mod quasiprob;
pub mod states;
pub mod verify;
pub mod weakvalues;

pub use error::{Error, Result};

pub use measurement::{CouplingConfig, PointerKind, PointerState, SimulationReport};
pub use numerics::{ComplexSample, Grid1D};
pub use quasiprob::{ComplexPhaseField, DistributionLabel, PhasePoint};
pub use states::{BlackbodyMode, FockMixture, ThermalState, WienConvention};
pub use weakvalues::{NegativityStats, Observable, WeakValueCurve, WeakValueMethod};
