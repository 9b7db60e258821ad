//! Numerical substrate shared by the physics modules.

mod fourier;
mod grid;
mod hermite;
mod quadrature;
mod special;

pub use fourier::{conjugate_grid, p_to_q_at, p_to_q_transform, q_to_p_transform, FourierPair};
pub use grid::Grid1D;
pub use hermite::{hermite_psi, hermite_psi_all, MAX_HERMITE_ORDER};
pub use quadrature::{integrate, integrate_complex, quadrature_weights};
pub use special::{erf, erfc};

/// A complex sample value `re + i·im`.
pub type ComplexSample = num_complex::Complex64;
