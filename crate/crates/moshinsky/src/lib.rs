//! Closed-form ground-state physics of two harmonically coupled identical
//! three-dimensional oscillators, together with the numerical oracles that
//! cross-check every formula.
//!
//! The model separates exactly into center-of-mass and relative modes, so
//! energies, mean-field quality, the reduced one-particle state, its full
//! spectrum, and the entanglement entropy are all explicit functions of the
//! coupling. A companion two-spin model ([`ising`]) and closed relations
//! between entanglement measures and the correlation energy ([`bridge`])
//! round out the picture. The [`oracle`] module re-derives the key numbers
//! by quadrature and dense eigensolves without touching the closed forms;
//! [`verify`] packages the comparisons into reportable suites and [`sweep`]
//! renders any curve as CSV.
//!
//! ```
//! use moshinsky::{Coupling, correlation_energy, entropy};
//!
//! let k = Coupling::new(1.0).unwrap();
//! assert!((correlation_energy(k) - 0.1445644757659692).abs() < 1e-12);
//! assert!((entropy(k) - 0.4085386275458727).abs() < 1e-12);
//! ```

pub mod bridge;
pub mod error;
pub mod ising;
pub mod model;
pub mod oracle;
pub mod sweep;
pub mod verify;

pub use bridge::{
    alpha_min, concurrence_from_ecorr, deviation, deviation_functional, ecorr_from_concurrence,
    ecorr_from_concurrence_series, entropy_from_ecorr, entropy_from_ecorr_large,
    entropy_from_ecorr_small, k_from_ecorr, moshinsky_concurrence, overlap_vs_entropy_curve,
    relative_deviation_tables, DeviationWeight, Tau,
};
pub use error::{Error, Result};
pub use ising::{
    ising_concurrence, ising_concurrence_from_ecorr, ising_correlation_energy, ising_entropy,
    ising_entropy_from_ecorr, ising_entropy_large_ecorr, ising_entropy_small_ecorr, IsingCoupling,
};
pub use model::{
    correlation_energy, correlation_energy_series, degeneracy, density_exact, density_hf,
    eigenfunction_coefficients, eigenfunction_value, entropy, entropy_asymptotic_large_k,
    entropy_from_spectrum, entropy_series_small_k, exact_energy, hf_energy, overlap_squared,
    purity, reduced_kernel_1d, reduced_kernel_3d, reduced_spectrum, spectral_coefficients,
    Coupling, QuantumNumbers, ReducedSpectrum, SpectralCoefficients,
};
