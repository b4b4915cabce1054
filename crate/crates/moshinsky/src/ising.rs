//! Two spins coupled by a transverse-field Ising interaction: the companion
//! exactly solvable pair used to compare how entanglement scales with
//! correlation energy in a qualitatively different model. Everything is a
//! function of the field-to-coupling ratio `lambda >= 0`, or of the
//! correlation energy `E = sqrt(4 + lambda^2) - 2` directly.

use crate::error::{Error, Result};

/// Coupling-to-field ratio of the spin pair. Nonnegative and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct IsingCoupling(f64);

impl IsingCoupling {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::NegativeCoupling(lambda));
        }
        Ok(IsingCoupling(lambda))
    }

    pub fn lambda(self) -> f64 {
        self.0
    }
}

/// Ground-state entanglement entropy of the spin pair in bits,
///
///   S = -1 / (r ln 4) [ (r - 2) ln(1/2 - 1/r) + (r + 2) ln(1/2 + 1/r) ],
///   r = sqrt(4 + lambda^2).
///
/// Equivalently the binary entropy of p = 1/2 + 1/r. Zero at lambda = 0
/// (the (r - 2) ln 0 factor is a removable limit, handled explicitly) and
/// approaching one bit as lambda grows.
pub fn ising_entropy(lambda: IsingCoupling) -> f64 {
    let l = lambda.lambda();
    if l == 0.0 {
        return 0.0;
    }
    let r = (4.0 + l * l).sqrt();
    let ln4 = (4f64).ln();
    -((r - 2.0) * (0.5 - 1.0 / r).ln() + (r + 2.0) * (0.5 + 1.0 / r).ln()) / (r * ln4)
}

/// Correlation energy of the spin pair: sqrt(4 + lambda^2) - 2.
///
/// The mean-field ground energy is independent of lambda here, so this is
/// also the full lowering of the ground level.
pub fn ising_correlation_energy(lambda: IsingCoupling) -> f64 {
    let l = lambda.lambda();
    (4.0 + l * l).sqrt() - 2.0
}

/// Ground-state concurrence of the spin pair: lambda / sqrt(4 + lambda^2).
pub fn ising_concurrence(lambda: IsingCoupling) -> f64 {
    let l = lambda.lambda();
    l / (4.0 + l * l).sqrt()
}

/// Concurrence as a function of the correlation energy:
/// sqrt(E (E + 4)) / (E + 2). Inverse of [`ising_correlation_energy`]
/// composed with [`ising_concurrence`].
pub fn ising_concurrence_from_ecorr(e: f64) -> Result<f64> {
    if !e.is_finite() || e < 0.0 {
        return Err(Error::NegativeEnergy(e));
    }
    Ok((e * (e + 4.0)).sqrt() / (e + 2.0))
}

/// Entanglement entropy as a function of the correlation energy, through
/// lambda = sqrt((E + 2)^2 - 4).
pub fn ising_entropy_from_ecorr(e: f64) -> Result<f64> {
    if !e.is_finite() || e < 0.0 {
        return Err(Error::NegativeEnergy(e));
    }
    let lambda = ((e + 2.0) * (e + 2.0) - 4.0).sqrt();
    Ok(ising_entropy(IsingCoupling(lambda)))
}

/// Small-E behaviour of the entropy-energy relation:
///
///   S = (1 + 2 ln 2 - ln E) E / (4 ln 2) + O(E^2 ln E).
pub fn ising_entropy_small_ecorr(e: f64) -> Result<f64> {
    if !e.is_finite() || e < 0.0 {
        return Err(Error::NegativeEnergy(e));
    }
    if e == 0.0 {
        return Ok(0.0);
    }
    let ln2 = std::f64::consts::LN_2;
    Ok((1.0 + 2.0 * ln2 - e.ln()) * e / (4.0 * ln2))
}

/// Large-E behaviour of the entropy-energy relation:
///
///   S = 1 - 2 / (E^2 ln 2) + O(1/E^3).
pub fn ising_entropy_large_ecorr(e: f64) -> Result<f64> {
    if !e.is_finite() || e <= 0.0 {
        return Err(Error::NonpositiveEnergy(e));
    }
    Ok(1.0 - 2.0 / (std::f64::consts::LN_2 * e * e))
}
