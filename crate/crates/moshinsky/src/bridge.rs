//! Relations between entanglement measures and the correlation energy.
//!
//! For the coupled-oscillator pair the correlation energy E and the
//! entanglement entropy S are both closed-form in K, so S can be written as
//! a closed function of E through the auxiliary variable
//! `tau = E + sqrt(2 E (E + 3))`, which equals (3/2)(chi^2 - 1) when E is
//! the correlation energy at coupling chi. The same applies to the
//! concurrence, whose relation with E is invertible in closed form. A
//! weighted deviation functional quantifies how far S is from being simply
//! proportional to E on the unit coupling interval.

use crate::error::{Error, Result};
use crate::model::{self, Coupling};
use crate::oracle;
use crate::sweep::SweepTable;

/// Proportionality weight in the deviation `alpha S - E`. Positive, finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DeviationWeight(f64);

impl DeviationWeight {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::NonpositiveWeight(alpha));
        }
        Ok(DeviationWeight(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The bridge variable tau = E + sqrt(2 E (E + 3)) for a correlation
/// energy E >= 0. Strictly increasing in E, zero at zero.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tau(f64);

impl Tau {
    pub fn from_ecorr(e: f64) -> Result<Self> {
        if !e.is_finite() || e < 0.0 {
            return Err(Error::NegativeEnergy(e));
        }
        Ok(Tau(e + (2.0 * e * (e + 3.0)).sqrt()))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Entanglement entropy as a function of the correlation energy:
///
///   S(E) = [ 4 sqrt(3) (tau+3) ln(sqrt(6 tau + 9) + 3)
///            - 2 sqrt(3) ln 6 (tau+3)
///            - 2 (sqrt(3)(tau+3) - 3 sqrt(2 tau + 3)) ln tau
///            - 3 sqrt(2 tau + 3) ln(2 tau + 3)
///            - 3 sqrt(2 tau + 3) ln 12 ] / (sqrt(2 tau + 3) ln 4).
///
/// Agrees with composing [`k_from_ecorr`] and [`model::entropy`]; E = 0
/// maps to zero entropy (the ln tau factor multiplies a coefficient that
/// vanishes like tau^2, a removable limit handled explicitly).
pub fn entropy_from_ecorr(e: f64) -> Result<f64> {
    let tau = Tau::from_ecorr(e)?.value();
    if tau == 0.0 {
        return Ok(0.0);
    }
    let sqrt3 = 3f64.sqrt();
    let root = (2.0 * tau + 3.0).sqrt();
    // sqrt(3)(tau+3) - 3 sqrt(2 tau + 3) cancels to O(tau^2); the rewrite
    // uses 3 (tau+3)^2 - 9 (2 tau + 3) = 3 tau^2 to keep full precision.
    let diff = sqrt3 * tau * tau / (tau + 3.0 + (6.0 * tau + 9.0).sqrt());
    let braces = 4.0 * sqrt3 * (tau + 3.0) * ((6.0 * tau + 9.0).sqrt() + 3.0).ln()
        - 2.0 * sqrt3 * 6f64.ln() * (tau + 3.0)
        - 2.0 * diff * tau.ln()
        - 3.0 * root * ((2.0 * tau + 3.0).ln() + 12f64.ln());
    Ok(braces / (root * (4f64).ln()))
}

/// Small-E behaviour of [`entropy_from_ecorr`]:
///
///   S(E) = (1 + ln 6 - ln E) E / (2 ln 2) + O(E^(3/2) ln E).
pub fn entropy_from_ecorr_small(e: f64) -> Result<f64> {
    if !e.is_finite() || e < 0.0 {
        return Err(Error::NegativeEnergy(e));
    }
    if e == 0.0 {
        return Ok(0.0);
    }
    Ok((1.0 + 6f64.ln() - e.ln()) * e / (2.0 * std::f64::consts::LN_2))
}

/// Large-E behaviour of [`entropy_from_ecorr`]:
///
///   S(E) = 3 (2 + asinh 1 - ln 24) / ln 4 + (3/2) log2 E + O(1/E).
pub fn entropy_from_ecorr_large(e: f64) -> Result<f64> {
    if !e.is_finite() || e <= 0.0 {
        return Err(Error::NonpositiveEnergy(e));
    }
    let ln2 = std::f64::consts::LN_2;
    Ok(3.0 * (2.0 + 1f64.asinh() - 24f64.ln()) / (2.0 * ln2) + 1.5 * e.ln() / ln2)
}

/// Concurrence of the oscillator pair's reduced state: 1 - tr rho^2.
///
/// Zero only at K = 0, strictly increasing, bounded by 1.
pub fn moshinsky_concurrence(k: Coupling) -> f64 {
    1.0 - model::purity(k)
}

/// Concurrence as a function of the correlation energy:
///
///   C(E) = 1 - 3 sqrt(3) (2 tau + 3)^(3/2) / (tau + 3)^3.
pub fn concurrence_from_ecorr(e: f64) -> Result<f64> {
    let tau = Tau::from_ecorr(e)?.value();
    if tau == 0.0 {
        return Ok(0.0);
    }
    let d = tau + 3.0;
    Ok(1.0 - 3.0 * 3f64.sqrt() * (2.0 * tau + 3.0).powf(1.5) / (d * d * d))
}

/// Correlation energy required to reach concurrence c in [0, 1):
///
///   E(c) = 3 u^(-5/6) [ sqrt(2c - u^(1/3) (2 sqrt(w) - 3) - 2)
///                       + u^(1/6) (sqrt(w) - 1) ],
///   u = 1 - c,  w = u^(4/3) - 3 u^(2/3) + 2.
///
/// Exact inverse of [`concurrence_from_ecorr`]; c = 0 maps to E = 0.
pub fn ecorr_from_concurrence(c: f64) -> Result<f64> {
    if !c.is_finite() || !(0.0..1.0).contains(&c) {
        return Err(Error::ConcurrenceOutOfRange(c));
    }
    let u = 1.0 - c;
    // w = (u^(2/3) - 1)(u^(2/3) - 2) >= 0 on (0, 1]; clamp rounding noise.
    let w = (u.powf(4.0 / 3.0) - 3.0 * u.powf(2.0 / 3.0) + 2.0).max(0.0);
    let radicand = (2.0 * c - u.powf(1.0 / 3.0) * (2.0 * w.sqrt() - 3.0) - 2.0).max(0.0);
    Ok(3.0 / u.powf(5.0 / 6.0) * (radicand.sqrt() + u.powf(1.0 / 6.0) * (w.sqrt() - 1.0)))
}

/// Small-c expansion of [`ecorr_from_concurrence`]:
///
///   E(c) = c + sqrt(2/3) c^(3/2) + (2/3) c^2 + O(c^(5/2)).
pub fn ecorr_from_concurrence_series(c: f64) -> Result<f64> {
    if !c.is_finite() || !(0.0..1.0).contains(&c) {
        return Err(Error::ConcurrenceOutOfRange(c));
    }
    Ok(c + (2.0f64 / 3.0).sqrt() * c.powf(1.5) + 2.0 / 3.0 * c * c)
}

/// Coupling that produces correlation energy e, by bisection on the
/// strictly increasing [`model::correlation_energy`]. The bracket doubles
/// until it encloses e; the bisection stops at an absolute width of 1e-13
/// (or when no representable midpoint remains).
pub fn k_from_ecorr(e: f64) -> Result<Coupling> {
    if !e.is_finite() || e < 0.0 {
        return Err(Error::NegativeEnergy(e));
    }
    if e == 0.0 {
        return Coupling::new(0.0);
    }
    let ecorr = |k: f64| model::correlation_energy(Coupling::new(k).unwrap());
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while ecorr(hi) < e {
        hi *= 2.0;
    }
    for _ in 0..200 {
        if hi - lo <= 1e-13 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if ecorr(mid) < e {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Coupling::new(0.5 * (lo + hi))
}

/// Signed deviation alpha * S(K) - E(K) between the weighted entropy and
/// the correlation energy.
pub fn deviation(alpha: DeviationWeight, k: Coupling) -> f64 {
    alpha.value() * model::entropy(k) - model::correlation_energy(k)
}

/// Integrated squared deviation over the unit coupling interval,
/// I(alpha) = integral_0^1 (alpha S - E)^2 dK, by Gauss-Legendre
/// quadrature with at least 16 points (the integrand is analytic, so a
/// few dozen points are already exact to machine precision).
pub fn deviation_functional(alpha: DeviationWeight, quad_points: usize) -> Result<f64> {
    if quad_points < 16 {
        return Err(Error::TooFewPoints {
            given: quad_points,
            min: 16,
        });
    }
    let grid = oracle::gauss_legendre(quad_points, 0.0, 1.0)?;
    let mut acc = 0.0;
    for (&x, &w) in grid.nodes().iter().zip(grid.weights()) {
        let d = deviation(alpha, Coupling::new(x).unwrap());
        acc += w * d * d;
    }
    Ok(acc)
}

/// Weight minimizing [`deviation_functional`]. The functional is an exact
/// quadratic in alpha, so the minimizer is the ratio of two integrals,
/// alpha = (integral S E) / (integral S^2), evaluated with at least 32
/// quadrature points.
pub fn alpha_min(quad_points: usize) -> Result<DeviationWeight> {
    if quad_points < 32 {
        return Err(Error::TooFewPoints {
            given: quad_points,
            min: 32,
        });
    }
    let grid = oracle::gauss_legendre(quad_points, 0.0, 1.0)?;
    let mut a = 0.0;
    let mut b = 0.0;
    for (&x, &w) in grid.nodes().iter().zip(grid.weights()) {
        let k = Coupling::new(x).unwrap();
        let s = model::entropy(k);
        let e = model::correlation_energy(k);
        a += w * s * s;
        b += w * s * e;
    }
    DeviationWeight::new(b / a)
}

/// Relative sizes of the minimized deviation along a grid of couplings:
/// columns are K, |alpha S - E| / S, and |alpha S - E| / E at the
/// minimizing alpha. Couplings must be strictly positive (both ratios are
/// 0/0 at K = 0) and strictly increasing.
pub fn relative_deviation_tables(grid: &[f64]) -> Result<SweepTable> {
    let alpha = alpha_min(64)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &k in grid {
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::CouplingNotPositive(k));
        }
        let kc = Coupling::new(k)?;
        let d = deviation(alpha, kc).abs();
        rows.push(vec![
            k,
            d / model::entropy(kc),
            d / model::correlation_energy(kc),
        ]);
    }
    SweepTable::new(
        vec![
            "k".to_string(),
            "abs_dev_over_entropy".to_string(),
            "abs_dev_over_ecorr".to_string(),
        ],
        rows,
    )
}

/// Parametric curve of mean-field overlap against entanglement entropy
/// along a strictly increasing grid of couplings.
pub fn overlap_vs_entropy_curve(grid: &[f64]) -> Result<SweepTable> {
    let mut rows = Vec::with_capacity(grid.len());
    for &k in grid {
        let kc = Coupling::new(k)?;
        rows.push(vec![model::entropy(kc), model::overlap_squared(kc)]);
    }
    SweepTable::new(
        vec!["entropy".to_string(), "overlap_sq".to_string()],
        rows,
    )
}
