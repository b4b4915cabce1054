//! Two identical three-dimensional isotropic oscillators with a harmonic
//! coupling between them. Separating center-of-mass and relative coordinates
//! makes every ground-state quantity closed-form: energies, the overlap with
//! the best mean-field (product) state, one-particle densities, the reduced
//! one-particle kernel, its geometric spectrum, and the entanglement entropy.
//!
//! Conventions: lengths and energies are in the units that make the
//! uncoupled Hamiltonian `h = (p1^2 + p2^2 + r1^2 + r2^2) / 2`; the coupling
//! term is `K (r1 - r2)^2 / 2` with dimensionless `K >= 0`. Most formulas
//! are stated through `chi = (1 + 2K)^(1/4)`.

use crate::error::{Error, Result};

/// Dimensionless coupling strength between the two oscillators.
///
/// Nonnegative and finite by construction, so downstream formulas never see
/// square roots of negative numbers.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Coupling(f64);

impl Coupling {
    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() || k < 0.0 {
            return Err(Error::NegativeCoupling(k));
        }
        Ok(Coupling(k))
    }

    pub fn k(self) -> f64 {
        self.0
    }

    /// chi = (1 + 2K)^(1/4), the natural variable of the reduced state.
    pub fn chi(self) -> f64 {
        (1.0 + 2.0 * self.0).powf(0.25)
    }
}

/// Radial and internal excitation numbers of the separated problem.
/// `n` counts center-of-mass quanta, `m` relative-motion quanta.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    pub n: u32,
    pub m: u32,
}

impl QuantumNumbers {
    pub const GROUND: Self = QuantumNumbers { n: 0, m: 0 };
}

/// Exact level energy: (3/2)(1 + s) + n + m s with s = sqrt(1 + 2K).
///
/// The center-of-mass mode keeps unit frequency; the relative mode is
/// stiffened to s. The ground state is n = m = 0.
pub fn exact_energy(q: QuantumNumbers, k: Coupling) -> f64 {
    let s = (1.0 + 2.0 * k.k()).sqrt();
    1.5 * (1.0 + s) + f64::from(q.n) + f64::from(q.m) * s
}

/// Best product-state (mean-field) energy: 3 sqrt(1 + K).
///
/// Each particle sits in an effective oscillator of frequency sqrt(1 + K);
/// by the variational principle this never drops below `exact_energy` of
/// the ground state, with equality only at K = 0.
pub fn hf_energy(k: Coupling) -> f64 {
    3.0 * (1.0 + k.k()).sqrt()
}

/// Correlation energy: the mean-field excess 3 sqrt(1+K) - (3/2)(1 + sqrt(1+2K)).
///
/// Nonnegative, zero only at K = 0, strictly increasing in K.
pub fn correlation_energy(k: Coupling) -> f64 {
    hf_energy(k) - exact_energy(QuantumNumbers::GROUND, k)
}

/// Leading small-K behaviour of the correlation energy:
/// (3/8) K^2 - (9/16) K^3. The remainder is O(K^4).
pub fn correlation_energy_series(k: Coupling) -> f64 {
    let k = k.k();
    k * k * (0.375 - 0.5625 * k)
}

/// Squared overlap between the exact ground state and the mean-field one:
///
///   64 (1+K)^(3/2) (1+2K)^(3/4) / (K + (1 + sqrt(1+K))(1 + sqrt(1+2K)))^3.
///
/// Equals 1 at K = 0 and decreases monotonically; it stays above 0.94 for
/// K <= 1 even though the correlation energy is already several percent of
/// the level spacing there.
pub fn overlap_squared(k: Coupling) -> f64 {
    let k = k.k();
    let num = 64.0 * (1.0 + k).powf(1.5) * (1.0 + 2.0 * k).powf(0.75);
    let den = k + (1.0 + (1.0 + k).sqrt()) * (1.0 + (1.0 + 2.0 * k).sqrt());
    num / (den * den * den)
}

/// Exact one-particle position density at radius r (normalized to unit
/// integral over R^3). A single Gaussian whose width interpolates between
/// the center-of-mass and relative widths.
pub fn density_exact(r: f64, k: Coupling) -> f64 {
    let s = (1.0 + 2.0 * k.k()).sqrt();
    // Gaussian exponent of the reduced kernel's diagonal.
    let p = 2.0 * s / (s + 1.0);
    (p / std::f64::consts::PI).powf(1.5) * (-p * r * r).exp()
}

/// Mean-field one-particle density at radius r: a Gaussian of frequency
/// sqrt(1 + K), normalized the same way.
pub fn density_hf(r: f64, k: Coupling) -> f64 {
    let w = (1.0 + k.k()).sqrt();
    (w / std::f64::consts::PI).powf(1.5) * (-w * r * r).exp()
}

/// One-dimensional reduced kernel of the ground state,
///
///   rho(x, x') = sqrt(2) (2K+1)^(1/4) / sqrt((sqrt(2K+1) + 1) pi)
///     * exp[ ((sqrt(2K+1)-1)^2 x x' - (K + 3 sqrt(2K+1) + 1)(x^2 + x'^2))
///            / (4 (sqrt(2K+1) + 1)) ].
///
/// Symmetric, positive, trace one; the three-dimensional kernel is the
/// product of one copy per Cartesian component.
pub fn reduced_kernel_1d(x: f64, x2: f64, k: Coupling) -> f64 {
    let kk = k.k();
    let s = (1.0 + 2.0 * kk).sqrt();
    let norm = std::f64::consts::SQRT_2 * k.chi() / ((s + 1.0) * std::f64::consts::PI).sqrt();
    // Grouping (x * x2) first keeps the value bit-identical under argument
    // swap, so discretized kernel matrices are exactly symmetric.
    let num = (s - 1.0) * (s - 1.0) * (x * x2) - (kk + 3.0 * s + 1.0) * (x * x + x2 * x2);
    norm * (num / (4.0 * (s + 1.0))).exp()
}

/// Three-dimensional reduced kernel: the product of one-dimensional kernels
/// over the Cartesian components.
pub fn reduced_kernel_3d(r: [f64; 3], r2: [f64; 3], k: Coupling) -> f64 {
    reduced_kernel_1d(r[0], r2[0], k)
        * reduced_kernel_1d(r[1], r2[1], k)
        * reduced_kernel_1d(r[2], r2[2], k)
}

/// Parameters of the reduced kernel's exact diagonalization.
///
/// In one dimension the eigenvalues are `nu_l = big_c * small_c^l` with
/// oscillator-like eigenfunctions of Gaussian width set by `delta`; the
/// normalization identity `big_c = 1 - small_c` holds exactly, which is how
/// the unit trace shows up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralCoefficients {
    pub big_c: f64,
    pub small_c: f64,
    /// Gaussian decay of the eigenfunctions: w_l(x) = P_l(x) exp(-delta x^2),
    /// with delta = chi / 2.
    pub delta: f64,
}

/// Closed-form spectral data of the one-dimensional reduced kernel.
pub fn spectral_coefficients(k: Coupling) -> SpectralCoefficients {
    let kk = k.k();
    let q = k.chi();
    // den = (chi + 1)^4 / 2, kept in the expanded form to match the ratio
    // small_c's numerator is stated in.
    let den = 1.0 + kk + 2.0 * q + 3.0 * q * q + 2.0 * q * q * q;
    SpectralCoefficients {
        big_c: 2.0 * std::f64::consts::SQRT_2 * q / den.sqrt(),
        small_c: (1.0 + kk - (1.0 + 2.0 * kk).sqrt()) / den,
        delta: 0.5 * q,
    }
}

/// Truncated spectrum of the three-dimensional reduced state.
///
/// Eigenvalues `mu_j = big_c^3 * small_c^j` carry degeneracy
/// `(j+1)(j+2)/2` (three-fold products of one-dimensional levels with fixed
/// total index). `entries` lists `(mu_j, degeneracy)` for j = 0..=j_max;
/// `tail_bound` dominates both the discarded eigenvalue mass and the
/// discarded entropy contribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSpectrum {
    pub entries: Vec<(f64, u64)>,
    pub tail_bound: f64,
}

impl ReducedSpectrum {
    /// Sum of mu * degeneracy over the retained entries; 1 - tail mass.
    pub fn retained_mass(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(mu, d)| mu * d as f64)
            .sum()
    }
}

/// Degeneracy of the j-th three-dimensional eigenvalue.
pub fn degeneracy(j: u64) -> u64 {
    (j + 1) * (j + 2) / 2
}

/// Spectrum of the three-dimensional reduced state truncated so that the
/// discarded mass and discarded entropy are both below `tol`.
///
/// `tol` must lie strictly inside (0, 1).
pub fn reduced_spectrum(k: Coupling, tol: f64) -> Result<ReducedSpectrum> {
    if !tol.is_finite() || tol <= 0.0 || tol >= 1.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let sc = spectral_coefficients(k);
    let (big_c, c) = (sc.big_c, sc.small_c);
    if c == 0.0 {
        // Uncoupled limit: the state is pure.
        return Ok(ReducedSpectrum {
            entries: vec![(1.0, 1)],
            tail_bound: 0.0,
        });
    }
    let mu0 = big_c * big_c * big_c;

    // Tail past index m: consecutive degeneracy-weighted terms shrink by at
    // least rho = c (m+4)/(m+2), so the discarded mass is below
    // t1 / (1 - rho) with t1 the first discarded term, and the discarded
    // entropy below t1 (L0 / (1-rho) + Lc rho / (1-rho)^2), where
    // -log2 mu_j = L0 + (j - m - 1) Lc down the tail.
    let tail_for = |m: u64| -> f64 {
        let mu_next = mu0 * c.powi((m + 1).min(i32::MAX as u64) as i32);
        if mu_next == 0.0 {
            return 0.0;
        }
        let rho = c * (m + 4) as f64 / (m + 2) as f64;
        if rho >= 1.0 {
            return f64::INFINITY;
        }
        let t1 = mu_next * degeneracy(m + 1) as f64;
        let mass_tail = t1 / (1.0 - rho);
        let entropy_tail = t1
            * (-mu_next.log2() / (1.0 - rho) - c.log2() * rho / ((1.0 - rho) * (1.0 - rho)));
        mass_tail.max(entropy_tail)
    };

    let mut m = ((tol * (1.0 - c)).ln() / c.ln()).ceil().max(50.0) as u64;
    // The degeneracy and log factors can push the bound past tol where c is
    // close to 1 (very strong coupling); extend the cutoff until it clears.
    while tail_for(m) > tol {
        m += (m / 4).max(32);
    }

    let mut entries = Vec::with_capacity(m as usize + 1);
    let mut mu = mu0;
    for j in 0..=m {
        if mu == 0.0 {
            // Underflow: everything past here is exactly zero in f64.
            break;
        }
        entries.push((mu, degeneracy(j)));
        mu *= c;
    }

    let tail_bound = tail_for(entries.len() as u64 - 1);
    Ok(ReducedSpectrum { entries, tail_bound })
}

/// Purity of the reduced one-particle state,
/// tr rho^2 = 8 (1+2K)^(3/4) / (1 + sqrt(1+2K))^3.
///
/// Equals big_c^6 / (1 - small_c^2)^3 and the degeneracy-weighted sum of
/// squared eigenvalues; 1 only at K = 0.
pub fn purity(k: Coupling) -> f64 {
    let u = 1.0 + 2.0 * k.k();
    let d = 1.0 + u.sqrt();
    8.0 * u.powf(0.75) / (d * d * d)
}

/// Von Neumann entropy of the reduced state in bits,
///
///   S = (3 / ln 4) [ 2 (1 + chi^2) ln(1 + chi) - 2 chi ln(4 chi)
///                    - (chi - 1)^2 ln(chi^2 - 1) ] / chi.
///
/// Zero exactly at K = 0; the (chi-1)^2 ln(chi^2 - 1) term is a removable
/// 0 * ln 0 there, so couplings below 1e-12 short-circuit to the limit.
pub fn entropy(k: Coupling) -> f64 {
    if k.k() < 1e-12 {
        return 0.0;
    }
    let x = k.chi();
    let braces = 2.0 * (1.0 + x * x) * (1.0 + x).ln()
        - 2.0 * x * (4.0 * x).ln()
        - (x - 1.0) * (x - 1.0) * (x * x - 1.0).ln();
    3.0 / (4f64).ln() * braces / x
}

/// Entropy recomputed from a truncated spectrum: -sum deg * mu * log2 mu.
/// Agrees with [`entropy`] to within the spectrum's tail bound.
pub fn entropy_from_spectrum(spectrum: &ReducedSpectrum) -> f64 {
    spectrum
        .entries
        .iter()
        .map(|&(mu, d)| -(d as f64) * mu * mu.log2())
        .sum()
}

/// Small-K expansion of the entropy:
///
///   S = (3/4 + 3/(16 ln 2)) K^2 - (3/2) K^3
///       + (177/64 - 189/(512 ln 2)) K^4
///       - [3 K^2 (16 - 32 K + 59 K^2) / (128 ln 2)] ln K.
///
/// The K^2 ln K term dominates the error of any polynomial fit; the
/// remainder of this expression is o(K^4 ln K).
pub fn entropy_series_small_k(k: Coupling) -> f64 {
    let k = k.k();
    if k == 0.0 {
        return 0.0;
    }
    let ln2 = std::f64::consts::LN_2;
    let k2 = k * k;
    let poly = (0.75 + 3.0 / (16.0 * ln2)) * k2 - 1.5 * k2 * k
        + (177.0 / 64.0 - 189.0 / (512.0 * ln2)) * k2 * k2;
    let log_term = 3.0 * k2 * (16.0 - 32.0 * k + 59.0 * k2) / (128.0 * ln2) * k.ln();
    poly - log_term
}

/// Large-K behaviour of the entropy:
///
///   S = (3/4) log2 K - 21/4 + 3/ln 2 + O(1/sqrt(K)).
pub fn entropy_asymptotic_large_k(k: Coupling) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    0.75 * k.k().ln() / ln2 - 5.25 + 3.0 / ln2
}

/// Coefficients of the l-th one-dimensional eigenfunction
/// `w_l(x) = P_l(x) exp(-delta x^2)` of the reduced kernel, with
/// `P_l(x) = coeffs[0] + coeffs[1] x + ... + coeffs[l] x^l`.
///
/// Normalized to unit L2 norm on the line, leading coefficient positive,
/// parity (-1)^l (alternate coefficients are exactly zero). Satisfies
/// `integral rho(x, y) w_l(y) dy = nu_l w_l(x)` with `nu_l` from
/// [`spectral_coefficients`].
///
/// The construction integrates the kernel against `x^m exp(-delta x^2)`
/// term by term, which is upper triangular in the monomial basis, and
/// back-substitutes. Intended for small l; the geometric decay of `nu_l`
/// makes large l physically irrelevant, and the factorial growth of the
/// normalization moments would overflow near l ~ 75.
pub fn eigenfunction_coefficients(l: u32, k: Coupling) -> Vec<f64> {
    let sc = spectral_coefficients(k);
    if sc.small_c < 1e-12 {
        // Degenerate geometric ladder (K -> 0): the kernel collapses onto a
        // single Gaussian and the eigenfunctions are the scaled oscillator
        // functions; the triangular solve divides by nu_l - nu_m -> 0.
        return hermite_limit_coefficients(l, sc.delta);
    }

    let n = l as usize;
    let kk = k.k();
    let s = (1.0 + 2.0 * kk).sqrt();
    let theta = (s - 1.0) * (s - 1.0);
    let g = 4.0 * (s + 1.0);
    // Gaussian weight of the integrated ansatz: kernel quadratic term plus
    // the ansatz's own decay.
    let p = (kk + 3.0 * s + 1.0) / g + sc.delta;
    let norm = std::f64::consts::SQRT_2 * k.chi() / ((s + 1.0) * std::f64::consts::PI).sqrt();
    let pref = norm * (std::f64::consts::PI / p).sqrt();
    let scale = theta / g;

    // r[j][m]: applying the kernel to x^j exp(-delta x^2) yields
    // pref * sum_m r[j][m] scale^m x^m exp(-delta x^2); the polynomials
    // r[j] follow a two-term recurrence in the monomial basis.
    let mut r = vec![vec![0.0f64; n + 1]; n + 1];
    r[0][0] = 1.0;
    for j in 0..n {
        for m in 0..=n {
            let up = if m < j { r[j][m + 1] } else { 0.0 };
            let down = if m > 0 { r[j][m - 1] } else { 0.0 };
            r[j + 1][m] = (m as f64 + 1.0) * up + down / (2.0 * p);
        }
    }

    // Upper-triangular operator matrix in the monomial-times-Gaussian basis.
    let mut t = vec![vec![0.0f64; n + 1]; n + 1];
    for j in 0..=n {
        let mut sm = 1.0;
        for m in 0..=j {
            t[m][j] = pref * r[j][m] * sm;
            sm *= scale;
        }
    }

    // Back-substitution: the eigenvector for the diagonal entry t[l][l]
    // (which equals nu_l exactly) with unit leading coefficient.
    let mut alpha = vec![0.0f64; n + 1];
    alpha[n] = 1.0;
    for m in (0..n).rev() {
        let mut acc = 0.0;
        for j in (m + 1)..=n {
            acc += t[m][j] * alpha[j];
        }
        alpha[m] = acc / (t[n][n] - t[m][m]);
    }

    normalize_in_place(&mut alpha, sc.delta);
    alpha
}

/// Normalize P(x) exp(-delta x^2) to unit L2 norm via the even Gaussian
/// moments, and fix the sign so the leading coefficient is positive.
fn normalize_in_place(coeffs: &mut [f64], delta: f64) {
    let n = coeffs.len() - 1;
    // integral x^(2q) exp(-2 delta x^2) dx = (2q-1)!! sqrt(pi/(2 delta)) / (4 delta)^q
    let base = (std::f64::consts::PI / (2.0 * delta)).sqrt();
    let mut moment = base;
    let mut moments = vec![0.0f64; n + 1];
    moments[0] = moment;
    for q in 1..=n {
        moment *= (2.0 * q as f64 - 1.0) / (4.0 * delta);
        moments[q] = moment;
    }
    let mut norm2 = 0.0;
    for i in 0..=n {
        for j in 0..=n {
            if (i + j) % 2 == 0 {
                norm2 += coeffs[i] * coeffs[j] * moments[(i + j) / 2];
            }
        }
    }
    let scale = norm2.sqrt().recip() * coeffs[n].signum();
    for c in coeffs.iter_mut() {
        *c *= scale;
    }
}

/// Oscillator eigenfunction coefficients in the K -> 0 limit, where the
/// eigenfunctions reduce to scaled Hermite functions with frequency
/// omega = 2 delta.
fn hermite_limit_coefficients(l: u32, delta: f64) -> Vec<f64> {
    let n = l as usize;
    let omega = 2.0 * delta;
    // Physicists' Hermite polynomials in y = sqrt(omega) x.
    let mut h_prev = vec![0.0f64; n + 1];
    let mut h = vec![0.0f64; n + 1];
    h_prev[0] = 1.0;
    if n == 0 {
        h = h_prev.clone();
    } else {
        h[1] = 2.0;
        for m in 1..n {
            let mut next = vec![0.0f64; n + 1];
            for i in 0..=n {
                let shifted = if i > 0 { h[i - 1] } else { 0.0 };
                next[i] = 2.0 * shifted - 2.0 * m as f64 * h_prev[i];
            }
            h_prev = std::mem::take(&mut h);
            h = next;
        }
    }
    let mut fact = 1.0;
    for m in 1..=n {
        fact *= m as f64;
    }
    let pref = (omega / std::f64::consts::PI).powf(0.25) / ((2.0f64).powi(n as i32) * fact).sqrt();
    let sq = omega.sqrt();
    let mut out = vec![0.0f64; n + 1];
    let mut pw = 1.0;
    for i in 0..=n {
        out[i] = pref * h[i] * pw;
        pw *= sq;
    }
    out
}

/// Evaluate the l-th eigenfunction at x from its coefficient vector.
pub fn eigenfunction_value(coeffs: &[f64], delta: f64, x: f64) -> f64 {
    let mut poly = 0.0;
    for &c in coeffs.iter().rev() {
        poly = poly * x + c;
    }
    poly * (-delta * x * x).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(k: f64) -> Coupling {
        Coupling::new(k).unwrap()
    }

    #[test]
    fn coupling_rejects_bad_input() {
        assert!(Coupling::new(-1e-9).is_err());
        assert!(Coupling::new(f64::NAN).is_err());
        assert!(Coupling::new(f64::INFINITY).is_err());
        assert_eq!(Coupling::new(0.0).unwrap().k(), 0.0);
    }

    #[test]
    fn ground_energy_matches_closed_form() {
        assert_relative_eq!(
            exact_energy(QuantumNumbers::GROUND, c(1.0)),
            4.098076211353316,
            max_relative = 1e-15
        );
        assert_eq!(exact_energy(QuantumNumbers::GROUND, c(0.0)), 3.0);
        // One relative quantum costs sqrt(3) at K = 1.
        let q = QuantumNumbers { n: 0, m: 1 };
        assert_relative_eq!(
            exact_energy(q, c(1.0)) - exact_energy(QuantumNumbers::GROUND, c(1.0)),
            3f64.sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn mean_field_energy_and_correlation() {
        assert_relative_eq!(hf_energy(c(1.0)), 4.242640687119285, max_relative = 1e-15);
        assert_relative_eq!(hf_energy(c(0.5)), 3.674234614174767, max_relative = 1e-15);
        assert_relative_eq!(
            correlation_energy(c(1.0)),
            0.14456447576596921,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            correlation_energy(c(0.1)),
            0.0032588719949563006,
            max_relative = 1e-12
        );
        assert_eq!(correlation_energy(c(0.0)), 0.0);
    }

    #[test]
    fn correlation_series_tracks_exact_at_small_k() {
        assert_relative_eq!(
            correlation_energy_series(c(0.1)),
            0.0031875,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            correlation_energy_series(c(0.01)),
            3.69375e-5,
            max_relative = 1e-15
        );
        // Remainder is quartic: halving K cuts err/K^3... by ~2 per K.
        let err = |k: f64| (correlation_energy(c(k)) - correlation_energy_series(c(k))).abs();
        assert!(err(0.01) / 0.01f64.powi(4) < 1.0);
        assert!(err(0.01) < err(0.02));
    }

    #[test]
    fn overlap_squared_values() {
        assert_relative_eq!(
            overlap_squared(c(1.0)),
            0.9415713083186478,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            overlap_squared(c(0.5)),
            0.9771271203118989,
            max_relative = 1e-13
        );
        assert_relative_eq!(overlap_squared(c(0.0)), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn densities_at_origin() {
        assert_relative_eq!(
            density_exact(0.0, c(0.0)),
            0.17958712212516656,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            density_exact(0.0, c(1.0)),
            0.25640587275258257,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            density_hf(0.0, c(1.0)),
            0.30202833444156722,
            max_relative = 1e-14
        );
        // At K = 0 both densities are the bare oscillator ground density.
        assert_eq!(density_exact(0.7, c(0.0)), density_hf(0.7, c(0.0)));
    }

    #[test]
    fn kernel_spot_values_and_symmetry() {
        assert_relative_eq!(
            reduced_kernel_1d(0.0, 0.0, c(0.0)),
            0.5641895835477563,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            reduced_kernel_1d(1.0, -1.0, c(1.0)),
            0.16207599421773625,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            reduced_kernel_1d(1.0, 1.0, c(1.0)),
            0.17877741433114162,
            max_relative = 1e-13
        );
        assert_eq!(
            reduced_kernel_1d(0.3, -1.2, c(0.7)),
            reduced_kernel_1d(-1.2, 0.3, c(0.7))
        );
        let r = [0.2, -0.5, 1.1];
        let r2 = [-0.9, 0.4, 0.0];
        assert_relative_eq!(
            reduced_kernel_3d(r, r2, c(0.8)),
            reduced_kernel_1d(r[0], r2[0], c(0.8))
                * reduced_kernel_1d(r[1], r2[1], c(0.8))
                * reduced_kernel_1d(r[2], r2[2], c(0.8)),
            max_relative = 1e-15
        );
    }

    #[test]
    fn spectral_coefficients_values() {
        let sc = spectral_coefficients(c(1.0));
        assert_relative_eq!(sc.big_c, 0.9813760107025721, max_relative = 1e-13);
        assert_relative_eq!(sc.small_c, 0.018623989297427888, max_relative = 1e-12);
        assert_relative_eq!(sc.delta, 0.6580370064762462, max_relative = 1e-14);
        // Unit trace of the geometric spectrum.
        assert!((sc.big_c / (1.0 - sc.small_c) - 1.0).abs() < 1e-12);
        let sc0 = spectral_coefficients(c(0.0));
        assert_eq!(sc0.small_c, 0.0);
        assert_relative_eq!(sc0.big_c, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn reduced_spectrum_leading_entries() {
        let spec = reduced_spectrum(c(1.0), 1e-12).unwrap();
        assert_relative_eq!(spec.entries[0].0, 0.9451621312536305, max_relative = 1e-12);
        assert_relative_eq!(spec.entries[1].0, 0.017602689416801747, max_relative = 1e-12);
        assert_eq!(spec.entries[0].1, 1);
        assert_eq!(spec.entries[1].1, 3);
        assert_eq!(spec.entries[2].1, 6);
        assert!(spec.tail_bound < 1e-12);
        assert!((spec.retained_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reduced_spectrum_rejects_bad_tolerance() {
        assert!(reduced_spectrum(c(1.0), 0.0).is_err());
        assert!(reduced_spectrum(c(1.0), -1e-3).is_err());
        assert!(reduced_spectrum(c(1.0), 1.0).is_err());
        assert!(reduced_spectrum(c(1.0), f64::NAN).is_err());
    }

    #[test]
    fn reduced_spectrum_uncoupled_is_pure() {
        let spec = reduced_spectrum(c(0.0), 1e-10).unwrap();
        assert_eq!(spec.entries, vec![(1.0, 1)]);
        assert_eq!(spec.tail_bound, 0.0);
    }

    #[test]
    fn purity_values_and_identities() {
        assert_relative_eq!(purity(c(1.0)), 0.8942616635970879, max_relative = 1e-13);
        assert_relative_eq!(purity(c(0.5)), 0.9561706918016565, max_relative = 1e-13);
        assert_eq!(purity(c(0.0)), 1.0);
        for &k in &[0.05, 0.3, 0.77, 1.0] {
            let sc = spectral_coefficients(c(k));
            let via_spec = sc.big_c.powi(6) / (1.0 - sc.small_c * sc.small_c).powi(3);
            assert_relative_eq!(purity(c(k)), via_spec, max_relative = 1e-13);
            let spec = reduced_spectrum(c(k), 1e-14).unwrap();
            let sum: f64 = spec
                .entries
                .iter()
                .map(|&(mu, d)| d as f64 * mu * mu)
                .sum();
            assert_relative_eq!(purity(c(k)), sum, max_relative = 1e-12);
        }
    }

    #[test]
    fn entropy_values() {
        assert_relative_eq!(entropy(c(1.0)), 0.40853862754587267, max_relative = 1e-12);
        assert_relative_eq!(entropy(c(0.5)), 0.19195592283685524, max_relative = 1e-12);
        assert_relative_eq!(entropy(c(0.05)), 0.0060575666977309353, max_relative = 1e-10);
        assert_eq!(entropy(c(0.0)), 0.0);
        assert_eq!(entropy(c(1e-13)), 0.0);
    }

    #[test]
    fn entropy_matches_spectral_sum() {
        for &k in &[0.05, 0.2, 0.5, 1.0] {
            let spec = reduced_spectrum(c(k), 1e-14).unwrap();
            assert_relative_eq!(
                entropy(c(k)),
                entropy_from_spectrum(&spec),
                epsilon = 1e-12,
                max_relative = 1e-10
            );
        }
    }

    #[test]
    fn entropy_series_and_asymptote() {
        let k = 1e-3;
        let rel = (entropy_series_small_k(c(k)) - entropy(c(k))).abs() / entropy(c(k));
        assert!(rel < 1e-7, "relative error {rel}");
        assert_eq!(entropy_series_small_k(c(0.0)), 0.0);

        let d = (entropy_asymptotic_large_k(c(1e4)) - entropy(c(1e4))).abs();
        assert!(d < 0.011, "asymptote gap {d}");
    }

    #[test]
    fn eigenfunctions_match_scaled_hermite_limit() {
        // The triangular construction and the closed-form limit coefficients
        // must agree wherever both apply; the limit form is exact for all K
        // because the eigenfunctions are scaled oscillator functions.
        for &k in &[0.1, 1.0] {
            let sc = spectral_coefficients(c(k));
            for l in 0..=6u32 {
                let tri = eigenfunction_coefficients(l, c(k));
                let herm = hermite_limit_coefficients(l, sc.delta);
                for i in 0..=(l as usize) {
                    let scale = herm[i].abs().max(1.0);
                    assert!(
                        (tri[i] - herm[i]).abs() / scale < 1e-10,
                        "K={k} l={l} i={i}: {} vs {}",
                        tri[i],
                        herm[i]
                    );
                }
            }
        }
    }

    #[test]
    fn eigenfunctions_have_parity_and_positive_leading() {
        for l in 0..=5u32 {
            let co = eigenfunction_coefficients(l, c(1.0));
            assert_eq!(co.len(), l as usize + 1);
            assert!(co[l as usize] > 0.0);
            for i in (0..=(l as usize)).rev() {
                if (l as usize - i) % 2 == 1 {
                    assert_eq!(co[i], 0.0, "parity violation at l={l} i={i}");
                }
            }
        }
    }

    #[test]
    fn eigenfunctions_at_zero_coupling_are_oscillator_states() {
        let co = eigenfunction_coefficients(0, c(0.0));
        assert_relative_eq!(
            co[0],
            (1.0 / std::f64::consts::PI).powf(0.25),
            max_relative = 1e-15
        );
    }

    #[test]
    fn eigenfunction_value_horner_matches_direct() {
        let co = eigenfunction_coefficients(3, c(1.0));
        let delta = spectral_coefficients(c(1.0)).delta;
        let x = 0.83;
        let direct = (co[1] * x + co[3] * x * x * x) * (-delta * x * x).exp();
        assert_relative_eq!(
            eigenfunction_value(&co, delta, x),
            direct,
            max_relative = 1e-14
        );
    }
}
