//! Self-check suites behind the command-line `verify` command: closed-form
//! identities (`analytic`), closed forms against the numerical oracles
//! (`oracle`), and inverse-function round-trips (`roundtrip`). Each check
//! reports the maximum error it observed over its grid, so a report is
//! useful even when everything passes.

use crate::bridge::{self, Tau};
use crate::error::Result;
use crate::ising::{self, IsingCoupling};
use crate::model::{self, Coupling};
use crate::oracle::{self, NystromProblem};
use crate::sweep::{self, Figure};

/// Default tolerance for the closed-form identity suite.
pub const ANALYTIC_TOL: f64 = 1e-10;
/// Default tolerance for oracle agreement; limited by quadrature error.
pub const ORACLE_TOL: f64 = 1e-8;
/// Default tolerance for inverse round-trips.
pub const ROUNDTRIP_TOL: f64 = 1e-9;

/// Outcome of one named check: the largest error seen and the tolerance it
/// was held to.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: &'static str,
    pub max_err: f64,
    pub tol: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.max_err.is_finite() && self.max_err <= self.tol
    }
}

fn k_grid() -> Vec<f64> {
    sweep::linspace(0.0, 1.0, 101).expect("static grid")
}

fn report(name: &'static str, max_err: f64, tol: f64) -> CheckReport {
    CheckReport { name, max_err, tol }
}

/// Closed-form identities that hold to rounding error: trace normalization,
/// the three purity expressions, entropy as a spectral sum, additivity over
/// Cartesian components, the variational bound, and the bridge variable.
pub fn analytic_suite(tol: f64) -> Vec<CheckReport> {
    let grid = k_grid();
    let mut out = Vec::new();

    let mut trace_err = 0.0f64;
    let mut purity_err = 0.0f64;
    let mut additivity_err = 0.0f64;
    let mut variational_err = 0.0f64;
    let mut tau_err = 0.0f64;
    for &k in &grid {
        let kc = Coupling::new(k).unwrap();
        let sc = model::spectral_coefficients(kc);
        trace_err = trace_err.max((sc.big_c / (1.0 - sc.small_c) - 1.0).abs());

        let via_coeffs = sc.big_c.powi(6) / (1.0 - sc.small_c * sc.small_c).powi(3);
        purity_err = purity_err.max((model::purity(kc) - via_coeffs).abs());
        let spec = model::reduced_spectrum(kc, 1e-14).unwrap();
        let via_sum: f64 = spec
            .entries
            .iter()
            .map(|&(mu, d)| d as f64 * mu * mu)
            .sum();
        purity_err = purity_err.max((model::purity(kc) - via_sum).abs());

        // One-dimensional entropy summed over three identical components.
        let mut s1 = 0.0;
        let mut nu = sc.big_c;
        for _ in 0..500 {
            if nu < 1e-22 {
                break;
            }
            s1 -= nu * nu.log2();
            nu *= sc.small_c;
        }
        additivity_err = additivity_err.max((model::entropy(kc) - 3.0 * s1).abs());

        let exact = model::exact_energy(model::QuantumNumbers::GROUND, kc);
        variational_err = variational_err.max(exact - model::hf_energy(kc));

        let tau = Tau::from_ecorr(model::correlation_energy(kc)).unwrap().value();
        let s = (1.0 + 2.0 * k).sqrt();
        tau_err = tau_err.max((tau - 1.5 * (s - 1.0)).abs());
    }
    out.push(report("trace normalization of the reduced spectrum", trace_err, tol));
    out.push(report("purity closed form vs spectral forms", purity_err, tol));
    out.push(report("entropy additivity over components", additivity_err, tol));
    out.push(report("variational bound on the mean-field energy", variational_err, tol));
    out.push(report("bridge variable matches relative stiffening", tau_err, tol));

    let mut spectral_entropy_err = 0.0f64;
    for i in 1..=20 {
        let kc = Coupling::new(f64::from(i) * 0.05).unwrap();
        let spec = model::reduced_spectrum(kc, 1e-14).unwrap();
        spectral_entropy_err = spectral_entropy_err
            .max((model::entropy(kc) - model::entropy_from_spectrum(&spec)).abs());
    }
    out.push(report(
        "entropy closed form vs truncated spectral sum",
        spectral_entropy_err,
        tol,
    ));

    // The mean-field error ratio grows along [0, 1], peaking at the edge.
    let ratio = |k: f64| {
        let kc = Coupling::new(k).unwrap();
        model::correlation_energy(kc) / model::exact_energy(model::QuantumNumbers::GROUND, kc)
    };
    let peak = ratio(1.0);
    let mut peak_err = 0.0f64;
    for &k in &grid {
        peak_err = peak_err.max(ratio(k) - peak);
    }
    out.push(report(
        "mean-field relative error peaks at unit coupling",
        peak_err,
        tol,
    ));
    out
}

/// Agreement between the closed forms and the independent numerical layer:
/// quadrature sanity, the Nystrom spectrum, the partial trace, the purity
/// and overlap double integrals, density normalization, and eigenfunction
/// residuals.
///
/// The Nystrom eigenvalue check is relative down to eigenvalues of size
/// sqrt(eps) * nu_0 and absolute (scaled by nu_0) below that: eigenvalues
/// near the rounding floor of the kernel matrix carry no relative accuracy
/// in double precision, and no solver can restore it.
pub fn oracle_suite(tol: f64) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();

    let g = oracle::gauss_legendre(64, -6.0, 6.0)?;
    let gauss = (g.integrate(|x| (-x * x).exp()) - std::f64::consts::PI.sqrt()).abs();
    out.push(report("quadrature reproduces the gaussian integral", gauss, tol));

    let mut spectrum_err = 0.0f64;
    for &k in &[0.1, 0.5, 1.0] {
        let kc = Coupling::new(k).unwrap();
        let vals = oracle::nystrom_spectrum(&NystromProblem::with_auto_width(kc, 200)?)?;
        let sc = model::spectral_coefficients(kc);
        let cutoff = f64::EPSILON.sqrt() * sc.big_c;
        for l in 0..6 {
            let exact = sc.big_c * sc.small_c.powi(l);
            let err = if exact >= cutoff {
                (vals[l as usize] - exact).abs() / exact
            } else {
                (vals[l as usize] - exact).abs() / sc.big_c
            };
            spectrum_err = spectrum_err.max(err);
        }
    }
    out.push(report(
        "nystrom spectrum matches the geometric law",
        spectrum_err,
        tol,
    ));

    let vals0 = oracle::nystrom_spectrum(&NystromProblem::with_auto_width(
        Coupling::new(0.0).unwrap(),
        200,
    )?)?;
    let mut rank1_err = (vals0[0] - 1.0).abs();
    for l in 1..6 {
        rank1_err = rank1_err.max(vals0[l].abs());
    }
    out.push(report("nystrom uncoupled limit is rank one", rank1_err, tol));

    let k1 = Coupling::new(1.0).unwrap();
    let problem = NystromProblem::with_auto_width(k1, 200)?;
    let matrix = problem.matrix()?;
    let (vals, vecs) = oracle::symmetric_eigenpairs(&matrix)?;
    let total: f64 = vals.iter().sum();
    let diag = problem
        .grid()?
        .integrate(|x| model::reduced_kernel_1d(x, x, k1));
    out.push(report(
        "nystrom trace equals the diagonal integral",
        (total - diag).abs(),
        tol,
    ));

    let n = matrix.size();
    let mut backward_err = 0.0f64;
    for col in 0..6 {
        let mut resid2 = 0.0;
        for i in 0..n {
            let mut mv = 0.0;
            for j in 0..n {
                mv += matrix.get(i, j) * vecs.get(j, col);
            }
            let r = mv - vals[col] * vecs.get(i, col);
            resid2 += r * r;
        }
        backward_err = backward_err.max(resid2.sqrt() / vals[0]);
    }
    out.push(report(
        "nystrom eigenvector backward error",
        backward_err,
        tol,
    ));

    let pairs = [
        ([0.4, -0.2, 0.9], [-0.3, 0.5, 0.1]),
        ([1.2, 0.0, -0.7], [0.8, -1.1, 0.3]),
        ([-0.5, -0.5, 0.5], [0.5, 0.5, -0.5]),
    ];
    let mut trace_err = 0.0f64;
    for &k in &[0.3, 1.0] {
        let kc = Coupling::new(k).unwrap();
        for &(r, r2) in &pairs {
            let direct = oracle::partial_trace_check(kc, r, r2, 64)?;
            trace_err = trace_err.max((direct - model::reduced_kernel_3d(r, r2, kc)).abs());
        }
    }
    out.push(report(
        "partial trace matches the reduced kernel",
        trace_err,
        tol,
    ));

    let mut purity_err = 0.0f64;
    let mut overlap_err = 0.0f64;
    for i in 0..=10 {
        let kc = Coupling::new(f64::from(i) * 0.1).unwrap();
        purity_err =
            purity_err.max((oracle::numeric_purity(kc, 64)? - model::purity(kc)).abs());
        overlap_err = overlap_err
            .max((oracle::numeric_overlap(kc, 64)? - model::overlap_squared(kc)).abs());
    }
    out.push(report("numeric purity matches the closed form", purity_err, tol));
    out.push(report("numeric overlap matches the closed form", overlap_err, tol));

    let radial = oracle::gauss_legendre(128, 0.0, 12.0)?;
    let mut norm_err = 0.0f64;
    for &k in &[0.0, 0.5, 1.0] {
        let kc = Coupling::new(k).unwrap();
        let four_pi = 4.0 * std::f64::consts::PI;
        let exact = radial.integrate(|r| four_pi * r * r * model::density_exact(r, kc));
        let hf = radial.integrate(|r| four_pi * r * r * model::density_hf(r, kc));
        norm_err = norm_err.max((exact - 1.0).abs()).max((hf - 1.0).abs());
    }
    out.push(report("densities normalize to one", norm_err, tol));

    let grid = problem.grid()?;
    let x = grid.nodes();
    let w = grid.weights();
    let sc = model::spectral_coefficients(k1);
    let mut resid_err = 0.0f64;
    for l in 0..6u32 {
        let coeffs = model::eigenfunction_coefficients(l, k1);
        let nu = sc.big_c * sc.small_c.powi(l as i32);
        let wl: Vec<f64> = x
            .iter()
            .map(|&xi| model::eigenfunction_value(&coeffs, sc.delta, xi))
            .collect();
        let mut resid2 = 0.0;
        for i in 0..x.len() {
            let mut kw = 0.0;
            for j in 0..x.len() {
                kw += w[j] * model::reduced_kernel_1d(x[i], x[j], k1) * wl[j];
            }
            let r = kw - nu * wl[i];
            resid2 += w[i] * r * r;
        }
        resid_err = resid_err.max(resid2.sqrt());
    }
    out.push(report(
        "eigenfunctions solve the kernel eigenproblem",
        resid_err,
        tol,
    ));

    Ok(out)
}

/// Inverse-function round-trips across the bridge layer and the CSV codec.
pub fn roundtrip_suite(tol: f64) -> Vec<CheckReport> {
    let mut out = Vec::new();

    let mut entropy_err = 0.0f64;
    let mut concurrence_err = 0.0f64;
    let mut coupling_err = 0.0f64;
    for i in 1..=50 {
        let k = f64::from(i) * 0.02;
        let kc = Coupling::new(k).unwrap();
        let e = model::correlation_energy(kc);
        entropy_err = entropy_err
            .max((bridge::entropy_from_ecorr(e).unwrap() - model::entropy(kc)).abs());
        concurrence_err = concurrence_err.max(
            (bridge::concurrence_from_ecorr(e).unwrap() - bridge::moshinsky_concurrence(kc))
                .abs(),
        );
        coupling_err = coupling_err.max((bridge::k_from_ecorr(e).unwrap().k() - k).abs());
    }
    out.push(report("entropy through energy returns", entropy_err, tol));
    out.push(report("concurrence through energy returns", concurrence_err, tol));
    out.push(report("coupling from energy inverts", coupling_err, tol));

    let mut energy_err = 0.0f64;
    for i in 1..=50 {
        let e = f64::from(i) * 0.1;
        let c = bridge::concurrence_from_ecorr(e).unwrap();
        energy_err =
            energy_err.max((bridge::ecorr_from_concurrence(c).unwrap() - e).abs());
    }
    out.push(report("energy from concurrence inverts", energy_err, tol));

    let mut spin_conc_err = 0.0f64;
    let mut spin_entropy_err = 0.0f64;
    for i in 0..=50 {
        let lam = IsingCoupling::new(f64::from(i) * 0.2).unwrap();
        let e = ising::ising_correlation_energy(lam);
        spin_conc_err = spin_conc_err.max(
            (ising::ising_concurrence_from_ecorr(e).unwrap() - ising::ising_concurrence(lam))
                .abs(),
        );
        spin_entropy_err = spin_entropy_err.max(
            (ising::ising_entropy_from_ecorr(e).unwrap() - ising::ising_entropy(lam)).abs(),
        );
    }
    out.push(report(
        "spin pair concurrence through energy returns",
        spin_conc_err,
        tol,
    ));
    out.push(report(
        "spin pair entropy through energy returns",
        spin_entropy_err,
        tol,
    ));

    let table = sweep::figure_table(Figure::Entropy, 0.0, 1.0, 21, 64).unwrap();
    let text = table.to_csv();
    let reparsed = sweep::SweepTable::parse_csv(&text)
        .map(|t| t.to_csv() == text)
        .unwrap_or(false);
    out.push(report(
        "csv encode-parse round-trip is exact",
        if reparsed { 0.0 } else { 1.0 },
        tol,
    ));

    out
}
