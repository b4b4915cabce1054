//! Independent numerical machinery used to cross-check the closed forms:
//! Gauss-Legendre quadrature, a dense symmetric eigensolver, a Nystrom
//! discretization of the reduced kernel's eigenproblem, and direct
//! quadrature evaluations of the partial trace, the purity, and the
//! mean-field overlap. Nothing here reuses the spectral closed forms, so
//! agreement between the two layers is a real consistency check.

use crate::error::{Error, Result};
use crate::model::{self, Coupling};

/// Gauss-Legendre nodes and weights on an interval [a, b].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    a: f64,
    b: f64,
}

impl QuadratureGrid {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Quadrature sum of f over the grid.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Legendre polynomial P_n and its derivative at x, by the three-term
/// recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 1..n {
        let jf = j as f64;
        let p2 = ((2.0 * jf + 1.0) * x * p1 - jf * p0) / (jf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss-Legendre rule with n >= 2 points on [a, b], exact for polynomials
/// of degree 2n - 1. Nodes are the roots of P_n found by Newton iteration
/// to 1e-15 from the cosine initial guess; the rule is built symmetric, and
/// the weights sum to b - a to rounding.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<QuadratureGrid> {
    if n < 2 {
        return Err(Error::TooFewPoints { given: n, min: 2 });
    }
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::EmptyInterval { a, b });
    }
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    let m = n / 2;
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pair(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pair(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the i-th positive root from the right; mirror it.
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        let (_, dp) = legendre_pair(n, 0.0);
        nodes[m] = 0.0;
        weights[m] = 2.0 / (dp * dp);
    }
    // Affine map to [a, b].
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    for i in 0..n {
        nodes[i] = mid + half * nodes[i];
        weights[i] *= half;
    }
    Ok(QuadratureGrid {
        nodes,
        weights,
        a,
        b,
    })
}

/// Dense square matrix in row-major storage. Just enough surface for the
/// eigensolver and the Nystrom discretization.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        DenseMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    /// Frobenius norm of the off-diagonal part, sqrt(sum_{i != j} a_ij^2).
    pub fn off_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    let v = self.get(i, j);
                    acc += v * v;
                }
            }
        }
        acc.sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }
}

/// Off-diagonal Frobenius norm below which the Jacobi iteration stops.
const JACOBI_OFF_TOL: f64 = 1e-13;
/// Hard cap on Jacobi sweeps; typical kernels converge in well under 15.
const JACOBI_MAX_SWEEPS: usize = 50;
/// Largest tolerated |a_ij - a_ji| before a matrix is rejected.
const SYMMETRY_TOL: f64 = 1e-12;

fn jacobi(m: &DenseMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<DenseMatrix>)> {
    let asym = m.max_asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric(asym));
    }
    let n = m.size();
    let mut a = m.clone();
    let mut v = want_vectors.then(|| DenseMatrix::identity(n));

    for _ in 0..JACOBI_MAX_SWEEPS {
        if a.off_norm() < JACOBI_OFF_TOL {
            return Ok(sort_eigen(a, v));
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    let arp = a.get(p, r);
                    let arq = a.get(q, r);
                    a.set(p, r, c * arp - s * arq);
                    a.set(q, r, s * arp + c * arq);
                }
                for r in 0..n {
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    a.set(r, p, c * arp - s * arq);
                    a.set(r, q, s * arp + c * arq);
                }
                if let Some(vm) = v.as_mut() {
                    for r in 0..n {
                        let vrp = vm.get(r, p);
                        let vrq = vm.get(r, q);
                        vm.set(r, p, c * vrp - s * vrq);
                        vm.set(r, q, s * vrp + c * vrq);
                    }
                }
            }
        }
    }
    if a.off_norm() < JACOBI_OFF_TOL {
        return Ok(sort_eigen(a, v));
    }
    Err(Error::NoConvergence {
        sweeps: JACOBI_MAX_SWEEPS,
        off_norm: a.off_norm(),
    })
}

fn sort_eigen(a: DenseMatrix, v: Option<DenseMatrix>) -> (Vec<f64>, Option<DenseMatrix>) {
    let n = a.size();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).partial_cmp(&a.get(i, i)).unwrap());
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let vectors = v.map(|vm| {
        DenseMatrix::from_fn(n, |r, col| vm.get(r, order[col]))
    });
    (values, vectors)
}

/// Eigenvalues of a dense symmetric matrix in descending order, by cyclic
/// Jacobi rotations. Rejects matrices whose asymmetry exceeds 1e-12 and
/// reports non-convergence instead of returning a half-diagonalized result.
pub fn symmetric_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    jacobi(m, false).map(|(vals, _)| vals)
}

/// Eigenvalues (descending) and the orthogonal matrix of eigenvectors
/// stored as columns, in the same order.
pub fn symmetric_eigenpairs(m: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    jacobi(m, true).map(|(vals, v)| (vals, v.expect("vectors requested")))
}

/// Discretization of the one-dimensional reduced-kernel eigenproblem on
/// [-half_width, half_width]: the symmetrized Nystrom matrix
/// B_ij = sqrt(w_i w_j) rho(x_i, x_j) has the integral operator's
/// eigenvalues up to domain-truncation and quadrature error.
#[derive(Debug, Clone, PartialEq)]
pub struct NystromProblem {
    coupling: Coupling,
    n_nodes: usize,
    half_width: f64,
}

impl NystromProblem {
    pub fn new(coupling: Coupling, n_nodes: usize, half_width: f64) -> Result<Self> {
        if n_nodes < 16 {
            return Err(Error::TooFewPoints {
                given: n_nodes,
                min: 16,
            });
        }
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::InvalidHalfWidth(half_width));
        }
        Ok(NystromProblem {
            coupling,
            n_nodes,
            half_width,
        })
    }

    /// Domain chosen from the kernel's own diagonal decay exp(-p x^2):
    /// half_width = 8 / sqrt(p) puts the boundary values near 1e-28.
    pub fn with_auto_width(coupling: Coupling, n_nodes: usize) -> Result<Self> {
        let s = (1.0 + 2.0 * coupling.k()).sqrt();
        let p = 2.0 * s / (s + 1.0);
        Self::new(coupling, n_nodes, 8.0 / p.sqrt())
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn grid(&self) -> Result<QuadratureGrid> {
        gauss_legendre(self.n_nodes, -self.half_width, self.half_width)
    }

    pub fn matrix(&self) -> Result<DenseMatrix> {
        let grid = self.grid()?;
        let x = grid.nodes();
        let w = grid.weights();
        let k = self.coupling;
        Ok(DenseMatrix::from_fn(self.n_nodes, |i, j| {
            (w[i] * w[j]).sqrt() * model::reduced_kernel_1d(x[i], x[j], k)
        }))
    }
}

/// Eigenvalues of the discretized reduced kernel, descending. Eigensolver
/// non-convergence propagates as an error.
pub fn nystrom_spectrum(problem: &NystromProblem) -> Result<Vec<f64>> {
    symmetric_eigenvalues(&problem.matrix()?)
}

/// Direct quadrature of the partial trace at one pair of points:
///
///   integral phi(r, y) phi(r2, y) d^3 y
///
/// with phi the two-particle ground state, evaluated component-wise (the
/// state factorizes over Cartesian components). Cross-checks
/// [`model::reduced_kernel_3d`] without using its closed form.
pub fn partial_trace_check(k: Coupling, r: [f64; 3], r2: [f64; 3], n: usize) -> Result<f64> {
    if n < 32 {
        return Err(Error::TooFewPoints { given: n, min: 32 });
    }
    let s = (1.0 + 2.0 * k.k()).sqrt();
    // One Cartesian component of the two-particle ground state.
    let phi = |x1: f64, x2: f64| {
        let com = (x1 + x2) / std::f64::consts::SQRT_2;
        let rel = (x1 - x2) / std::f64::consts::SQRT_2;
        s.powf(0.25) / std::f64::consts::PI.sqrt() * (-(com * com + s * rel * rel) / 2.0).exp()
    };
    let mut out = 1.0;
    for axis in 0..3 {
        let (x, x2) = (r[axis], r2[axis]);
        let reach = 8.0 + x.abs().max(x2.abs());
        let grid = gauss_legendre(n, -reach, reach)?;
        out *= grid.integrate(|y| phi(x, y) * phi(x2, y));
    }
    Ok(out)
}

/// tr rho^2 by direct double quadrature of the squared one-dimensional
/// kernel, cubed for the three-dimensional state. Needs n >= 64 nodes.
pub fn numeric_purity(k: Coupling, n: usize) -> Result<f64> {
    if n < 64 {
        return Err(Error::TooFewPoints { given: n, min: 64 });
    }
    let problem = NystromProblem::with_auto_width(k, n)?;
    let grid = problem.grid()?;
    let x = grid.nodes();
    let w = grid.weights();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let v = model::reduced_kernel_1d(x[i], x[j], k);
            acc += w[i] * w[j] * v * v;
        }
    }
    Ok(acc * acc * acc)
}

/// Squared overlap of the exact and mean-field ground states by direct
/// double quadrature of one Cartesian component, raised to the sixth power
/// (cube for three components, squared for the probability). n >= 64.
pub fn numeric_overlap(k: Coupling, n: usize) -> Result<f64> {
    if n < 64 {
        return Err(Error::TooFewPoints { given: n, min: 64 });
    }
    let s = (1.0 + 2.0 * k.k()).sqrt();
    let omega = (1.0 + k.k()).sqrt();
    let phi = |x1: f64, x2: f64| {
        let com = (x1 + x2) / std::f64::consts::SQRT_2;
        let rel = (x1 - x2) / std::f64::consts::SQRT_2;
        s.powf(0.25) / std::f64::consts::PI.sqrt() * (-(com * com + s * rel * rel) / 2.0).exp()
    };
    let phi_hf = |x1: f64, x2: f64| {
        (omega / std::f64::consts::PI).sqrt() * (-omega * (x1 * x1 + x2 * x2) / 2.0).exp()
    };
    let grid = gauss_legendre(n, -8.0, 8.0)?;
    let x = grid.nodes();
    let w = grid.weights();
    let mut amp = 0.0;
    for i in 0..n {
        for j in 0..n {
            amp += w[i] * w[j] * phi(x[i], x[j]) * phi_hf(x[i], x[j]);
        }
    }
    Ok(amp.powi(6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    fn c(k: f64) -> Coupling {
        Coupling::new(k).unwrap()
    }

    #[test]
    fn gauss_legendre_two_point_rule() {
        let g = gauss_legendre(2, -1.0, 1.0).unwrap();
        assert_relative_eq!(g.nodes()[1], 1.0 / 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(g.weights()[0], 1.0, max_relative = 1e-15);
        // Degree 3 is integrated exactly, degree 4 is not.
        assert!((g.integrate(|x| x * x * x)).abs() < 1e-16);
        assert!((g.integrate(|x| x.powi(4)) - 0.4).abs() > 1e-2);
        let g3 = gauss_legendre(3, -1.0, 1.0).unwrap();
        assert_relative_eq!(g3.integrate(|x| x.powi(4)), 0.4, max_relative = 1e-14);
        assert_eq!(g3.nodes()[1], 0.0);
    }

    #[test]
    fn gauss_legendre_polynomial_exactness_and_weight_sum() {
        let g = gauss_legendre(7, 0.0, 2.0).unwrap();
        // integral_0^2 x^13 dx = 2^14 / 14
        assert_relative_eq!(
            g.integrate(|x| x.powi(13)),
            f64::powi(2.0, 14) / 14.0,
            max_relative = 1e-13
        );
        let sum: f64 = g.weights().iter().sum();
        assert_relative_eq!(sum, 2.0, max_relative = 1e-15);
        assert_eq!(g.interval(), (0.0, 2.0));
    }

    #[test]
    fn gauss_legendre_gaussian_integral() {
        let g = gauss_legendre(64, -6.0, 6.0).unwrap();
        assert_relative_eq!(
            g.integrate(|x| (-x * x).exp()),
            std::f64::consts::PI.sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn gauss_legendre_rejects_bad_input() {
        assert!(matches!(
            gauss_legendre(1, 0.0, 1.0),
            Err(Error::TooFewPoints { given: 1, min: 2 })
        ));
        assert!(gauss_legendre(8, 1.0, 1.0).is_err());
        assert!(gauss_legendre(8, 2.0, -2.0).is_err());
        assert!(gauss_legendre(8, f64::NEG_INFINITY, 0.0).is_err());
    }

    #[test]
    fn jacobi_two_by_two() {
        let mut m = DenseMatrix::zeros(2);
        m.set(0, 0, 2.0);
        m.set(0, 1, 1.0);
        m.set(1, 0, 1.0);
        m.set(1, 1, 2.0);
        let vals = symmetric_eigenvalues(&m).unwrap();
        assert_relative_eq!(vals[0], 3.0, max_relative = 1e-14);
        assert_relative_eq!(vals[1], 1.0, max_relative = 1e-14);
    }

    #[test]
    fn jacobi_rejects_asymmetric_input() {
        let mut m = DenseMatrix::zeros(2);
        m.set(0, 1, 1e-6);
        match symmetric_eigenvalues(&m) {
            Err(Error::NotSymmetric(a)) => assert_relative_eq!(a, 1e-6, max_relative = 1e-12),
            other => panic!("expected NotSymmetric, got {other:?}"),
        }
    }

    #[test]
    fn jacobi_random_matrix_invariants() {
        let n = 20;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = rng.random_range(-1.0..1.0);
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        let (vals, vecs) = symmetric_eigenpairs(&m).unwrap();
        let trace: f64 = m.trace();
        let val_sum: f64 = vals.iter().sum();
        assert_relative_eq!(val_sum, trace, epsilon = 1e-12, max_relative = 1e-12);

        let frob2: f64 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j) * m.get(i, j))
            .sum();
        let val_sq: f64 = vals.iter().map(|v| v * v).sum();
        assert_relative_eq!(val_sq, frob2, max_relative = 1e-12);

        // Columns are orthonormal eigenvectors: || M v - lambda v || small.
        for col in 0..n {
            let mut norm2 = 0.0;
            let mut resid2 = 0.0;
            for i in 0..n {
                let vi = vecs.get(i, col);
                norm2 += vi * vi;
                let mut mv = 0.0;
                for j in 0..n {
                    mv += m.get(i, j) * vecs.get(j, col);
                }
                let r = mv - vals[col] * vi;
                resid2 += r * r;
            }
            assert_relative_eq!(norm2, 1.0, max_relative = 1e-12);
            assert!(resid2.sqrt() < 1e-12, "col {col}: residual {}", resid2.sqrt());
        }
    }

    #[test]
    fn nystrom_problem_validation() {
        assert!(NystromProblem::new(c(1.0), 8, 5.0).is_err());
        assert!(NystromProblem::new(c(1.0), 32, 0.0).is_err());
        assert!(NystromProblem::new(c(1.0), 32, -3.0).is_err());
        let p = NystromProblem::with_auto_width(c(0.0), 32).unwrap();
        assert_relative_eq!(p.half_width(), 8.0, max_relative = 1e-15);
        let p1 = NystromProblem::with_auto_width(c(1.0), 32).unwrap();
        assert_relative_eq!(p1.half_width(), 7.104590671816923, max_relative = 1e-12);
    }

    #[test]
    fn nystrom_matches_geometric_spectrum_at_unit_coupling() {
        let p = NystromProblem::with_auto_width(c(1.0), 100).unwrap();
        let vals = nystrom_spectrum(&p).unwrap();
        let sc = model::spectral_coefficients(c(1.0));
        for l in 0..6 {
            let exact = sc.big_c * sc.small_c.powi(l as i32);
            let rel = (vals[l] - exact).abs() / exact;
            assert!(rel < 1e-7, "l={l}: rel err {rel}");
        }
    }

    #[test]
    fn nystrom_trace_matches_diagonal_quadrature() {
        let p = NystromProblem::with_auto_width(c(1.0), 80).unwrap();
        let vals = nystrom_spectrum(&p).unwrap();
        let sum: f64 = vals.iter().sum();
        let diag = p
            .grid()
            .unwrap()
            .integrate(|x| model::reduced_kernel_1d(x, x, c(1.0)));
        assert_relative_eq!(sum, diag, max_relative = 1e-12);
        // Unit trace of the continuum kernel, up to domain truncation.
        assert_relative_eq!(sum, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn partial_trace_matches_closed_kernel() {
        let r = [0.4, -0.2, 0.9];
        let r2 = [-0.3, 0.5, 0.1];
        for &k in &[0.3, 1.0] {
            let direct = partial_trace_check(c(k), r, r2, 64).unwrap();
            let closed = model::reduced_kernel_3d(r, r2, c(k));
            assert_relative_eq!(direct, closed, max_relative = 1e-10);
        }
        assert!(partial_trace_check(c(1.0), r, r2, 16).is_err());
    }

    #[test]
    fn numeric_purity_and_overlap_match_closed_forms() {
        assert_relative_eq!(
            numeric_purity(c(1.0), 64).unwrap(),
            model::purity(c(1.0)),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            numeric_overlap(c(1.0), 64).unwrap(),
            model::overlap_squared(c(1.0)),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            numeric_overlap(c(0.0), 64).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        assert!(numeric_purity(c(1.0), 32).is_err());
        assert!(numeric_overlap(c(1.0), 32).is_err());
    }
}
