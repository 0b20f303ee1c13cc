//! Dense complex linear algebra primitives: normalized DFT, Kronecker and
//! Hadamard products, Hermitian eigenvalues, unitary conjugation and
//! positive-definite solves.
//!
//! Everything here works on owned dense values at desk scale (N up to a few
//! thousand); transforms are direct O(N^2) sums, which keeps them trivially
//! verifiable against the defining formulas.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{GaborError, Result};

/// Dense complex vector.
pub type CVector = DVector<Complex64>;
/// Dense complex matrix (row/column agnostic storage behind nalgebra).
pub type CMatrix = DMatrix<Complex64>;

/// Absolute and relative thresholds used by numeric predicates.
///
/// `zero_tol` decides when a magnitude counts as zero; `rel_tol` scales with
/// the largest entry magnitude when comparing matrices of arbitrary size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub zero_tol: f64,
    pub rel_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        // Exact identities in double precision leave ample headroom at desk
        // scale; 1e-10 absolute / 1e-9 relative keeps roundoff invisible.
        Self {
            zero_tol: 1e-10,
            rel_tol: 1e-9,
        }
    }
}

impl ToleranceConfig {
    pub fn new(zero_tol: f64, rel_tol: f64) -> Self {
        Self { zero_tol, rel_tol }
    }

    /// Comparison threshold for matrices whose largest entry is `scale`.
    pub fn matrix_tol(&self, scale: f64) -> f64 {
        self.zero_tol.max(self.rel_tol * scale.max(1.0))
    }
}

/// e^{2 pi i exp / n} with the exponent reduced mod `n` first, so the phase
/// argument never grows with the exponent.
pub fn root_of_unity(n: usize, exp: i64) -> Complex64 {
    let m = exp.rem_euclid(n as i64) as f64;
    Complex64::from_polar(1.0, std::f64::consts::TAU * m / n as f64)
}

/// Table of all n-th roots of unity: entry d is e^{2 pi i d / n}.
pub(crate) fn unit_roots(n: usize) -> Vec<Complex64> {
    (0..n).map(|d| root_of_unity(n, d as i64)).collect()
}

/// Largest entry magnitude of a matrix.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// max |a - a^H| over all entries.
pub fn hermitian_deviation(a: &CMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            dev = dev.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    dev
}

pub fn is_hermitian(a: &CMatrix, cfg: &ToleranceConfig) -> bool {
    a.is_square() && hermitian_deviation(a) <= cfg.matrix_tol(max_abs(a))
}

/// max |u^H u - I| over all entries.
pub fn unitary_deviation(u: &CMatrix) -> f64 {
    let gram = u.adjoint() * u;
    let mut dev: f64 = 0.0;
    for i in 0..gram.nrows() {
        for j in 0..gram.ncols() {
            let expected = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            dev = dev.max((gram[(i, j)] - expected).norm());
        }
    }
    dev
}

pub fn is_unitary(u: &CMatrix, cfg: &ToleranceConfig) -> bool {
    u.is_square() && unitary_deviation(u) <= cfg.rel_tol.max(cfg.zero_tol)
}

/// Normalized discrete Fourier transform:
/// `out[k] = n^{-1/2} * sum_j v[j] e^{-2 pi i k j / n}`.
///
/// Direct summation; norm-preserving.
pub fn dft(v: &CVector) -> Result<CVector> {
    let n = v.len();
    if n == 0 {
        return Err(GaborError::InvalidDimension(
            "dft of an empty vector".into(),
        ));
    }
    let roots = unit_roots(n);
    let scale = 1.0 / (n as f64).sqrt();
    let out = CVector::from_fn(n, |k, _| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, x) in v.iter().enumerate() {
            acc += x * roots[(k * j) % n].conj();
        }
        acc * scale
    });
    Ok(out)
}

/// The normalized DFT matrix `F_n = n^{-1/2} (zeta_n^{-kj})`.
///
/// Unitary and symmetric; `dft(v) = F_n v`.
pub fn dft_matrix(n: usize) -> Result<CMatrix> {
    if n == 0 {
        return Err(GaborError::InvalidDimension("dft matrix of size 0".into()));
    }
    let roots = unit_roots(n);
    let scale = 1.0 / (n as f64).sqrt();
    Ok(CMatrix::from_fn(n, n, |k, j| {
        roots[(k * j) % n].conj() * scale
    }))
}

/// Kronecker product `a (x) b`.
pub fn kronecker(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Entrywise (Hadamard) product of two equally shaped matrices.
pub fn hadamard(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.shape() != b.shape() {
        return Err(GaborError::DimensionMismatch(format!(
            "hadamard product of {}x{} and {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    Ok(a.component_mul(b))
}

/// All eigenvalues of a Hermitian matrix in nondecreasing order.
pub fn hermitian_eigenvalues(a: &CMatrix, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    require_hermitian(a, cfg)?;
    // Symmetrize before factoring so tiny asymmetries cannot leak into the
    // eigensolver.
    let h = (a + a.adjoint()).scale(0.5);
    let mut vals: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    vals.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(vals)
}

fn require_hermitian(a: &CMatrix, cfg: &ToleranceConfig) -> Result<()> {
    if !a.is_square() {
        return Err(GaborError::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let dev = hermitian_deviation(a);
    if dev > cfg.matrix_tol(max_abs(a)) {
        return Err(GaborError::ContractViolation(format!(
            "matrix is not Hermitian (deviation {dev:.3e})"
        )));
    }
    Ok(())
}

/// `u^H a u` for unitary `u`; preserves the eigenvalue multiset.
pub fn conjugate_by_unitary(u: &CMatrix, a: &CMatrix, cfg: &ToleranceConfig) -> Result<CMatrix> {
    if !u.is_square() || u.shape() != a.shape() {
        return Err(GaborError::DimensionMismatch(format!(
            "conjugation of {}x{} by {}x{}",
            a.nrows(),
            a.ncols(),
            u.nrows(),
            u.ncols()
        )));
    }
    let dev = unitary_deviation(u);
    if dev > cfg.rel_tol.max(cfg.zero_tol) {
        return Err(GaborError::ContractViolation(format!(
            "matrix is not unitary (deviation {dev:.3e})"
        )));
    }
    Ok(u.adjoint() * a * u)
}

/// Solve `a x = b` for Hermitian positive definite `a`.
///
/// The positive-definiteness gate is explicit: the smallest eigenvalue must
/// exceed `zero_tol`.
pub fn solve_hermitian(a: &CMatrix, b: &CVector, cfg: &ToleranceConfig) -> Result<CVector> {
    require_hermitian(a, cfg)?;
    if a.nrows() != b.len() {
        return Err(GaborError::DimensionMismatch(format!(
            "solve with {}x{} matrix and length-{} rhs",
            a.nrows(),
            a.ncols(),
            b.len()
        )));
    }
    let h = (a + a.adjoint()).scale(0.5);
    let eig = h.symmetric_eigen();
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= cfg.zero_tol {
        return Err(GaborError::NotInvertible(format!(
            "smallest eigenvalue {min:.3e} is not positive"
        )));
    }
    // x = V (V^H b ./ lambda)
    let mut y = eig.eigenvectors.adjoint() * b;
    for (i, lambda) in eig.eigenvalues.iter().enumerate() {
        y[i] /= Complex64::new(*lambda, 0.0);
    }
    Ok(&eig.eigenvectors * y)
}

/// Complex identity matrix.
pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}
