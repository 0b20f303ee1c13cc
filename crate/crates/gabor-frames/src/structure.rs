//! Structure of the frame operator: the modulation and translation factor
//! matrices, subgroup detection, wrapped diagonal support, and the circulant
//! and block-circulant predicates.

use num_complex::Complex64;

use crate::error::{GaborError, Result};
use crate::numerics::{self, CMatrix, CVector, ToleranceConfig};
use crate::system::{canonical_residues, GaborSystem};

/// A detected cyclic subgroup of `Z_N`: the unique subgroup of order `order`
/// is generated by `generator = N / order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubgroupInfo {
    pub order: usize,
    pub generator: usize,
}

/// Test whether `set` equals the subgroup of `Z_n` of order `|set|`.
///
/// Inputs are canonicalized first; an empty set is never a subgroup.
pub fn detect_subgroup(set: &[usize], n: usize) -> Option<SubgroupInfo> {
    let set = canonical_residues(set, n).ok()?;
    let order = set.len();
    if n % order != 0 {
        return None;
    }
    let generator = n / order;
    let matches = set
        .iter()
        .enumerate()
        .all(|(k, &a)| a == k * generator);
    matches.then_some(SubgroupInfo { order, generator })
}

/// Wrapped diagonal support of a square matrix: the residues `d` such that
/// some entry `a[i][j]` with `(j - i) mod N = d` is nonzero above `zero_tol`.
///
/// Diagonals are indexed mod `N`, so `d` identifies both the upper diagonal
/// `d` and the lower diagonal `d - N` of the unwrapped indexing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSupport {
    n: usize,
    residues: Vec<usize>,
}

impl DiagonalSupport {
    pub fn new(n: usize, residues: Vec<usize>) -> Self {
        let mut residues = residues;
        residues.sort_unstable();
        residues.dedup();
        Self { n, residues }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Residues of the nonzero wrapped diagonals, sorted ascending.
    pub fn residues(&self) -> &[usize] {
        &self.residues
    }

    pub fn contains(&self, d: usize) -> bool {
        self.residues.binary_search(&(d % self.n)).is_ok()
    }

    /// Residues of the identically-zero wrapped diagonals.
    pub fn zero_residues(&self) -> Vec<usize> {
        (0..self.n).filter(|d| !self.contains(*d)).collect()
    }
}

/// Measure the wrapped diagonal support of a square matrix.
pub fn diagonal_support(a: &CMatrix, cfg: &ToleranceConfig) -> DiagonalSupport {
    assert!(a.is_square(), "diagonal support of a non-square matrix");
    let n = a.nrows();
    let mut nonzero = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            if a[(i, j)].norm() > cfg.zero_tol {
                nonzero[(j + n - i) % n] = true;
            }
        }
    }
    DiagonalSupport::new(
        n,
        nonzero
            .iter()
            .enumerate()
            .filter_map(|(d, &hit)| hit.then_some(d))
            .collect(),
    )
}

/// The modulation matrix `M_L[i][j] = sum_{l in L} zeta_N^{l (i - j)}`.
///
/// Circulant and Hermitian; the main diagonal is constantly `|L|`.
pub fn modulation_matrix(n: usize, modulations: &[usize]) -> Result<CMatrix> {
    if n == 0 {
        return Err(GaborError::InvalidDimension("modulus 0".into()));
    }
    let mods = canonical_residues(modulations, n)?;
    // One pass over the first column; every entry depends only on (i - j) mod N.
    let mut column = vec![Complex64::new(0.0, 0.0); n];
    for (d, slot) in column.iter_mut().enumerate() {
        for &l in &mods {
            *slot += numerics::root_of_unity(n, (l * d) as i64);
        }
    }
    Ok(CMatrix::from_fn(n, n, |i, j| column[(i + n - j) % n]))
}

/// The translation matrix
/// `T_K[i][j] = sum_{k in K} g[(i - k) mod N] conj(g[(j - k) mod N])`.
///
/// Hermitian and positive semidefinite for every window.
pub fn translation_matrix(n: usize, window: &CVector, translations: &[usize]) -> Result<CMatrix> {
    if window.len() != n {
        return Err(GaborError::DimensionMismatch(format!(
            "window has length {} but N = {n}",
            window.len()
        )));
    }
    let trans = canonical_residues(translations, n)?;
    Ok(CMatrix::from_fn(n, n, |i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &k in &trans {
            acc += window[(i + n - k) % n] * window[(j + n - k) % n].conj();
        }
        acc
    }))
}

/// Frame operator as the Hadamard product of the modulation and translation
/// matrices. Agrees with [`crate::system::frame_operator_bruteforce`] to
/// roundoff.
pub fn frame_operator_factored(sys: &GaborSystem) -> CMatrix {
    let m = modulation_matrix(sys.n(), sys.modulations()).expect("valid system");
    let t = translation_matrix(sys.n(), sys.window(), sys.translations()).expect("valid system");
    m.component_mul(&t)
}

/// The subgroup exponential sum `sum_{l in <N/r>} zeta_N^{l d}`, evaluated in
/// closed form: `r` when `r | d`, zero otherwise. Requires `r | N`.
pub fn subgroup_exponential_sum(n: usize, r: usize, d: i64) -> Result<f64> {
    if r == 0 || n == 0 || n % r != 0 {
        return Err(GaborError::InvalidArgument(format!(
            "order {r} does not divide N = {n}"
        )));
    }
    Ok(if d.rem_euclid(r as i64) == 0 {
        r as f64
    } else {
        0.0
    })
}

/// True iff every entry is constant along wrapped diagonals.
pub fn is_circulant(a: &CMatrix, cfg: &ToleranceConfig) -> bool {
    a.is_square() && block_shift_deviation(a, 1) <= cfg.zero_tol
}

/// True iff `a[i + m][j + m] = a[i][j]` for all `i, j` (indices mod `N`),
/// where `m` is the block size. Requires `m | N`.
pub fn is_block_circulant(a: &CMatrix, block_size: usize, cfg: &ToleranceConfig) -> Result<bool> {
    if !a.is_square() {
        return Err(GaborError::DimensionMismatch(format!(
            "block-circulant predicate on a {}x{} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = a.nrows();
    if block_size == 0 || n % block_size != 0 {
        return Err(GaborError::InvalidArgument(format!(
            "block size {block_size} does not divide N = {n}"
        )));
    }
    Ok(block_shift_deviation(a, block_size) <= cfg.zero_tol)
}

fn block_shift_deviation(a: &CMatrix, m: usize) -> f64 {
    let n = a.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((a[((i + m) % n, (j + m) % n)] - a[(i, j)]).norm());
        }
    }
    dev
}
