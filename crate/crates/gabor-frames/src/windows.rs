//! Window constructions: interlaced orthogonal-family windows and the
//! full-sampling frame criteria.

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{GaborError, Result};
use crate::numerics::{self, CVector, ToleranceConfig};
use crate::system::canonical_residues;

/// Interlacing recipe: `M = N/p` vectors of length `p` woven into a window
/// of length `N` with `g[k + l M] = family[k][l]`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterlaceSpec {
    pub n: usize,
    pub p: usize,
    pub family: Vec<CVector>,
}

impl InterlaceSpec {
    pub fn new(n: usize, p: usize, family: Vec<CVector>) -> Self {
        Self { n, p, family }
    }

    /// Number of interlaced vectors, `N / p`.
    pub fn slot_count(&self) -> usize {
        self.family.len()
    }
}

/// Which default orthogonal family to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyStyle {
    /// First `M` standard basis vectors of `C^p`.
    Basis,
    /// First `M` columns of the `p`-point DFT matrix; every entry nonzero,
    /// so the interlaced window has full support.
    Fourier,
}

/// The first `m` vectors of an orthogonal family in `C^p`.
pub fn default_orthogonal_family(m: usize, p: usize, style: FamilyStyle) -> Result<Vec<CVector>> {
    if m == 0 || p == 0 {
        return Err(GaborError::InvalidDimension(
            "family sizes must be positive".into(),
        ));
    }
    if m > p {
        return Err(GaborError::DimensionalConstraint(format!(
            "cannot pick {m} mutually orthogonal vectors in C^{p}"
        )));
    }
    Ok(match style {
        FamilyStyle::Basis => (0..m)
            .map(|i| {
                CVector::from_fn(p, |j, _| {
                    if j == i {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            })
            .collect(),
        FamilyStyle::Fourier => {
            let f = numerics::dft_matrix(p).expect("p >= 1");
            (0..m).map(|i| CVector::from(f.column(i))).collect()
        }
    })
}

/// Weave an orthogonal family into a window: `g[k + l M] = family[k][l]`.
///
/// Requires `p | N`, `M = N/p <= p` (equivalently `N <= p^2`), exactly `M`
/// pairwise-orthogonal nonzero vectors of length `p`.
pub fn interlace_window(spec: &InterlaceSpec, cfg: &ToleranceConfig) -> Result<CVector> {
    let (n, p) = (spec.n, spec.p);
    if n == 0 || p <= 1 || n % p != 0 {
        return Err(GaborError::InvalidArgument(format!(
            "p = {p} must be a divisor of N = {n} greater than 1"
        )));
    }
    let m = n / p;
    if m > p {
        return Err(GaborError::DimensionalConstraint(format!(
            "interlacing needs N <= p^2 (N = {n}, p = {p})"
        )));
    }
    if spec.family.len() != m {
        return Err(GaborError::DimensionMismatch(format!(
            "expected {m} family vectors, got {}",
            spec.family.len()
        )));
    }
    for (i, h) in spec.family.iter().enumerate() {
        if h.len() != p {
            return Err(GaborError::DimensionMismatch(format!(
                "family vector {i} has length {}, expected {p}",
                h.len()
            )));
        }
        if h.norm() <= cfg.zero_tol {
            return Err(GaborError::ContractViolation(format!(
                "family vector {i} is numerically zero"
            )));
        }
        for (j, other) in spec.family.iter().enumerate().skip(i + 1) {
            let inner = other.dotc(h).norm();
            if inner > cfg.zero_tol {
                return Err(GaborError::ContractViolation(format!(
                    "family vectors {i} and {j} are not orthogonal (|<h_{i}, h_{j}>| = {inner:.3e})"
                )));
            }
        }
    }
    let mut g = CVector::zeros(n);
    for (k, h) in spec.family.iter().enumerate() {
        for l in 0..p {
            g[k + l * m] = h[l];
        }
    }
    Ok(g)
}

/// Diagonality prediction for an interlaced window with subgroup sets of
/// orders `r` (modulations) and `p` (translations): `gcd(p, N/r) = 1`.
pub fn interlace_is_diagonal(n: usize, p: usize, r: usize) -> Result<bool> {
    if n == 0 || p <= 1 || r == 0 || n % p != 0 || n % r != 0 {
        return Err(GaborError::InvalidArgument(format!(
            "need p > 1, p | N and r | N (N = {n}, p = {p}, r = {r})"
        )));
    }
    Ok(p.gcd(&(n / r)) == 1)
}

/// Diagonal entries plus the frame verdict they imply.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalFrameCheck {
    pub is_frame: bool,
    /// The `N` diagonal values of the frame operator.
    pub entries: Vec<f64>,
}

/// Full-modulation criterion: the frame operator is diagonal with entries
/// `N * sum_{k in K} |g[i - k]|^2`; the system is a frame iff all entries
/// are positive.
pub fn full_modulation_frame_check(
    g: &CVector,
    translations: &[usize],
    cfg: &ToleranceConfig,
) -> Result<DiagonalFrameCheck> {
    let n = g.len();
    let trans = canonical_residues(translations, n)?;
    let entries: Vec<f64> = (0..n)
        .map(|i| {
            let sum: f64 = trans.iter().map(|&k| g[(i + n - k) % n].norm_sqr()).sum();
            n as f64 * sum
        })
        .collect();
    let is_frame = entries.iter().all(|&v| v > cfg.zero_tol);
    Ok(DiagonalFrameCheck { is_frame, entries })
}

/// Full-translation criterion: same as [`full_modulation_frame_check`] but
/// evaluated on the transformed window, with entries
/// `N * sum_{l in L} |dft(g)[j - l]|^2`.
pub fn full_translation_frame_check(
    g: &CVector,
    modulations: &[usize],
    cfg: &ToleranceConfig,
) -> Result<DiagonalFrameCheck> {
    let hat = numerics::dft(g)?;
    full_modulation_frame_check(&hat, modulations, cfg)
}
