//! Explicit block-diagonalization of structured frame operators.
//!
//! Two cheap unitary routes are provided: an index permutation that groups
//! residue classes of the diagonal-support gcd, and the block Fourier
//! transform `F_m (x) I_k` for block-circulant matrices. Block-diagonal
//! operators are inverted blockwise.

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{GaborError, Result};
use crate::numerics::{self, CMatrix, CVector, ToleranceConfig};
use crate::structure::{self, DiagonalSupport};
use crate::system::GaborSystem;

/// A cheap unitary transform, stored in factored form and only materialized
/// as a dense matrix on request.
#[derive(Debug, Clone, PartialEq)]
pub enum TransformDescriptor {
    Identity {
        n: usize,
    },
    /// `(U x)[t] = x[perm[t]]`; `perm` is a bijection of `[0, N)`.
    Permutation {
        perm: Vec<usize>,
    },
    /// `U = F_m (x) I_k` where `F_m` is the unitary Fourier matrix with
    /// positive exponent convention `m^{-1/2} (zeta_m^{j l})`.
    BlockFourier {
        m: usize,
        k: usize,
    },
}

impl TransformDescriptor {
    pub fn dimension(&self) -> usize {
        match self {
            TransformDescriptor::Identity { n } => *n,
            TransformDescriptor::Permutation { perm } => perm.len(),
            TransformDescriptor::BlockFourier { m, k } => m * k,
        }
    }

    /// Short name used in reports.
    pub fn kind_name(&self) -> &'static str {
        match self {
            TransformDescriptor::Identity { .. } => "identity",
            TransformDescriptor::Permutation { .. } => "permutation",
            TransformDescriptor::BlockFourier { .. } => "block-fourier",
        }
    }

    /// Materialize the transform as a dense unitary matrix.
    pub fn realize(&self) -> CMatrix {
        match self {
            TransformDescriptor::Identity { n } => numerics::identity(*n),
            TransformDescriptor::Permutation { perm } => {
                let n = perm.len();
                let mut u = CMatrix::zeros(n, n);
                for (t, &src) in perm.iter().enumerate() {
                    u[(t, src)] = Complex64::new(1.0, 0.0);
                }
                u
            }
            TransformDescriptor::BlockFourier { m, k } => {
                let f_pos = numerics::dft_matrix(*m).expect("m >= 1").conjugate();
                numerics::kronecker(&f_pos, &numerics::identity(*k))
            }
        }
    }

    /// Apply `U` without materializing it.
    pub fn apply(&self, x: &CVector) -> CVector {
        match self {
            TransformDescriptor::Identity { .. } => x.clone(),
            TransformDescriptor::Permutation { perm } => {
                CVector::from_fn(perm.len(), |t, _| x[perm[t]])
            }
            TransformDescriptor::BlockFourier { m, k } => block_fourier_apply(x, *m, *k, 1),
        }
    }

    /// Apply `U^H` without materializing it.
    pub fn apply_adjoint(&self, x: &CVector) -> CVector {
        match self {
            TransformDescriptor::Identity { .. } => x.clone(),
            TransformDescriptor::Permutation { perm } => {
                let mut out = CVector::zeros(perm.len());
                for (t, &src) in perm.iter().enumerate() {
                    out[src] = x[t];
                }
                out
            }
            TransformDescriptor::BlockFourier { m, k } => block_fourier_apply(x, *m, *k, -1),
        }
    }
}

fn block_fourier_apply(x: &CVector, m: usize, k: usize, sign: i64) -> CVector {
    let n = m * k;
    assert_eq!(x.len(), n, "transform size mismatch");
    let scale = 1.0 / (m as f64).sqrt();
    let mut out = CVector::zeros(n);
    for block in 0..m {
        for offset in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..m {
                let exp = sign * (block * j) as i64;
                acc += numerics::root_of_unity(m, exp) * x[j * k + offset];
            }
            out[block * k + offset] = acc * scale;
        }
    }
    out
}

/// A unitary transform together with the diagonal blocks it produces:
/// `U A U^H = diag(blocks)`, equivalently `A = U^H diag(blocks) U`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDiagonalization {
    transform: TransformDescriptor,
    blocks: Vec<CMatrix>,
}

impl BlockDiagonalization {
    pub fn new(transform: TransformDescriptor, blocks: Vec<CMatrix>) -> Self {
        debug_assert_eq!(
            transform.dimension(),
            blocks.iter().map(|b| b.nrows()).sum::<usize>()
        );
        Self { transform, blocks }
    }

    pub fn transform(&self) -> &TransformDescriptor {
        &self.transform
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    /// Number of diagonal blocks.
    pub fn ell(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.nrows()).collect()
    }

    pub fn dimension(&self) -> usize {
        self.transform.dimension()
    }

    /// Assemble `diag(blocks)` densely.
    pub fn assemble(&self) -> CMatrix {
        let n = self.dimension();
        let mut out = CMatrix::zeros(n, n);
        let mut start = 0;
        for block in &self.blocks {
            let size = block.nrows();
            out.view_mut((start, start), (size, size)).copy_from(block);
            start += size;
        }
        out
    }

    /// Multiply `diag(blocks) * x` chunk by chunk.
    pub fn apply_blocks(&self, x: &CVector) -> CVector {
        let n = self.dimension();
        assert_eq!(x.len(), n, "block application size mismatch");
        let mut out = CVector::zeros(n);
        let mut start = 0;
        for block in &self.blocks {
            let size = block.nrows();
            let chunk = x.rows(start, size);
            out.rows_mut(start, size).copy_from(&(block * chunk));
            start += size;
        }
        out
    }

    /// Reconstruct the original matrix `U^H diag(blocks) U` densely.
    pub fn reassemble(&self) -> CMatrix {
        let u = self.transform.realize();
        u.adjoint() * self.assemble() * u
    }
}

/// gcd of `N` and every residue in the diagonal support, with the convention
/// `gcd(N, 0) = N`. Requires the main diagonal to be present: a PSD frame
/// operator of a nonzero system always has nonzero main diagonal.
pub fn gcd_block_count(support: &DiagonalSupport) -> Result<usize> {
    if !support.contains(0) {
        return Err(GaborError::ContractViolation(
            "main diagonal is not in the support".into(),
        ));
    }
    Ok(support
        .residues()
        .iter()
        .fold(support.n(), |acc, &d| acc.gcd(&d)))
}

/// Group index classes `{s, s + ell, s + 2 ell, ...}` contiguously and read
/// off the `ell` blocks `b^(s)[i][j] = a[i ell + s][j ell + s]`.
fn stride_blocks(a: &CMatrix, ell: usize) -> BlockDiagonalization {
    let n = a.nrows();
    debug_assert!(ell >= 1 && n % ell == 0);
    let size = n / ell;
    let mut perm = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(ell);
    for s in 0..ell {
        for i in 0..size {
            perm.push(i * ell + s);
        }
        blocks.push(CMatrix::from_fn(size, size, |i, j| {
            a[(i * ell + s, j * ell + s)]
        }));
    }
    BlockDiagonalization::new(TransformDescriptor::Permutation { perm }, blocks)
}

/// Block-diagonalize by the permutation grouping residue classes of
/// `ell = gcd(N, diagonal support)`. Fails when the measured support admits
/// no nontrivial blocking.
pub fn permutation_blockdiag(a: &CMatrix, cfg: &ToleranceConfig) -> Result<BlockDiagonalization> {
    if !a.is_square() {
        return Err(GaborError::DimensionMismatch(format!(
            "block-diagonalization of a {}x{} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    let support = structure::diagonal_support(a, cfg);
    let ell = gcd_block_count(&support)?;
    if ell == 1 {
        return Err(GaborError::NoBlockStructure);
    }
    Ok(stride_blocks(a, ell))
}

fn fourier_blocks(a: &CMatrix, m: usize, k: usize) -> BlockDiagonalization {
    // D_l = sum_j zeta_m^{j l} B_j over the first block-column.
    let mut blocks = Vec::with_capacity(m);
    for l in 0..m {
        let mut d = CMatrix::zeros(k, k);
        for j in 0..m {
            let phase = numerics::root_of_unity(m, (j * l) as i64);
            let b_j = a.view((j * k, 0), (k, k));
            d += b_j.map(|z| z * phase);
        }
        blocks.push(d);
    }
    BlockDiagonalization::new(TransformDescriptor::BlockFourier { m, k }, blocks)
}

/// Block-diagonalize an `mk x mk` block-circulant matrix with `k x k` blocks
/// via the block Fourier transform `F_m (x) I_k`.
pub fn block_fourier_blockdiag(
    a: &CMatrix,
    m: usize,
    k: usize,
    cfg: &ToleranceConfig,
) -> Result<BlockDiagonalization> {
    if !a.is_square() || a.nrows() != m * k {
        return Err(GaborError::DimensionMismatch(format!(
            "block Fourier with m = {m}, k = {k} on a {}x{} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    if !structure::is_block_circulant(a, k, cfg)? {
        return Err(GaborError::NotBlockCirculant(k));
    }
    Ok(fourier_blocks(a, m, k))
}

/// Route requested for a block-equivalence decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteChoice {
    /// Pick the cheapest structural route the index sets admit.
    Auto,
    /// Force the permutation route (structural when the modulation set is a
    /// subgroup, otherwise based on the measured diagonal support).
    Permutation,
    /// Force the block Fourier route; requires a subgroup translation set.
    BlockFourier,
    /// No transform: a single dense block.
    Dense,
}

fn identity_route(s: CMatrix) -> BlockDiagonalization {
    let n = s.nrows();
    BlockDiagonalization::new(TransformDescriptor::Identity { n }, vec![s])
}

fn diagonal_route(s: &CMatrix) -> BlockDiagonalization {
    let n = s.nrows();
    let blocks = (0..n)
        .map(|i| CMatrix::from_element(1, 1, s[(i, i)]))
        .collect();
    BlockDiagonalization::new(TransformDescriptor::Identity { n }, blocks)
}

fn measured_permutation_route(s: &CMatrix, cfg: &ToleranceConfig) -> BlockDiagonalization {
    let support = structure::diagonal_support(s, cfg);
    match gcd_block_count(&support) {
        Ok(ell) if ell > 1 => stride_blocks(s, ell),
        // Degenerate but valid: a single block equal to the operator itself.
        _ => identity_route(s.clone()),
    }
}

/// Choose and apply a block-equivalence route for the frame operator of
/// `sys`.
///
/// Selection: a full modulation set yields the identity transform with 1x1
/// blocks; a nontrivial modulation subgroup yields the permutation route
/// with one block per residue class; otherwise a nontrivial translation
/// subgroup yields the block Fourier route; otherwise the measured diagonal
/// support decides, possibly producing a single dense block.
pub fn block_equivalence_route(sys: &GaborSystem, cfg: &ToleranceConfig) -> BlockDiagonalization {
    block_equivalence_route_with(sys, cfg, RouteChoice::Auto).expect("auto route is total")
}

/// Like [`block_equivalence_route`] but with an explicit route request.
pub fn block_equivalence_route_with(
    sys: &GaborSystem,
    cfg: &ToleranceConfig,
    choice: RouteChoice,
) -> Result<BlockDiagonalization> {
    let n = sys.n();
    let s = structure::frame_operator_factored(sys);
    let mod_subgroup = structure::detect_subgroup(sys.modulations(), n);
    let trans_subgroup = structure::detect_subgroup(sys.translations(), n);

    match choice {
        RouteChoice::Auto => {
            if sys.modulations().len() == n {
                return Ok(diagonal_route(&s));
            }
            // A trivial subgroup {0} gives no permutation sparsity; prefer a
            // useful translation-subgroup route in that case.
            if let Some(info) = mod_subgroup.filter(|info| info.order > 1) {
                return Ok(stride_blocks(&s, info.order));
            }
            if let Some(info) = trans_subgroup.filter(|info| info.order > 1) {
                return Ok(fourier_blocks(&s, info.order, n / info.order));
            }
            Ok(measured_permutation_route(&s, cfg))
        }
        RouteChoice::Permutation => {
            if let Some(info) = mod_subgroup.filter(|info| info.order > 1) {
                return Ok(stride_blocks(&s, info.order));
            }
            Ok(measured_permutation_route(&s, cfg))
        }
        RouteChoice::BlockFourier => {
            let info = trans_subgroup.ok_or_else(|| {
                GaborError::InvalidArgument(
                    "block Fourier route requires a subgroup translation set".into(),
                )
            })?;
            Ok(fourier_blocks(&s, info.order, n / info.order))
        }
        RouteChoice::Dense => Ok(identity_route(s)),
    }
}

/// Invert a block-diagonal operator blockwise, keeping the same transform.
///
/// Every block must be invertible: its smallest singular value must exceed
/// `zero_tol`. Blocks are independent and inverted in parallel.
pub fn invert_blockdiag(
    bd: &BlockDiagonalization,
    cfg: &ToleranceConfig,
) -> Result<BlockDiagonalization> {
    let blocks: Vec<CMatrix> = bd
        .blocks()
        .par_iter()
        .enumerate()
        .map(|(index, block)| {
            let svd = block.clone().svd(false, false);
            let min_singular = svd
                .singular_values
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min);
            if !(min_singular > cfg.zero_tol) {
                return Err(GaborError::SingularBlock {
                    index,
                    min_singular,
                });
            }
            block
                .clone()
                .try_inverse()
                .ok_or(GaborError::SingularBlock {
                    index,
                    min_singular,
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockDiagonalization::new(bd.transform().clone(), blocks))
}
