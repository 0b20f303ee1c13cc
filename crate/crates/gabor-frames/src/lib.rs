//! Finite Gabor systems on `C^N`: structured frame operators, explicit
//! block-diagonalization, cyclotomic sparsity predictions and fast blockwise
//! reconstruction.
//!
//! The frame operator of a Gabor system `{M_l T_k g}` over a product
//! time-frequency set factors entrywise into a modulation part (depending
//! only on the modulation set) and a translation part (depending only on the
//! window and translation set). When either index set is a subgroup of
//! `Z_N`, the operator is unitarily similar to a block-diagonal matrix via a
//! cheap explicit transform — an index permutation or a block Fourier
//! matrix — which turns frame inversion into independent small solves.
//!
//! Modules:
//! - [`numerics`]: dense complex primitives (DFT, Kronecker/Hadamard,
//!   Hermitian eigenvalues, unitary conjugation, PD solves).
//! - [`system`]: Gabor systems, the brute-force frame operator, frame
//!   bounds, Fourier duality and the support pre-check.
//! - [`structure`]: modulation/translation factor matrices, subgroup
//!   detection, wrapped diagonal support, circulant predicates.
//! - [`blockdiag`]: the permutation and block Fourier routes plus blockwise
//!   inversion.
//! - [`cyclotomic`]: exact integer polynomial arithmetic and the
//!   forced-zero-diagonal predictions.
//! - [`windows`]: interlaced window constructions and full-sampling frame
//!   criteria.
//! - [`reconstruct`]: reconstruction plans and the dense ground-truth
//!   oracle.
//!
//! All values are immutable and all operations are pure functions, so
//! everything is safe to share and call across threads.

pub mod blockdiag;
pub mod cyclotomic;
pub mod error;
pub mod numerics;
pub mod reconstruct;
pub mod structure;
pub mod system;
pub mod windows;

pub use blockdiag::{
    block_equivalence_route, block_equivalence_route_with, block_fourier_blockdiag,
    gcd_block_count, invert_blockdiag, permutation_blockdiag, BlockDiagonalization, RouteChoice,
    TransformDescriptor,
};
pub use cyclotomic::{
    characteristic_poly, cyclotomic, divides_exactly, divisor_set, find_tiling_complement,
    interlace_diagonality_check, predicted_zero_diagonals, IntPolynomial,
};
pub use error::{GaborError, Result};
pub use numerics::{CMatrix, CVector, ToleranceConfig};
pub use reconstruct::{
    build_plan, build_plan_with_route, canonical_dual, reconstruct, reconstruct_dense_oracle,
    ReconstructionPlan,
};
pub use structure::{
    detect_subgroup, diagonal_support, frame_operator_factored, is_block_circulant, is_circulant,
    modulation_matrix, subgroup_exponential_sum, translation_matrix, DiagonalSupport, SubgroupInfo,
};
pub use system::{
    fourier_dual, frame_bounds, frame_operator_bruteforce, support_frame_precheck, synthesize,
    synthesis_matrix, time_frequency_shift, FrameVerdict, GaborSystem, Precheck, SupportDomain,
};
pub use windows::{
    default_orthogonal_family, full_modulation_frame_check, full_translation_frame_check,
    interlace_is_diagonal, interlace_window, DiagonalFrameCheck, FamilyStyle, InterlaceSpec,
};
