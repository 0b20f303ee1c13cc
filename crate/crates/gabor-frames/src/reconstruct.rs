//! Canonical dual frames and the transformed-domain blockwise reconstruction
//! pipeline, with a dense solve as ground truth.

use num_complex::Complex64;

use crate::blockdiag::{
    block_equivalence_route_with, invert_blockdiag, BlockDiagonalization, RouteChoice,
};
use crate::error::{GaborError, Result};
use crate::numerics::{CMatrix, CVector, ToleranceConfig};
use crate::structure::frame_operator_factored;
use crate::system::{frame_bounds, synthesize, GaborSystem};

/// Everything needed to reconstruct signals from one frame, built once and
/// reused: the block-diagonalization of the frame operator, its blockwise
/// inverse, the transformed frame `U f_i` and the transformed canonical
/// duals `B^{-1} U f_i`.
#[derive(Debug, Clone)]
pub struct ReconstructionPlan {
    system: GaborSystem,
    blockdiag: BlockDiagonalization,
    inverse: BlockDiagonalization,
    transformed_frame: Vec<CVector>,
    transformed_duals: Vec<CVector>,
}

impl ReconstructionPlan {
    pub fn system(&self) -> &GaborSystem {
        &self.system
    }

    pub fn blockdiag(&self) -> &BlockDiagonalization {
        &self.blockdiag
    }

    /// Blockwise inverse of the frame operator, same transform descriptor.
    pub fn inverse_blocks(&self) -> &BlockDiagonalization {
        &self.inverse
    }

    /// `U f_i` in enumeration order.
    pub fn transformed_frame(&self) -> &[CVector] {
        &self.transformed_frame
    }
}

fn hermitian_solver(s: &CMatrix, cfg: &ToleranceConfig) -> Result<impl Fn(&CVector) -> CVector> {
    let h = (s + s.adjoint()).scale(0.5);
    let eig = h.symmetric_eigen();
    let min = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min <= cfg.zero_tol {
        return Err(GaborError::NotAFrame { lower: min.max(0.0) });
    }
    let vectors = eig.eigenvectors;
    let values = eig.eigenvalues;
    Ok(move |b: &CVector| {
        let mut y = vectors.adjoint() * b;
        for (i, lambda) in values.iter().enumerate() {
            y[i] /= Complex64::new(*lambda, 0.0);
        }
        &vectors * y
    })
}

/// Canonical dual frame `{S^{-1} f_i}` in enumeration order.
pub fn canonical_dual(sys: &GaborSystem, cfg: &ToleranceConfig) -> Result<Vec<CVector>> {
    let s = frame_operator_factored(sys);
    let verdict = frame_bounds(&s, cfg)?;
    if !verdict.is_frame {
        return Err(GaborError::NotAFrame {
            lower: verdict.lower,
        });
    }
    let solve = hermitian_solver(&s, cfg)?;
    Ok(synthesize(sys).iter().map(&solve).collect())
}

/// Build a reconstruction plan with the automatic route choice.
pub fn build_plan(sys: &GaborSystem, cfg: &ToleranceConfig) -> Result<ReconstructionPlan> {
    build_plan_with_route(sys, cfg, RouteChoice::Auto)
}

/// Build a reconstruction plan using an explicit block-equivalence route.
///
/// Fails with a not-a-frame error (propagated from block inversion) when the
/// frame operator is singular.
pub fn build_plan_with_route(
    sys: &GaborSystem,
    cfg: &ToleranceConfig,
    route: RouteChoice,
) -> Result<ReconstructionPlan> {
    let blockdiag = block_equivalence_route_with(sys, cfg, route)?;
    let inverse = invert_blockdiag(&blockdiag, cfg)?;
    let transformed_frame: Vec<CVector> = synthesize(sys)
        .iter()
        .map(|f| blockdiag.transform().apply(f))
        .collect();
    let transformed_duals: Vec<CVector> = transformed_frame
        .iter()
        .map(|tf| inverse.apply_blocks(tf))
        .collect();
    Ok(ReconstructionPlan {
        system: sys.clone(),
        blockdiag,
        inverse,
        transformed_frame,
        transformed_duals,
    })
}

/// Reconstruct a signal through the transformed domain:
/// `y = U x`, `y_hat = sum_i <y, U f_i> B^{-1}(U f_i)`, result `U^H y_hat`.
pub fn reconstruct(plan: &ReconstructionPlan, x: &CVector) -> Result<CVector> {
    let n = plan.system.n();
    if x.len() != n {
        return Err(GaborError::DimensionMismatch(format!(
            "signal has length {}, system dimension is {n}",
            x.len()
        )));
    }
    let y = plan.blockdiag.transform().apply(x);
    let mut accumulated = CVector::zeros(n);
    for (tf, dual) in plan
        .transformed_frame
        .iter()
        .zip(plan.transformed_duals.iter())
    {
        // <y, U f_i> with the first-argument-linear inner product.
        let coeff = tf.dotc(&y);
        accumulated += dual.map(|z| z * coeff);
    }
    Ok(plan.blockdiag.transform().apply_adjoint(&accumulated))
}

/// Ground-truth reconstruction `sum_i <x, f_i> S^{-1} f_i` via a dense
/// Hermitian solve.
pub fn reconstruct_dense_oracle(
    sys: &GaborSystem,
    x: &CVector,
    cfg: &ToleranceConfig,
) -> Result<CVector> {
    if x.len() != sys.n() {
        return Err(GaborError::DimensionMismatch(format!(
            "signal has length {}, system dimension is {}",
            x.len(),
            sys.n()
        )));
    }
    let duals = canonical_dual(sys, cfg)?;
    let mut out = CVector::zeros(sys.n());
    for (f, dual) in synthesize(sys).iter().zip(duals.iter()) {
        let coeff = f.dotc(x);
        out += dual.map(|z| z * coeff);
    }
    Ok(out)
}
