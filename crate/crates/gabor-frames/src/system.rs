//! Gabor system construction, the brute-force frame operator, frame bounds,
//! the Fourier-dual system and the support-based non-frame pre-check.


use crate::error::{GaborError, Result};
use crate::numerics::{self, CMatrix, CVector, ToleranceConfig};

/// Sort, deduplicate and reduce a residue set modulo `n`.
pub(crate) fn canonical_residues(set: &[usize], n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(GaborError::InvalidDimension("modulus 0".into()));
    }
    let mut out: Vec<usize> = set.iter().map(|&a| a % n).collect();
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(GaborError::EmptySet);
    }
    Ok(out)
}

/// A finite Gabor system `{M_l T_k g : l in L, k in K}` on `C^N`.
///
/// The modulation set `L` and translation set `K` are stored canonicalized
/// (sorted, deduplicated, reduced mod `N`). The enumeration order of the
/// time-frequency set is fixed: translations outermost, modulations
/// innermost, both ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct GaborSystem {
    n: usize,
    window: CVector,
    modulations: Vec<usize>,
    translations: Vec<usize>,
}

impl GaborSystem {
    pub fn new(
        n: usize,
        window: CVector,
        modulations: &[usize],
        translations: &[usize],
    ) -> Result<Self> {
        if n == 0 {
            return Err(GaborError::InvalidDimension("dimension 0".into()));
        }
        if window.len() != n {
            return Err(GaborError::DimensionMismatch(format!(
                "window has length {} but N = {n}",
                window.len()
            )));
        }
        if window.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(GaborError::ContractViolation(
                "window entries must be finite".into(),
            ));
        }
        if window.iter().all(|z| z.norm() == 0.0) {
            return Err(GaborError::ContractViolation(
                "window must not be the zero vector".into(),
            ));
        }
        Ok(Self {
            n,
            window,
            modulations: canonical_residues(modulations, n)?,
            translations: canonical_residues(translations, n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> &CVector {
        &self.window
    }

    pub fn modulations(&self) -> &[usize] {
        &self.modulations
    }

    pub fn translations(&self) -> &[usize] {
        &self.translations
    }

    /// Number of vectors in the system, `|L| * |K|`.
    pub fn len(&self) -> usize {
        self.modulations.len() * self.translations.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `(l, k)` labels in enumeration order: `k` outer, `l` inner, ascending.
    pub fn labels(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len());
        for &k in &self.translations {
            for &l in &self.modulations {
                out.push((l, k));
            }
        }
        out
    }
}

/// Frame verdict with the optimal bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameVerdict {
    /// Optimal lower frame bound (smallest eigenvalue clamped at 0).
    pub lower: f64,
    /// Optimal upper frame bound (largest eigenvalue).
    pub upper: f64,
    pub is_frame: bool,
}

/// `(M_l T_k g)[j] = zeta_N^{l j} g[(j - k) mod N]`.
pub fn time_frequency_shift(g: &CVector, l: usize, k: usize) -> Result<CVector> {
    let n = g.len();
    if n == 0 {
        return Err(GaborError::InvalidDimension("empty window".into()));
    }
    for (name, idx) in [("modulation", l), ("translation", k)] {
        if idx >= n {
            let _ = name;
            return Err(GaborError::IndexOutOfRange { index: idx, n });
        }
    }
    let out = CVector::from_fn(n, |j, _| {
        numerics::root_of_unity(n, (l * j) as i64) * g[(j + n - k) % n]
    });
    Ok(out)
}

/// All system vectors in enumeration order.
pub fn synthesize(sys: &GaborSystem) -> Vec<CVector> {
    sys.labels()
        .into_iter()
        .map(|(l, k)| {
            time_frequency_shift(sys.window(), l, k).expect("canonical residues are in range")
        })
        .collect()
}

/// The synthesis matrix whose columns are the system vectors.
pub fn synthesis_matrix(sys: &GaborSystem) -> CMatrix {
    let vectors = synthesize(sys);
    CMatrix::from_fn(sys.n(), vectors.len(), |i, j| vectors[j][i])
}

/// Frame operator `S = F F^H` computed directly from the synthesis matrix.
///
/// This is the reference route; the structured factorization lives in
/// [`crate::structure::frame_operator_factored`].
pub fn frame_operator_bruteforce(sys: &GaborSystem) -> CMatrix {
    let f = synthesis_matrix(sys);
    let adj = f.adjoint();
    f * adj
}

/// Optimal frame bounds of a Hermitian PSD frame operator.
///
/// Tiny negative eigenvalues are clamped to zero before the frame test;
/// `S = F F^H` is PSD by construction, so negatives are roundoff.
pub fn frame_bounds(s: &CMatrix, cfg: &ToleranceConfig) -> Result<FrameVerdict> {
    let vals = numerics::hermitian_eigenvalues(s, cfg)?;
    let lower = vals.first().copied().unwrap_or(0.0).max(0.0);
    let upper = vals.last().copied().unwrap_or(0.0).max(0.0);
    Ok(FrameVerdict {
        lower,
        upper,
        is_frame: lower > cfg.zero_tol,
    })
}

/// The Fourier-dual system: window `dft(g)`, modulations taken from the
/// translation set and vice versa. Its frame operator is unitarily similar
/// to the original one (`F S F^H`), so the spectrum is preserved.
///
/// The transform sends `M_l T_k g` to a phase times `M_{-k} T_l dft(g)`, so
/// the dual modulation set is the negation of the translation set mod `N`.
/// For symmetric sets — any subgroup, any full set — the negation is the
/// set itself.
pub fn fourier_dual(sys: &GaborSystem) -> GaborSystem {
    let n = sys.n();
    let hat = numerics::dft(sys.window()).expect("window is nonempty");
    let negated: Vec<usize> = sys.translations().iter().map(|&k| (n - k) % n).collect();
    GaborSystem::new(n, hat, &negated, sys.modulations())
        .expect("dual of a valid system is valid")
}

/// Which window the support pre-check looked at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportDomain {
    /// The window itself.
    Time,
    /// Its discrete Fourier transform.
    Frequency,
}

/// Outcome of the support-count pre-check.
#[derive(Debug, Clone, PartialEq)]
pub enum Precheck {
    /// The window (or its transform) has too few nonzero components for the
    /// translates (or modulates) to span `C^N`.
    CannotBeFrame {
        domain: SupportDomain,
        support: usize,
        set_size: usize,
        n: usize,
    },
    /// The support counts do not rule the frame property out.
    Inconclusive,
}

impl std::fmt::Display for Precheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Precheck::CannotBeFrame {
                domain,
                support,
                set_size,
                n,
            } => {
                let which = match domain {
                    SupportDomain::Time => "window",
                    SupportDomain::Frequency => "window transform",
                };
                write!(
                    f,
                    "cannot be a frame: {which} has {support} nonzero components, fewer than {n}/{set_size}"
                )
            }
            Precheck::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

fn support_count(v: &CVector, cfg: &ToleranceConfig) -> usize {
    v.iter().filter(|z| z.norm() > cfg.zero_tol).count()
}

/// Support-count pre-check: a window with fewer than `N/|K|` nonzero
/// components (or a transform with fewer than `N/|L|`) cannot generate a
/// frame. Entries with magnitude at most `zero_tol` count as zero.
pub fn support_frame_precheck(sys: &GaborSystem, cfg: &ToleranceConfig) -> Precheck {
    let n = sys.n();
    let time_support = support_count(sys.window(), cfg);
    if time_support * sys.translations().len() < n {
        return Precheck::CannotBeFrame {
            domain: SupportDomain::Time,
            support: time_support,
            set_size: sys.translations().len(),
            n,
        };
    }
    let hat = numerics::dft(sys.window()).expect("window is nonempty");
    let freq_support = support_count(&hat, cfg);
    if freq_support * sys.modulations().len() < n {
        return Precheck::CannotBeFrame {
            domain: SupportDomain::Frequency,
            support: freq_support,
            set_size: sys.modulations().len(),
            n,
        };
    }
    Precheck::Inconclusive
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis_vector(n: usize, i: usize) -> CVector {
        CVector::from_fn(n, |j, _| if j == i { c(1.0, 0.0) } else { c(0.0, 0.0) })
    }

    pub(crate) fn random_unit_window(rng: &mut ChaCha8Rng, n: usize) -> CVector {
        let v = CVector::from_fn(n, |_, _| {
            c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
        });
        let norm = v.norm();
        v.unscale(norm)
    }

    pub(crate) fn random_residue_set(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Vec<usize> {
        let len = rng.random_range(1..=max_len.min(n));
        let mut set: Vec<usize> = (0..len).map(|_| rng.random_range(0..n)).collect();
        set.sort_unstable();
        set.dedup();
        set
    }

    pub(crate) fn random_system(rng: &mut ChaCha8Rng, n: usize, max_set: usize) -> GaborSystem {
        let g = random_unit_window(rng, n);
        let l = random_residue_set(rng, n, max_set);
        let k = random_residue_set(rng, n, max_set);
        GaborSystem::new(n, g, &l, &k).unwrap()
    }

    #[test]
    fn construction_canonicalizes_sets() {
        let sys = GaborSystem::new(4, basis_vector(4, 0), &[6, 2, 2, 5], &[0]).unwrap();
        assert_eq!(sys.modulations(), &[1, 2]);
        assert_eq!(sys.translations(), &[0]);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(GaborSystem::new(4, CVector::zeros(4), &[0], &[0]).is_err());
        assert!(GaborSystem::new(4, basis_vector(3, 0), &[0], &[0]).is_err());
        assert!(GaborSystem::new(4, basis_vector(4, 0), &[], &[0]).is_err());
    }

    #[test]
    fn shift_identity_and_pure_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_unit_window(&mut rng, 5);
        let same = time_frequency_shift(&g, 0, 0).unwrap();
        assert!((&same - &g).norm() < 1e-15);

        let e0 = basis_vector(4, 0);
        let shifted = time_frequency_shift(&e0, 0, 1).unwrap();
        assert!((shifted - basis_vector(4, 1)).norm() < 1e-15);
    }

    #[test]
    fn pure_modulation_multiplies_by_phases() {
        let ones = CVector::from_element(4, c(1.0, 0.0));
        let out = time_frequency_shift(&ones, 1, 0).unwrap();
        let expected = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for j in 0..4 {
            assert!((out[j] - expected[j]).norm() < 1e-14);
        }
    }

    #[test]
    fn shift_rejects_out_of_range_indices() {
        let g = basis_vector(4, 0);
        assert!(matches!(
            time_frequency_shift(&g, 4, 0),
            Err(GaborError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            time_frequency_shift(&g, 0, 7),
            Err(GaborError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn synthesize_singleton_and_enumeration_order() {
        let g = basis_vector(3, 0);
        let sys = GaborSystem::new(3, g.clone(), &[0], &[0]).unwrap();
        let vecs = synthesize(&sys);
        assert_eq!(vecs.len(), 1);
        assert!((&vecs[0] - &g).norm() < 1e-15);

        // Z_2 x Z_2 with g = e_0: translations outer, modulations inner.
        let sys = GaborSystem::new(2, basis_vector(2, 0), &[0, 1], &[0, 1]).unwrap();
        let vecs = synthesize(&sys);
        let expected = [
            vec![c(1., 0.), c(0., 0.)],
            vec![c(1., 0.), c(0., 0.)],
            vec![c(0., 0.), c(1., 0.)],
            vec![c(0., 0.), c(-1., 0.)],
        ];
        for (v, e) in vecs.iter().zip(expected.iter()) {
            for j in 0..2 {
                assert!((v[j] - e[j]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn synthesize_count_is_product_of_set_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let n = rng.random_range(2..12);
            let sys = random_system(&mut rng, n, n);
            assert_eq!(synthesize(&sys).len(), sys.len());
        }
    }

    #[test]
    fn brute_force_rank_one_projector() {
        let sys = GaborSystem::new(2, basis_vector(2, 0), &[0], &[0]).unwrap();
        let s = frame_operator_bruteforce(&sys);
        assert!((s[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(s[(0, 1)].norm() < 1e-15);
        assert!(s[(1, 0)].norm() < 1e-15);
        assert!(s[(1, 1)].norm() < 1e-15);
    }

    #[test]
    fn brute_force_full_modulations_all_ones_window() {
        let ones = CVector::from_element(3, c(1.0, 0.0));
        let sys = GaborSystem::new(3, ones, &[0, 1, 2], &[0]).unwrap();
        let s = frame_operator_bruteforce(&sys);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { c(3.0, 0.0) } else { c(0.0, 0.0) };
                assert!((s[(i, j)] - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn brute_force_is_hermitian_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let cfg = ToleranceConfig::default();
        for _ in 0..15 {
            let n = rng.random_range(2..10);
            let sys = random_system(&mut rng, n, 5);
            let s = frame_operator_bruteforce(&sys);
            assert!(numerics::hermitian_deviation(&s) <= 1e-12);
            let vals = numerics::hermitian_eigenvalues(&s, &cfg).unwrap();
            assert!(vals[0] >= -cfg.zero_tol);
        }
    }

    #[test]
    fn frame_inequality_middle_term_matches_operator() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let n = rng.random_range(2..10);
            let sys = random_system(&mut rng, n, 4);
            let s = frame_operator_bruteforce(&sys);
            let x = random_unit_window(&mut rng, n);
            let mut coeff_sum = 0.0;
            for f in synthesize(&sys) {
                coeff_sum += f.dotc(&x).norm_sqr();
            }
            let quad = x.dotc(&(&s * &x)).re;
            assert!((coeff_sum - quad).abs() <= 1e-9 * quad.abs().max(1.0));
        }
    }

    #[test]
    fn rank_bounded_by_time_frequency_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let cfg = ToleranceConfig::default();
        for _ in 0..15 {
            let n = rng.random_range(3..12);
            let sys = random_system(&mut rng, n, 3);
            let s = frame_operator_bruteforce(&sys);
            let vals = numerics::hermitian_eigenvalues(&s, &cfg).unwrap();
            let rank = vals.iter().filter(|&&v| v > cfg.zero_tol).count();
            assert!(rank <= sys.len());
        }
    }

    #[test]
    fn frame_bounds_tight_and_deficient_cases() {
        let cfg = ToleranceConfig::default();
        let tight = numerics::identity(3).scale(3.0);
        let verdict = frame_bounds(&tight, &cfg).unwrap();
        assert!(verdict.is_frame);
        assert!((verdict.lower - 3.0).abs() < 1e-12);
        assert!((verdict.upper - 3.0).abs() < 1e-12);

        let deficient = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1., 0.), c(0., 0.)]));
        let verdict = frame_bounds(&deficient, &cfg).unwrap();
        assert!(!verdict.is_frame);
        assert!(verdict.lower <= cfg.zero_tol);
    }

    #[test]
    fn frame_bounds_full_modulation_tight_frame() {
        let cfg = ToleranceConfig::default();
        let g = CVector::from_element(4, c(0.5, 0.0));
        let sys = GaborSystem::new(4, g, &[0, 1, 2, 3], &[0]).unwrap();
        let s = frame_operator_bruteforce(&sys);
        let verdict = frame_bounds(&s, &cfg).unwrap();
        assert!(verdict.is_frame);
        assert!((verdict.lower - 1.0).abs() < 1e-12);
        assert!((verdict.upper - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fourier_dual_swaps_sets_and_preserves_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = ToleranceConfig::default();
        for _ in 0..10 {
            let n = rng.random_range(2..10);
            let sys = random_system(&mut rng, n, 4);
            let dual = fourier_dual(&sys);
            let mut negated: Vec<usize> =
                sys.translations().iter().map(|&k| (n - k) % n).collect();
            negated.sort_unstable();
            assert_eq!(dual.modulations(), negated.as_slice());
            assert_eq!(dual.translations(), sys.modulations());

            let s = frame_operator_bruteforce(&sys);
            let sd = frame_operator_bruteforce(&dual);
            let a = numerics::hermitian_eigenvalues(&s, &cfg).unwrap();
            let b = numerics::hermitian_eigenvalues(&sd, &cfg).unwrap();
            for (x, y) in a.iter().zip(b.iter()) {
                assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0));
            }
        }
    }

    #[test]
    fn dual_of_dual_preserves_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let cfg = ToleranceConfig::default();
        let sys = random_system(&mut rng, 6, 4);
        let twice = fourier_dual(&fourier_dual(&sys));
        let a = numerics::hermitian_eigenvalues(&frame_operator_bruteforce(&sys), &cfg).unwrap();
        let b = numerics::hermitian_eigenvalues(&frame_operator_bruteforce(&twice), &cfg).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0));
        }
    }

    #[test]
    fn precheck_detects_sparse_window() {
        let cfg = ToleranceConfig::default();
        let sys = GaborSystem::new(6, basis_vector(6, 0), &[0], &[0, 3]).unwrap();
        match support_frame_precheck(&sys, &cfg) {
            Precheck::CannotBeFrame {
                domain, support, ..
            } => {
                assert_eq!(domain, SupportDomain::Time);
                assert_eq!(support, 1);
            }
            Precheck::Inconclusive => panic!("expected a negative verdict"),
        }
    }

    #[test]
    fn precheck_inconclusive_for_full_support() {
        let cfg = ToleranceConfig::default();
        let ones = CVector::from_element(6, c(1.0, 0.0));
        // Full time support, and the transform of a delta-like spectrum is
        // caught on the frequency branch instead.
        let sys = GaborSystem::new(6, ones.clone(), &[0, 1, 2, 3, 4, 5], &[0, 2]).unwrap();
        assert_eq!(support_frame_precheck(&sys, &cfg), Precheck::Inconclusive);

        let sys = GaborSystem::new(6, ones, &[0], &[0, 1, 2, 3, 4, 5]).unwrap();
        match support_frame_precheck(&sys, &cfg) {
            Precheck::CannotBeFrame { domain, .. } => {
                assert_eq!(domain, SupportDomain::Frequency)
            }
            Precheck::Inconclusive => panic!("constant window has delta transform"),
        }
    }

    #[test]
    fn precheck_negative_verdicts_are_confirmed_by_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cfg = ToleranceConfig::default();
        let mut confirmed = 0;
        for _ in 0..40 {
            let n = rng.random_range(3..10);
            let mut g = CVector::zeros(n);
            let support = rng.random_range(1..=n.div_ceil(3));
            for _ in 0..support {
                g[rng.random_range(0..n)] = c(rng.random::<f64>() + 0.1, 0.0);
            }
            let l = random_residue_set(&mut rng, n, n);
            let k = random_residue_set(&mut rng, n, n);
            let sys = match GaborSystem::new(n, g, &l, &k) {
                Ok(sys) => sys,
                Err(_) => continue,
            };
            if let Precheck::CannotBeFrame { .. } = support_frame_precheck(&sys, &cfg) {
                let s = frame_operator_bruteforce(&sys);
                let verdict = frame_bounds(&s, &cfg).unwrap();
                assert!(!verdict.is_frame, "precheck contradicted by eigenvalues");
                confirmed += 1;
            }
        }
        assert!(confirmed > 0, "sweep never exercised the negative branch");
    }
}
