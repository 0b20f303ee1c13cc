//! Exact integer polynomial arithmetic: cyclotomic polynomials,
//! characteristic polynomials of residue sets, divisibility tests, the
//! forced-zero-diagonal prediction, tiling search and the interlace
//! diagonality check.
//!
//! No floating point enters this module; coefficients are arbitrary
//! precision integers and divisibility is decided by exact division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{GaborError, Result};

/// Integer-coefficient polynomial, coefficients in ascending degree with
/// trailing zeros stripped. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![BigInt::one()])
    }

    /// `x^degree`.
    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = BigInt::one();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients in ascending degree.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Long division over the integers.
    ///
    /// Returns `Some((quotient, remainder))` when every elimination step
    /// divides exactly in `Z`; `None` signals that no integer quotient
    /// exists (which for our monic divisors never happens).
    pub fn div_rem_exact(&self, divisor: &Self) -> Option<(Self, Self)> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let d_deg = divisor.degree().expect("nonzero divisor");
        let lead = divisor.coeffs[d_deg].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return Some((Self::zero(), self.clone()));
        }
        let q_len = rem.len() - d_deg;
        let mut quot = vec![BigInt::zero(); q_len];
        for step in (0..q_len).rev() {
            let top = rem[step + d_deg].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            quot[step] = q.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let delta = dc * &q;
                rem[step + i] -= delta;
            }
        }
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.sign() == num_bigint::Sign::Minus {
                "-"
            } else {
                "+"
            };
            let mag = c.magnitude();
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff_is_one = mag == &BigUint::one();
            match (deg, coeff_is_one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{deg}")?,
                (_, false) => write!(f, "{mag}x^{deg}")?,
            }
        }
        Ok(())
    }
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

/// The n-th cyclotomic polynomial, computed by exact division:
/// `Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d`.
pub fn cyclotomic(n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(GaborError::InvalidArgument(
            "cyclotomic index must be positive".into(),
        ));
    }
    let mut table: Vec<(usize, IntPolynomial)> = Vec::new();
    for d in divisors(n) {
        let mut poly = IntPolynomial::monomial(d).sub(&IntPolynomial::one());
        for (e, phi) in &table {
            if d % e == 0 {
                let (q, r) = poly
                    .div_rem_exact(phi)
                    .expect("cyclotomic division is exact");
                debug_assert!(r.is_zero());
                poly = q;
            }
        }
        table.push((d, poly));
    }
    Ok(table.pop().expect("n is among its own divisors").1)
}

/// Characteristic polynomial `P_A(x) = sum_{a in A} x^a` of a residue set.
pub fn characteristic_poly(set: &[usize]) -> Result<IntPolynomial> {
    if set.is_empty() {
        return Err(GaborError::EmptySet);
    }
    let mut dedup = set.to_vec();
    dedup.sort_unstable();
    dedup.dedup();
    let mut coeffs = vec![BigInt::zero(); dedup.last().unwrap() + 1];
    for &a in &dedup {
        coeffs[a] = BigInt::one();
    }
    Ok(IntPolynomial::from_coeffs(coeffs))
}

/// True iff `divisor` divides `poly` exactly over the integers.
pub fn divides_exactly(divisor: &IntPolynomial, poly: &IntPolynomial) -> Result<bool> {
    if divisor.is_zero() {
        return Err(GaborError::InvalidArgument(
            "division by the zero polynomial".into(),
        ));
    }
    Ok(match poly.div_rem_exact(divisor) {
        Some((_, rem)) => rem.is_zero(),
        None => false,
    })
}

/// All divisors `d > 1` of `n` whose cyclotomic polynomial divides the
/// characteristic polynomial of the modulation set.
pub fn divisor_set(n: usize, modulations: &[usize]) -> Result<Vec<usize>> {
    let reduced: Vec<usize> = modulations.iter().map(|&a| a % n.max(1)).collect();
    let p = characteristic_poly(&reduced)?;
    let mut out = Vec::new();
    for d in divisors(n) {
        if d <= 1 {
            continue;
        }
        if divides_exactly(&cyclotomic(d)?, &p)? {
            out.push(d);
        }
    }
    Ok(out)
}

/// Wrapped residues of the diagonals forced to vanish:
/// the union over `d` in the divisor set of `{+-s N/d mod N : gcd(s, d) = 1}`.
pub fn predicted_zero_diagonals(n: usize, modulations: &[usize]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for d in divisor_set(n, modulations)? {
        let step = n / d;
        for s in 1..d {
            if s.gcd(&d) == 1 {
                out.push((s * step) % n);
                out.push((n - (s * step) % n) % n);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Search for a translation complement `B` with `A (+) B = Z_n`, each
/// residue covered exactly once. Depth-first over the smallest uncovered
/// residue with a coverage bitmask; bounded to `n <= 64`.
pub fn find_tiling_complement(set: &[usize], n: usize) -> Result<Option<Vec<usize>>> {
    if n == 0 {
        return Err(GaborError::InvalidDimension("modulus 0".into()));
    }
    if n > 64 {
        return Err(GaborError::SizeLimit(format!(
            "tiling search is bounded to N <= 64, got {n}"
        )));
    }
    let tile = crate::system::canonical_residues(set, n)?;
    if n % tile.len() != 0 {
        return Ok(None);
    }
    let full: u128 = (1u128 << n) - 1;
    let mut cover_masks = vec![0u128; n];
    for (b, mask) in cover_masks.iter_mut().enumerate() {
        for &a in &tile {
            *mask |= 1u128 << ((a + b) % n);
        }
    }

    fn search(
        covered: u128,
        full: u128,
        n: usize,
        cover_masks: &[u128],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if covered == full {
            return true;
        }
        let u = covered.trailing_ones() as usize;
        debug_assert!(u < n);
        for b in 0..n {
            let mask = cover_masks[b];
            if mask & (1u128 << u) == 0 {
                continue;
            }
            if covered & mask != 0 {
                continue;
            }
            chosen.push(b);
            if search(covered | mask, full, n, cover_masks, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let mut chosen = Vec::new();
    if search(0, full, n, &cover_masks, &mut chosen) {
        chosen.sort_unstable();
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

/// Arithmetic condition on the divisor set: for every `j = 1..N/p - 1`
/// some `d` in the divisor set has `j p d / N` integral and coprime to `d`.
pub fn interlace_diagonality_check(n: usize, p: usize, modulations: &[usize]) -> Result<bool> {
    if p <= 1 || n == 0 || n % p != 0 {
        return Err(GaborError::InvalidArgument(format!(
            "p = {p} must be a divisor of N = {n} greater than 1"
        )));
    }
    let dset = divisor_set(n, modulations)?;
    for j in 1..n / p {
        let witnessed = dset.iter().any(|&d| {
            let t = j * p * d;
            // Candidates where j p d / N is not an integer are skipped.
            t % n == 0 && (t / n).gcd(&d) == 1
        });
        if !witnessed {
            return Ok(false);
        }
    }
    Ok(true)
}
