//! Operators on characteristic classes: Schur determinants Δ^(ℓ)_r, top
//! classes of tensor products, pushforward along a projective bundle and the
//! Sq¹ derivation.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{Coefficients, GradedPoly, Monomial, RingKind, RingPresentation, TotalClass};

/// Matrix size ℓ and row shift r of a Schur determinant Δ^(ℓ)_r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SchurIndex {
    pub ell: u32,
    pub r: u32,
}

impl SchurIndex {
    pub fn new(ell: u32, r: u32) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidArgument("Schur matrix size must be at least 1".into()));
        }
        Ok(SchurIndex { ell, r })
    }

    /// Cohomological degree ℓ·r of the determinant.
    pub fn degree(self) -> u32 {
        self.ell * self.r
    }
}

/// det(c_{r−i+j})_{1≤i,j≤ℓ} with c_k = 0 outside 0..=cap.
///
/// Cofactor expansion row by row, memoising the minor for each set of
/// already-used columns, so the cost is O(2^ℓ·ℓ) ring products.
pub fn schur_determinant(c: &TotalClass, ell: u32, r: u32) -> GradedPoly {
    schur_determinant_strided(c, ell, r, 1)
}

/// As [`schur_determinant`], reading c_k from the degree `stride·k` component
/// (stride 4 for Pontrjagin classes).
pub fn schur_determinant_strided(c: &TotalClass, ell: u32, r: u32, stride: u32) -> GradedPoly {
    let n = ell as usize;
    let ring = c.ring();
    let field = c.field();
    let entry = |row: usize, col: usize| c.component(stride as i64 * (r as i64 - row as i64 + col as i64));

    let mut minors: Vec<Option<GradedPoly>> = vec![None; 1 << n];
    minors[0] = Some(GradedPoly::one(ring, field));
    for mask in 0..(1usize << n) {
        let Some(minor) = minors[mask].take() else { continue };
        if minor.is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            minors[mask] = Some(minor);
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            let a = entry(row, col);
            if a.is_zero() {
                continue;
            }
            // Earlier rows sitting in later columns are the inversions this placement adds.
            let inversions = (mask >> (col + 1)).count_ones();
            let mut term = &minor * &a;
            if inversions % 2 == 1 {
                term = -&term;
            }
            let slot = &mut minors[mask | (1 << col)];
            *slot = Some(match slot.take() {
                Some(acc) => &acc + &term,
                None => term,
            });
        }
    }
    minors[(1 << n) - 1].take().unwrap_or_else(|| GradedPoly::zero(ring, field))
}

/// Δ^(ℓ)_r of a mod-2 total class.
pub fn schur_z2(c: &TotalClass, idx: SchurIndex) -> Result<GradedPoly> {
    if c.field() != Coefficients::Z2 {
        return Err(Error::CoefficientMismatch(c.field().name(), Coefficients::Z2.name()));
    }
    Ok(schur_determinant(c, idx.ell, idx.r))
}

/// Signed Δ^(ℓ)_r(p) = det(p_{r−i+j}) of an integral total Pontrjagin class,
/// where p_k sits in degree 4k.
pub fn schur_z(p: &TotalClass, idx: SchurIndex) -> Result<GradedPoly> {
    if p.field() != Coefficients::Integers {
        return Err(Error::CoefficientMismatch(p.field().name(), Coefficients::Integers.name()));
    }
    Ok(schur_determinant_strided(p, idx.ell, idx.r, 4))
}

/// w_n(U*⊗F) for a line bundle U with w₁(U) = a:  Σ_{j=0..n} w_{n−j}(F)·a^j.
pub fn tensor_top_line(w_f: &TotalClass, n: u32, a: &GradedPoly) -> Result<GradedPoly> {
    if w_f.top_degree().is_some_and(|d| d > n) {
        return Err(Error::InvalidArgument(format!("total class has components above rank {n}")));
    }
    if !a.is_homogeneous_of(1) {
        return Err(Error::InvalidArgument("the line class must have degree 1".into()));
    }
    let mut out = GradedPoly::zero(w_f.ring(), w_f.field());
    let mut a_power = GradedPoly::one(w_f.ring(), w_f.field());
    for j in 0..=n {
        let w = w_f.component((n - j) as i64);
        out = out.checked_add(&w.checked_mul(&a_power)?)?;
        a_power = a_power.checked_mul(a)?;
    }
    Ok(out)
}

/// w_{ℓn}(U*⊗F) = Δ^(ℓ)_n(w(F)·w(U)^{-1}) for U of rank ℓ and F of rank n.
pub fn tensor_top_general(w_f: &TotalClass, w_u: &TotalClass, ell: u32, n: u32) -> Result<GradedPoly> {
    let quotient = w_f.checked_mul(&w_u.inverse())?;
    Ok(schur_determinant(&quotient, ell, n))
}

/// Pushforward H*(P(E)) → H*(X): a^j·y ↦ {w(E)^{-1}}_{j−m+1}·y.
pub fn projbundle_pushforward(x: &GradedPoly) -> Result<GradedPoly> {
    let bundle = x.ring();
    let data = bundle
        .proj_bundle_data()
        .ok_or_else(|| Error::InvalidArgument("pushforward needs a projective bundle presentation".into()))?;
    let base = data.base();
    let m = data.rank() as i64;
    let field = x.field();
    if data.base_class().field() != field {
        return Err(Error::CoefficientMismatch(field.name(), data.base_class().field().name()));
    }
    let segre = data.base_class().inverse();
    let fiber = base.generators().len();

    let mut out = GradedPoly::zero(base, field);
    for (mono, c) in x.terms() {
        let j = mono.exponent(fiber) as i64;
        let s = segre.component(j - m + 1);
        if s.is_zero() {
            continue;
        }
        let mut exps = mono.exponents().to_vec();
        exps.truncate(fiber);
        let y = GradedPoly::from_terms(base, field, [(Monomial::from_exponents(base, exps)?, c.clone())]);
        out = &out + &(&s * &y);
    }
    Ok(out)
}

/// Image of each generator under Sq¹, when the ring declares one.
fn sq1_generator_action(ring: &Arc<RingPresentation>) -> Result<Vec<GradedPoly>> {
    let f = Coefficients::Z2;
    match ring.kind() {
        RingKind::TruncatedPower { .. } => {
            let a = GradedPoly::monomial(ring, f, &Monomial::generator(ring, 0, 1));
            Ok(vec![a.pow(2)])
        }
        RingKind::FreeTruncated => {
            let gens = ring.generators();
            let is_w_ring = gens
                .iter()
                .enumerate()
                .all(|(i, g)| g.degree == i as u32 + 1 && g.name == format!("w{}", i + 1));
            if gens.is_empty() || !is_w_ring {
                return Err(Error::NoSquareAction);
            }
            let w = |j: usize| GradedPoly::monomial(ring, f, &Monomial::generator(ring, j - 1, 1));
            // Wu: Sq¹ w_j = w₁·w_j + (j+1)·w_{j+1}, with w_{N+1} = 0.
            Ok((1..=gens.len())
                .map(|j| {
                    let mut image = &w(1) * &w(j);
                    if (j + 1) % 2 == 1 && j < gens.len() {
                        image = &image + &w(j + 1);
                    }
                    image
                })
                .collect())
        }
        RingKind::ProjBundle(_) => Err(Error::NoSquareAction),
    }
}

/// Sq¹ as the derivation extending the ring's generator action.
pub fn sq1(x: &GradedPoly) -> Result<GradedPoly> {
    if x.field() != Coefficients::Z2 {
        return Err(Error::CoefficientMismatch(x.field().name(), Coefficients::Z2.name()));
    }
    let ring = x.ring();
    let action = sq1_generator_action(ring)?;
    let mut out = GradedPoly::zero(ring, Coefficients::Z2);
    for (mono, _) in x.terms() {
        for (i, &e) in mono.exponents().iter().enumerate() {
            if e % 2 == 0 {
                continue;
            }
            let mut exps = mono.exponents().to_vec();
            exps[i] -= 1;
            let rest = GradedPoly::from_terms(ring, Coefficients::Z2, [(Monomial::from_exponents(ring, exps)?, BigInt::one())]);
            out = &out + &(&rest * &action[i]);
        }
    }
    Ok(out)
}

/// The orientation class used to twist Sq¹: w₁ in the universal ring, and
/// w₁(TRP^n) = (n+1)·a in Z₂[a]/(a^{n+1}).
pub fn default_twisting_class(ring: &Arc<RingPresentation>) -> Result<GradedPoly> {
    let f = Coefficients::Z2;
    match ring.kind() {
        RingKind::TruncatedPower { n } => {
            let a = GradedPoly::monomial(ring, f, &Monomial::generator(ring, 0, 1));
            Ok(if n % 2 == 0 { a } else { GradedPoly::zero(ring, f) })
        }
        _ => GradedPoly::generator(ring, f, "w1").map_err(|_| Error::NoSquareAction),
    }
}

/// Sq¹ twisted by an orientation class: x ↦ Sq¹x + w₁·x.
pub fn twisted_sq1(x: &GradedPoly, w1: &GradedPoly) -> Result<GradedPoly> {
    let plain = sq1(x)?;
    plain.checked_add(&w1.checked_mul(x)?)
}
