//! Symmetric-group combinatorics behind the integral degeneracy class.
//!
//! The torsion polynomial T^(ℓ)_r is a sum over the permutations fixed by
//! R(σ) = τσ⁻¹τ (and, for even ℓ, not parity-preserving) of products of
//! twisted classes W̃_{r+i−σ(i)}. Even-index symbols only ever occur squared
//! and are replaced by Pontrjagin classes, W̃_{2j}² = p_j, while the terms are
//! built, so no formal square root ever reaches a stored value.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;

use crate::char_calc::{schur_determinant, schur_z, SchurIndex};
use crate::error::{Error, Result};
use crate::graded::{Coefficients, GradedPoly, Monomial, RingPresentation, Substitution, TotalClass, DEFAULT_CAP};

/// A bijection of {1..ℓ}, stored zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// From the one-based image sequence σ(1), …, σ(ℓ).
    pub fn new(images: &[usize]) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in images {
            if i == 0 || i > images.len() || seen[i - 1] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images: images.iter().map(|i| i - 1).collect() })
    }

    fn from_zero_based(images: Vec<usize>) -> Self {
        Permutation { images }
    }

    pub fn identity(ell: usize) -> Self {
        Permutation { images: (0..ell).collect() }
    }

    /// Product of disjoint one-based cycles on {1..ℓ}.
    pub fn from_cycles(ell: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..ell).collect();
        for cycle in cycles {
            for (k, &i) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if i == 0 || i > ell || next == 0 || next > ell {
                    return Err(Error::InvalidArgument(format!("cycle entry out of range 1..={ell}")));
                }
                images[i - 1] = next - 1;
            }
        }
        let one_based: Vec<usize> = images.iter().map(|i| i + 1).collect();
        Permutation::new(&one_based)
    }

    /// τ(i) = ℓ + 1 − i.
    pub fn reversal(ell: usize) -> Self {
        Permutation { images: (0..ell).rev().collect() }
    }

    /// β = (1 2)(3 4)…(ℓ−1 ℓ); ℓ must be even.
    pub fn pair_swap(ell: usize) -> Result<Self> {
        if ell % 2 == 1 {
            return Err(Error::InvalidArgument(format!("pair swap needs even size, got {ell}")));
        }
        Ok(Permutation { images: (0..ell).map(|i| i ^ 1).collect() })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// σ(i) for one-based i.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// One-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &s) in self.images.iter().enumerate() {
            inv[s] = i;
        }
        Permutation { images: inv }
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    /// True when i ≡ σ(i) mod 2 for every i.
    pub fn preserves_parity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &s)| (i + s) % 2 == 0)
    }

    /// S_ℓ in lexicographic order of image sequences.
    pub fn all(ell: usize) -> impl Iterator<Item = Permutation> {
        (0..ell).permutations(ell).map(Permutation::from_zero_based)
    }

    /// The indices r + i − σ(i), or `None` if one of them is negative.
    pub fn shifted_indices(&self, r: u32) -> Option<Vec<u32>> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, &s)| u32::try_from(r as i64 + i as i64 - s as i64).ok())
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push((i + 1).to_string());
                i = self.images[i];
            }
            write!(f, "({})", cycle.join(" "))?;
            wrote = true;
        }
        if !wrote {
            f.write_str("id")?;
        }
        Ok(())
    }
}

/// R(σ) = τ∘σ⁻¹∘τ.
pub fn involution_r(s: &Permutation) -> Permutation {
    let tau = Permutation::reversal(s.len());
    tau.compose(&s.inverse()).compose(&tau)
}

/// P(σ) = β∘σ∘β; defined for even ℓ.
pub fn involution_p(s: &Permutation) -> Result<Permutation> {
    let beta = Permutation::pair_swap(s.len())?;
    Ok(beta.compose(s).compose(&beta))
}

/// ψ: S_{ℓ₀} → S_{2ℓ₀}, ψ(η)(2j−1) = 2η(j)−1 and ψ(η)(2j) = 2η(j).
pub fn psi_embedding(eta: &Permutation) -> Permutation {
    let images = eta.images.iter().flat_map(|&e| [2 * e, 2 * e + 1]).collect();
    Permutation::from_zero_based(images)
}

fn in_index_set(s: &Permutation) -> bool {
    involution_r(s) == *s && (s.len() % 2 == 1 || !s.preserves_parity())
}

/// 𝒥 = {σ : R(σ) = σ and, for even ℓ, σ(i) ≢ i mod 2 for some i}.
pub fn index_set_j(ell: usize) -> Vec<Permutation> {
    Permutation::all(ell).filter(in_index_set).collect()
}

/// Largest ℓ accepted by [`decompose_s_ell`].
pub const MAX_DECOMPOSE_ELL: usize = 10;

/// S_ℓ = ψ(S_{ℓ₀}) ⊔ 𝒥 ⊔ 𝒦_R ⊔ 𝒦_P for even ℓ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub ell: usize,
    pub psi_image: Vec<Permutation>,
    pub index_set: Vec<Permutation>,
    pub k_r: Vec<Permutation>,
    pub k_p: Vec<Permutation>,
}

pub fn decompose_s_ell(ell: usize) -> Result<Decomposition> {
    if ell % 2 == 1 || ell == 0 || ell > MAX_DECOMPOSE_ELL {
        return Err(Error::InvalidArgument(format!(
            "decomposition needs even ℓ in 2..={MAX_DECOMPOSE_ELL}, got {ell}"
        )));
    }
    let mut psi_image: Vec<Permutation> = Permutation::all(ell / 2).map(|eta| psi_embedding(&eta)).collect();
    psi_image.sort();
    let mut out = Decomposition { ell, psi_image, index_set: Vec::new(), k_r: Vec::new(), k_p: Vec::new() };
    for s in Permutation::all(ell) {
        if out.psi_image.binary_search(&s).is_ok() {
            continue;
        }
        if in_index_set(&s) {
            out.index_set.push(s);
        } else if involution_r(&s) != s {
            out.k_r.push(s);
        } else if involution_p(&s)? != s {
            out.k_p.push(s);
        } else {
            return Err(Error::Invariant(format!("{s} lies in none of the four classes")));
        }
    }
    Ok(out)
}

/// A class whose integral part is a polynomial in Pontrjagin classes and whose
/// order-2 part is a polynomial in p_i and odd W̃_k with Z₂ coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedPoly {
    free_part: GradedPoly,
    torsion_part: GradedPoly,
}

impl TwistedPoly {
    pub fn zero(cap: u32) -> Self {
        TwistedPoly {
            free_part: GradedPoly::zero(&RingPresentation::pontryagin(cap), Coefficients::Integers),
            torsion_part: GradedPoly::zero(&RingPresentation::twisted(cap), Coefficients::Z2),
        }
    }

    /// Validates that every torsion monomial carries an odd W̃ factor.
    pub fn new(free_part: GradedPoly, torsion_part: GradedPoly) -> Result<Self> {
        if free_part.field() != Coefficients::Integers || torsion_part.field() != Coefficients::Z2 {
            return Err(Error::InvalidArgument("free part must be integral and torsion part mod 2".into()));
        }
        let cap = free_part.ring().cap();
        if !free_part.ring().same_as(&RingPresentation::pontryagin(cap))
            || !torsion_part.ring().same_as(&RingPresentation::twisted(cap))
        {
            return Err(Error::PresentationMismatch);
        }
        let p_count = (cap / 4) as usize;
        for (m, _) in torsion_part.terms() {
            if odd_w_count(m, p_count) == 0 {
                return Err(Error::InvalidArgument(format!(
                    "torsion monomial {} has no odd W factor",
                    m.display(torsion_part.ring())
                )));
            }
        }
        Ok(TwistedPoly { free_part, torsion_part })
    }

    pub fn free_part(&self) -> &GradedPoly {
        &self.free_part
    }

    pub fn torsion_part(&self) -> &GradedPoly {
        &self.torsion_part
    }

    pub fn cap(&self) -> u32 {
        self.free_part.ring().cap()
    }

    pub fn is_zero(&self) -> bool {
        self.free_part.is_zero() && self.torsion_part.is_zero()
    }
}

impl fmt::Display for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.free_part.is_zero(), self.torsion_part.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.free_part),
            (true, false) => write!(f, "{}", self.torsion_part),
            (false, false) => write!(f, "{} + {}", self.free_part, self.torsion_part),
        }
    }
}

/// Number of odd-W̃ factors (with multiplicity) in a twisted-ring monomial.
pub fn odd_w_count(m: &Monomial, p_count: usize) -> u32 {
    m.exponents().iter().skip(p_count).sum()
}

fn check_parity(ell: u32, r: u32) -> Result<()> {
    if ell == 0 {
        return Err(Error::InvalidArgument("ℓ must be at least 1".into()));
    }
    if ell % 2 != r % 2 {
        return Err(Error::InvalidArgument(format!("ℓ = {ell} and r = {r} must have the same parity")));
    }
    Ok(())
}

fn cap_for(ell: u32, r: u32, cap: u32) -> Result<u32> {
    if ell * r > cap {
        return Err(Error::InvalidArgument(format!("degree ℓ·r = {} exceeds the cap {cap}", ell * r)));
    }
    Ok(cap)
}

/// T^(ℓ)_r with W̃₀ = 1 and W̃_k = 0 for k < 0, in the twisted ring of the
/// default cap (or ℓ·r if larger).
pub fn torsion_polynomial(ell: u32, r: u32) -> Result<TwistedPoly> {
    torsion_polynomial_with_cap(ell, r, DEFAULT_CAP.max(ell * r))
}

pub fn torsion_polynomial_with_cap(ell: u32, r: u32, cap: u32) -> Result<TwistedPoly> {
    check_parity(ell, r)?;
    let cap = cap_for(ell, r, cap)?;
    let ring = RingPresentation::twisted(cap);
    let p_count = (cap / 4) as usize;
    let mut terms = Vec::new();
    for sigma in index_set_j(ell as usize) {
        let Some(indices) = sigma.shifted_indices(r) else { continue };
        let mut multiplicity: BTreeMap<u32, u32> = BTreeMap::new();
        for k in indices.into_iter().filter(|&k| k > 0) {
            *multiplicity.entry(k).or_default() += 1;
        }
        let mut exps = vec![0u32; ring.generators().len()];
        for (k, mult) in multiplicity {
            if k % 2 == 0 {
                if mult % 2 == 1 {
                    return Err(Error::Invariant(format!(
                        "W{k} occurs {mult} times in the term of {sigma} for ℓ={ell}, r={r}"
                    )));
                }
                exps[(k / 2 - 1) as usize] += mult / 2;
            } else {
                exps[p_count + ((k - 1) / 2) as usize] += mult;
            }
        }
        terms.push((Monomial::from_exponents(&ring, exps)?, BigInt::one()));
    }
    let torsion = GradedPoly::from_terms(&ring, Coefficients::Z2, terms);
    let free = GradedPoly::zero(&RingPresentation::pontryagin(cap), Coefficients::Integers);
    TwistedPoly::new(free, torsion)
}

/// The total Pontrjagin class 1 + p₁ + p₂ + … of the universal ring.
pub fn universal_pontryagin(cap: u32) -> TotalClass {
    let ring = RingPresentation::pontryagin(cap);
    let f = Coefficients::Integers;
    let mut comps = vec![GradedPoly::zero(&ring, f); cap as usize + 1];
    comps[0] = GradedPoly::one(&ring, f);
    for i in 1..=cap / 4 {
        comps[(4 * i) as usize] = GradedPoly::monomial(&ring, f, &Monomial::generator(&ring, (i - 1) as usize, 1));
    }
    TotalClass::from_components(comps).expect("universal Pontrjagin class is a unit")
}

/// The total Stiefel–Whitney class 1 + w₁ + … + w_N of `formal_w(N, cap)`.
pub fn universal_sw(ring: &Arc<RingPresentation>) -> Result<TotalClass> {
    let f = Coefficients::Z2;
    let mut comps = vec![GradedPoly::one(ring, f)];
    for j in 1..=ring.generators().len() {
        comps.push(GradedPoly::generator(ring, f, &format!("w{j}"))?);
    }
    TotalClass::from_components(comps)
}

/// Q^(ℓ)_r: T^(ℓ)_r for odd ℓ, Δ^(ℓ₀)_{r₀}(p) + T^(ℓ)_r for ℓ = 2ℓ₀, r = 2r₀.
pub fn q_class(ell: u32, r: u32) -> Result<TwistedPoly> {
    q_class_with_cap(ell, r, DEFAULT_CAP.max(ell * r))
}

pub fn q_class_with_cap(ell: u32, r: u32, cap: u32) -> Result<TwistedPoly> {
    let torsion = torsion_polynomial_with_cap(ell, r, cap)?;
    if ell % 2 == 1 {
        return Ok(torsion);
    }
    let free = schur_z(&universal_pontryagin(cap), SchurIndex::new(ell / 2, r / 2)?)?;
    TwistedPoly::new(free, torsion.torsion_part)
}

/// ρ*: p_j ↦ w_{2j}², W̃_k ↦ w_k, coefficients mod 2, into the w-ring `target`.
/// Generators w_k with k beyond the target's rank map to zero.
pub fn mod2_reduce_into(t: &TwistedPoly, target: &Arc<RingPresentation>) -> Result<GradedPoly> {
    let f = Coefficients::Z2;
    let w = |k: u32| -> GradedPoly {
        GradedPoly::generator(target, f, &format!("w{k}")).unwrap_or_else(|_| GradedPoly::zero(target, f))
    };
    let cap = t.cap();
    let mut free_sub = Substitution::new(t.free_part.ring(), target, f);
    let mut torsion_sub = Substitution::new(t.torsion_part.ring(), target, f);
    for j in 1..=cap / 4 {
        let image = w(2 * j).pow(2);
        let name = format!("p{j}");
        free_sub = free_sub.assign(&name, image.clone())?;
        torsion_sub = torsion_sub.assign(&name, image)?;
    }
    for k in (1..=cap).step_by(2) {
        torsion_sub = torsion_sub.assign(&format!("W{k}"), w(k))?;
    }
    let free = free_sub.apply(&t.free_part)?;
    let torsion = torsion_sub.apply(&t.torsion_part)?;
    free.checked_add(&torsion)
}

/// ρ* into the universal ring on w₁..w_cap.
pub fn mod2_reduce(t: &TwistedPoly) -> Result<GradedPoly> {
    mod2_reduce_into(t, &RingPresentation::formal_w(t.cap(), t.cap()))
}

/// ι*: the real reduction kills the order-2 part.
pub fn real_reduce(t: &TwistedPoly) -> GradedPoly {
    t.free_part.clone()
}

/// w(σ) = Π_i w_{r+i−σ(i)} in `ring` (w₀ = 1, negative indices give 0).
pub fn w_of_sigma(sigma: &Permutation, r: u32, ring: &Arc<RingPresentation>) -> Result<GradedPoly> {
    let f = Coefficients::Z2;
    let Some(indices) = sigma.shifted_indices(r) else {
        return Ok(GradedPoly::zero(ring, f));
    };
    let mut out = GradedPoly::one(ring, f);
    for k in indices.into_iter().filter(|&k| k > 0) {
        match GradedPoly::generator(ring, f, &format!("w{k}")) {
            Ok(g) => out = &out * &g,
            Err(_) => return Ok(GradedPoly::zero(ring, f)),
        }
    }
    Ok(out)
}

/// Outcome of one (ℓ, r) cell of the brute-force check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellResult {
    pub ell: u32,
    pub r: u32,
    /// ρ*(Q) = Δ^(ℓ)_r(w).
    pub mod2_pass: bool,
    /// ι*(Q) is Δ^(ℓ₀)_{r₀}(p) or 0, and every torsion term has an odd W̃ factor.
    pub real_pass: bool,
    pub detail: String,
}

impl CellResult {
    pub fn passed(&self) -> bool {
        self.mod2_pass && self.real_pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verify615Report {
    pub cells: Vec<CellResult>,
}

impl Verify615Report {
    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(CellResult::passed)
    }
}

pub const MAX_VERIFY_ELL: u32 = 6;

/// Reduction used by the mod-2 half of the check; replaceable for fault
/// injection.
pub type Mod2Reducer<'a> = &'a dyn Fn(&TwistedPoly, &Arc<RingPresentation>) -> Result<GradedPoly>;

/// Checks ρ*(Q^(ℓ)_r) = Δ^(ℓ)_r(w) and the real reduction for every ℓ ≤ max_ell,
/// r ≤ max_r with r ≡ ℓ mod 2.
pub fn verify_615(max_ell: u32, max_r: u32) -> Result<Verify615Report> {
    verify_615_with(max_ell, max_r, DEFAULT_CAP, &mod2_reduce_into)
}

pub fn verify_615_with(max_ell: u32, max_r: u32, cap: u32, reducer: Mod2Reducer<'_>) -> Result<Verify615Report> {
    if max_ell > MAX_VERIFY_ELL {
        return Err(Error::InvalidArgument(format!("max ℓ is limited to {MAX_VERIFY_ELL}")));
    }
    let mut cells = Vec::new();
    for ell in 1..=max_ell {
        for r in (ell % 2..=max_r).step_by(2) {
            cells.push(verify_cell(ell, r, cap.max(ell * r), reducer)?);
        }
    }
    Ok(Verify615Report { cells })
}

fn verify_cell(ell: u32, r: u32, cap: u32, reducer: Mod2Reducer<'_>) -> Result<CellResult> {
    let q = q_class_with_cap(ell, r, cap)?;
    let w_ring = RingPresentation::formal_w(r + ell - 1, cap);
    let expected_mod2 = schur_determinant(&universal_sw(&w_ring)?, ell, r);
    let reduced = reducer(&q, &w_ring)?;
    let mod2_pass = reduced == expected_mod2;

    let expected_real = if ell.is_multiple_of(2) {
        schur_z(&universal_pontryagin(cap), SchurIndex::new(ell / 2, r / 2)?)?
    } else {
        GradedPoly::zero(&RingPresentation::pontryagin(cap), Coefficients::Integers)
    };
    let p_count = (cap / 4) as usize;
    let torsion_ok = q.torsion_part().terms().all(|(m, _)| odd_w_count(m, p_count) > 0);
    let real_pass = real_reduce(&q) == expected_real && torsion_ok;

    let detail = if mod2_pass {
        format!("{} terms", expected_mod2.len())
    } else {
        format!("expected {expected_mod2}, got {reduced}")
    };
    Ok(CellResult { ell, r, mod2_pass, real_pass, detail })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images).unwrap()
    }

    #[test]
    fn r_examples() {
        assert_eq!(involution_r(&Permutation::identity(4)), Permutation::identity(4));
        let s12 = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let s23 = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        assert_eq!(involution_r(&s12), s23);
    }

    #[test]
    fn p_examples() {
        assert_eq!(involution_p(&Permutation::identity(4)).unwrap(), Permutation::identity(4));
        let s12 = perm(&[2, 1]);
        assert_eq!(involution_p(&s12).unwrap(), s12);
        assert!(involution_p(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_embedding(&Permutation::identity(2)), Permutation::identity(4));
        let swap = perm(&[2, 1]);
        let expected = Permutation::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap();
        assert_eq!(psi_embedding(&swap), expected);
    }

    #[test]
    fn small_index_sets() {
        assert_eq!(index_set_j(1), vec![Permutation::identity(1)]);
        assert_eq!(index_set_j(2), vec![perm(&[2, 1])]);
        let j3: Vec<String> = index_set_j(3).iter().map(ToString::to_string).collect();
        assert_eq!(j3, ["id", "(1 2 3)", "(1 3 2)", "(1 3)"]);
    }

    #[test]
    fn permutation_validation_and_display() {
        assert!(Permutation::new(&[1, 1]).is_err());
        assert!(Permutation::new(&[0, 1]).is_err());
        assert_eq!(perm(&[2, 3, 1]).to_string(), "(1 2 3)");
        assert_eq!(perm(&[2, 1, 4, 3]).to_string(), "(1 2)(3 4)");
        assert_eq!(perm(&[2, 3, 1]).apply(3), 1);
    }

    #[test]
    fn decomposition_of_s2() {
        let d = decompose_s_ell(2).unwrap();
        assert_eq!(d.psi_image, vec![Permutation::identity(2)]);
        assert_eq!(d.index_set, vec![perm(&[2, 1])]);
        assert!(d.k_r.is_empty() && d.k_p.is_empty());
        let d4 = decompose_s_ell(4).unwrap();
        assert_eq!(d4.psi_image.len() + d4.index_set.len() + d4.k_r.len() + d4.k_p.len(), 24);
        assert!(decompose_s_ell(3).is_err());
        assert!(decompose_s_ell(12).is_err());
    }

    #[test]
    fn torsion_polynomial_small_cases() {
        for r in [1, 3, 5, 7] {
            assert_eq!(torsion_polynomial(1, r).unwrap().to_string(), format!("W{r}"));
        }
        assert_eq!(torsion_polynomial(2, 4).unwrap().to_string(), "W3*W5");
        assert_eq!(torsion_polynomial(3, 1).unwrap().to_string(), "W1^3 + W3");
        assert_eq!(
            torsion_polynomial(3, 3).unwrap().to_string(),
            "p1*W5 + p2*W1 + W1*W3*W5 + W3^3"
        );
        assert!(torsion_polynomial(2, 3).is_err());
        assert!(torsion_polynomial(2, 0).unwrap().is_zero());
    }

    #[test]
    fn q_class_and_reductions() {
        let q = q_class(2, 2).unwrap();
        assert_eq!(q.to_string(), "p1 + W1*W3");
        assert_eq!(real_reduce(&q).to_string(), "p1");
        assert_eq!(mod2_reduce(&q).unwrap().to_string(), "w1*w3 + w2^2");
        assert!(real_reduce(&q_class(3, 5).unwrap()).is_zero());
        assert!(mod2_reduce(&TwistedPoly::zero(DEFAULT_CAP)).unwrap().is_zero());
    }

    #[test]
    fn twisted_poly_rejects_untwisted_torsion() {
        let ring = RingPresentation::twisted(DEFAULT_CAP);
        let p1 = GradedPoly::generator(&ring, Coefficients::Z2, "p1").unwrap();
        let free = GradedPoly::zero(&RingPresentation::pontryagin(DEFAULT_CAP), Coefficients::Integers);
        assert!(TwistedPoly::new(free, p1).is_err());
    }

    #[test]
    fn verify_small_grid() {
        let report = verify_615(3, 5).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.cells[0], CellResult {
            ell: 1,
            r: 1,
            mod2_pass: true,
            real_pass: true,
            detail: "1 terms".into()
        });
        assert!(verify_615(7, 1).is_err());
    }
}
