//! Concrete obstruction statements: dependency loci of section collections,
//! degeneracy of bundle maps, and singularities of projections and maps.

use std::fmt;
use std::sync::Arc;

use crate::char_calc::schur_determinant;
use crate::error::{Error, Result};
use crate::graded::{Coefficients, GradedPoly, RingPresentation, TotalClass};

/// A real vector bundle described by its characteristic classes.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleClassData {
    pub name: String,
    pub rank: u32,
    pub total_sw: TotalClass,
    pub total_pontryagin: Option<TotalClass>,
}

impl BundleClassData {
    pub fn new(name: impl Into<String>, rank: u32, total_sw: TotalClass) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArgument("bundle rank must be positive".into()));
        }
        if total_sw.field() != Coefficients::Z2 {
            return Err(Error::CoefficientMismatch(total_sw.field().name(), Coefficients::Z2.name()));
        }
        if let Some(top) = total_sw.top_degree() {
            if top > rank {
                return Err(Error::InvalidArgument(format!(
                    "w_{top} is nonzero but the rank is {rank}"
                )));
            }
        }
        Ok(BundleClassData { name: name.into(), rank, total_sw, total_pontryagin: None })
    }

    pub fn with_pontryagin(mut self, p: TotalClass) -> Result<Self> {
        if p.field() != Coefficients::Integers {
            return Err(Error::CoefficientMismatch(p.field().name(), Coefficients::Integers.name()));
        }
        self.total_pontryagin = Some(p);
        Ok(self)
    }

    /// The trivial rank-`rank` bundle over the given ring.
    pub fn trivial(ring: &Arc<RingPresentation>, rank: u32) -> Result<Self> {
        Self::new(format!("trivial^{rank}"), rank, TotalClass::one(ring, Coefficients::Z2))
    }

    pub fn ambient(&self) -> &Arc<RingPresentation> {
        self.total_sw.ring()
    }
}

/// TRP^n with w(TRP^n) = (1+a)^{n+1} in Z₂[a]/(a^{n+1}).
pub fn rp_tangent_class(n: u32) -> Result<BundleClassData> {
    if n == 0 {
        return Err(Error::InvalidArgument("RP^n needs n ≥ 1".into()));
    }
    let ring = RingPresentation::truncated_power("a", n)?;
    let f = Coefficients::Z2;
    let a = GradedPoly::generator(&ring, f, "a")?;
    let w = (&GradedPoly::one(&ring, f) + &a).pow(n + 1);
    BundleClassData::new(format!("TRP^{n}"), n, TotalClass::from_poly(&w)?)
}

/// Δ^(ℓ)_{n−m+ℓ}(w(F)): the mod-2 class of the locus where m sections of the
/// rank-n bundle F span at most m − ℓ dimensions.
pub fn dependency_class_mod2(f: &BundleClassData, m: u32, ell: u32) -> Result<GradedPoly> {
    let n = f.rank;
    let low = m.saturating_sub(n);
    if ell < low.max(1) || ell > m {
        return Err(Error::InvalidArgument(format!(
            "ℓ = {ell} outside {}..={m} for {m} sections of a rank {n} bundle",
            low.max(1)
        )));
    }
    Ok(schur_determinant(&f.total_sw, ell, n + ell - m))
}

fn same_ambient(e: &BundleClassData, f: &BundleClassData) -> Result<()> {
    if !e.ambient().same_as(f.ambient()) {
        return Err(Error::PresentationMismatch);
    }
    Ok(())
}

/// Degree n−m+1 part of w(F)·w(E)^{-1} for a bundle map E → F, rk E ≤ rk F.
pub fn noninjectivity_class_mod2(e: &BundleClassData, f: &BundleClassData) -> Result<GradedPoly> {
    same_ambient(e, f)?;
    if e.rank > f.rank {
        return Err(Error::InvalidArgument(format!(
            "non-injectivity needs rk E ≤ rk F, got {} > {}",
            e.rank, f.rank
        )));
    }
    let quotient = f.total_sw.checked_mul(&e.total_sw.inverse())?;
    Ok(quotient.component((f.rank - e.rank + 1) as i64))
}

/// Δ^(m−k)_{n−k}(w(F)·w(E)^{-1}): where E → F has rank ≤ k.
pub fn degeneracy_class_mod2(e: &BundleClassData, f: &BundleClassData, k: u32) -> Result<GradedPoly> {
    same_ambient(e, f)?;
    let (m, n) = (e.rank, f.rank);
    if k >= m.min(n) {
        return Err(Error::InvalidArgument(format!("k = {k} must be below min(rk E, rk F) = {}", m.min(n))));
    }
    let quotient = f.total_sw.checked_mul(&e.total_sw.inverse())?;
    Ok(schur_determinant(&quotient, m - k, n - k))
}

/// Class of the rank-≤k locus of a projection X → R^n, computed both as
/// Δ^(m−k)_{n−k}(w(TX)^{-1}) and as Δ^(n−k)_{m−k}(w(TX)); they must agree.
pub fn projection_degeneracy_class(tx: &BundleClassData, n: u32, k: u32) -> Result<GradedPoly> {
    let m = tx.rank;
    if k >= m.min(n) {
        return Err(Error::InvalidArgument(format!("k = {k} must be below min(dim X, n) = {}", m.min(n))));
    }
    let via_inverse = schur_determinant(&tx.total_sw.inverse(), m - k, n - k);
    let direct = schur_determinant(&tx.total_sw, n - k, m - k);
    if via_inverse != direct {
        return Err(Error::Invariant(format!(
            "duality failed for {} with n={n}, k={k}: {via_inverse} vs {direct}",
            tx.name
        )));
    }
    Ok(direct)
}

/// Non-submersion class of a projection X → R^{m−q+1}; equals w_q(TX).
pub fn non_submersion_class(tx: &BundleClassData, q: u32) -> Result<GradedPoly> {
    if q == 0 || q > tx.rank {
        return Err(Error::InvalidArgument(format!("q = {q} outside 1..={}", tx.rank)));
    }
    projection_degeneracy_class(tx, tx.rank - q + 1, tx.rank - q)
}

/// Normal bundle of X ⊂ R^N with codimension N − m, w(NX) = w(TX)^{-1}.
pub fn normal_bundle(tx: &BundleClassData, codim: u32) -> Result<BundleClassData> {
    let inverse = tx.total_sw.inverse();
    if let Some(top) = inverse.top_degree() {
        if top > codim {
            return Err(Error::InvalidArgument(format!(
                "w(TX)^-1 has a nonzero component in degree {top}, so {} has no normal bundle of rank {codim}",
                tx.name
            )));
        }
    }
    BundleClassData::new(format!("N({})", tx.name), codim, inverse)
}

/// Non-immersion class of a projection X → R^{m+q−1} for X ⊂ R^{m+codim};
/// equals w_q(NX).
pub fn non_immersion_class(tx: &BundleClassData, codim: u32, q: u32) -> Result<GradedPoly> {
    if q == 0 || q > codim {
        return Err(Error::InvalidArgument(format!("q = {q} outside 1..={codim}")));
    }
    let nx = normal_bundle(tx, codim)?;
    let class = projection_degeneracy_class(tx, tx.rank + q - 1, tx.rank - 1)?;
    let expected = nx.total_sw.component(q as i64);
    if class != expected {
        return Err(Error::Invariant(format!("non-immersion class {class} differs from w_{q}(NX) = {expected}")));
    }
    Ok(class)
}

/// Δ^(m−k)_{n−k}(f*(w(TY))·w(TX)^{-1}) for f: X^m → Y^n; the caller supplies
/// f*(w(TY)) in the ambient ring of TX.
pub fn map_degeneracy_class_mod2(
    tx: &BundleClassData,
    pulled_back_ty: &TotalClass,
    n: u32,
    k: u32,
) -> Result<GradedPoly> {
    if !pulled_back_ty.ring().same_as(tx.ambient()) {
        return Err(Error::PresentationMismatch);
    }
    let m = tx.rank;
    if k >= m.min(n) {
        return Err(Error::InvalidArgument(format!("k = {k} must be below min(m, n) = {}", m.min(n))));
    }
    let quotient = pulled_back_ty.checked_mul(&tx.total_sw.inverse())?;
    Ok(schur_determinant(&quotient, m - k, n - k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The class is nonzero, so no such configuration exists.
    Obstructed,
    /// The class vanishes; this proves nothing either way.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Obstructed => "obstructed",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityReport {
    pub bundle: String,
    pub sections: u32,
    pub ell: u32,
    pub degree: u32,
    pub class: GradedPoly,
    pub verdict: Verdict,
}

/// Can m sections of F be chosen with at least m − ℓ + 1 independent at
/// every point?
pub fn feasibility_report(f: &BundleClassData, m: u32, ell: u32) -> Result<FeasibilityReport> {
    let class = dependency_class_mod2(f, m, ell)?;
    let verdict = if class.is_zero() { Verdict::Inconclusive } else { Verdict::Obstructed };
    Ok(FeasibilityReport {
        bundle: f.name.clone(),
        sections: m,
        ell,
        degree: ell * (f.rank + ell - m),
        class,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_power(tx: &BundleClassData, k: u32) -> GradedPoly {
        GradedPoly::generator(tx.ambient(), Coefficients::Z2, "a").unwrap().pow(k)
    }

    #[test]
    fn rp_tangent_classes() {
        assert_eq!(rp_tangent_class(4).unwrap().total_sw.to_string(), "1 + a + a^4");
        assert_eq!(rp_tangent_class(10).unwrap().total_sw.to_string(), "1 + a + a^2 + a^3 + a^8 + a^9 + a^10");
        assert_eq!(rp_tangent_class(1).unwrap().total_sw.to_string(), "1");
        assert!(rp_tangent_class(0).is_err());
    }

    #[test]
    fn vector_field_obstructions_on_rp() {
        let rp4 = rp_tangent_class(4).unwrap();
        assert_eq!(dependency_class_mod2(&rp4, 6, 3).unwrap(), a_power(&rp4, 3));
        let rp10 = rp_tangent_class(10).unwrap();
        assert_eq!(dependency_class_mod2(&rp10, 10, 3).unwrap(), a_power(&rp10, 9));
        assert!(dependency_class_mod2(&rp4, 6, 1).is_err());
        assert!(dependency_class_mod2(&rp4, 6, 7).is_err());
    }

    #[test]
    fn single_dependency_is_a_stiefel_whitney_class() {
        let rp10 = rp_tangent_class(10).unwrap();
        for q in 1..=10 {
            let m = 10 - q + 1;
            assert_eq!(dependency_class_mod2(&rp10, m, 1).unwrap(), rp10.total_sw.component(q as i64));
        }
    }

    #[test]
    fn noninjectivity_examples() {
        let rp6 = rp_tangent_class(6).unwrap();
        let trivial = BundleClassData::trivial(rp6.ambient(), 3).unwrap();
        // trivial E of rank 3 into TRP^6: q = 4, class w_4
        assert_eq!(noninjectivity_class_mod2(&trivial, &rp6).unwrap(), rp6.total_sw.component(4));
        let same = noninjectivity_class_mod2(&rp6, &rp6).unwrap();
        assert!(same.is_zero());
        assert!(noninjectivity_class_mod2(&rp6, &trivial).is_err());
    }

    #[test]
    fn degeneracy_specialisations() {
        let rp6 = rp_tangent_class(6).unwrap();
        let e = BundleClassData::trivial(rp6.ambient(), 4).unwrap();
        assert_eq!(
            degeneracy_class_mod2(&e, &rp6, 3).unwrap(),
            noninjectivity_class_mod2(&e, &rp6).unwrap()
        );
        let t5 = BundleClassData::trivial(rp6.ambient(), 5).unwrap();
        for k in 0..4 {
            assert!(degeneracy_class_mod2(&e, &t5, k).unwrap().is_zero());
        }
        assert!(degeneracy_class_mod2(&e, &t5, 4).is_err());
    }

    #[test]
    fn projection_examples_on_rp4() {
        let rp4 = rp_tangent_class(4).unwrap();
        assert!(non_submersion_class(&rp4, 3).unwrap().is_zero());
        assert_eq!(non_submersion_class(&rp4, 1).unwrap(), a_power(&rp4, 1));
        for n in 1..=8 {
            for k in 0..n.min(4) {
                projection_degeneracy_class(&rp4, n, k).unwrap();
            }
        }
    }

    #[test]
    fn normal_bundle_of_rp4() {
        let rp4 = rp_tangent_class(4).unwrap();
        // w(TRP^4)^{-1} = (1+a)^{-5} = 1 + a + a^2 + a^3 in degrees ≤ 4
        let nx = normal_bundle(&rp4, 3).unwrap();
        assert_eq!(nx.total_sw.to_string(), "1 + a + a^2 + a^3");
        assert!(normal_bundle(&rp4, 2).is_err());
        for q in 1..=3 {
            assert_eq!(non_immersion_class(&rp4, 3, q).unwrap(), a_power(&rp4, q));
        }
    }

    #[test]
    fn map_degeneracy_cases() {
        let rp3 = rp_tangent_class(3).unwrap();
        for k in 0..3 {
            assert!(map_degeneracy_class_mod2(&rp3, &rp3.total_sw, 3, k).unwrap().is_zero());
        }
        let one = TotalClass::one(rp3.ambient(), Coefficients::Z2);
        for n in 1..=5 {
            for k in 0..n.min(3) {
                let got = map_degeneracy_class_mod2(&rp3, &one, n, k).unwrap();
                assert_eq!(got, schur_determinant(&rp3.total_sw.inverse(), 3 - k, n - k));
            }
        }
        let rp4 = rp_tangent_class(4).unwrap();
        assert_eq!(map_degeneracy_class_mod2(&rp3, &rp4.total_sw, 4, 0), Err(Error::PresentationMismatch));
    }

    #[test]
    fn feasibility_verdicts() {
        let r = feasibility_report(&rp_tangent_class(4).unwrap(), 6, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
        assert_eq!(r.degree, 3);
        let r = feasibility_report(&rp_tangent_class(10).unwrap(), 10, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
        let r = feasibility_report(&rp_tangent_class(1).unwrap(), 1, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.class.is_zero());
    }
}
