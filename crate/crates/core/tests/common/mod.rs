#![allow(dead_code)]

use std::sync::Arc;

use charclass::graded::Generator;
use charclass::{Coefficients, GradedPoly, Monomial, RingPresentation, TotalClass};
use itertools::Itertools;
use num_bigint::BigInt;
use proptest::prelude::*;

pub type RawTerms = Vec<(Vec<u32>, i64)>;

/// Random exponent vectors over `gens` generators with small coefficients.
pub fn raw_terms(gens: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = RawTerms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, gens), -3i64..=3), 0..=max_terms)
}

pub fn build(ring: &Arc<RingPresentation>, field: Coefficients, raw: &RawTerms) -> GradedPoly {
    let terms = raw
        .iter()
        .map(|(e, c)| (Monomial::from_exponents(ring, e.clone()).unwrap(), BigInt::from(*c)));
    GradedPoly::from_terms(ring, field, terms)
}

/// 1 + (components of `raw` in degrees 1..=top).
pub fn total_from(ring: &Arc<RingPresentation>, field: Coefficients, raw: &RawTerms, top: u32) -> TotalClass {
    let p = build(ring, field, raw);
    let mut comps = vec![GradedPoly::one(ring, field)];
    comps.extend((1..=top.min(ring.cap())).map(|d| p.homogeneous_component(d)));
    TotalClass::from_components(comps).unwrap()
}

pub fn gen(ring: &Arc<RingPresentation>, field: Coefficients, name: &str) -> GradedPoly {
    GradedPoly::generator(ring, field, name).unwrap()
}

/// Free integral ring on x (degree 1), y (degree 2), z (degree 3).
pub fn free_z(cap: u32) -> Arc<RingPresentation> {
    RingPresentation::free(vec![Generator::new("x", 1), Generator::new("y", 2), Generator::new("z", 3)], cap).unwrap()
}

/// Leibniz formula: Σ_σ sgn σ Π_i c_{r−i+σ(i)}. Independent of the
/// cofactor expansion used by the library.
pub fn schur_by_permutations(c: &TotalClass, ell: u32, r: u32) -> GradedPoly {
    let ring = c.ring();
    let field = c.field();
    let mut out = GradedPoly::zero(ring, field);
    let ell = ell as usize;
    for perm in (0..ell).permutations(ell) {
        let inversions = (0..ell).flat_map(|i| (i + 1..ell).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let mut term = GradedPoly::constant(ring, field, if inversions % 2 == 0 { 1 } else { -1 });
        for (i, &s) in perm.iter().enumerate() {
            term = &term * &c.component(r as i64 - i as i64 + s as i64);
            if term.is_zero() {
                break;
            }
        }
        out = &out + &term;
    }
    out
}

/// Same monomials interpreted in another presentation with the same generators.
pub fn transplant(x: &GradedPoly, ring: &Arc<RingPresentation>) -> GradedPoly {
    GradedPoly::from_terms(ring, x.field(), x.terms().map(|(m, c)| (m.clone(), c.clone())))
}
