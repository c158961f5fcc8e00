//! Sparse graded polynomial algebra over Z₂ and Z.
//!
//! Every [`GradedPoly`] lives in a [`RingPresentation`] that fixes the
//! generators, their cohomological degrees, a degree cap above which all
//! components vanish, and (for the quotient kinds) the relations used to put
//! monomials in normal form. Values are immutable; presentations are shared
//! through `Arc`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Cap used for free rings when the caller does not ask for another one.
pub const DEFAULT_CAP: u32 = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Z2,
    Integers,
}

impl Coefficients {
    pub fn name(self) -> &'static str {
        match self {
            Coefficients::Z2 => "Z2",
            Coefficients::Integers => "Z",
        }
    }

    /// Canonical representative of `c`, or `None` when it is zero.
    fn reduce(self, c: BigInt) -> Option<BigInt> {
        match self {
            Coefficients::Z2 => c.is_odd().then(BigInt::one),
            Coefficients::Integers => (!c.is_zero()).then_some(c),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator { name: name.into(), degree }
    }
}

/// A monomial as an exponent vector over the generators of some presentation.
///
/// Trailing zero exponents are trimmed so that equal monomials have equal
/// representations. The total degree is cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { degree: 0, exponents: Vec::new() }
    }

    pub fn from_exponents(ring: &RingPresentation, mut exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() > ring.generators.len() {
            if exponents[ring.generators.len()..].iter().any(|&e| e != 0) {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector of length {} for a ring with {} generators",
                    exponents.len(),
                    ring.generators.len()
                )));
            }
            exponents.truncate(ring.generators.len());
        }
        Ok(Self::build(ring, exponents))
    }

    fn build(ring: &RingPresentation, mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        let degree = exponents.iter().zip(&ring.generators).map(|(e, g)| e * g.degree).sum();
        Monomial { degree, exponents }
    }

    pub fn generator(ring: &RingPresentation, index: usize, power: u32) -> Self {
        let mut exponents = vec![0; index + 1];
        exponents[index] = power;
        Self::build(ring, exponents)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exponents.get(index).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exponents.len() >= other.exponents.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exponents = long.exponents.clone();
        for (e, f) in exponents.iter_mut().zip(&short.exponents) {
            *e += f;
        }
        Monomial { degree: self.degree + other.degree, exponents }
    }

    /// Renders the monomial with the generator names of `ring`, e.g. `w1^2*w3`.
    pub fn display(&self, ring: &RingPresentation) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ring.generators[i].name.clone()),
                _ => parts.push(format!("{}^{}", ring.generators[i].name, e)),
            }
        }
        parts.join("*")
    }
}

/// Graded lexicographic order: ascending total degree, then within a degree
/// larger exponents on earlier generators come first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RingKind {
    /// Polynomial ring modulo everything above the cap.
    FreeTruncated,
    /// Z[a]/(a^{n+1}) on a single degree-one generator.
    TruncatedPower { n: u32 },
    /// Cohomology of the projectivization of a rank-`rank` bundle E over the
    /// base, with fiber class `a` subject to Σ_{i=0..m} w_i(E)·a^{m−i} = 0.
    ProjBundle(Box<ProjBundleData>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjBundleData {
    base: Arc<RingPresentation>,
    rank: u32,
    base_class: TotalClass,
    // fiber_powers[e][j]: base coefficient of a^j in the normal form of a^e.
    fiber_powers: Vec<Vec<GradedPoly>>,
}

impl ProjBundleData {
    pub fn base(&self) -> &Arc<RingPresentation> {
        &self.base
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn base_class(&self) -> &TotalClass {
        &self.base_class
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RingPresentation {
    kind: RingKind,
    generators: Vec<Generator>,
    cap: u32,
}

impl RingPresentation {
    /// Free graded ring on `generators`, truncated above `cap`.
    pub fn free(generators: Vec<Generator>, cap: u32) -> Result<Arc<Self>> {
        validate_generators(&generators)?;
        Ok(Arc::new(RingPresentation { kind: RingKind::FreeTruncated, generators, cap }))
    }

    /// Free ring on w1..wn (deg w_j = j), the universal Stiefel–Whitney ring
    /// of a rank-n bundle.
    pub fn formal_w(n: u32, cap: u32) -> Arc<Self> {
        let generators = (1..=n).map(|j| Generator::new(format!("w{j}"), j)).collect();
        Self::free(generators, cap).expect("w-generators are valid")
    }

    /// Free ring on Pontrjagin classes p1..p_{cap/4} (deg p_i = 4i).
    pub fn pontryagin(cap: u32) -> Arc<Self> {
        let generators = (1..=cap / 4).map(|i| Generator::new(format!("p{i}"), 4 * i)).collect();
        Self::free(generators, cap).expect("p-generators are valid")
    }

    /// Free ring on p1..p_{cap/4} and the odd twisted classes W1, W3, ….
    pub fn twisted(cap: u32) -> Arc<Self> {
        let mut generators: Vec<Generator> =
            (1..=cap / 4).map(|i| Generator::new(format!("p{i}"), 4 * i)).collect();
        generators.extend((1..=cap).step_by(2).map(|k| Generator::new(format!("W{k}"), k)));
        Self::free(generators, cap).expect("twisted generators are valid")
    }

    /// Z₂[a]/(a^{n+1}) style ring; the cap is n.
    pub fn truncated_power(name: &str, n: u32) -> Result<Arc<Self>> {
        let generators = vec![Generator::new(name, 1)];
        validate_generators(&generators)?;
        Ok(Arc::new(RingPresentation { kind: RingKind::TruncatedPower { n }, generators, cap: n }))
    }

    /// Cohomology model of the projectivization P(E) of a rank-`rank` bundle
    /// with total class `base_class`, with fiber generator `fiber_name`.
    pub fn proj_bundle(base_class: &TotalClass, rank: u32, fiber_name: &str) -> Result<Arc<Self>> {
        if rank == 0 {
            return Err(Error::InvalidPresentation("projective bundle rank must be at least 1".into()));
        }
        if let Some(top) = base_class.top_degree() {
            if top > rank {
                return Err(Error::InvalidPresentation(format!(
                    "total class has a nonzero component in degree {top} above the rank {rank}"
                )));
            }
        }
        let base = base_class.ring().clone();
        let field = base_class.field();
        let mut generators = base.generators.clone();
        generators.push(Generator::new(fiber_name, 1));
        validate_generators(&generators)?;
        let cap = base.cap;

        let m = rank as usize;
        let zero = GradedPoly::zero(&base, field);
        let mut fiber_powers: Vec<Vec<GradedPoly>> = Vec::with_capacity(cap as usize + 1);
        for e in 0..=cap as usize {
            if e < m {
                let mut row = vec![zero.clone(); m];
                row[e] = GradedPoly::one(&base, field);
                fiber_powers.push(row);
                continue;
            }
            // a·a^{e−1}, with a^m replaced by −Σ_{i≥1} w_i(E)·a^{m−i}.
            let prev = &fiber_powers[e - 1];
            let top = &prev[m - 1];
            let row = (0..m)
                .map(|j| {
                    let shifted = if j == 0 { zero.clone() } else { prev[j - 1].clone() };
                    &shifted - &(top * &base_class.component((m - j) as i64))
                })
                .collect();
            fiber_powers.push(row);
        }

        let data = ProjBundleData { base, rank, base_class: base_class.clone(), fiber_powers };
        Ok(Arc::new(RingPresentation { kind: RingKind::ProjBundle(Box::new(data)), generators, cap }))
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn proj_bundle_data(&self) -> Option<&ProjBundleData> {
        match &self.kind {
            RingKind::ProjBundle(data) => Some(data),
            _ => None,
        }
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    /// Normal form of a single monomial.
    pub fn normal_form(self: &Arc<Self>, m: &Monomial, field: Coefficients) -> GradedPoly {
        let mut terms = BTreeMap::new();
        self.reduce_into(m.clone(), BigInt::one(), field, &mut terms);
        GradedPoly { ring: self.clone(), field, terms }
    }

    /// Adds `c·m`, reduced to normal form, into `out`.
    fn reduce_into(&self, m: Monomial, c: BigInt, field: Coefficients, out: &mut Terms) {
        if m.degree > self.cap {
            return;
        }
        match &self.kind {
            RingKind::FreeTruncated => accumulate(out, field, m, c),
            RingKind::TruncatedPower { n } => {
                if m.exponent(0) <= *n {
                    accumulate(out, field, m, c);
                }
            }
            RingKind::ProjBundle(data) => {
                let nb = data.base.generators.len();
                let e = m.exponent(nb);
                let mut base_exps = m.exponents;
                base_exps.truncate(nb);
                let base_mono = Monomial::build(&data.base, base_exps);
                let mut base_terms = BTreeMap::new();
                data.base.reduce_into(base_mono, BigInt::one(), field, &mut base_terms);
                if base_terms.is_empty() {
                    return;
                }
                let base_poly = GradedPoly { ring: data.base.clone(), field, terms: base_terms };
                let row = &data.fiber_powers[e as usize];
                for (j, coeff) in row.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let product = coeff * &base_poly;
                    for (bm, bc) in product.terms {
                        if bm.degree + j as u32 > self.cap {
                            continue;
                        }
                        let mut exps = bm.exponents;
                        exps.resize(nb, 0);
                        exps.push(j as u32);
                        accumulate(out, field, Monomial::build(self, exps), &c * bc);
                    }
                }
            }
        }
    }
}

fn validate_generators(generators: &[Generator]) -> Result<()> {
    for (i, g) in generators.iter().enumerate() {
        if g.degree == 0 {
            return Err(Error::InvalidPresentation(format!("generator {} has degree 0", g.name)));
        }
        if generators[..i].iter().any(|h| h.name == g.name) {
            return Err(Error::InvalidPresentation(format!("duplicate generator name {}", g.name)));
        }
    }
    Ok(())
}

type Terms = BTreeMap<Monomial, BigInt>;

fn accumulate(terms: &mut Terms, field: Coefficients, m: Monomial, c: BigInt) {
    let sum = match terms.remove(&m) {
        Some(old) => old + c,
        None => c,
    };
    if let Some(c) = field.reduce(sum) {
        terms.insert(m, c);
    }
}

/// An element of a ring presentation, stored as normal-form monomials with
/// nonzero coefficients.
#[derive(Clone, Debug)]
pub struct GradedPoly {
    ring: Arc<RingPresentation>,
    field: Coefficients,
    terms: Terms,
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms && self.ring.same_as(&other.ring)
    }
}

impl GradedPoly {
    pub fn zero(ring: &Arc<RingPresentation>, field: Coefficients) -> Self {
        GradedPoly { ring: ring.clone(), field, terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<RingPresentation>, field: Coefficients) -> Self {
        Self::constant(ring, field, 1)
    }

    pub fn constant(ring: &Arc<RingPresentation>, field: Coefficients, c: i64) -> Self {
        Self::from_terms(ring, field, [(Monomial::one(), BigInt::from(c))])
    }

    /// The generator called `name`.
    pub fn generator(ring: &Arc<RingPresentation>, field: Coefficients, name: &str) -> Result<Self> {
        let index = ring.generator_index(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Self::monomial(ring, field, &Monomial::generator(ring, index, 1)))
    }

    pub fn monomial(ring: &Arc<RingPresentation>, field: Coefficients, m: &Monomial) -> Self {
        ring.normal_form(m, field)
    }

    /// Builds a polynomial from arbitrary (not necessarily reduced) terms.
    pub fn from_terms<I>(ring: &Arc<RingPresentation>, field: Coefficients, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            ring.reduce_into(m, c, field, &mut out);
        }
        GradedPoly { ring: ring.clone(), field, terms: out }
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn field(&self) -> Coefficients {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.first_key_value().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn homogeneous_component(&self, degree: u32) -> GradedPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.degree == degree);
        GradedPoly {
            ring: self.ring.clone(),
            field: self.field,
            terms: terms.map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// True when every term has total degree `degree` (zero is homogeneous of
    /// every degree).
    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree == degree)
    }

    fn check_compatible(&self, other: &GradedPoly) -> Result<()> {
        if !self.ring.same_as(&other.ring) {
            return Err(Error::PresentationMismatch);
        }
        if self.field != other.field {
            return Err(Error::CoefficientMismatch(self.field.name(), other.field.name()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, self.field, m.clone(), c.clone());
        }
        Ok(GradedPoly { ring: self.ring.clone(), field: self.field, terms })
    }

    pub fn checked_sub(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_compatible(other)?;
        let cap = self.ring.cap;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.degree + m2.degree > cap {
                    continue;
                }
                self.ring.reduce_into(m1.times(m2), c1 * c2, self.field, &mut terms);
            }
        }
        Ok(GradedPoly { ring: self.ring.clone(), field: self.field, terms })
    }

    pub fn scale(&self, c: &BigInt) -> GradedPoly {
        let mut terms = BTreeMap::new();
        for (m, d) in &self.terms {
            accumulate(&mut terms, self.field, m.clone(), c * d);
        }
        GradedPoly { ring: self.ring.clone(), field: self.field, terms }
    }

    pub fn pow(&self, mut exp: u32) -> GradedPoly {
        let mut base = self.clone();
        let mut acc = GradedPoly::one(&self.ring, self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Reinterprets a base-ring element inside a projective bundle over it.
    pub fn lift_to(&self, bundle: &Arc<RingPresentation>) -> Result<GradedPoly> {
        let data = bundle.proj_bundle_data().ok_or_else(|| {
            Error::InvalidArgument("lift target is not a projective bundle presentation".into())
        })?;
        if !data.base.same_as(&self.ring) {
            return Err(Error::PresentationMismatch);
        }
        // Base generators are a prefix of the bundle's, so exponent vectors carry over.
        Ok(GradedPoly::from_terms(bundle, self.field, self.terms.clone()))
    }

    /// Same monomials with coefficients reduced mod 2.
    pub fn mod2(&self) -> GradedPoly {
        GradedPoly::from_terms(&self.ring, Coefficients::Z2, self.terms.clone())
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&m.display(&self.ring))?;
            } else {
                write!(f, "{magnitude}*{}", m.display(&self.ring))?;
            }
        }
        Ok(())
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_add(rhs).expect("polynomial addition across presentations")
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_sub(rhs).expect("polynomial subtraction across presentations")
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_mul(rhs).expect("polynomial product across presentations")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&BigInt::from(-1))
    }
}

pub fn poly_add(x: &GradedPoly, y: &GradedPoly) -> Result<GradedPoly> {
    x.checked_add(y)
}

pub fn poly_mul(x: &GradedPoly, y: &GradedPoly) -> Result<GradedPoly> {
    x.checked_mul(y)
}

pub fn normal_form(m: &Monomial, ring: &Arc<RingPresentation>, field: Coefficients) -> GradedPoly {
    ring.normal_form(m, field)
}

/// Inhomogeneous class 1 + c₁ + c₂ + … up to the ring's cap.
#[derive(Clone, Debug, PartialEq)]
pub struct TotalClass {
    components: Vec<GradedPoly>,
}

impl TotalClass {
    pub fn one(ring: &Arc<RingPresentation>, field: Coefficients) -> Self {
        let mut components = vec![GradedPoly::zero(ring, field); ring.cap as usize + 1];
        components[0] = GradedPoly::one(ring, field);
        TotalClass { components }
    }

    /// Splits `p` into homogeneous components; the degree-0 part must be 1.
    pub fn from_poly(p: &GradedPoly) -> Result<Self> {
        let cap = p.ring.cap as usize;
        let mut components = vec![GradedPoly::zero(&p.ring, p.field); cap + 1];
        for (m, c) in &p.terms {
            components[m.degree as usize].terms.insert(m.clone(), c.clone());
        }
        if !components[0].is_one() {
            return Err(Error::NonUnitLeading);
        }
        Ok(TotalClass { components })
    }

    /// Total class from its components c₀, c₁, …; missing ones are zero.
    pub fn from_components(components: Vec<GradedPoly>) -> Result<Self> {
        let first = components.first().ok_or(Error::NonUnitLeading)?;
        let ring = first.ring.clone();
        let field = first.field;
        let mut full = vec![GradedPoly::zero(&ring, field); ring.cap as usize + 1];
        for (d, c) in components.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            c.check_compatible(&full[0])?;
            if d > ring.cap as usize || !c.is_homogeneous_of(d as u32) {
                return Err(Error::InvalidArgument(format!("component {d} is not homogeneous of degree {d}")));
            }
            full[d] = c;
        }
        if !full[0].is_one() {
            return Err(Error::NonUnitLeading);
        }
        Ok(TotalClass { components: full })
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.components[0].ring
    }

    pub fn field(&self) -> Coefficients {
        self.components[0].field
    }

    pub fn cap(&self) -> u32 {
        self.components.len() as u32 - 1
    }

    /// Degree-k component; zero for k < 0 and k above the cap.
    pub fn component(&self, k: i64) -> GradedPoly {
        if k < 0 || k as usize >= self.components.len() {
            GradedPoly::zero(self.ring(), self.field())
        } else {
            self.components[k as usize].clone()
        }
    }

    pub fn components(&self) -> &[GradedPoly] {
        &self.components
    }

    /// Highest degree carrying a nonzero component, `None` for the class 1.
    pub fn top_degree(&self) -> Option<u32> {
        (1..self.components.len()).rev().find(|&d| !self.components[d].is_zero()).map(|d| d as u32)
    }

    pub fn to_poly(&self) -> GradedPoly {
        let mut out = GradedPoly::zero(self.ring(), self.field());
        for c in &self.components {
            for (m, k) in &c.terms {
                out.terms.insert(m.clone(), k.clone());
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &TotalClass) -> Result<TotalClass> {
        let product = self.to_poly().checked_mul(&other.to_poly())?;
        TotalClass::from_poly(&product)
    }

    /// Formal inverse via c̄_k = −Σ_{j=1..k} c_j·c̄_{k−j}.
    pub fn inverse(&self) -> TotalClass {
        let cap = self.components.len();
        let mut inv: Vec<GradedPoly> = Vec::with_capacity(cap);
        inv.push(GradedPoly::one(self.ring(), self.field()));
        for k in 1..cap {
            let mut acc = GradedPoly::zero(self.ring(), self.field());
            for j in 1..=k {
                if self.components[j].is_zero() || inv[k - j].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.components[j] * &inv[k - j]);
            }
            inv.push(-&acc);
        }
        TotalClass { components: inv }
    }

    /// Drops every component above `rank`.
    pub fn truncate_rank(&self, rank: u32) -> TotalClass {
        let mut components = self.components.clone();
        for c in components.iter_mut().skip(rank as usize + 1) {
            *c = GradedPoly::zero(self.ring(), self.field());
        }
        TotalClass { components }
    }
}

impl fmt::Display for TotalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

pub fn total_inverse(c: &TotalClass) -> Result<TotalClass> {
    if !c.components[0].is_one() {
        return Err(Error::NonUnitLeading);
    }
    Ok(c.inverse())
}

/// Degree-preserving assignment of generator images, inducing a ring
/// homomorphism from `source` to `target`.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: Arc<RingPresentation>,
    target: Arc<RingPresentation>,
    field: Coefficients,
    images: Vec<Option<GradedPoly>>,
}

impl Substitution {
    pub fn new(source: &Arc<RingPresentation>, target: &Arc<RingPresentation>, field: Coefficients) -> Self {
        Substitution {
            source: source.clone(),
            target: target.clone(),
            field,
            images: vec![None; source.generators.len()],
        }
    }

    pub fn identity(ring: &Arc<RingPresentation>, field: Coefficients) -> Self {
        let images = (0..ring.generators.len())
            .map(|i| Some(GradedPoly::monomial(ring, field, &Monomial::generator(ring, i, 1))))
            .collect();
        Substitution { source: ring.clone(), target: ring.clone(), field, images }
    }

    pub fn assign(mut self, name: &str, image: GradedPoly) -> Result<Self> {
        let index = self.source.generator_index(name).ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        if !image.ring.same_as(&self.target) {
            return Err(Error::PresentationMismatch);
        }
        if image.field != self.field {
            return Err(Error::CoefficientMismatch(image.field.name(), self.field.name()));
        }
        let degree = self.source.generators[index].degree;
        if !image.is_homogeneous_of(degree) {
            return Err(Error::DegreeViolation { name: name.into(), expected: degree });
        }
        self.images[index] = Some(image);
        Ok(self)
    }

    pub fn target(&self) -> &Arc<RingPresentation> {
        &self.target
    }

    pub fn apply(&self, x: &GradedPoly) -> Result<GradedPoly> {
        if !x.ring.same_as(&self.source) {
            return Err(Error::PresentationMismatch);
        }
        if x.field == Coefficients::Z2 && self.field == Coefficients::Integers {
            return Err(Error::CoefficientMismatch(x.field.name(), self.field.name()));
        }
        let mut powers: Vec<Vec<GradedPoly>> = vec![Vec::new(); self.images.len()];
        let mut out = GradedPoly::zero(&self.target, self.field);
        for (m, c) in &x.terms {
            let mut image = GradedPoly::constant(&self.target, self.field, 1).scale(c);
            for (i, &e) in m.exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let gen = self.images[i].as_ref().ok_or_else(|| {
                    Error::InvalidArgument(format!("generator {} has no image", self.source.generators[i].name))
                })?;
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(GradedPoly::one(&self.target, self.field));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * gen;
                    cache.push(next);
                }
                image = &image * &cache[e as usize];
            }
            out = &out + &image;
        }
        Ok(out)
    }
}

pub fn substitute(x: &GradedPoly, assignment: &Substitution) -> Result<GradedPoly> {
    assignment.apply(x)
}
