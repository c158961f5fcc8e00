//! Numerical checks of the analytic identities behind the divisor
//! construction: sphere volumes, mapping degrees as normalised integrals of
//! pulled-back volume forms, multiplicities at regular zeros and the constant
//! produced by integrating the solid angle kernel over a fiber.
//!
//! Inputs are assumed regular: maps must not vanish on the spheres they are
//! sampled on. Sums use a fixed pairwise reduction so results are bitwise
//! reproducible for a given resolution.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const DEFAULT_RESOLUTION: usize = 256;
/// Largest deviation from an integer accepted when rounding a degree.
pub const ROUNDING_TOLERANCE: f64 = 0.01;
/// Acceptance threshold for the analytic identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-6;

const VANISHING_THRESHOLD: f64 = 1e-12;
const DIFF_STEP: f64 = 1e-5;

/// ω_n = Vol(S^{n−1}) = 2π^{n/2}/Γ(n/2).
pub fn sphere_volume(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("sphere volume needs n ≥ 1".into()));
    }
    let half = n as f64 / 2.0;
    Ok(2.0 * PI.powf(half) / statrs::function::gamma::gamma(half))
}

/// Sum with a fixed binary-tree association.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => {
            let (lo, hi) = values.split_at(n / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    for i in 0..order.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P_{n−1}(x).
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let (pn, pn1) = if order == 1 { (x, 1.0) } else { (p1, p0) };
            dp = order as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[order - 1 - i] = -x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    if order % 2 == 1 {
        nodes[order / 2] = 0.0;
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre rule with `panels` equal panels of `order` nodes.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let values: Vec<f64> = (0..panels)
        .flat_map(|p| {
            let mid = a + (p as f64 + 0.5) * h;
            nodes.iter().zip(&weights).map(move |(x, w)| (mid, x, w)).collect::<Vec<_>>()
        })
        .map(|(mid, x, w)| w * f(mid + 0.5 * h * x))
        .collect();
    0.5 * h * pairwise_sum(&values)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    /// The unit sphere S^d ⊂ R^{d+1}.
    Sphere(usize),
    EuclideanBall { n: usize, radius: f64 },
}

type MapFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// A map known only through point evaluations.
#[derive(Clone)]
pub struct SampledMap {
    evaluate: Arc<MapFn>,
    domain: Domain,
}

impl SampledMap {
    pub fn new(domain: Domain, evaluate: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        SampledMap { evaluate: Arc::new(evaluate), domain }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// d for S^d, n for a ball in R^n.
    pub fn domain_dim(&self) -> usize {
        match self.domain {
            Domain::Sphere(d) => d,
            Domain::EuclideanBall { n, .. } => n,
        }
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        (self.evaluate)(x)
    }
}

impl fmt::Debug for SampledMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledMap").field("domain", &self.domain).finish_non_exhaustive()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeEstimate {
    pub raw: f64,
    pub rounded: i64,
    pub error_bound: f64,
    pub resolution: usize,
}

impl DegreeEstimate {
    fn from_pair(fine: f64, coarse: f64, floor: f64, resolution: usize) -> Self {
        DegreeEstimate {
            raw: fine,
            rounded: fine.round() as i64,
            error_bound: (fine - coarse).abs() + floor,
            resolution,
        }
    }

    /// The integer degree, when the estimate supports one.
    pub fn degree(&self) -> Option<i64> {
        self.is_reliable().then_some(self.rounded)
    }

    pub fn is_reliable(&self) -> bool {
        self.error_bound <= 0.5 && (self.raw - self.rounded as f64).abs() <= ROUNDING_TOLERANCE.max(self.error_bound)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn normalized(f: &SampledMap, x: &[f64]) -> Result<Vec<f64>> {
    let v = f.eval(x);
    let r = norm(&v);
    if !(r > VANISHING_THRESHOLD) {
        return Err(Error::InvalidArgument(format!("map vanishes (|f| = {r:e}) at sample {x:?}")));
    }
    Ok(v.into_iter().map(|c| c / r).collect())
}

/// Degree of a map S^d → S^d (d ∈ {1, 2}) as (1/ω_{d+1})·∫ f*(dvol).
pub fn mapping_degree(f: &SampledMap, resolution: usize) -> Result<DegreeEstimate> {
    let Domain::Sphere(d) = f.domain else {
        return Err(Error::InvalidArgument("mapping degree needs a sphere domain".into()));
    };
    if resolution < 8 {
        return Err(Error::InvalidArgument("resolution must be at least 8".into()));
    }
    match d {
        1 => circle_degree(f, resolution),
        2 => sphere_degree(f, resolution),
        _ => Err(Error::InvalidArgument(format!("mapping degree is implemented for S^1 and S^2, not S^{d}"))),
    }
}

/// Accumulated winding of the image angle over `samples` equally spaced points,
/// plus the largest single angular step.
fn circle_winding(f: &SampledMap, samples: usize) -> Result<(f64, f64)> {
    let angles: Vec<f64> = (0..samples)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / samples as f64;
            let v = normalized(f, &[t.cos(), t.sin()])?;
            Ok(v[1].atan2(v[0]))
        })
        .collect::<Result<_>>()?;
    let mut steps = Vec::with_capacity(samples);
    let mut widest: f64 = 0.0;
    for i in 0..samples {
        let mut delta = angles[(i + 1) % samples] - angles[i];
        delta -= 2.0 * PI * (delta / (2.0 * PI)).round();
        widest = widest.max(delta.abs());
        steps.push(delta);
    }
    Ok((pairwise_sum(&steps) / (2.0 * PI), widest))
}

fn circle_degree(f: &SampledMap, resolution: usize) -> Result<DegreeEstimate> {
    let (fine, widest) = circle_winding(f, resolution)?;
    let (coarse, _) = circle_winding(f, resolution / 2)?;
    let mut floor = 8.0 * resolution as f64 * f64::EPSILON;
    // Steps near π can wrap the wrong way; the sample is then too coarse.
    if widest > PI / 2.0 {
        floor += 1.0;
    }
    Ok(DegreeEstimate::from_pair(fine, coarse, floor, resolution))
}

fn sphere_point(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

fn cross(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// ∫∫ f̂·(∂_θ f̂ × ∂_φ f̂) dθ dφ / 4π with Gauss–Legendre in θ and the
/// trapezoid rule in the periodic φ.
fn sphere_integral(f: &SampledMap, resolution: usize) -> Result<f64> {
    let (nodes, weights) = gauss_legendre(resolution);
    let n_phi = 2 * resolution;
    let dphi = 2.0 * PI / n_phi as f64;
    let mut values = Vec::with_capacity(resolution * n_phi);
    for (x, w) in nodes.iter().zip(&weights) {
        let theta = 0.5 * PI * (x + 1.0);
        for k in 0..n_phi {
            let phi = k as f64 * dphi;
            let at = |t: f64, p: f64| normalized(f, &sphere_point(t, p));
            let centre = at(theta, phi)?;
            let dt: Vec<f64> = at(theta + DIFF_STEP, phi)?
                .iter()
                .zip(at(theta - DIFF_STEP, phi)?)
                .map(|(a, b)| (a - b) / (2.0 * DIFF_STEP))
                .collect();
            let dp: Vec<f64> = at(theta, phi + DIFF_STEP)?
                .iter()
                .zip(at(theta, phi - DIFF_STEP)?)
                .map(|(a, b)| (a - b) / (2.0 * DIFF_STEP))
                .collect();
            let c = cross(&dt, &dp);
            let jac = centre[0] * c[0] + centre[1] * c[1] + centre[2] * c[2];
            values.push(w * 0.5 * PI * dphi * jac);
        }
    }
    Ok(pairwise_sum(&values) / sphere_volume(3)?)
}

fn sphere_degree(f: &SampledMap, resolution: usize) -> Result<DegreeEstimate> {
    let fine = sphere_integral(f, resolution)?;
    let coarse = sphere_integral(f, resolution / 2)?;
    Ok(DegreeEstimate::from_pair(fine, coarse, 1e-8, resolution))
}

fn check_sphere_samples(f: &SampledMap, resolution: usize) -> Result<()> {
    match f.domain {
        Domain::Sphere(1) => circle_winding(f, resolution).map(|_| ()),
        _ => Ok(()),
    }
}

/// Multiplicity of an isolated zero of u: R^n → R^n (n ∈ {2, 3}) as the
/// degree of u/|u| on the sphere of the given radius about it.
pub fn divisor_multiplicity(u: &SampledMap, zero: &[f64], radius: f64) -> Result<DegreeEstimate> {
    divisor_multiplicity_at(u, zero, radius, DEFAULT_RESOLUTION)
}

pub fn divisor_multiplicity_at(u: &SampledMap, zero: &[f64], radius: f64, resolution: usize) -> Result<DegreeEstimate> {
    let n = u.domain_dim();
    if !(2..=3).contains(&n) || zero.len() != n {
        return Err(Error::InvalidArgument(format!("multiplicity needs a map R^n → R^n with n ∈ {{2, 3}}, got n = {n}")));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    let inner = u.clone();
    let centre = zero.to_vec();
    let on_sphere = SampledMap::new(Domain::Sphere(n - 1), move |x| {
        let p: Vec<f64> = centre.iter().zip(x).map(|(c, xi)| c + radius * xi).collect();
        inner.eval(&p)
    });
    check_sphere_samples(&on_sphere, resolution)?;
    mapping_degree(&on_sphere, resolution)
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    match n {
        0 => 1.0,
        1 => a[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<f64>> = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| *v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * a[0][j] * cofactor_det(&minor)
            })
            .sum(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrientationReport {
    pub determinant: f64,
    pub estimate: DegreeEstimate,
    pub pass: bool,
}

/// Compares the degree of y ↦ yA/|yA| on S^{n−1} with sgn det A.
pub fn orientation_sign_check(a: &[Vec<f64>]) -> Result<OrientationReport> {
    orientation_sign_check_at(a, DEFAULT_RESOLUTION)
}

pub fn orientation_sign_check_at(a: &[Vec<f64>], resolution: usize) -> Result<OrientationReport> {
    let n = a.len();
    if !(2..=3).contains(&n) || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("orientation check needs a square 2×2 or 3×3 matrix".into()));
    }
    let det = cofactor_det(a);
    let scale: f64 = a.iter().map(|row| norm(row).max(1.0)).product();
    if det.abs() <= 1e-9 * scale {
        return Err(Error::InvalidArgument(format!("matrix is numerically singular (det = {det:e})")));
    }
    let matrix = a.to_vec();
    let map = SampledMap::new(Domain::Sphere(n - 1), move |y| {
        (0..n).map(|j| (0..n).map(|i| y[i] * matrix[i][j]).sum()).collect()
    });
    let estimate = mapping_degree(&map, resolution)?;
    let expected = if det > 0.0 { 1 } else { -1 };
    Ok(OrientationReport { determinant: det, estimate, pass: estimate.degree() == Some(expected) })
}

/// (2ω_{n−1}/ω_n)·∫₀^{π/2} cos^{n−2}t dt, which equals 1; `resolution` is
/// the number of two-point Gauss panels.
pub fn lemma321_constant(n: u32, resolution: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("the fiber constant needs n ≥ 2".into()));
    }
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    let integral = integrate(|t| t.cos().powi(n as i32 - 2), 0.0, PI / 2.0, resolution, 2);
    Ok(2.0 * sphere_volume(n - 1)? / sphere_volume(n)? * integral)
}

/// (ω_{n−1}/ω_n)·∫_R |f|^{n−1} dt / (t² + |f|²)^{n/2}, evaluated with the
/// substitution t = |f|·tan u.
pub fn fiber_integral(magnitude: f64, n: u32, resolution: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("the fiber integral needs n ≥ 2".into()));
    }
    if !(magnitude > VANISHING_THRESHOLD) {
        return Err(Error::InvalidArgument(format!("|f| = {magnitude:e} vanishes")));
    }
    let s = magnitude;
    let integrand = |u: f64| {
        let t = s * u.tan();
        let dt_du = s / (u.cos() * u.cos());
        s.powi(n as i32 - 1) / (t * t + s * s).powf(n as f64 / 2.0) * dt_du
    };
    let integral = integrate(integrand, -PI / 2.0, PI / 2.0, resolution, 2);
    Ok(sphere_volume(n - 1)? / sphere_volume(n)? * integral)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberEntry {
    pub label: String,
    pub magnitude: f64,
    pub value: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberReport {
    pub n: u32,
    pub entries: Vec<FiberEntry>,
    /// Largest difference between any two computed values.
    pub spread: f64,
    pub pass: bool,
}

/// Evaluates the fiber integral at |f(x)| for each test point and at the
/// reference scales 0.1, 1 and 10.
pub fn fiber_integral_check(f: &SampledMap, n: u32, test_points: &[Vec<f64>], tol: f64) -> Result<FiberReport> {
    let mut entries = Vec::new();
    let mut push = |label: String, magnitude: f64| -> Result<()> {
        let value = fiber_integral(magnitude, n, DEFAULT_RESOLUTION)?;
        entries.push(FiberEntry { label, magnitude, value, pass: (value - 1.0).abs() < tol });
        Ok(())
    };
    for x in test_points {
        let magnitude = norm(&f.eval(x));
        if !(magnitude > VANISHING_THRESHOLD) {
            return Err(Error::InvalidArgument(format!("f vanishes at test point {x:?}")));
        }
        push(format!("{x:?}"), magnitude)?;
    }
    for scale in [0.1, 1.0, 10.0] {
        push(format!("|f|={scale}"), scale)?;
    }
    let lo = entries.iter().map(|e| e.value).fold(f64::INFINITY, f64::min);
    let hi = entries.iter().map(|e| e.value).fold(f64::NEG_INFINITY, f64::max);
    let spread = hi - lo;
    let pass = entries.iter().all(|e| e.pass) && spread < tol;
    Ok(FiberReport { n, entries, spread, pass })
}

/// Test maps addressable by name.
#[derive(Clone, Debug, PartialEq)]
pub enum BuiltinMap {
    Identity,
    Conjugation,
    Power(i32),
    ComplexSquare,
    ReflectY,
    Linear(Vec<f64>),
}

impl BuiltinMap {
    pub fn parse(name: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown map `{name}`"));
        Ok(match name {
            "identity" => BuiltinMap::Identity,
            "conj" => BuiltinMap::Conjugation,
            "complex-square" => BuiltinMap::ComplexSquare,
            "reflect-y" => BuiltinMap::ReflectY,
            _ => {
                if let Some(k) = name.strip_prefix("power:") {
                    BuiltinMap::Power(k.trim().parse().map_err(|_| bad())?)
                } else if let Some(entries) = name.strip_prefix("linear:") {
                    let values = entries
                        .split(',')
                        .map(|s| s.trim().parse::<f64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad())?;
                    BuiltinMap::Linear(values)
                } else {
                    return Err(bad());
                }
            }
        })
    }

    /// The map on S^d, for d ∈ {1, 2}.
    pub fn on_sphere(&self, d: usize) -> Result<SampledMap> {
        let domain = Domain::Sphere(d);
        self.build(d + 1, domain)
    }

    /// The map on R^n as a section whose zeros can be examined.
    pub fn on_euclidean(&self, n: usize, radius: f64) -> Result<SampledMap> {
        self.build(n, Domain::EuclideanBall { n, radius })
    }

    fn build(&self, ambient: usize, domain: Domain) -> Result<SampledMap> {
        let planar = |what: &str| {
            if ambient == 2 {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{what} is only defined in the plane")))
            }
        };
        Ok(match self {
            BuiltinMap::Identity => SampledMap::new(domain, |x| x.to_vec()),
            BuiltinMap::ReflectY => SampledMap::new(domain, |x| {
                let mut v = x.to_vec();
                v[1] = -v[1];
                v
            }),
            BuiltinMap::Conjugation => {
                planar("conj")?;
                SampledMap::new(domain, |x| vec![x[0], -x[1]])
            }
            BuiltinMap::ComplexSquare => {
                planar("complex-square")?;
                SampledMap::new(domain, |x| vec![x[0] * x[0] - x[1] * x[1], 2.0 * x[0] * x[1]])
            }
            BuiltinMap::Power(k) => {
                planar("power:k")?;
                let k = *k;
                SampledMap::new(domain, move |x| complex_power(x[0], x[1], k).to_vec())
            }
            BuiltinMap::Linear(entries) => {
                if entries.len() != ambient * ambient {
                    return Err(Error::InvalidArgument(format!(
                        "linear map needs {} entries, got {}",
                        ambient * ambient,
                        entries.len()
                    )));
                }
                let m = entries.clone();
                SampledMap::new(domain, move |y| {
                    (0..ambient).map(|j| (0..ambient).map(|i| y[i] * m[i * ambient + j]).sum()).collect()
                })
            }
        })
    }
}

/// (x + iy)^k for any integer k (the point must be nonzero when k < 0).
pub fn complex_power(x: f64, y: f64, k: i32) -> [f64; 2] {
    let (mut re, mut im) = (1.0, 0.0);
    let (bx, by) = if k >= 0 {
        (x, y)
    } else {
        let r2 = x * x + y * y;
        (x / r2, -y / r2)
    };
    for _ in 0..k.unsigned_abs() {
        (re, im) = (re * bx - im * by, re * by + im * bx);
    }
    [re, im]
}
