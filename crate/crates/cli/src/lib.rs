//! `charclass` command-line frontend.
//!
//! [`run`] takes an argument vector and returns the exit code together with
//! the text destined for stdout and stderr, so the whole interface can be
//! driven from tests. Exit codes: 0 success, 1 a verification suite reported
//! a failure, 2 input error.

pub mod parse;

use std::ffi::OsString;
use std::sync::Arc;

use charclass::char_calc::{self, SchurIndex};
use charclass::graded::{RingKind, DEFAULT_CAP};
use charclass::kernel_lab::{self, BuiltinMap, DEFAULT_RESOLUTION, IDENTITY_TOLERANCE, ROUNDING_TOLERANCE};
use charclass::obstruction::{self, FeasibilityReport};
use charclass::torsion::{self, Mod2Reducer, TwistedPoly};
use charclass::{GradedPoly, RingPresentation, TotalClass};
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::parse::{parse_class, parse_ring, parse_total_class, ParseError, RingSpec};

#[derive(Debug, Parser)]
#[command(name = "charclass", about = "Characteristic classes of dependency and degeneracy loci", version)]
struct Cli {
    /// Emit a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Degree cap for free rings (default 48).
    #[arg(long, global = true, value_name = "D")]
    cap: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Schur determinant Δ^(ℓ)_r of a total class (universal w by default).
    Schur {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, value_name = "EXPR", requires = "ring")]
        class: Option<String>,
        #[arg(long, value_name = "RING")]
        ring: Option<String>,
    },
    /// Torsion polynomial T^(ℓ)_r.
    Torsion {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        r: u32,
    },
    /// Integral class Q^(ℓ)_r = Δ^(ℓ₀)_{r₀}(p) + T^(ℓ)_r.
    Qclass {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        r: u32,
    },
    /// Brute-force check of the mod-2 and real reductions of Q^(ℓ)_r.
    Verify615 {
        #[arg(long = "max-ell")]
        max_ell: u32,
        #[arg(long = "max-r")]
        max_r: u32,
    },
    /// Pushforward from the projectivization of a rank-M bundle.
    Pushforward {
        #[arg(long)]
        rank: u32,
        #[arg(long = "wE", value_name = "EXPR")]
        w_e: String,
        #[arg(long, value_name = "EXPR")]
        input: String,
        /// Base ring (default formal:M).
        #[arg(long, value_name = "RING")]
        base: Option<String>,
    },
    /// Dependency obstruction for sections of TRP^n.
    ObstructRp {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        sections: u32,
        #[arg(long)]
        ell: Option<u32>,
    },
    /// Sq^1 (or its twisted form) on rp:N or formal:N.
    Sq1 {
        #[arg(long, value_name = "RING")]
        ring: String,
        #[arg(long, value_name = "EXPR")]
        input: String,
        #[arg(long)]
        twisted: bool,
    },
    /// Mapping degree of a built-in sphere map.
    Degree {
        #[arg(long, value_name = "NAME")]
        map: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Numerical identity checks.
    KernelChecks {
        #[arg(long = "max-n", default_value_t = 8)]
        max_n: u32,
        #[arg(long, default_value_t = IDENTITY_TOLERANCE)]
        tol: f64,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Replaceable internals, used to check that failures surface in the exit code.
pub struct Hooks<'a> {
    pub mod2_reducer: Mod2Reducer<'a>,
}

impl Default for Hooks<'static> {
    fn default() -> Self {
        Hooks { mod2_reducer: &torsion::mod2_reduce_into }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] charclass::Error),
    #[error("{0}")]
    Usage(String),
}

struct Response {
    command: &'static str,
    inputs: Value,
    result: Value,
    verdict: Option<String>,
    text: String,
    failed: bool,
}

impl Response {
    fn new(command: &'static str, inputs: Value, result: Value, text: String) -> Self {
        Response { command, inputs, result, verdict: None, text, failed: false }
    }

    fn verdict(mut self, verdict: impl Into<String>) -> Self {
        self.verdict = Some(verdict.into());
        self
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &Hooks::default())
}

pub fn run_with<I, T>(args: I, hooks: &Hooks<'_>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let text = err.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli, hooks) {
        Ok(response) => {
            let stdout = if cli.json {
                let mut object = serde_json::Map::new();
                object.insert("command".into(), json!(response.command));
                object.insert("inputs".into(), response.inputs);
                object.insert("result".into(), response.result);
                if let Some(v) = &response.verdict {
                    object.insert("verdict".into(), json!(v));
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(object)).expect("json values serialize");
                s.push('\n');
                s
            } else {
                response.text
            };
            Outcome { code: if response.failed { 1 } else { 0 }, stdout, stderr: String::new() }
        }
        Err(err) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {err}\n") },
    }
}

fn dispatch(cli: &Cli, hooks: &Hooks<'_>) -> Result<Response, CliError> {
    let cap = cli.cap;
    match &cli.command {
        Command::Schur { ell, r, class, ring } => schur(*ell, *r, class.as_deref(), ring.as_deref(), cap),
        Command::Torsion { ell, r } => {
            let t = torsion::torsion_polynomial_with_cap(*ell, *r, cap_for(cap, ell * r))?;
            let text = format!("T^({ell})_{r} = {}\n", t.torsion_part());
            Ok(Response::new("torsion", json!({"ell": ell, "r": r}), poly_json(t.torsion_part()), text))
        }
        Command::Qclass { ell, r } => {
            let q = torsion::q_class_with_cap(*ell, *r, cap_for(cap, ell * r))?;
            let text = format!("Q^({ell})_{r} = {q}\n");
            Ok(Response::new("qclass", json!({"ell": ell, "r": r}), twisted_json(&q), text))
        }
        Command::Verify615 { max_ell, max_r } => verify615(*max_ell, *max_r, cap, hooks),
        Command::Pushforward { rank, w_e, input, base } => pushforward(*rank, w_e, input, base.as_deref(), cap),
        Command::ObstructRp { n, sections, ell } => obstruct_rp(*n, *sections, *ell),
        Command::Sq1 { ring, input, twisted } => sq1(ring, input, *twisted, cap),
        Command::Degree { map, dim, resolution } => degree(map, *dim, resolution.unwrap_or(DEFAULT_RESOLUTION)),
        Command::KernelChecks { max_n, tol } => kernel_checks(*max_n, *tol),
    }
}

fn cap_for(cap: Option<u32>, degree: u32) -> u32 {
    cap.unwrap_or(DEFAULT_CAP.max(degree))
}

/// `{"terms": [{"coeff", "monomial"}]}` in graded lexicographic order.
pub fn poly_json(p: &GradedPoly) -> Value {
    json!({ "terms": terms_json(p, None) })
}

fn terms_json(p: &GradedPoly, part: Option<&str>) -> Vec<Value> {
    p.terms()
        .map(|(m, c)| {
            let mut term = json!({"coeff": c.to_string(), "monomial": m.display(p.ring())});
            if let Some(part) = part {
                term["part"] = json!(part);
            }
            term
        })
        .collect()
}

fn twisted_json(q: &TwistedPoly) -> Value {
    let mut terms = terms_json(q.free_part(), Some("free"));
    terms.extend(terms_json(q.torsion_part(), Some("torsion")));
    json!({ "terms": terms, "text": q.to_string() })
}

/// Rebuilds an expression from the `terms` array of a JSON result.
pub fn expression_from_terms(terms: &[Value]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|t| format!("({})*{}", t["coeff"].as_str().unwrap_or("0"), t["monomial"].as_str().unwrap_or("1")))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn universal_w_class(spec: &RingSpec) -> Result<TotalClass, CliError> {
    Ok(torsion::universal_sw(&spec.ring)?)
}

fn schur(ell: u32, r: u32, class: Option<&str>, ring: Option<&str>, cap: Option<u32>) -> Result<Response, CliError> {
    let idx = SchurIndex::new(ell, r)?;
    let default_ring = format!("formal:{}", (r + ell).saturating_sub(1).max(1));
    let ring_name = ring.unwrap_or(&default_ring);
    let spec = parse_ring(ring_name, Some(cap_for(cap, idx.degree())))?;
    let total = match class {
        Some(expr) => parse_total_class(expr, &spec.ring, spec.field)?,
        None => match spec.ring.kind() {
            RingKind::FreeTruncated if spec.field == charclass::Coefficients::Z2 => universal_w_class(&spec)?,
            _ => return Err(CliError::Usage(format!("--class is required for ring {ring_name}"))),
        },
    };
    let value = match spec.field {
        charclass::Coefficients::Z2 => char_calc::schur_z2(&total, idx)?,
        charclass::Coefficients::Integers => char_calc::schur_z(&total, idx)?,
    };
    let text = format!("Δ^({ell})_{r}({total}) = {value}\n");
    let inputs = json!({"ell": ell, "r": r, "ring": spec.name, "class": total.to_string()});
    Ok(Response::new("schur", inputs, poly_json(&value), text))
}

fn verify615(max_ell: u32, max_r: u32, cap: Option<u32>, hooks: &Hooks<'_>) -> Result<Response, CliError> {
    let report = torsion::verify_615_with(max_ell, max_r, cap.unwrap_or(DEFAULT_CAP), hooks.mod2_reducer)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for cell in &report.cells {
        let status = if cell.passed() { "pass" } else { "FAIL" };
        text.push_str(&format!(
            "ell={} r={}: mod2 {} real {} [{}] ({})\n",
            cell.ell,
            cell.r,
            if cell.mod2_pass { "ok" } else { "mismatch" },
            if cell.real_pass { "ok" } else { "mismatch" },
            status,
            cell.detail
        ));
        rows.push(json!({
            "ell": cell.ell,
            "r": cell.r,
            "mod2": cell.mod2_pass,
            "real": cell.real_pass,
            "detail": cell.detail,
        }));
    }
    let pass = report.all_pass();
    let verdict = if pass { "pass" } else { "fail" };
    text.push_str(&format!("{} cells, verdict: {verdict}\n", report.cells.len()));
    let mut response = Response::new(
        "verify615",
        json!({"max_ell": max_ell, "max_r": max_r}),
        json!({"report": rows}),
        text,
    )
    .verdict(verdict);
    response.failed = !pass;
    Ok(response)
}

fn pushforward(rank: u32, w_e: &str, input: &str, base: Option<&str>, cap: Option<u32>) -> Result<Response, CliError> {
    let default_base = format!("formal:{rank}");
    let base_name = base.unwrap_or(&default_base);
    let spec = parse_ring(base_name, cap)?;
    let total = parse_total_class(w_e, &spec.ring, spec.field)?;
    let fiber = if spec.ring.generator_index("a").is_some() { "b" } else { "a" };
    let bundle = RingPresentation::proj_bundle(&total, rank, fiber)?;
    let x = parse_class(input, &bundle, spec.field)?;
    let value = char_calc::projbundle_pushforward(&x)?;
    let text = format!("π_*({x}) = {value}\n");
    let inputs = json!({"rank": rank, "base": spec.name, "wE": total.to_string(), "input": x.to_string(), "fiber": fiber});
    Ok(Response::new("pushforward", inputs, poly_json(&value), text))
}

fn feasibility_json(r: &FeasibilityReport) -> Value {
    json!({
        "ell": r.ell,
        "degree": r.degree,
        "class": r.class.to_string(),
        "terms": terms_json(&r.class, None),
        "verdict": r.verdict.as_str(),
    })
}

fn obstruct_rp(n: u32, sections: u32, ell: Option<u32>) -> Result<Response, CliError> {
    let bundle = obstruction::rp_tangent_class(n)?;
    let inputs = json!({"n": n, "sections": sections, "ell": ell});
    if let Some(ell) = ell {
        let r = obstruction::feasibility_report(&bundle, sections, ell)?;
        let text = format!(
            "{}: {} sections, ℓ={} (degree {}): class {}, verdict {}\n",
            r.bundle, sections, ell, r.degree, r.class, r.verdict
        );
        return Ok(Response::new("obstruct-rp", inputs, poly_json(&r.class), text).verdict(r.verdict.as_str()));
    }
    // degree ℓ(n − m + ℓ) must lie in 1..=n for the class to carry information
    let low = (sections + 1).saturating_sub(n).max(1);
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut any = false;
    for ell in (low..=sections).take_while(|&ell| ell * (n + ell - sections) <= n) {
        let r = obstruction::feasibility_report(&bundle, sections, ell)?;
        any |= r.verdict == obstruction::Verdict::Obstructed;
        text.push_str(&format!("ℓ={} (degree {}): class {}, verdict {}\n", ell, r.degree, r.class, r.verdict));
        rows.push(feasibility_json(&r));
    }
    let verdict = if any { "obstructed" } else { "inconclusive" };
    text.push_str(&format!("overall: {verdict}\n"));
    Ok(Response::new("obstruct-rp", inputs, json!({"report": rows}), text).verdict(verdict))
}

fn sq1(ring: &str, input: &str, twisted: bool, cap: Option<u32>) -> Result<Response, CliError> {
    if !(ring.starts_with("rp:") || ring.starts_with("formal:")) {
        return Err(CliError::Usage(format!("sq1 needs an rp:N or formal:N ring, got {ring}")));
    }
    let spec = parse_ring(ring, cap)?;
    let x = parse_class(input, &spec.ring, spec.field)?;
    let value = if twisted {
        char_calc::twisted_sq1(&x, &char_calc::default_twisting_class(&spec.ring)?)?
    } else {
        char_calc::sq1(&x)?
    };
    let name = if twisted { "Sq~1" } else { "Sq1" };
    let text = format!("{name}({x}) = {value}\n");
    let inputs = json!({"ring": spec.name, "input": x.to_string(), "twisted": twisted});
    Ok(Response::new("sq1", inputs, poly_json(&value), text))
}

fn degree(map: &str, dim: usize, resolution: usize) -> Result<Response, CliError> {
    let f = BuiltinMap::parse(map)?.on_sphere(dim)?;
    let est = kernel_lab::mapping_degree(&f, resolution)?;
    let reliable = est.is_reliable();
    let result = json!({
        "raw": est.raw,
        "rounded": est.degree(),
        "errorBound": est.error_bound,
        "resolution": est.resolution,
        "reliable": reliable,
    });
    let text = match est.degree() {
        Some(d) => format!(
            "deg({map}) on S^{dim} = {d} (raw {:.12}, error bound {:.3e}, resolution {})\n",
            est.raw, est.error_bound, est.resolution
        ),
        None => format!(
            "deg({map}) on S^{dim}: unreliable (raw {:.12}, error bound {:.3e}, resolution {})\n",
            est.raw, est.error_bound, est.resolution
        ),
    };
    let inputs = json!({"map": map, "dim": dim, "resolution": resolution});
    Ok(Response::new("degree", inputs, result, text).verdict(if reliable { "reliable" } else { "unreliable" }))
}

/// Deterministic well-conditioned test matrices for the orientation check.
pub fn sample_matrices(n: usize, count: usize, seed: u64) -> Vec<Vec<Vec<f64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let a: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        if kernel_lab::cofactor_det(&a).abs() > 0.2 {
            out.push(a);
        }
    }
    out
}

fn kernel_checks(max_n: u32, tol: f64) -> Result<Response, CliError> {
    if max_n < 2 {
        return Err(CliError::Usage("--max-n must be at least 2".into()));
    }
    let mut rows: Vec<(String, bool, String)> = Vec::new();
    for n in 2..=max_n {
        let value = kernel_lab::lemma321_constant(n, DEFAULT_RESOLUTION)?;
        rows.push((format!("fiber constant n={n}"), (value - 1.0).abs() < tol, format!("{value:.15}")));
    }
    let radial = Arc::new(BuiltinMap::Identity.on_euclidean(2, 1.0)?);
    let points = vec![vec![0.05, 0.0], vec![0.6, -0.8], vec![3.0, 4.0]];
    for n in 2..=max_n {
        let report = kernel_lab::fiber_integral_check(&radial, n, &points, tol)?;
        rows.push((format!("fiber integral scale invariance n={n}"), report.pass, format!("spread {:.3e}", report.spread)));
    }
    for n in [2usize, 3] {
        let matrices = sample_matrices(n, 20, 0x5eed + n as u64);
        let resolution = if n == 2 { DEFAULT_RESOLUTION } else { 32 };
        let mut passed = 0;
        for a in &matrices {
            if kernel_lab::orientation_sign_check_at(a, resolution)?.pass {
                passed += 1;
            }
        }
        rows.push((format!("orientation sign n={n}"), passed == matrices.len(), format!("{passed}/{}", matrices.len())));
    }
    for k in -3..=3 {
        let est = kernel_lab::mapping_degree(&BuiltinMap::Power(k).on_sphere(1)?, DEFAULT_RESOLUTION)?;
        let ok = est.degree() == Some(k as i64) && est.error_bound < ROUNDING_TOLERANCE;
        rows.push((format!("degree z^{k}"), ok, format!("raw {:.12}", est.raw)));
    }
    let square = BuiltinMap::ComplexSquare.on_euclidean(2, 1.0)?;
    let est = kernel_lab::divisor_multiplicity(&square, &[0.0, 0.0], 0.1)?;
    rows.push(("multiplicity of complex-square".into(), est.degree() == Some(2), format!("raw {:.12}", est.raw)));

    let pass = rows.iter().all(|(_, ok, _)| *ok);
    let mut text = String::new();
    for (name, ok, detail) in &rows {
        text.push_str(&format!("[{}] {name}: {detail}\n", if *ok { "pass" } else { "FAIL" }));
    }
    let verdict = if pass { "pass" } else { "fail" };
    text.push_str(&format!("verdict: {verdict}\n"));
    let report: Vec<Value> = rows.iter().map(|(n, ok, d)| json!({"check": n, "pass": ok, "detail": d})).collect();
    let mut response =
        Response::new("kernel-checks", json!({"max_n": max_n, "tol": tol}), json!({"report": report}), text).verdict(verdict);
    response.failed = !pass;
    Ok(response)
}
