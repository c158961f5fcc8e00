//! Browser bindings. Every exported function returns a JSON string; errors
//! come back as `{"error": "..."}` so the page never has to catch.

use charclass::kernel_lab::{self, BuiltinMap};
use charclass::obstruction::{self, Verdict};
use charclass::torsion::{self, Permutation};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_ELL: u32 = 6;
const MAX_R: u32 = 12;
const MAX_N: u32 = 64;

fn wrap(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// T^(ℓ)_r, Q^(ℓ)_r and the permutations contributing to the torsion part.
pub fn torsion_explorer(ell: u32, r: u32) -> Result<Value, String> {
    if !(1..=MAX_ELL).contains(&ell) || r > MAX_R {
        return Err(format!("need 1 ≤ ℓ ≤ {MAX_ELL} and r ≤ {MAX_R}"));
    }
    if !(ell + r).is_multiple_of(2) {
        return Err("r must have the parity of ℓ".into());
    }
    let t = torsion::torsion_polynomial(ell, r).map_err(|e| e.to_string())?;
    let q = torsion::q_class(ell, r).map_err(|e| e.to_string())?;
    let index_set: Vec<String> = torsion::index_set_j(ell as usize).iter().map(Permutation::to_string).collect();
    Ok(json!({
        "ell": ell,
        "r": r,
        "degree": ell * r,
        "torsion": t.torsion_part().to_string(),
        "qclass": q.to_string(),
        "free": q.free_part().to_string(),
        "indexSet": index_set,
    }))
}

/// Dependency classes of m sections of TRP^n for every informative ℓ.
pub fn rp_obstruction(n: u32, sections: u32) -> Result<Value, String> {
    if !(1..=MAX_N).contains(&n) || sections == 0 || sections > MAX_N {
        return Err(format!("need 1 ≤ n, sections ≤ {MAX_N}"));
    }
    let bundle = obstruction::rp_tangent_class(n).map_err(|e| e.to_string())?;
    let low = (sections + 1).saturating_sub(n).max(1);
    let mut rows = Vec::new();
    for ell in (low..=sections).take_while(|&ell| ell * (n + ell - sections) <= n) {
        let r = obstruction::feasibility_report(&bundle, sections, ell).map_err(|e| e.to_string())?;
        rows.push(json!({
            "ell": ell,
            "degree": r.degree,
            "class": r.class.to_string(),
            "obstructed": r.verdict == Verdict::Obstructed,
        }));
    }
    Ok(json!({ "bundle": bundle.name, "sections": sections, "rows": rows }))
}

/// Image of the unit circle under z ↦ z^k, plus its numerical degree.
pub fn winding_curve(k: i32, samples: usize, resolution: usize) -> Result<Value, String> {
    if !(-12..=12).contains(&k) || !(8..=4096).contains(&samples) {
        return Err("need |k| ≤ 12 and 8 ≤ samples ≤ 4096".into());
    }
    let f = BuiltinMap::Power(k).on_sphere(1).map_err(|e| e.to_string())?;
    let points: Vec<[f64; 2]> = (0..=samples)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / samples as f64;
            let y = f.eval(&[t.cos(), t.sin()]);
            [y[0], y[1]]
        })
        .collect();
    let est = kernel_lab::mapping_degree(&f, resolution).map_err(|e| e.to_string())?;
    Ok(json!({
        "k": k,
        "points": points,
        "raw": est.raw,
        "degree": est.degree(),
        "errorBound": est.error_bound,
    }))
}

#[wasm_bindgen(js_name = torsionExplorer)]
pub fn torsion_explorer_js(ell: u32, r: u32) -> String {
    wrap(torsion_explorer(ell, r))
}

#[wasm_bindgen(js_name = rpObstruction)]
pub fn rp_obstruction_js(n: u32, sections: u32) -> String {
    wrap(rp_obstruction(n, sections))
}

#[wasm_bindgen(js_name = windingCurve)]
pub fn winding_curve_js(k: i32, samples: usize, resolution: usize) -> String {
    wrap(winding_curve(k, samples, resolution))
}
