//! Three demo operations over the named presets, exported to JavaScript.
//! Each returns a JSON string; the plain functions are what the tests call.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qcag::aut::orbit_partition;
use qcag::catalog::{self, Preset};
use qcag::census::{census_for, crosscheck};
use qcag::code::build_code;

/// Candidate budget for the browser; large enough for the small presets.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

fn load(id: &str) -> Result<Preset, String> {
    catalog::preset(id.trim()).map_err(|e| e.to_string())
}

pub fn orbits_json(id: &str) -> Result<String, String> {
    let pr = load(id)?;
    let part = orbit_partition(&pr.sigma, &pr.curve.points()).map_err(|e| e.to_string())?;
    let census: serde_json::Map<String, Value> =
        part.length_census().into_iter().map(|(l, c)| (l.to_string(), json!(c))).collect();
    let out = json!({
        "id": pr.id,
        "curve": pr.curve.describe(),
        "genus": pr.curve.genus(),
        "points": pr.curve.points().count(),
        "automorphism": pr.sigma.describe(),
        "order": part.order,
        "lengths": census,
        "long_orbits": part.orbits.iter().filter(|o| o.long).count(),
    });
    Ok(out.to_string())
}

pub fn code_json(id: &str, t: u64, budget: u64) -> Result<String, String> {
    let pr = load(id)?;
    let part = orbit_partition(&pr.sigma, &pr.curve.points()).map_err(|e| e.to_string())?;
    let long = part.long_orbits().map_err(|e| e.to_string())?;
    let code = build_code(&pr.sigma, &long, t).map_err(|e| e.to_string())?;
    serde_json::to_string(&code.report(budget)).map_err(|e| e.to_string())
}

pub fn census_json(id: &str) -> Result<String, String> {
    let pr = load(id)?;
    let mut maps = catalog::sample_maps(&pr.curve);
    if maps.is_empty() {
        maps.push(pr.sigma.clone());
    }
    let points = pr.curve.points();
    let mut rows = Vec::new();
    for m in &maps {
        let cen = census_for(m).map_err(|e| e.to_string())?;
        let part = orbit_partition(m, &points).map_err(|e| e.to_string())?;
        let report = crosscheck(&cen, &part);
        rows.push(json!({"map": m.describe(), "report": report}));
    }
    Ok(json!({"id": pr.id, "checks": rows}).to_string())
}

#[wasm_bindgen]
pub fn orbits(id: &str) -> Result<String, JsValue> {
    orbits_json(id).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn code(id: &str, t: u32, budget: Option<u32>) -> Result<String, JsValue> {
    let budget = budget.map_or(DEFAULT_BUDGET, u64::from);
    code_json(id, t.into(), budget).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn census(id: &str) -> Result<String, JsValue> {
    census_json(id).map_err(|e| JsValue::from_str(&e))
}
