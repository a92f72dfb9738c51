//! Browser bindings: each export takes JSON or plain text and returns a JSON
//! string. The `*_json` functions are the plain-Rust versions used by tests.

use hkq::cogen::{admissible_sets, volume_polynomial};
use hkq::hyperpolygon::{hp_presentation, upsilon_check, validate_alpha, PolygonSpec};
use hkq::hypertoric::{kirwan_presentation_in, Arrangement, Flavor};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn one_based(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|i| i + 1).collect()).collect()
}

fn render(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("values serialize")
}

/// Kirwan presentation of `flavor` (H, HTd, HS1 or HTdS1) over ℚ.
pub fn presentation_json(arrangement: &str, flavor: &str) -> hkq::Result<String> {
    let arr = Arrangement::from_json(arrangement)?;
    let flavor = Flavor::parse(flavor)?;
    let p = kirwan_presentation_in(&arr, flavor, hkq::algebra::Field::Q)?;
    Ok(render(json!({
        "flavor": format!("{flavor:?}"),
        "ideal": p.ring.relations().to_json(),
        "factored": p.factored,
        "hilbert_function": p.ring.hilbert_function(arr.n() as u32),
    })))
}

/// `P^r_A` for every admissible `A` at the arrangement's own offsets.
pub fn volume_polynomials_json(arrangement: &str) -> hkq::Result<String> {
    let arr = Arrangement::from_json(arrangement)?;
    arr.require_simple()?;
    let mut out = Vec::new();
    for a in admissible_sets(&arr) {
        let p = volume_polynomial(&arr, &a, &arr.offsets)?;
        let a1: Vec<usize> = a.iter().map(|i| i + 1).collect();
        out.push(json!({ "a": a1, "poly": p.poly.to_string() }));
    }
    Ok(render(json!({ "polynomials": out })))
}

/// Short sets, the equivariant Hilbert function and the Υ check for
/// comma-separated edge lengths.
pub fn polygon_json(alphas: &str) -> hkq::Result<String> {
    let alphas: Vec<&str> = alphas.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let spec = PolygonSpec::from_json(&json!({ "alphas": alphas }).to_string())?;
    let sets = validate_alpha(&spec)?;
    let n = spec.n();
    let hf = hp_presentation(&spec)?.hilbert_function(n as u32);
    let upsilon = if n >= 4 { Some(upsilon_check(&spec)?.unit_lower_triangular) } else { None };
    Ok(render(json!({
        "short_sets": one_based(&sets.nonempty()),
        "s_prime": one_based(&sets.s_prime()),
        "hilbert_function": hf,
        "upsilon_unit_lower_triangular": upsilon,
    })))
}

fn js(r: hkq::Result<String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn presentation(arrangement: &str, flavor: &str) -> Result<String, JsError> {
    js(presentation_json(arrangement, flavor))
}

#[wasm_bindgen]
pub fn volume_polynomials(arrangement: &str) -> Result<String, JsError> {
    js(volume_polynomials_json(arrangement))
}

#[wasm_bindgen]
pub fn polygon(alphas: &str) -> Result<String, JsError> {
    js(polygon_json(alphas))
}
