//! WebAssembly bindings for the browser demo in `www/`. Every export
//! returns a JSON string.

use wasm_bindgen::prelude::*;

use torus_cobordism::bounds::report;
use torus_cobordism::export::profile_json;
use torus_cobordism::planner::SearchBudget;
use torus_cobordism::stable::{ball_polygon, SpanBasis};
use torus_cobordism::{ProfileCache, TorusLink};

/// Largest parameter the demo accepts, to keep the page responsive.
pub const MAX_PARAM: u64 = 400;
const SEARCH_CAP: u64 = 30;

fn check(params: &[u64]) -> Result<(), String> {
    match params.iter().find(|&&x| x == 0 || x > MAX_PARAM) {
        Some(x) => Err(format!("parameters must be between 1 and {MAX_PARAM}, got {x}")),
        None => Ok(()),
    }
}

fn budget(params: &[u64]) -> SearchBudget {
    SearchBudget::new(params.iter().copied().max().unwrap_or(1).min(SEARCH_CAP))
}

fn cache() -> &'static ProfileCache {
    ProfileCache::global()
}

pub fn profile_document(p: u64, q: u64) -> Result<String, String> {
    check(&[p, q])?;
    let link = TorusLink::new(p, q).map_err(|e| e.to_string())?;
    Ok(profile_json(&cache().get(&link)))
}

pub fn report_document(a: u64, b: u64, c: u64, d: u64) -> Result<String, String> {
    check(&[a, b, c, d])?;
    let r = report(a, b, c, d, budget(&[a, b, c, d]), cache()).map_err(|e| e.to_string())?;
    Ok(r.to_json_line())
}

pub fn ball_document(a: u64, b: u64, c: u64, d: u64, resolution: u32) -> Result<String, String> {
    check(&[a, b, c, d])?;
    let k = TorusLink::new(a, b).map_err(|e| e.to_string())?;
    let l = TorusLink::new(c, d).map_err(|e| e.to_string())?;
    let basis = SpanBasis::new(k, l, budget(&[a, b, c, d]), cache()).map_err(|e| e.to_string())?;
    let rays = ball_polygon(&basis, resolution.min(720)).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&rays).expect("rays serialize"))
}

/// Signature profile of T(p,q).
#[wasm_bindgen]
pub fn signature_profile(p: u32, q: u32) -> Result<String, JsValue> {
    profile_document(p.into(), q.into()).map_err(|e| JsValue::from_str(&e))
}

/// Bound report for T(a,b) and T(c,d).
#[wasm_bindgen]
pub fn bound_report(a: u32, b: u32, c: u32, d: u32) -> Result<String, JsValue> {
    report_document(a.into(), b.into(), c.into(), d.into()).map_err(|e| JsValue::from_str(&e))
}

/// Radii of the stable-genus unit ball on span{T(a,b), T(c,d)}.
#[wasm_bindgen]
pub fn norm_ball(a: u32, b: u32, c: u32, d: u32, resolution: u32) -> Result<String, JsValue> {
    ball_document(a.into(), b.into(), c.into(), d.into(), resolution).map_err(|e| JsValue::from_str(&e))
}
