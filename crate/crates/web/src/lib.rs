//! wasm-bindgen exports for the static demo page in `www/`.
//!
//! Every export takes plain strings/numbers and returns a JSON string, or an
//! error message that the page shows verbatim.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use lmo_core::dedekind::{dedekind_symbol, dedekind_table as table, Fraction};
use lmo_core::exact::rational_to_string;
use lmo_core::invariants::{lens_report, seifert_report, Fiber, LensData, SeifertData};
use lmo_core::presentation::{cfrac_expand, dedekind_via_surgery};

/// Keeps the page responsive; the exact series grow quickly in size.
pub const MAX_ORDER: usize = 16;
pub const MAX_QMAX: i64 = 120;

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// `S(p/q)` by the direct sum and through the continued fraction.
#[wasm_bindgen]
pub fn dedekind(fraction: &str) -> Result<String, String> {
    let f: Fraction = fraction.parse().map_err(|e: lmo_core::Error| e.to_string())?;
    let s = dedekind_symbol(f.p(), f.q()).map_err(|e| e.to_string())?;
    let c = cfrac_expand(f.p(), f.q()).map_err(|e| e.to_string())?;
    let via = dedekind_via_surgery(f.p(), f.q()).map_err(|e| e.to_string())?;
    to_json(&json!({
        "fraction": f.to_string(),
        "S": rational_to_string(&s),
        "S_surgery": rational_to_string(&via),
        "a": c.a,
        "tau": c.tau,
        "sigma": c.sigma,
    }))
}

/// Rows `{p, q, qS}` for `q ≤ qmax`.
#[wasm_bindgen]
pub fn dedekind_table(qmax: i64) -> Result<String, String> {
    if qmax > MAX_QMAX {
        return Err(format!("qmax is limited to {MAX_QMAX} here"));
    }
    to_json(&table(qmax).map_err(|e| e.to_string())?)
}

fn check_order(order: usize) -> Result<(), String> {
    if order > MAX_ORDER {
        return Err(format!("order is limited to {MAX_ORDER} here"));
    }
    Ok(())
}

/// LMO series of `L(p, q)`.
#[wasm_bindgen]
pub fn lens(p: i64, q: i64, order: usize) -> Result<String, String> {
    check_order(order)?;
    let l = LensData::new(p, q).map_err(|e| e.to_string())?;
    to_json(&lens_report(&l, order).map_err(|e| e.to_string())?)
}

/// LMO series and Casson-Walker invariant of `S³(b; fibers)`, where `fibers`
/// is a whitespace or comma separated list of `p/q`.
#[wasm_bindgen]
pub fn seifert(b: i64, fibers: &str, order: usize) -> Result<String, String> {
    check_order(order)?;
    let fs = fibers
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Fiber>().map(|f| (f.p, f.q)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let m = SeifertData::new(b, &fs).map_err(|e| e.to_string())?;
    let r = seifert_report(&m, order).map_err(|e| e.to_string())?;
    let mut v = serde_json::to_value(&r).map_err(|e| e.to_string())?;
    v["manifold"] = json!(m.to_string());
    to_json(&v)
}
