//! Browser bindings: list the registry, verify one entry, and tabulate both sides.
//!
//! Every export returns a JSON string. The `*_json` functions are the native entry points
//! the exports wrap.

use cpl_core::qseries::{restricted_counts, verify_identity};
use cpl_core::{builtin_registry, IdentitySpec};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `n_max` accepted from the page, to keep the tab responsive.
pub const WEB_NMAX: u64 = 3000;

fn find(name: &str) -> Result<IdentitySpec, String> {
    builtin_registry()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| format!("unknown identity {name:?}"))
}

fn check_bound(n_max: u64) -> Result<(), String> {
    if !(1..=WEB_NMAX).contains(&n_max) {
        return Err(format!("n_max must lie in 1..={WEB_NMAX}"));
    }
    Ok(())
}

pub fn catalog_json() -> String {
    let rows: Vec<Value> = builtin_registry()
        .iter()
        .map(|s| {
            json!({
                "name": s.name(),
                "status": s.status().as_str(),
                "source": s.source(),
                "C": s.modulus(),
                "A": s.a(),
                "B": s.b(),
                "m": s.m(),
                "N0": s.n0(),
                "factor": s.factor().to_string(),
            })
        })
        .collect();
    Value::Array(rows).to_string()
}

pub fn verify_json(name: &str, n_max: u64) -> Result<String, String> {
    check_bound(n_max)?;
    let spec = find(name)?;
    let r = verify_identity(&spec, n_max).map_err(|e| e.to_string())?;
    let failure = |f: &cpl_core::Failure| {
        json!({"N": f.n, "left": f.left.to_string(), "right": f.right.to_string()})
    };
    Ok(json!({
        "spec": r.spec_name,
        "n_from": r.n_from,
        "n_to": r.n_to,
        "holds": r.holds,
        "first_failure": r.first_failure.as_ref().map(failure),
        "below_n0": r.sub_n0_observations.iter().map(failure).collect::<Vec<_>>(),
    })
    .to_string())
}

/// Rows `[N, D_S(N), D_T(N − m)]` for `N ≤ n_max`, counts as decimal strings.
pub fn table_json(name: &str, n_max: u64) -> Result<String, String> {
    check_bound(n_max)?;
    let spec = find(name)?;
    let left = restricted_counts(&spec.left_set(), n_max as usize);
    let right = restricted_counts(&spec.right_set(), n_max as usize);
    let m = spec.m() as usize;
    let rows: Vec<Value> = (0..=n_max as usize)
        .map(|n| {
            let r = if n >= m { right[n - m].to_string() } else { "0".into() };
            json!([n, left[n].to_string(), r])
        })
        .collect();
    Ok(json!({"spec": spec.name(), "factor": spec.factor().to_string(), "rows": rows}).to_string())
}

#[wasm_bindgen]
pub fn catalog() -> String {
    catalog_json()
}

#[wasm_bindgen]
pub fn verify(name: &str, n_max: u32) -> Result<String, JsValue> {
    verify_json(name, n_max as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn table(name: &str, n_max: u32) -> Result<String, JsValue> {
    table_json(name, n_max as u64).map_err(|e| JsValue::from_str(&e))
}
