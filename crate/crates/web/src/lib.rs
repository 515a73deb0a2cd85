//! Browser bindings: one ideal operation, the idealization example and the
//! chase audit. Each returns text or JSON for the page in `www/`.

use wasm_bindgen::prelude::*;

use scoherent::engine::{chase_audit, AuditConfig};
use scoherent::ideal;
use scoherent::lab;
use scoherent::mult_set::MultSet;
use scoherent::parse::{parse_element, parse_ideal, parse_ring, parse_vector};

/// `op` is `colon`, `intersect`, `sum` or `ann`; `b` is an element for
/// `colon`, an ideal for `intersect`/`sum`, and unused for `ann` (where `a`
/// is the element).
pub fn ideal_op_text(ring: &str, op: &str, a: &str, b: &str) -> Result<String, String> {
    let r = parse_ring(ring).map_err(|e| format!("ring: {e}"))?;
    let id = |t: &str| parse_ideal(t, &r).map_err(|e| format!("ideal {t:?}: {e}"));
    let el = |t: &str| parse_element(t, &r).map_err(|e| format!("element {t:?}: {e}"));
    let out = match op {
        "colon" => ideal::colon(&id(a)?, &el(b)?),
        "intersect" => ideal::intersect(&id(a)?, &id(b)?),
        "sum" => ideal::sum(&id(a)?, &id(b)?),
        "ann" => ideal::annihilator(&r, &[el(a)?]),
        other => return Err(format!("unknown operation {other:?}")),
    };
    Ok(out.to_string())
}

pub fn chase_audit_text(
    ring: &str,
    sset: &str,
    trials: usize,
    seed: u64,
) -> Result<String, String> {
    let r = parse_ring(ring).map_err(|e| format!("ring: {e}"))?;
    let gens = parse_vector(&format!("[{sset}]"), &r).map_err(|e| format!("S generators: {e}"))?;
    let set = MultSet::degenerate(&r, gens).map_err(|e| e.to_string())?;
    let cfg = AuditConfig {
        trials,
        seed,
        parallel: false,
        ..AuditConfig::default()
    };
    Ok(chase_audit(&r, &set, &cfg).to_markdown())
}

#[wasm_bindgen]
pub fn ideal_op(ring: &str, op: &str, a: &str, b: &str) -> Result<String, JsError> {
    ideal_op_text(ring, op, a, b).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn example_demo() -> String {
    lab::example_demo().to_markdown()
}

/// `sset` lists the generators of S separated by commas; empty means S = {1}.
#[wasm_bindgen]
pub fn audit(ring: &str, sset: &str, trials: usize, seed: u64) -> Result<String, JsError> {
    chase_audit_text(ring, sset, trials, seed).map_err(|e| JsError::new(&e))
}
