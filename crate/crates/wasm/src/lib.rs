//! Browser bindings for the interactive demo page (`www/index.html`).
//!
//! Three operations are exposed, all returning JSON strings: normalize two
//! elements and commute them, iterate the shift operator D_mu on an element,
//! and build the generating family of the quantum Mishchenko--Fomenko
//! subalgebra (optionally verifying pairwise commutativity). Everything runs
//! in exact rational arithmetic inside the browser.

use std::sync::Arc;

use wasm_bindgen::prelude::*;

use argshift_core::algebra::{AlgebraSpec, Family};
use argshift_core::error::AlgebraError;
use argshift_core::generators::amu_generating_family;
use argshift_core::parse::parse_element;
use argshift_core::quasi::d_mu;
use argshift_core::shift::ShiftMatrix;

fn build_spec(family: &str, n: usize) -> Result<Arc<AlgebraSpec>, AlgebraError> {
    AlgebraSpec::build(Family::parse(family)?, n)
}

fn err_json(e: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": e.to_string() }).to_string()
}

/// Parse and normalize two elements, return them with their commutator.
#[wasm_bindgen]
pub fn commutator(family: &str, n: usize, a: &str, b: &str) -> String {
    let inner = || -> Result<String, AlgebraError> {
        let spec = build_spec(family, n)?;
        let x = parse_element(&spec, a)?;
        let y = parse_element(&spec, b)?;
        let c = x.commutator(&y);
        Ok(serde_json::json!({
            "a": x.to_string(),
            "b": y.to_string(),
            "commutator": c.to_string(),
            "commute": c.is_zero(),
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

/// Iterate D_mu on an element for the family's generic shift matrix
/// (or a custom mu file content passed as JSON). Returns every iterate.
#[wasm_bindgen]
pub fn apply_dmu(family: &str, n: usize, element: &str, power: u32, mu_json: &str) -> String {
    let inner = || -> Result<String, AlgebraError> {
        let spec = build_spec(family, n)?;
        let mu = if mu_json.trim().is_empty() {
            ShiftMatrix::generic(&spec)
        } else {
            let mu = ShiftMatrix::from_json(mu_json)?;
            if mu.spec().key() != spec.key() {
                return Err(AlgebraError::SpecMismatch {
                    left: format!("{} N={}", spec.family(), spec.n()),
                    right: format!("{} N={}", mu.spec().family(), mu.spec().n()),
                });
            }
            mu
        };
        let mut cur = parse_element(&spec, element)?;
        let mut iterates = vec![cur.to_string()];
        for _ in 0..power.min(8) {
            cur = d_mu(&mu, &cur);
            iterates.push(cur.to_string());
        }
        Ok(serde_json::json!({
            "mu": serde_json::from_str::<serde_json::Value>(&mu.to_json()).unwrap(),
            "iterates": iterates,
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

/// Build the generating family for the generic shift matrix; optionally
/// verify that all members pairwise commute.
#[wasm_bindgen]
pub fn generating_family(family: &str, n: usize, verify: bool) -> String {
    let inner = || -> Result<String, AlgebraError> {
        let spec = build_spec(family, n)?;
        let mu = ShiftMatrix::generic(&spec);
        let fam = amu_generating_family(&spec, &mu)?;
        let commutes = verify.then(|| {
            for i in 0..fam.members.len() {
                for j in i + 1..fam.members.len() {
                    if !fam.members[i].1.commutator(&fam.members[j].1).is_zero() {
                        return false;
                    }
                }
            }
            true
        });
        Ok(serde_json::json!({
            "mu": serde_json::from_str::<serde_json::Value>(&mu.to_json()).unwrap(),
            "members": fam.to_json(),
            "pairwise_commute": commutes,
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_return_json() {
        let out = commutator("glN", 2, "E[1,2]", "E[2,1]");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["commutator"], "E[1,1] - E[2,2]");
        assert_eq!(v["commute"], false);

        let out = apply_dmu("glN", 2, "E[1,1]^2", 2, "");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["iterates"].as_array().unwrap().len(), 3);

        let out = generating_family("glN", 2, true);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pairwise_commute"], true);
        assert_eq!(v["members"].as_array().unwrap().len(), 3);

        let out = commutator("nonsense", 2, "E[1,1]", "E[1,1]");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["error"].is_string());
    }
}
