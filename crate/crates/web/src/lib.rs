//! Browser demo. Each operation takes plain strings and numbers and returns a
//! JSON document; the `#[wasm_bindgen]` exports are thin wrappers so the same
//! functions run in native tests.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use twoforest::families::{self, Family, FamilySpec};
use twoforest::forest::{count_spanning_trees, count_two_forests};
use twoforest::invariants::{invariant_bundle, main_identity, resistance_lower_bound};
use twoforest::potential::PotentialProfile;
use twoforest::sampling::estimate_expected_cut;
use twoforest::Graph;

/// Largest family size the demo will build; keeps the page responsive.
const MAX_FAMILY_SIZE: usize = 40;
const MAX_TRIALS: u64 = 1_000_000;

fn exact(x: &BigRational) -> Value {
    json!({ "exact": x.to_string(), "approx": x.to_f64() })
}

fn parse(edge_list: &str) -> Result<Graph, String> {
    let g: Graph = edge_list.parse().map_err(|e: twoforest::Error| e.to_string())?;
    g.require_connected().map_err(|e| e.to_string())?;
    Ok(g)
}

/// Counts, constants, curvature and the resistance matrix of an edge list.
pub fn analyze(edge_list: &str) -> Result<String, String> {
    let g = parse(edge_list)?;
    let b = invariant_bundle(&g).map_err(|e| e.to_string())?;
    let p = PotentialProfile::new(&g).map_err(|e| e.to_string())?;
    let identity = if g.has_unit_lengths() && g.vertex_count() >= 2 {
        Some(main_identity(&g).map_err(|e| e.to_string())?.passed())
    } else {
        None
    };
    let resistance: Vec<Vec<Value>> = p
        .resistance()
        .iter_rows()
        .map(|row| row.iter().map(exact).collect())
        .collect();
    let doc = json!({
        "n": b.n,
        "m": b.m,
        "genus": b.genus,
        "edges": g.edges().iter().map(|e| [e.tail, e.head]).collect::<Vec<_>>(),
        "kappa": b.kappa.to_string(),
        "kappa2": b.kappa2.to_string(),
        "ratio": exact(&b.ratio),
        "gamma": exact(&b.gamma),
        "eta": b.eta.as_ref().map(exact),
        "tau": b.tau.as_ref().map(exact),
        "expected_cut": b.expected_cut.as_ref().map(exact),
        "sum_r2": exact(&b.sum_r2),
        "lower_bound": (b.n >= 2).then(|| exact(&resistance_lower_bound(b.n, b.m))),
        "mu": p.curvature().iter().map(exact).collect::<Vec<_>>(),
        "resistance": resistance,
        "identity_holds": identity,
    });
    Ok(doc.to_string())
}

/// Computed and closed-form counts for sizes `from..=to` of a family.
pub fn family_series(tag: &str, from: usize, to: usize) -> Result<String, String> {
    let family: Family = tag.parse()?;
    if to > MAX_FAMILY_SIZE || from > to {
        return Err(format!("sizes must satisfy from <= to <= {MAX_FAMILY_SIZE}"));
    }
    let mut rows = Vec::new();
    for n in from.max(family.min_size())..=to {
        let spec = FamilySpec { family, n };
        let g = families::build(spec).map_err(|e| e.to_string())?;
        let kappa = count_spanning_trees(&g).map_err(|e| e.to_string())?;
        let kappa2 = count_two_forests(&g).map_err(|e| e.to_string())?;
        let formula = families::closed_form(spec).ok();
        let ratio = BigRational::new(kappa2.clone(), kappa.clone());
        let bound = resistance_lower_bound(g.vertex_count(), g.edge_count());
        rows.push(json!({
            "n": n,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "kappa": kappa.to_string(),
            "kappa2": kappa2.to_string(),
            "matches_formula": formula.map(|f| f == (kappa, kappa2)),
            "ratio": exact(&ratio),
            "lower_bound": exact(&bound),
        }));
        if family == Family::House {
            break;
        }
    }
    Ok(json!({ "family": family.tag(), "rows": rows }).to_string())
}

/// Monte Carlo estimate of the expected cut size next to the exact value.
pub fn sample_cut(edge_list: &str, trials: u64, seed: u64) -> Result<String, String> {
    if trials > MAX_TRIALS {
        return Err(format!("at most {MAX_TRIALS} trials"));
    }
    let g = parse(edge_list)?;
    let est = estimate_expected_cut(&g, trials, seed).map_err(|e| e.to_string())?;
    let exact_value = twoforest::invariants::expected_cut_size(&g).map_err(|e| e.to_string())?;
    let doc = json!({
        "trials": est.trials,
        "seed": est.seed.to_string(),
        "estimate": est.estimate,
        "std_error": est.std_error,
        "exact": exact(&exact_value),
        "histogram": est.histogram.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
    });
    Ok(doc.to_string())
}

#[cfg(target_arch = "wasm32")]
mod bindings {
    use wasm_bindgen::prelude::*;

    #[wasm_bindgen]
    pub fn analyze(edge_list: &str) -> Result<String, JsError> {
        super::analyze(edge_list).map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen]
    pub fn family_series(tag: &str, from: usize, to: usize) -> Result<String, JsError> {
        super::family_series(tag, from, to).map_err(|e| JsError::new(&e))
    }

    /// `seed` arrives as a JS number, so it is limited to 2^53.
    #[wasm_bindgen]
    pub fn sample_cut(edge_list: &str, trials: u32, seed: f64) -> Result<String, JsError> {
        super::sample_cut(edge_list, trials.into(), seed as u64).map_err(|e| JsError::new(&e))
    }
}
