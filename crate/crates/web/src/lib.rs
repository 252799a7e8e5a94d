//! Browser bindings for `weylreps`.
//!
//! Each operation is a plain function over JSON strings, so it can be tested
//! natively; the `#[wasm_bindgen]` wrappers only convert errors.

use serde_json::json;
use wasm_bindgen::prelude::*;
use weylreps::gns::{continuity_scan, is_regular_direction, Direction};
use weylreps::schrodinger_oracle::mean_quadrature;
use weylreps::serial::{element_from_json, element_to_json, poly_from_json};
use weylreps::{Error, Rational, Result, StateFunctional};

pub const MAX_SCAN_STEPS: u32 = 4096;
pub const MAX_PROFILE_SAMPLES: u32 = 20_000;
pub const PROFILE_AVERAGING_WINDOW: f64 = 1000.0;

/// Exact grid `from + k (to - from) / steps` for `k = 0..=steps`.
pub fn uniform_grid(from: &str, to: &str, steps: u32) -> Result<Vec<Rational>> {
    if steps == 0 || steps > MAX_SCAN_STEPS {
        return Err(Error::InvalidArgument(format!("steps must be in 1..={MAX_SCAN_STEPS}, got {steps}")));
    }
    let from: Rational = from.parse()?;
    let to: Rational = to.parse()?;
    let h = (&to - &from) * Rational::new(1, steps as i64);
    Ok((0..=steps).map(|k| &from + &(&h * &Rational::integer(k as i64))).collect())
}

/// `{"regular": bool, "rows": [{"t": "1/8", "re": .., "im": ..}, ..]}`
pub fn scan_json(state: &str, direction: &str, from: &str, to: &str, steps: u32) -> Result<String> {
    let state: StateFunctional = state.parse()?;
    let direction: Direction = direction.parse()?;
    let grid = uniform_grid(from, to, steps)?;
    let rows: Vec<_> = continuity_scan(&state, direction, &grid)?
        .into_iter()
        .map(|(t, z)| json!({"t": t.to_string(), "x": t.to_f64(), "re": z.re, "im": z.im}))
        .collect();
    Ok(json!({
        "state": state.to_string(),
        "direction": direction.to_string(),
        "regular": is_regular_direction(&state, direction),
        "rows": rows,
    })
    .to_string())
}

/// Samples of a trigonometric polynomial on `[x_min, x_max]` together with its
/// exact mean, sampled sup-norm bounds and a windowed average over `[-N, N]`.
pub fn profile_json(poly: &str, x_min: f64, x_max: f64, samples: u32) -> Result<String> {
    if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
        return Err(Error::InvalidArgument(format!("bad window [{x_min}, {x_max}]")));
    }
    if !(2..=MAX_PROFILE_SAMPLES).contains(&samples) {
        return Err(Error::InvalidArgument(format!("samples must be in 2..={MAX_PROFILE_SAMPLES}, got {samples}")));
    }
    let f = poly_from_json(poly)?;
    let h = (x_max - x_min) / (samples - 1) as f64;
    let xs: Vec<f64> = (0..samples).map(|k| x_min + h * k as f64).collect();
    let vals: Vec<_> = xs.iter().map(|&x| f.evaluate_at(x)).collect();
    let mean = f.invariant_mean();
    let windowed = mean_quadrature(&f, PROFILE_AVERAGING_WINDOW)?;
    let (lo, hi) = f.sup_norm_bounds();
    Ok(json!({
        "xs": xs,
        "re": vals.iter().map(|z| z.re).collect::<Vec<_>>(),
        "im": vals.iter().map(|z| z.im).collect::<Vec<_>>(),
        "mean": [mean.re, mean.im],
        "windowed_mean": [windowed.re, windowed.im],
        "window": PROFILE_AVERAGING_WINDOW,
        "truncation_bound": f.truncation_constant() / PROFILE_AVERAGING_WINDOW,
        "sup_bounds": [lo, hi],
    })
    .to_string())
}

/// Product of two elements in the term-list format.
pub fn product_json(left: &str, right: &str) -> Result<String> {
    let x = element_from_json(left)?;
    let y = element_from_json(right)?;
    Ok(element_to_json(&(&x * &y)))
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn scan(state: &str, direction: &str, from: &str, to: &str, steps: u32) -> std::result::Result<String, JsError> {
    scan_json(state, direction, from, to, steps).map_err(js)
}

#[wasm_bindgen]
pub fn profile(poly: &str, x_min: f64, x_max: f64, samples: u32) -> std::result::Result<String, JsError> {
    profile_json(poly, x_min, x_max, samples).map_err(js)
}

#[wasm_bindgen]
pub fn product(left: &str, right: &str) -> std::result::Result<String, JsError> {
    product_json(left, right).map_err(js)
}
