//! Browser bindings: route diagrams, the one-variable max-modulus curve and
//! dilation residuals. Every export returns a JSON string.

use num_complex::Complex64;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use qball::algebra::{AlgebraTag, NCPolynomial};
use qball::rep::dilation::finite_dilation;
use qball::rep::factor::dense_norm;
use qball::rep::{enumerate_paths, FactorKind, TruncationConfig};
use qball::verify::{boundary_sup, n1_max_modulus};

#[derive(Serialize)]
pub struct Diagram {
    pub picture: String,
    pub term: String,
    pub prefactor: String,
}

pub fn diagrams(n: usize, j: usize, k: usize) -> Result<Vec<Diagram>, String> {
    if n > 6 {
        return Err(format!("n = {n} is too large to draw"));
    }
    let routes = enumerate_paths(n, j, k).map_err(|e| e.to_string())?;
    Ok(routes
        .iter()
        .map(|d| Diagram {
            picture: d.picture(),
            term: d.factors().iter().map(|f| f.symbol()).collect::<Vec<_>>().join("⊗"),
            prefactor: d.prefactor.to_string(),
        })
        .collect())
}

#[derive(Serialize)]
pub struct Curve {
    pub polynomial: String,
    pub sup: f64,
    pub truncations: Vec<usize>,
    pub norms: Vec<f64>,
}

/// `||P_N p(T) P_N||` against `sup |p|` on the circle for a polynomial in `z[1,1]`.
pub fn curve(poly: &str, q: f64, max_trunc: usize) -> Result<Curve, String> {
    let p = NCPolynomial::parse(poly, AlgebraTag::MatQ, 1).map_err(|e| e.to_string())?;
    if !p.is_holomorphic() {
        return Err("use z[1,1] only".into());
    }
    let degree = p.degree().unwrap_or(0);
    let max_trunc = max_trunc.clamp(degree + 2, 1024);
    let truncations: Vec<usize> = (1..=max_trunc).filter(|t| *t > degree).filter(|t| t.is_power_of_two() || *t == max_trunc).collect();
    let cfg = TruncationConfig::new(q, max_trunc).map_err(|e| e.to_string())?;
    let sup = boundary_sup(&p, &cfg, 2048, 1e-12).map_err(|e| e.to_string())?;
    let norms = n1_max_modulus(&p, q, &truncations, 1e-12).map_err(|e| e.to_string())?;
    Ok(Curve { polynomial: p.to_string(), sup, truncations, norms })
}

#[derive(Serialize)]
pub struct Residuals {
    pub steps: usize,
    pub unitarity: f64,
    /// `||P U^k P - T^k||` for `k = 1 ..= steps + 3`.
    pub powers: Vec<f64>,
}

/// Residuals of the dilation of `C_q S` truncated at `trunc`; powers past `steps` are expected to fail.
pub fn residuals(q: f64, trunc: usize, steps: usize) -> Result<Residuals, String> {
    if trunc > 48 || steps > 12 {
        return Err("trunc <= 48 and steps <= 12".into());
    }
    let cfg = TruncationConfig::new(q, trunc).map_err(|e| e.to_string())?;
    let t = FactorKind::CqS.to_dense(&cfg);
    let (dil, _) = finite_dilation(&t, steps).map_err(|e| e.to_string())?;
    let u = &dil.unitary;
    let id = nalgebra::DMatrix::<Complex64>::identity(u.nrows(), u.ncols());
    let unitarity = dense_norm(&(u.adjoint() * u - id));
    let mut tk = nalgebra::DMatrix::<Complex64>::identity(t.nrows(), t.ncols());
    let powers = (1..=dil.steps + 3)
        .map(|k| {
            tk = &t * &tk;
            dense_norm(&(dil.compressed_power(k) - &tk))
        })
        .collect();
    Ok(Residuals { steps: dil.steps, unitarity, powers })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn path_diagrams(n: usize, j: usize, k: usize) -> Result<String, JsError> {
    to_js(diagrams(n, j, k))
}

#[wasm_bindgen]
pub fn max_modulus_curve(poly: &str, q: f64, max_trunc: usize) -> Result<String, JsError> {
    to_js(curve(poly, q, max_trunc))
}

#[wasm_bindgen]
pub fn dilation_residuals(q: f64, trunc: usize, steps: usize) -> Result<String, JsError> {
    to_js(residuals(q, trunc, steps))
}
