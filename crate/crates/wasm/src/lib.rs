//! Browser bindings for the condenser toolkit: three JSON-producing
//! operations behind `wasm_bindgen`, consumed by the static page in `www/`.
//!
//! Everything here is a thin serialization layer; the numerics live in
//! `bohrlab-core`. The crate also compiles natively so the payload builders
//! can be unit-tested without a browser.

use num_complex::Complex64;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use bohrlab_core::bohr::{
    lower_certificate, lower_scan, solve_upper, CertificateParams, NormSource, SolveOptions,
};
use bohrlab_core::gallery::{lookup, Condenser};
use bohrlab_core::norms::{norm_sampled, NormModel, SampleParams};
use bohrlab_core::Result;

#[derive(Serialize)]
struct CurveJson {
    r: f64,
    points: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct GeometryJson {
    name: String,
    convex: bool,
    positive_class: Option<bool>,
    boundary: Vec<[f64; 2]>,
    levels: Vec<CurveJson>,
}

fn sample_curve(cond: &Condenser, r: f64, nodes: usize) -> Result<Vec<[f64; 2]>> {
    let mut points = Vec::with_capacity(nodes + 1);
    for k in 0..=nodes {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
        let w = Complex64::from_polar(r, theta);
        let z = cond.map.eval(w)?;
        let z = match &cond.affine {
            Some(a) => a.apply(z),
            None => z,
        };
        points.push([z.re, z.im]);
    }
    Ok(points)
}

fn geometry_payload(id: &str, levels: &[f64]) -> Result<String> {
    let cond = lookup(id)?;
    let boundary = sample_curve(&cond, 1.0, 512)?;
    let mut level_curves = Vec::with_capacity(levels.len());
    for &r in levels {
        if r > 1.0 {
            level_curves.push(CurveJson {
                r,
                points: sample_curve(&cond, r, 512)?,
            });
        }
    }
    let payload = GeometryJson {
        name: cond.name.clone(),
        convex: cond.convex,
        positive_class: cond.positive_class,
        boundary,
        levels: level_curves,
    };
    Ok(serde_json::to_string(&payload)?)
}

#[derive(Serialize)]
struct NormRowJson {
    n: usize,
    sampled: f64,
    sampled_gap: f64,
    exact: Option<f64>,
    bound_general: f64,
    bound_convex: Option<f64>,
}

fn norms_payload(id: &str, n_max: usize) -> Result<String> {
    let cond = lookup(id)?;
    let params = SampleParams {
        // the page wants responsiveness over the last digit
        theta_grid: 1024,
        ..Default::default()
    };
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max.max(1) {
        let sampled = norm_sampled(&cond.map, n, &params)?;
        let exact = match &cond.exact_norms {
            Some(m) if m.is_exact() => Some(m.value(n)?),
            _ => None,
        };
        rows.push(NormRowJson {
            n,
            sampled: sampled.value,
            sampled_gap: sampled.gap,
            exact,
            bound_general: NormModel::BoundGeneral.value(n)?,
            bound_convex: cond.convex.then_some(2.0),
        });
    }
    Ok(serde_json::to_string(&rows)?)
}

#[derive(Serialize)]
struct CertificateJson {
    level: f64,
    r1: f64,
    bohr_sum: f64,
    boundary_sup: f64,
    certified: bool,
}

#[derive(Serialize)]
struct BracketJson {
    name: String,
    upper: f64,
    upper_method: String,
    lower: f64,
    certificates: Vec<CertificateJson>,
}

fn bracket_payload(id: &str) -> Result<String> {
    let cond = lookup(id)?;
    let options = SolveOptions::default();
    let model = match &cond.exact_norms {
        Some(m) => m.clone(),
        None if cond.convex => NormModel::BoundConvex,
        None => NormModel::BoundGeneral,
    };
    let upper = solve_upper(&model, &options)?;

    let source = match &cond.exact_norms {
        Some(m) if m.is_exact() => NormSource::Exact(m.clone()),
        _ => NormSource::PositiveClass,
    };
    let cert_params = CertificateParams::default();
    let levels: Vec<f64> = (0..16).map(|i| 2.2 + 0.15 * i as f64).collect();
    let r1_grid = [0.9, 0.99, 0.999];
    let lower = lower_scan(&cond.map, &source, &levels, &r1_grid, &cert_params)?;

    let mut certificates = Vec::new();
    for &level in &levels {
        for &r1 in &r1_grid {
            let cert = lower_certificate(&cond.map, &source, level, r1, &cert_params)?;
            certificates.push(CertificateJson {
                level,
                r1,
                bohr_sum: cert.bohr_sum,
                boundary_sup: cert.boundary_sup,
                certified: cert.certified,
            });
        }
    }
    let payload = BracketJson {
        name: cond.name.clone(),
        upper: upper.level,
        upper_method: upper.method,
        lower: lower.level,
        certificates,
    };
    Ok(serde_json::to_string(&payload)?)
}

fn to_js<T>(result: Result<T>) -> std::result::Result<T, JsValue> {
    result.map_err(|e| JsValue::from_str(&e.to_string()))
}

/// Boundary curve and Green level curves of a condenser, as JSON.
#[wasm_bindgen]
pub fn condenser_geometry(id: &str, levels: &str) -> std::result::Result<String, JsValue> {
    let levels: Vec<f64> = levels
        .split(',')
        .filter_map(|s| s.trim().parse().ok())
        .collect();
    to_js(geometry_payload(id, &levels))
}

/// Sup-norm table rows (sampled estimate, exact value when known, bounds).
#[wasm_bindgen]
pub fn norm_table(id: &str, n_max: usize) -> std::result::Result<String, JsValue> {
    to_js(norms_payload(id, n_max))
}

/// Upper/lower Bohr-radius bracket plus the certificate grid behind the
/// lower bound.
#[wasm_bindgen]
pub fn bohr_bracket(id: &str) -> std::result::Result<String, JsValue> {
    to_js(bracket_payload(id))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_payload_has_closed_boundary() {
        let text = geometry_payload("h3", &[1.5, 2.0]).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        let boundary = parsed["boundary"].as_array().unwrap();
        assert_eq!(boundary.len(), 513);
        assert_eq!(parsed["levels"].as_array().unwrap().len(), 2);
        // cusp of the 3-cusped hypocycloid at theta = 0: z = 1.5
        assert!((boundary[0][0].as_f64().unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn norm_rows_carry_exact_values_for_h3() {
        let text = norms_payload("h3", 4).unwrap();
        let rows: serde_json::Value = serde_json::from_str(&text).unwrap();
        let rows = rows.as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert!((rows[0]["exact"].as_f64().unwrap() - 1.5).abs() < 1e-12);
        assert!((rows[1]["exact"].as_f64().unwrap() - 2.25).abs() < 1e-12);
        assert!(rows[0]["bound_convex"].is_null());
    }

    #[test]
    fn bracket_payload_disk_straddles_three() {
        let text = bracket_payload("disk").unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        let lower = parsed["lower"].as_f64().unwrap();
        let upper = parsed["upper"].as_f64().unwrap();
        assert!(lower < 3.0 && 3.0 < upper, "bracket [{lower}, {upper}]");
        // no disk certificate at any level >= 3
        for cert in parsed["certificates"].as_array().unwrap() {
            if cert["level"].as_f64().unwrap() >= 3.0 {
                assert!(!cert["certified"].as_bool().unwrap());
            }
        }
    }

    #[test]
    fn unknown_id_is_reported() {
        assert!(geometry_payload("pentagon", &[]).is_err());
    }
}
