//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every operation takes the same JSON vector descriptor as the `cpn` CLI.
//! The plain functions in [`ops`] carry the logic and are tested natively;
//! the exported wrappers only translate errors.

use wasm_bindgen::prelude::*;

pub mod ops {
    use cpn_core::projector::{build_tower, ProjectorTower, VectorDescriptor};
    use cpn_core::quadrature::QuadratureOptions;
    use cpn_core::report::geometry_report;
    use cpn_core::sample::SurfaceSampler;

    /// Values per sample returned by [`sample_surface`]: three `su(N)`
    /// coordinates and the Gauss curvature.
    pub const SAMPLE_STRIDE: usize = 4;

    fn tower(descriptor: &str) -> Result<ProjectorTower, String> {
        let desc: VectorDescriptor = serde_json::from_str(descriptor).map_err(|e| format!("descriptor: {e}"))?;
        let p = desc.projector().map_err(|e| e.to_string())?;
        build_tower(&p).map_err(|e| e.to_string())
    }

    pub fn tower_report(descriptor: &str) -> Result<String, String> {
        let t = tower(descriptor)?;
        serde_json::to_string_pretty(&t.report()).map_err(|e| e.to_string())
    }

    pub fn geometry(descriptor: &str, k: usize, integrals: bool) -> Result<String, String> {
        let t = tower(descriptor)?;
        let opts = QuadratureOptions::default();
        let r = geometry_report(&t, k, integrals.then_some(&opts)).map_err(|e| e.to_string())?;
        serde_json::to_string_pretty(&r).map_err(|e| e.to_string())
    }

    /// Flat `[x₁, x₂, x₃, K]` per point of a `res × res` grid over
    /// `[−extent, extent]²`; poles and missing coordinates are NaN.
    pub fn sample_surface(descriptor: &str, k: usize, extent: f64, res: usize) -> Result<Vec<f64>, String> {
        if !(extent.is_finite() && extent > 0.0) || res == 0 || res > 400 {
            return Err("extent must be positive and resolution within 1..=400".into());
        }
        let t = tower(descriptor)?;
        let sampler = SurfaceSampler::new(&t, k).map_err(|e| e.to_string())?;
        let mut out = Vec::with_capacity(res * res * SAMPLE_STRIDE);
        for pt in sampler.grid(extent, res) {
            match pt.values {
                Some(v) => {
                    for a in 0..3 {
                        out.push(v.coords.get(a).copied().unwrap_or(f64::NAN));
                    }
                    out.push(v.curvature);
                }
                None => out.extend([f64::NAN; SAMPLE_STRIDE]),
            }
        }
        Ok(out)
    }
}

fn js(e: String) -> JsError {
    JsError::new(&e)
}

/// Tower report JSON for a vector descriptor.
#[wasm_bindgen(js_name = towerReport)]
pub fn tower_report(descriptor: &str) -> Result<String, JsError> {
    ops::tower_report(descriptor).map_err(js)
}

/// Geometry report JSON of `F_k`, optionally with the global integrals.
#[wasm_bindgen]
pub fn geometry(descriptor: &str, k: usize, integrals: bool) -> Result<String, JsError> {
    ops::geometry(descriptor, k, integrals).map_err(js)
}

/// Point cloud of `F_k` for plotting; see [`ops::sample_surface`].
#[wasm_bindgen(js_name = sampleSurface)]
pub fn sample_surface(descriptor: &str, k: usize, extent: f64, res: usize) -> Result<Vec<f64>, JsError> {
    ops::sample_surface(descriptor, k, extent, res).map_err(js)
}
