//! Geometry report of one surface of a tower: exact symbolic data, exact
//! certificates and, optionally, the global integrals.
//!
//! Symbolic fields are strings in the canonical form printed by
//! [`RationalFunction`]'s `Display`: terms in descending graded-lex order
//! joined by `" + "`, monomials written `xp^a*xm^b`, coefficients as
//! `p/q`, `b*i`, `(a+b*i)`, optionally times `sqrt2`, and non-polynomials as
//! `(numerator)/(denominator)` with a monic denominator.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::RationalFunction;
use crate::matrix::MatrixField;
use crate::projector::{Direction, ProjectorTower};
use crate::quadrature::{self, IntegralResult, QuadratureError, QuadratureOptions};
use crate::surface::{
    certify_polynomials, check_normals, christoffel, gauss_curvature, gauss_curvature_extremal, killing_product,
    mean_curvature, mean_norm_from_densities, second_fundamental_normals, surface_from_tower, NormalChecks,
    PolynomialCertificate, SurfaceChecks, SurfaceError,
};
use crate::SCHEMA_VERSION;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

pub fn matrix_strings(m: &MatrixField) -> Vec<Vec<String>> {
    (0..m.n_rows()).map(|i| (0..m.n_cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalStrings {
    pub plus_plus: Vec<Vec<String>>,
    pub plus_minus: Vec<Vec<String>>,
    pub minus_minus: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolicGeometry {
    pub lagrangian: String,
    pub charge_density: String,
    pub metric_plus_plus: String,
    pub metric_plus_minus: String,
    pub metric_minus_minus: String,
    pub christoffel_plus: String,
    pub christoffel_minus: String,
    pub gauss_curvature: String,
    /// Present when `K` is a constant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauss_curvature_constant: Option<String>,
    pub mean_curvature: Vec<Vec<String>>,
    pub mean_curvature_norm: String,
    pub normals: NormalStrings,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometryChecks {
    pub surface: SurfaceChecks,
    /// `g₊₊ = g₋₋ = 0`.
    pub conformal_metric: bool,
    /// `g₊₋ = L/2`.
    pub metric_is_half_lagrangian: bool,
    /// Covariant-derivative curvature formula agrees with `−2∂₊∂₋ln L/L`;
    /// absent for mixed elements, where that formula does not apply.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature_routes_agree: Option<bool>,
    /// `(H, H)` from `H` agrees with `4(L² + 3q²)/L²`.
    pub mean_norm_routes_agree: bool,
    pub normals: NormalChecks,
    pub polynomials: PolynomialCertificate,
}

impl GeometryChecks {
    pub fn all(&self) -> bool {
        self.surface.all()
            && self.conformal_metric
            && self.metric_is_half_lagrangian
            && self.curvature_routes_agree.unwrap_or(true)
            && self.mean_norm_routes_agree
            && self.normals.all()
            && self.polynomials.all()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalInvariants {
    pub action: IntegralResult,
    pub area: IntegralResult,
    pub charge: IntegralResult,
    pub euler_poincare: IntegralResult,
    pub willmore: IntegralResult,
    /// `|A − S|` within the combined error estimates.
    pub area_matches_action: bool,
}

impl GlobalInvariants {
    pub fn compute(tower: &ProjectorTower, k: usize, opts: &QuadratureOptions) -> Result<Self, ReportError> {
        let p = tower.get(k).ok_or(SurfaceError::IndexOutOfRange { k, len: tower.len() })?;
        let surface = surface_from_tower(tower, k)?;
        let action = quadrature::action(p, opts)?;
        let area = quadrature::area(&surface, opts)?;
        let charge = quadrature::charge(p, opts)?;
        let euler_poincare = quadrature::euler_poincare(p, opts)?;
        let willmore = quadrature::willmore(p, opts)?;
        let slack = action.error_estimate + area.error_estimate + opts.rel_tol * action.value.abs();
        let area_matches_action = (area.value - action.value).abs() <= slack;
        Ok(Self { action, area, charge, euler_poincare, willmore, area_matches_action })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometryReport {
    pub schema_version: u32,
    pub dimension: usize,
    pub tower_length: usize,
    pub k: usize,
    pub c_k: String,
    pub symbolic: SymbolicGeometry,
    pub checks: GeometryChecks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub globals: Option<GlobalInvariants>,
    pub all_passed: bool,
}

/// Build the report for `F_k`; global integrals are computed when `opts` is
/// given.
pub fn geometry_report(
    tower: &ProjectorTower,
    k: usize,
    opts: Option<&QuadratureOptions>,
) -> Result<GeometryReport, ReportError> {
    let surface = surface_from_tower(tower, k)?;
    let p = &tower.elements()[k];
    let l = p.lagrangian();
    let q = p.charge_density();
    let fp = surface.tangent(Direction::Plus);
    let fm = surface.tangent(Direction::Minus);
    let gpp = killing_product(&fp, &fp)?;
    let gpm = killing_product(&fp, &fm)?;
    let gmm = killing_product(&fm, &fm)?;
    let (cp, cm) = christoffel(p)?;
    let kc = gauss_curvature(p)?;
    let kx = gauss_curvature_extremal(p, tower.reference())?;
    let (h, hh) = mean_curvature(p)?;
    let normals = second_fundamental_normals(&surface, p)?;

    let checks = GeometryChecks {
        surface: surface.checks(p),
        conformal_metric: gpp.is_zero() && gmm.is_zero(),
        metric_is_half_lagrangian: gpm == &l * &RationalFunction::from_ratio(1, 2),
        curvature_routes_agree: kx.map(|x| x == kc),
        mean_norm_routes_agree: hh == mean_norm_from_densities(&l, &q)?,
        normals: check_normals(&surface, tower, &normals)?,
        polynomials: certify_polynomials(&surface, p)?,
    };
    let globals = opts.map(|o| GlobalInvariants::compute(tower, k, o)).transpose()?;
    let all_passed = checks.all() && globals.as_ref().is_none_or(|g| g.area_matches_action);

    Ok(GeometryReport {
        schema_version: SCHEMA_VERSION,
        dimension: tower.dim(),
        tower_length: tower.len(),
        k,
        c_k: surface.c_k().to_string(),
        symbolic: SymbolicGeometry {
            lagrangian: l.to_string(),
            charge_density: q.to_string(),
            metric_plus_plus: gpp.to_string(),
            metric_plus_minus: gpm.to_string(),
            metric_minus_minus: gmm.to_string(),
            christoffel_plus: cp.to_string(),
            christoffel_minus: cm.to_string(),
            gauss_curvature_constant: kc.as_constant().map(|c| c.to_string()),
            gauss_curvature: kc.to_string(),
            mean_curvature: matrix_strings(&h),
            mean_curvature_norm: hh.to_string(),
            normals: NormalStrings {
                plus_plus: matrix_strings(&normals.plus_plus),
                plus_minus: matrix_strings(&normals.plus_minus),
                minus_minus: matrix_strings(&normals.minus_minus),
            },
        },
        checks,
        globals,
        all_passed,
    })
}
