use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use cpn_core::matrix::{MatrixDocument, MatrixField};
use cpn_core::projector::{build_tower, ProjectorTower, TowerReport, VectorDescriptor};
use cpn_core::quadrature::{self, IntegralResult, QuadratureOptions};
use cpn_core::report::{geometry_report, matrix_strings, GeometryReport, GlobalInvariants};
use cpn_core::sample::SurfaceSampler;
use cpn_core::surface::{alternating_sum, classify_surface, surface_from_tower, CandidateReport};
use cpn_core::SCHEMA_VERSION;
use serde::Serialize;

use crate::error::CliError;

/// Integer snaps of `Q` and `Δ` must land this close to an integer.
pub const SNAP_TOLERANCE: f64 = 1e-6;

/// Placeholder written in every value column of a CSV row at a pole.
pub const POLE_SENTINEL: &str = "pole";

fn load_descriptor(path: &Path) -> Result<VectorDescriptor, CliError> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn load_tower(path: &Path) -> Result<(VectorDescriptor, ProjectorTower), CliError> {
    let desc = load_descriptor(path)?;
    let p = desc.projector()?;
    let tower = build_tower(&p)?;
    Ok((desc, tower))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(out, &text)
}

fn check_k(tower: &ProjectorTower, k: usize) -> Result<(), CliError> {
    if k >= tower.len() {
        return Err(CliError::validation(format!("k = {k} out of range for a tower of length {}", tower.len())));
    }
    Ok(())
}

fn snap_ok(r: &IntegralResult) -> bool {
    r.integer_snap.as_ref().is_some_and(|s| s.deviation < SNAP_TOLERANCE)
}

pub fn tower(input: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let (_, tower) = load_tower(input)?;
    let report = tower.report();
    emit_json(out, &report)?;
    if !report.all_passed {
        return Err(CliError::certificate("tower report has failing checks"));
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport {
    schema_version: u32,
    tower: TowerReport,
    surfaces: Vec<GeometryReport>,
    alternating_sum_vanishes: bool,
    integer_snaps_within_tolerance: bool,
    all_passed: bool,
}

pub fn verify(input: &Path, out: Option<&Path>, opts: &QuadratureOptions) -> Result<(), CliError> {
    let (_, tower) = load_tower(input)?;
    let tower_report = tower.report();
    let surfaces = (0..tower.len())
        .map(|k| geometry_report(&tower, k, Some(opts)))
        .collect::<Result<Vec<_>, _>>()?;
    let alternating_sum_vanishes = alternating_sum(&tower)?.is_zero();
    let integer_snaps_within_tolerance = surfaces.iter().all(|s| {
        s.globals.as_ref().is_some_and(|g| snap_ok(&g.charge) && snap_ok(&g.euler_poincare))
    });
    let all_passed = tower_report.all_passed
        && surfaces.iter().all(|s| s.all_passed)
        && alternating_sum_vanishes
        && integer_snaps_within_tolerance;
    emit_json(
        out,
        &VerifyReport {
            schema_version: SCHEMA_VERSION,
            tower: tower_report,
            surfaces,
            alternating_sum_vanishes,
            integer_snaps_within_tolerance,
            all_passed,
        },
    )?;
    if !all_passed {
        return Err(CliError::certificate("verification has failing certificates"));
    }
    Ok(())
}

pub fn geometry(input: &Path, out: Option<&Path>, k: usize, opts: Option<&QuadratureOptions>) -> Result<(), CliError> {
    let (_, tower) = load_tower(input)?;
    check_k(&tower, k)?;
    let report = geometry_report(&tower, k, opts)?;
    emit_json(out, &report)?;
    if !report.all_passed {
        return Err(CliError::certificate("geometry report has failing checks"));
    }
    Ok(())
}

#[derive(Serialize)]
struct ElementIntegrals {
    k: usize,
    #[serde(flatten)]
    globals: GlobalInvariants,
}

#[derive(Serialize)]
struct IntegrateReport {
    schema_version: u32,
    options: QuadratureOptions,
    /// `Σ_μ ∫ (D_μ f)†D_μ f / f†f` of the input vector.
    vector_action: IntegralResult,
    elements: Vec<ElementIntegrals>,
    all_passed: bool,
}

pub fn integrate(input: &Path, out: Option<&Path>, k: Option<usize>, opts: &QuadratureOptions) -> Result<(), CliError> {
    let (desc, tower) = load_tower(input)?;
    let ks: Vec<usize> = match k {
        Some(k) => {
            check_k(&tower, k)?;
            vec![k]
        }
        None => (0..tower.len()).collect(),
    };
    let vector_action = quadrature::vector_action(&desc.to_vector()?, opts)?;
    let elements = ks
        .into_iter()
        .map(|k| Ok(ElementIntegrals { k, globals: GlobalInvariants::compute(&tower, k, opts)? }))
        .collect::<Result<Vec<_>, CliError>>()?;
    let all_passed = elements
        .iter()
        .all(|e| e.globals.area_matches_action && snap_ok(&e.globals.charge) && snap_ok(&e.globals.euler_poincare));
    emit_json(
        out,
        &IntegrateReport { schema_version: SCHEMA_VERSION, options: opts.clone(), vector_action, elements, all_passed },
    )?;
    if !all_passed {
        return Err(CliError::certificate("integrals fail the area/action or integer-snap certificate"));
    }
    Ok(())
}

pub fn export_surface(
    input: &Path,
    out: Option<&Path>,
    k: usize,
    extent: f64,
    res: usize,
    surface_out: Option<&Path>,
) -> Result<(), CliError> {
    if !(extent.is_finite() && extent > 0.0) {
        return Err(CliError::validation("grid extent must be positive and finite"));
    }
    if res == 0 {
        return Err(CliError::validation("grid resolution must be at least 1"));
    }
    let (_, tower) = load_tower(input)?;
    check_k(&tower, k)?;
    if let Some(path) = surface_out {
        let f = surface_from_tower(&tower, k)?;
        let text = serde_json::to_string_pretty(&MatrixDocument { matrix: f.matrix().to_json() })?;
        fs::write(path, text + "\n")?;
    }
    let sampler = SurfaceSampler::new(&tower, k)?;
    let m = sampler.coord_count();
    let mut csv = String::from("xi1,xi2");
    for a in 1..=m {
        write!(csv, ",x{a}").unwrap();
    }
    csv.push_str(",L,q,K\n");
    let mut poles = 0usize;
    for pt in sampler.grid(extent, res) {
        write!(csv, "{},{}", pt.xi1, pt.xi2).unwrap();
        match pt.values {
            Some(v) => {
                for x in &v.coords {
                    write!(csv, ",{x}").unwrap();
                }
                write!(csv, ",{},{},{}", v.lagrangian, v.charge_density, v.curvature).unwrap();
            }
            None => {
                poles += 1;
                for _ in 0..m + 3 {
                    write!(csv, ",{POLE_SENTINEL}").unwrap();
                }
            }
        }
        csv.push('\n');
    }
    emit(out, &csv)?;
    eprintln!("{{\"rows\":{},\"pole_rows\":{poles}}}", res * res);
    Ok(())
}

#[derive(Serialize)]
struct ClassifyReport {
    schema_version: u32,
    accepted: bool,
    k: Option<usize>,
    lambda: Option<String>,
    /// All indices whose certificates pass; more than one only for `N = 2`.
    accepted_indices: Vec<usize>,
    projector: Option<Vec<Vec<String>>>,
    skew_hermitian: bool,
    determinant: String,
    candidates: Vec<CandidateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
}

pub fn classify(input: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let text = fs::read_to_string(input)?;
    let doc: MatrixDocument = serde_json::from_str(&text)?;
    let f = MatrixField::from_json(&doc.matrix).map_err(|e| CliError::validation(e.to_string()))?;
    let c = classify_surface(&f)?;
    let report = ClassifyReport {
        schema_version: SCHEMA_VERSION,
        accepted: c.accepted,
        k: c.k,
        lambda: c.lambda.as_ref().map(ToString::to_string),
        accepted_indices: c.accepted_indices(),
        projector: c.projector.as_ref().map(|p| matrix_strings(p.matrix())),
        skew_hermitian: c.skew_hermitian,
        determinant: c.determinant.to_string(),
        failure: c.failure(),
        candidates: c.candidates,
    };
    emit_json(out, &report)?;
    if !report.accepted {
        return Err(CliError::certificate(report.failure.unwrap_or_else(|| "rejected".into())));
    }
    Ok(())
}
