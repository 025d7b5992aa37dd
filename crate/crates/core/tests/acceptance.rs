//! Acceptance criteria. Prints one PASS/FAIL line per criterion; run with
//! `cargo test -p cpn-core --test acceptance -- --nocapture` to see them.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use common::*;
use cpn_core::algebra::{Coeff, RationalFunction};
use cpn_core::matrix::MatrixField;
use cpn_core::projector::{build_tower, is_el_solution, Frame, Projector, ProjectorTower};
use cpn_core::quadrature::{self, IntegralResult, QuadratureOptions};
use cpn_core::report::GlobalInvariants;
use cpn_core::surface::{self, classify_surface, surface_from_tower, SurfaceField};
use num_complex::Complex64;

type Check = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn veronese_tower() -> ProjectorTower {
    build_tower(&Projector::from_vector(&veronese()).unwrap()).unwrap()
}

fn identity(n: usize) -> MatrixField {
    MatrixField::identity(n)
}

fn times_i(m: &MatrixField) -> MatrixField {
    m.scale_coeff(&Coeff::i())
}

fn killing(a: &MatrixField, b: &MatrixField) -> RationalFunction {
    (a * b).trace().scale(&Coeff::from_ratio(-1, 2))
}

/// `−(2/λ) ∂₊∂₋ ln λ` for `ds² = λ dξ₊dξ₋`, i.e. `λ = 2g₊₋`.
fn curvature_from_metric(lambda: &RationalFunction) -> RationalFunction {
    let gp = lambda.d_plus();
    let gm = lambda.d_minus();
    let mixed = &(&(lambda * &gp.d_minus()) - &(&gp * &gm)) / &lambda.pow(2);
    &mixed.scale(&Coeff::from_int(-2)) / lambda
}

fn within(r: &IntegralResult, target: f64, rel: f64) -> bool {
    r.rel_error(target) <= rel
}

fn snap_ok(r: &IntegralResult, target: i64, tol: f64) -> bool {
    r.integer_snap.as_ref().is_some_and(|s| s.nearest == target && s.deviation < tol)
}

// ---- criteria ----

fn tower_identities() -> Check {
    let t0 = Instant::now();
    let tower = veronese_tower();
    ensure(tower.len() == 3, format!("length {}", tower.len()))?;
    let ps: Vec<&MatrixField> = tower.elements().iter().map(|p| p.matrix()).collect();
    let one = RationalFunction::one();
    for (i, p) in ps.iter().enumerate() {
        ensure(&(*p * *p) == *p, format!("P{i}² ≠ P{i}"))?;
        ensure(&p.dagger() == *p, format!("P{i}† ≠ P{i}"))?;
        ensure(p.trace() == one, format!("tr P{i} ≠ 1"))?;
        let el = p.d_minus().d_plus().commutator(p).unwrap();
        ensure(el.is_zero(), format!("[∂₊∂₋P{i}, P{i}] ≠ 0"))?;
        for (j, q) in ps.iter().enumerate() {
            if i != j {
                ensure((*p * *q).is_zero(), format!("P{i}P{j} ≠ 0"))?;
            }
        }
    }
    let sum = &(ps[0] + ps[1]) + ps[2];
    ensure(sum == identity(3), "ΣP ≠ I")?;
    let els = tower.elements();
    ensure(els[0].lower().is_none(), "Π₋P₀ ≠ 0")?;
    ensure(els[2].raise().is_none(), "Π₊P₂ ≠ 0")?;
    for (i, p) in els.iter().enumerate() {
        if let Some(up) = p.raise() {
            ensure(up.lower().as_ref() == Some(p), format!("Π₋Π₊P{i} ≠ P{i}"))?;
        }
        if let Some(down) = p.lower() {
            ensure(down.raise().as_ref() == Some(p), format!("Π₊Π₋P{i} ≠ P{i}"))?;
        }
    }
    ensure(tower.tower_checks().all(), "library tower checks disagree")?;
    let secs = t0.elapsed().as_secs_f64();
    ensure(secs < 10.0, format!("runtime {secs:.2}s exceeds 10 s"))?;
    Ok(format!("all identities exact, {secs:.2}s"))
}

fn orthogonality_table() -> Check {
    let p0 = Projector::from_vector(&veronese()).unwrap();
    let frame = Frame::auto(&p0).map_err(|e| e.to_string())?;
    let a = frame.orthogonality_table(4);
    ensure(a[0][0].is_one(), format!("A00 = {}", a[0][0]))?;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if (1..=4).contains(&(i + j)) {
                ensure(x.is_zero(), format!("A{i}{j} = {x}"))?;
            }
        }
    }
    Ok("A_ij = 0 for 1 ≤ i+j ≤ 4, A00 = 1".into())
}

fn exact_geometry() -> Check {
    let tower = veronese_tower();
    let p = &tower.elements()[0];
    let f: SurfaceField = surface_from_tower(&tower, 0).map_err(|e| e.to_string())?;
    let fp = f.matrix().d_plus();
    let fm = f.matrix().d_minus();
    ensure(killing(&fp, &fp).is_zero(), "g₊₊ ≠ 0")?;
    ensure(killing(&fm, &fm).is_zero(), "g₋₋ ≠ 0")?;
    let g = killing(&fp, &fm);
    let two = RationalFunction::from_int(2);
    let k_metric = curvature_from_metric(&g.scale(&Coeff::from_int(2)));
    ensure(k_metric == two, format!("K from metric = {k_metric}"))?;
    let k_lib = surface::gauss_curvature(p).map_err(|e| e.to_string())?;
    ensure(k_lib == two, format!("K from L = {k_lib}"))?;
    let pm = p.matrix();
    let (dp, dm) = (pm.d_plus(), pm.d_minus());
    let l = (&dp * &dm).trace();
    ensure(g == l.scale(&Coeff::from_ratio(1, 2)), "g₊₋ ≠ L/2")?;
    // q = ||D₊P||² − ||D₋P||² in trace form
    let q = &(&(&dp * pm) * &dm).trace() - &(&(&dm * pm) * &dp).trace();
    ensure(l == q, format!("L = {l} but q = {q}"))?;
    let h = times_i(&dp.commutator(&dm).unwrap()).scale(&(&RationalFunction::from_int(-4) / &l));
    let hh = killing(&h, &h);
    ensure(hh == RationalFunction::from_int(16), format!("(H,H) = {hh}"))?;
    let (_, hh_lib) = surface::mean_curvature(p).map_err(|e| e.to_string())?;
    ensure(hh_lib == hh, "library (H,H) disagrees")?;
    Ok("K ≡ 2, (H,H) = 16, g₊₊ = g₋₋ = 0, L = q".into())
}

fn describe(g: &GlobalInvariants) -> String {
    format!(
        "A={:.9} S={:.9} Q={:.9} Δ={:.9} W={:.9}",
        g.area.value, g.action.value, g.charge.value, g.euler_poincare.value, g.willmore.value
    )
}

fn veronese_numerics() -> Check {
    let t0 = Instant::now();
    let tower = veronese_tower();
    let g = GlobalInvariants::compute(&tower, 0, &QuadratureOptions::default()).map_err(|e| e.to_string())?;
    let rel = 1e-6;
    ensure(within(&g.area, 2.0 * PI, rel), format!("A = {}", g.area.value))?;
    ensure(within(&g.action, 2.0 * PI, rel), format!("S = {}", g.action.value))?;
    ensure(within(&g.charge, 2.0, rel) && snap_ok(&g.charge, 2, 1e-6), format!("Q = {}", g.charge.value))?;
    ensure(
        within(&g.euler_poincare, 2.0, rel) && snap_ok(&g.euler_poincare, 2, 1e-6),
        format!("Δ = {}", g.euler_poincare.value),
    )?;
    ensure(within(&g.willmore, 4.0 * PI, rel), format!("W = {}", g.willmore.value))?;
    let secs = t0.elapsed().as_secs_f64();
    ensure(secs < 30.0, format!("runtime {secs:.2}s exceeds 30 s"))?;
    Ok(format!("{}, {secs:.2}s", describe(&g)))
}

/// `−4(448u⁶ − 384u⁵ − 2640u⁴ − 4280u³ − 660u² − 24u + 7)/(4u² + 16u + 1)³`.
fn quoted_curvature() -> RationalFunction {
    let poly = |cs: &[i64]| -> RationalFunction {
        cs.iter().enumerate().map(|(j, &c)| &RationalFunction::from_int(c) * &u().pow(j as u32)).sum()
    };
    let num = poly(&[7, -24, -660, -4280, -2640, -384, 448]).scale(&Coeff::from_int(-4));
    let den = poly(&[1, 16, 4]).pow(3);
    &num / &den
}

fn negative_curvature_example() -> Check {
    let p = Projector::from_vector(&negative_curvature()).unwrap();
    let tower = build_tower(&p).map_err(|e| e.to_string())?;
    let k = surface::gauss_curvature(&p).map_err(|e| e.to_string())?;
    let quoted = quoted_curvature();
    let origin = Complex64::new(0.0, 0.0);
    let k0 = k.eval(origin).map_err(|e| e.to_string())?;
    let q0 = quoted.eval(origin).map_err(|e| e.to_string())?;
    ensure((k0 - Complex64::new(-28.0, 0.0)).norm() < 1e-12, format!("K(0) = {k0}"))?;
    ensure((k0 - q0).norm() < 1e-12, format!("K(0) = {k0} but formula gives {q0}"))?;
    ensure(k == quoted, "pipeline K differs from the closed form")?;
    // u → ∞: ratio of the top u-power coefficients
    let top = |p: &cpn_core::algebra::BiPoly| p.leading().map(|(m, c)| (m, c.clone()));
    let (Some((mn, cn)), Some((md, cd))) = (top(k.num()), top(k.den())) else {
        return Err("K has no leading terms".into());
    };
    ensure(mn == md, format!("K is not bounded at infinity: {mn:?} vs {md:?}"))?;
    let limit = &cn * &cd.inv().unwrap();
    ensure(limit == Coeff::from_int(-28), format!("asymptote {limit}"))?;
    let far = k.eval(Complex64::new(1e4, 0.0)).unwrap().re;
    ensure((far + 28.0).abs() < 1e-3, format!("K(1e4) = {far}"))?;

    let g = GlobalInvariants::compute(&tower, 0, &QuadratureOptions::default()).map_err(|e| e.to_string())?;
    let rel = 1e-5;
    ensure(within(&g.area, 2.0 * PI, rel), format!("A = {}", g.area.value))?;
    ensure(within(&g.euler_poincare, 2.0, rel), format!("Δ = {}", g.euler_poincare.value))?;
    ensure(within(&g.willmore, 4.0 * PI, rel), format!("W = {}", g.willmore.value))?;
    ensure(within(&g.charge, 2.0, rel), format!("Q = {}", g.charge.value))?;
    Ok(format!(
        "K(0) = −28 = closed form, K ≡ closed form, asymptote −28 (quoted −14 is a documented discrepancy); {}",
        describe(&g)
    ))
}

/// `Π (t − r)` as ascending coefficients.
fn from_roots(roots: &[Coeff]) -> Vec<Coeff> {
    let mut out = vec![Coeff::one()];
    for r in roots {
        let mut next = vec![Coeff::zero(); out.len() + 1];
        for (j, c) in out.iter().enumerate() {
            next[j + 1] = &next[j + 1] + c;
            next[j] = &next[j] - &(c * r);
        }
        out = next;
    }
    out
}

fn poly_at_matrix(q: &[Coeff], m: &MatrixField) -> MatrixField {
    let n = m.n_rows();
    let mut acc = MatrixField::zeros(n, n);
    let mut power = identity(n);
    for c in q {
        acc = &acc + &power.scale_coeff(c);
        power = &power * m;
    }
    acc
}

fn polynomial_certificates() -> Check {
    let tower = veronese_tower();
    let n = 3;
    let i = Coeff::i();
    let mut notes = Vec::new();
    for k in 0..n {
        let f = surface_from_tower(&tower, k).map_err(|e| e.to_string())?;
        let c = Coeff::from_ratio(1 + 2 * k as i64, n as i64);
        let top = &i * &c;
        let mid = &i * &(&c - &Coeff::one());
        let low = &i * &(&c - &Coeff::from_int(2));
        let mut roots = vec![top.clone(); n - k - 1];
        roots.push(mid.clone());
        roots.extend(std::iter::repeat_n(low.clone(), k));
        let expected = from_roots(&roots);
        let cp = f.matrix().char_poly().map_err(|e| e.to_string())?;
        ensure(cp.constant_coeffs() == Some(expected), format!("char_poly(F{k}) = {cp}"))?;
        let minimal = match k {
            0 => from_roots(&[top.clone(), mid.clone()]),
            k if k == n - 1 => from_roots(&[low.clone(), mid.clone()]),
            _ => from_roots(&[mid.clone(), &mid + &i, &mid - &i]),
        };
        ensure(poly_at_matrix(&minimal, f.matrix()).is_zero(), format!("q{k}(F{k}) ≠ 0"))?;
        ensure(minimal == surface::minimal_poly(k, n), format!("library q{k} differs"))?;
        if k == 0 {
            // the variant (t − ic)² − i(t − ic), with roots ic and i(c + 1)
            let variant = from_roots(&[top.clone(), &top + &i]);
            let annihilates = poly_at_matrix(&variant, f.matrix()).is_zero();
            ensure(!annihilates, "sign variant of q0 unexpectedly annihilates F0")?;
            notes.push("(t−ic)²−i(t−ic) does not annihilate F0; (t−ic)²+i(t−ic) does");
        }
    }
    let alt = surface::alternating_sum(&tower).map_err(|e| e.to_string())?;
    ensure(alt.is_zero(), "F0 − F1 + F2 ≠ 0")?;
    let f0 = surface_from_tower(&tower, 0).unwrap();
    let f1 = surface_from_tower(&tower, 1).unwrap();
    let f2 = surface_from_tower(&tower, 2).unwrap();
    ensure((&(f0.matrix() - f1.matrix()) + f2.matrix()).is_zero(), "direct alternating sum ≠ 0")?;
    Ok(format!("p_k and q_k exact for k = 0, 1, 2; F0 − F1 + F2 = 0; {}", notes.join("")))
}

fn classification_round_trip() -> Check {
    let tower = veronese_tower();
    for k in 0..tower.len() {
        let f = surface_from_tower(&tower, k).map_err(|e| e.to_string())?;
        let c = classify_surface(f.matrix()).map_err(|e| e.to_string())?;
        ensure(c.accepted, format!("F{k} rejected: {:?}", c.failure()))?;
        ensure(c.k == Some(k), format!("F{k} classified as {:?}", c.k))?;
        ensure(c.lambda.as_ref() == Some(f.c_k()), format!("F{k} λ = {:?}", c.lambda))?;
        ensure(c.projector.as_ref() == Some(&tower.elements()[k]), format!("F{k} projector differs"))?;
    }
    let f0 = surface_from_tower(&tower, 0).unwrap();
    let bump = &u() / &(&int(1) + &u());
    let diag = MatrixField::diagonal(vec![bump.clone(), int(0), -&bump]);
    let perturbed = f0.matrix() + &times_i(&diag);
    let c = classify_surface(&perturbed).map_err(|e| e.to_string())?;
    ensure(c.skew_hermitian, "perturbation should stay skew-Hermitian")?;
    ensure(!c.accepted, "perturbed surface accepted")?;
    ensure(c.candidates.iter().all(|r| !r.det_matches), "a determinant certificate passed")?;
    Ok("(k, c_k, P_k) recovered for k = 0, 1, 2; perturbation rejected by the determinant".into())
}

fn inverted_lagrangian() -> (RationalFunction, RationalFunction) {
    let p = Projector::from_vector(&veronese()).unwrap();
    let inverted = p.invert();
    let lhat = (&inverted.matrix().d_plus() * &inverted.matrix().d_minus()).trace();
    (lhat, p.lagrangian().invert_variables())
}

fn inversion_covariance() -> Check {
    let p = Projector::from_vector(&veronese()).unwrap();
    let inverted = p.invert();
    let el = is_el_solution(&inverted, None).map_err(|e| e.to_string())?;
    ensure(el.is_solution, "inverted projector fails the Euler-Lagrange test")?;
    ensure(inverted.laws().all(), "inverted matrix is not a projector")?;
    ensure(inverted.invert() == p, "inversion is not an involution")?;
    // ∂_w P̂ = −w⁻² ∂_ξ P, so the density picks up the Jacobian 1/(w₊²w₋²)
    let (lhat, substituted) = inverted_lagrangian();
    let jacobian = &int(1) / &u().pow(2);
    ensure(lhat == &substituted * &jacobian, format!("L(P̂) = {lhat}, L(P)(1/w)/u² = {}", &substituted * &jacobian))?;
    Ok(format!("P̂ solves the equation; L(P̂)(w) = L(P)(1/w)/(w₊²w₋²) = {lhat}"))
}

/// The unweighted substitution identity. It omits the Jacobian and so does
/// not hold; reported as a known failure.
fn inversion_unweighted() -> Check {
    let (lhat, substituted) = inverted_lagrangian();
    ensure(lhat == substituted, format!("L(P̂)(w) = {lhat} but L(P)(1/w) = {substituted}"))?;
    Ok("L(P̂)(w) = L(P)(1/w)".into())
}

fn property_suites() -> Check {
    const CASES: u32 = 1000;
    let p0 = Projector::from_vector(&veronese()).unwrap();
    type Suite<'a> = (&'static str, Box<dyn Fn() -> props::Outcome + Send + Sync + 'a>);
    let suites: Vec<Suite> = vec![
        ("field axioms", Box::new(|| props::field_axioms(CASES))),
        ("canonical form", Box::new(|| props::canonical_form(CASES))),
        ("Leibniz", Box::new(|| props::leibniz_scalar(CASES))),
        ("dagger", Box::new(|| props::dagger_scalar(CASES))),
        ("matrix identities", Box::new(|| props::matrix_identities(CASES))),
        ("PAP = tr(PA)P", Box::new(|| props::projector_trace(CASES, &p0))),
        ("Pe(Pe)† = (e†Pe)P", Box::new(|| props::projector_decomposition(CASES, &p0))),
        ("compatibility", Box::new(|| props::compatibility(CASES, &p0))),
        ("[D₊,D₋]X = qX", Box::new(|| props::covariant_commutator(CASES, &p0))),
        ("gauge invariance", Box::new(|| props::gauge_invariance(CASES))),
        ("Cauchy-Schwarz/triangle", Box::new(|| props::seminorm_inequalities(CASES, &p0))),
    ];
    let results: Vec<(&str, props::Outcome)> = std::thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|(name, f)| (*name, s.spawn(f))).collect();
        handles.into_iter().map(|(name, h)| (name, h.join().unwrap_or_else(|_| Err("panicked".into())))).collect()
    });
    let failed: Vec<String> =
        results.iter().filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}"))).collect();
    ensure(failed.is_empty(), failed.join("; "))?;
    Ok(format!("{} suites × {CASES} cases", results.len()))
}

fn degree_one_action() -> Check {
    let f = degree_one();
    let opts = QuadratureOptions::default();
    let s = quadrature::vector_action(&f, &opts).map_err(|e| e.to_string())?;
    ensure((s.value - 2.0 * PI).abs() <= 1e-6, format!("vector-form S = {}", s.value))?;
    let p = Projector::from_vector(&f).unwrap();
    let trace_form = quadrature::action(&p, &opts).map_err(|e| e.to_string())?;
    let q = quadrature::charge(&p, &opts).map_err(|e| e.to_string())?;
    ensure(snap_ok(&q, 1, 1e-6), format!("Q = {}", q.value))?;
    Ok(format!(
        "vector-form S = {:.10} = 2π·1; trace-form ∫tr(∂₊P∂₋P) = {:.10} (π), Q = {:.10}",
        s.value, trace_form.value, q.value
    ))
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    run: fn() -> Check,
    /// Why the check cannot pass as stated, for criteria that are
    /// mathematically unattainable.
    unattainable: Option<&'static str>,
}

const fn criterion(id: &'static str, name: &'static str, run: fn() -> Check) -> Criterion {
    Criterion { id, name, run, unattainable: None }
}

#[test]
fn acceptance_criteria() {
    let criteria = [
        criterion("1", "exact Veronese tower", tower_identities),
        criterion("2", "orthogonality table", orthogonality_table),
        criterion("3", "exact geometry", exact_geometry),
        criterion("4", "Veronese numerics", veronese_numerics),
        criterion("5", "negative-curvature example", negative_curvature_example),
        criterion("6", "polynomial certificates", polynomial_certificates),
        criterion("7", "classification round trip", classification_round_trip),
        criterion("8", "inversion covariance", inversion_covariance),
        Criterion {
            id: "8b",
            name: "unweighted inverted Lagrangian",
            run: inversion_unweighted,
            unattainable: Some("∂_w P̂ = −w⁻²∂_ξ P makes L(P̂)(w) = L(P)(1/w)/(w₊²w₋²); the unweighted identity is false"),
        },
        criterion("9", "property suites", property_suites),
        criterion("10", "degree-one action", degree_one_action),
    ];
    let mut failures = Vec::new();
    let mut known = Vec::new();
    for c in &criteria {
        let t0 = Instant::now();
        let outcome = (c.run)();
        let secs = t0.elapsed().as_secs_f64();
        match (&outcome, c.unattainable) {
            (Ok(detail), _) => println!("[PASS] {:>3} {} ({secs:.2}s): {detail}", c.id, c.name),
            (Err(why), None) => {
                println!("[FAIL] {:>3} {} ({secs:.2}s): {why}", c.id, c.name);
                failures.push(c.id);
            }
            (Err(why), Some(reason)) => {
                println!("[FAIL] {:>3} {} ({secs:.2}s): {why} [documented: {reason}]", c.id, c.name);
                known.push(c.id);
            }
        }
    }
    println!("known unattainable: {known:?}");
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
