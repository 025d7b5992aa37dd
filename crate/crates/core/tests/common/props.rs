//! Randomized identity suites. Each runs `cases` deterministic cases and
//! returns the first counterexample, if any.

use cpn_core::algebra::{BiPoly, RationalFunction};
use cpn_core::matrix::{MatrixField, VectorField};
use cpn_core::projector::{Direction, Frame, Projector};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRng, TestRunner};

use super::*;

pub type Outcome = Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng)
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Outcome
where
    S::Value: std::fmt::Debug,
{
    match runner(cases).run(&strategy, test) {
        Ok(()) => Ok(()),
        Err(TestError::Fail(why, value)) => Err(format!("{why}: {value:?}")),
        Err(e) => Err(e.to_string()),
    }
}

fn cross_equal(a: &RationalFunction, b: &RationalFunction) -> bool {
    a.num() * b.den() == b.num() * a.den()
}

pub fn field_axioms(cases: u32) -> Outcome {
    run(cases, (rational(), rational(), rational()), |(a, b, c)| {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(&(&(&b / &a) * &a), &b);
        }
        Ok(())
    })
}

pub fn canonical_form(cases: u32) -> Outcome {
    run(cases, (rational(), rational(), nonzero_poly(2, 1)), |(a, b, k)| {
        // scaling numerator and denominator by a common factor is invisible
        let scaled = RationalFunction::new(a.num() * &k, a.den() * &k).unwrap();
        prop_assert_eq!(&scaled, &a);
        let again = RationalFunction::new(a.num().clone(), a.den().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(a == b, cross_equal(&a, &b));
        let lead = a.den().leading().map(|(_, c)| c.is_one());
        prop_assert_eq!(lead, Some(true));
        Ok(())
    })
}

pub fn leibniz_scalar(cases: u32) -> Outcome {
    run(cases, (rational(), rational()), |(a, b)| {
        let ab = &a * &b;
        prop_assert_eq!(ab.d_plus(), &(&a.d_plus() * &b) + &(&a * &b.d_plus()));
        prop_assert_eq!(ab.d_minus(), &(&a.d_minus() * &b) + &(&a * &b.d_minus()));
        prop_assert_eq!(a.d_plus().d_minus(), a.d_minus().d_plus());
        Ok(())
    })
}

pub fn dagger_scalar(cases: u32) -> Outcome {
    run(cases, (rational(), rational(), point()), |(a, b, z)| {
        prop_assert_eq!(&a.dagger().dagger(), &a);
        prop_assert_eq!((&a * &b).dagger(), &a.dagger() * &b.dagger());
        prop_assert_eq!(a.d_plus().dagger(), a.dagger().d_minus());
        prop_assert_eq!(&a.invert_variables().invert_variables(), &a);
        if let (Ok(x), Ok(y)) = (a.eval(z), a.dagger().eval(z)) {
            prop_assert!((x.conj() - y).norm() <= 1e-9 * (1.0 + x.norm()), "{} vs {}", x, y);
        }
        Ok(())
    })
}

pub fn matrix_identities(cases: u32) -> Outcome {
    run(cases, (matrix(3), matrix(3)), |(a, b)| {
        let ab = &a * &b;
        prop_assert_eq!(ab.trace(), (&b * &a).trace());
        prop_assert!(a.commutator(&b).unwrap().trace().is_zero());
        prop_assert_eq!(ab.dagger(), &b.dagger() * &a.dagger());
        prop_assert_eq!(&a.dagger().dagger(), &a);
        prop_assert_eq!(ab.d_plus(), &(&a.d_plus() * &b) + &(&a * &b.d_plus()));
        prop_assert_eq!(ab.d_minus(), &(&a.d_minus() * &b) + &(&a * &b.d_minus()));
        prop_assert_eq!(a.determinant().unwrap(), cofactor_det(&a));
        Ok(())
    })
}

/// `P A P = tr(P A) P`.
pub fn projector_trace(cases: u32, p: &Projector) -> Outcome {
    let pm = p.matrix().clone();
    // linear in A over the function field, so polynomial entries suffice
    run(cases, matrix(pm.n_rows()), move |a| {
        let pap = &(&pm * &a) * &pm;
        prop_assert_eq!(pap, pm.scale(&(&pm * &a).trace()));
        Ok(())
    })
}

/// `Pe ⊗ (Pe)† = (e†Pe) P` for constant `e` with `Pe ≠ 0`.
pub fn projector_decomposition(cases: u32, p: &Projector) -> Outcome {
    let n = p.dim();
    let p = p.clone();
    run(cases, prop::collection::vec(gaussian(), n), move |es| {
        let e = VectorField(es.into_iter().map(|g| RationalFunction::constant(g.into())).collect());
        let pe = p.apply(&e);
        prop_assume!(!pe.is_zero());
        prop_assert_eq!(pe.outer(&pe), p.matrix().scale(&p.weight(&e)));
        Ok(())
    })
}

/// `∂μ⟨X,Y⟩ = ⟨D_μ̄X, Y⟩ + ⟨X, D_μY⟩`.
pub fn compatibility(cases: u32, p: &Projector) -> Outcome {
    let n = p.dim();
    let frame = Frame::auto(p).map_err(|e| e.to_string())?;
    run(cases, (matrix(n), matrix(n)), |(x, y)| {
        let s = frame.sesq(&x, &y);
        for dir in [Direction::Plus, Direction::Minus] {
            let lhs = dir.d_scalar(&s);
            let rhs = &frame.sesq(&frame.cov_d(dir.opposite(), &x), &y) + &frame.sesq(&x, &frame.cov_d(dir, &y));
            prop_assert_eq!(lhs, rhs);
        }
        Ok(())
    })
}

/// `[D₊, D₋]X = (||D₊P||² − ||D₋P||²) X`.
pub fn covariant_commutator(cases: u32, p: &Projector) -> Outcome {
    let n = p.dim();
    let frame = Frame::auto(p).map_err(|e| e.to_string())?;
    let q = frame.charge_density();
    run(cases, matrix(n), |x| {
        let pm = frame.cov_d(Direction::Plus, &frame.cov_d(Direction::Minus, &x));
        let mp = frame.cov_d(Direction::Minus, &frame.cov_d(Direction::Plus, &x));
        prop_assert_eq!(&pm - &mp, x.scale(&q));
        Ok(())
    })
}

/// `Φ(k f) = Φ(f)` for nonzero polynomial `k`.
pub fn gauge_invariance(cases: u32) -> Outcome {
    let comp = prop::collection::vec((0u32..=3, -3i64..=3, -2i64..=2), 1..=3).prop_map(|ts| {
        RationalFunction::from_poly(BiPoly::from_terms(ts.into_iter().map(|(d, re, im)| {
            (
                cpn_core::algebra::Monomial::new(d, 0),
                cpn_core::algebra::Coeff::from(cpn_core::algebra::GaussianRational::from_parts((re, 1), (im, 1))),
            )
        })))
    });
    let vec3 = prop::collection::vec(comp, 3).prop_filter("nonzero", |v| v.iter().any(|x| !x.is_zero()));
    run(cases, (vec3, int_poly().prop_filter("nonzero", |k| !k.is_zero())), |(f, k)| {
        let f = VectorField(f);
        let kf = f.scale(&k);
        let a = Projector::from_vector(&f).unwrap();
        let b = Projector::from_vector(&kf).unwrap();
        prop_assert_eq!(a, b);
        Ok(())
    })
}

fn eval_matrix(m: &MatrixField, z: Complex64) -> Option<CMat> {
    m.eval(z).ok()
}

fn apply_c(m: &CMat, e: &[Complex64]) -> Vec<Complex64> {
    let n = e.len();
    (0..n).map(|i| (0..n).map(|j| m[i * n + j] * e[j]).sum()).collect()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Cauchy–Schwarz and triangle inequalities of the semi-norm, evaluated
/// numerically on the real slice.
pub fn seminorm_inequalities(cases: u32, p: &Projector) -> Outcome {
    let n = p.dim();
    let frame = Frame::auto(p).map_err(|e| e.to_string())?;
    let e: Vec<Complex64> = frame.reference().0.iter().map(|x| x.eval(Complex64::new(0.0, 0.0)).unwrap()).collect();
    let pm = p.matrix().clone();
    run(cases, (matrix(n), matrix(n), point()), |(x, y, z)| {
        let (Some(xv), Some(yv), Some(pv)) = (eval_matrix(&x, z), eval_matrix(&y, z), eval_matrix(&pm, z)) else {
            return Ok(());
        };
        let w = dot(&e, &apply_c(&pv, &e)).re;
        prop_assume!(w > 1e-12);
        let xe = apply_c(&xv, &e);
        let ye = apply_c(&yv, &e);
        let sxy = dot(&xe, &ye) / w;
        let nx = (dot(&xe, &xe).re / w).max(0.0).sqrt();
        let ny = (dot(&ye, &ye).re / w).max(0.0).sqrt();
        let sum: Vec<Complex64> = xe.iter().zip(&ye).map(|(a, b)| a + b).collect();
        let nsum = (dot(&sum, &sum).re / w).max(0.0).sqrt();
        let tol = 1e-10 * (1.0 + nx * ny);
        prop_assert!(sxy.norm() <= nx * ny + tol, "CS: {} > {}", sxy.norm(), nx * ny);
        prop_assert!(nsum <= nx + ny + 1e-10 * (1.0 + nx + ny), "triangle: {} > {}", nsum, nx + ny);
        Ok(())
    })
}
