//! Fixtures, strategies and independent oracles shared by the integration
//! tests.
#![allow(dead_code)]

pub mod props;

use cpn_core::algebra::{BiPoly, Coeff, GaussianRational, Monomial, RationalFunction};
use cpn_core::matrix::{MatrixField, VectorField};
use num_complex::Complex64;
use proptest::prelude::*;

pub fn xp() -> RationalFunction {
    RationalFunction::xi_plus()
}

pub fn xm() -> RationalFunction {
    RationalFunction::xi_minus()
}

pub fn u() -> RationalFunction {
    &xp() * &xm()
}

pub fn int(n: i64) -> RationalFunction {
    RationalFunction::from_int(n)
}

pub fn ratio(n: i64, d: i64) -> RationalFunction {
    RationalFunction::from_ratio(n, d)
}

pub fn sqrt2() -> RationalFunction {
    RationalFunction::constant(Coeff::sqrt2())
}

/// `(1, √2ξ₊, ξ₊²)`.
pub fn veronese() -> VectorField {
    VectorField(vec![int(1), &sqrt2() * &xp(), xp().pow(2)])
}

/// `(1, ξ₊, 2ξ₊²)`.
pub fn negative_curvature() -> VectorField {
    VectorField(vec![int(1), xp(), &int(2) * &xp().pow(2)])
}

/// `(1, ξ₊)`.
pub fn degree_one() -> VectorField {
    VectorField(vec![int(1), xp()])
}

pub fn rows(r: Vec<Vec<RationalFunction>>) -> MatrixField {
    MatrixField::from_rows(r).unwrap()
}

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det(m: &MatrixField) -> RationalFunction {
    let n = m.n_rows();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = RationalFunction::zero();
    for j in 0..n {
        let minor = MatrixField::from_fn(n - 1, n - 1, |r, c| m.get(r + 1, if c < j { c } else { c + 1 }).clone());
        let term = m.get(0, j) * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Complex `n × n` matrix from row-major values.
pub type CMat = Vec<Complex64>;

pub fn cmat_mul(a: &CMat, b: &CMat, n: usize) -> CMat {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i * n + j] += a[i * n + k] * b[k * n + j];
            }
        }
    }
    out
}

// ---- strategies ----

pub fn small_rational() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, 1i64..=4)
}

pub fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (small_rational(), small_rational()).prop_map(|(re, im)| GaussianRational::from_parts(re, im))
}

/// Coefficients in `ℚ(i)(√2)`; the `√2` part is present a quarter of the time.
pub fn coeff() -> impl Strategy<Value = Coeff> {
    (gaussian(), gaussian(), 0u8..4).prop_map(|(b, s, flag)| {
        if flag == 0 {
            Coeff::new(b, s)
        } else {
            Coeff::new(b, GaussianRational::zero())
        }
    })
}

/// Sparse polynomial with up to `terms` terms of partial degree ≤ `deg`.
pub fn poly(terms: usize, deg: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=deg, 0..=deg, coeff()), 0..=terms)
        .prop_map(|ts| BiPoly::from_terms(ts.into_iter().map(|(p, m, c)| (Monomial::new(p, m), c))))
}

pub fn nonzero_poly(terms: usize, deg: u32) -> impl Strategy<Value = BiPoly> {
    poly(terms, deg).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn rational() -> impl Strategy<Value = RationalFunction> {
    (poly(3, 2), nonzero_poly(2, 1)).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

pub fn nonzero_rational() -> impl Strategy<Value = RationalFunction> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

/// Polynomial entries with Gaussian-integer coefficients, low degree.
pub fn int_poly() -> impl Strategy<Value = RationalFunction> {
    prop::collection::vec((0u32..=1, 0u32..=1, -3i64..=3, -3i64..=3), 0..=2).prop_map(|ts| {
        RationalFunction::from_poly(BiPoly::from_terms(ts.into_iter().map(|(p, m, re, im)| {
            (Monomial::new(p, m), Coeff::from(GaussianRational::from_parts((re, 1), (im, 1))))
        })))
    })
}

pub fn matrix(n: usize) -> impl Strategy<Value = MatrixField> {
    prop::collection::vec(int_poly(), n * n)
        .prop_map(move |es| MatrixField::from_fn(n, n, |i, j| es[i * n + j].clone()))
}

pub fn rational_matrix(n: usize) -> impl Strategy<Value = MatrixField> {
    prop::collection::vec(rational(), n * n)
        .prop_map(move |es| MatrixField::from_fn(n, n, |i, j| es[i * n + j].clone()))
}

/// Point on the real slice inside `|ξ| ≤ 3`.
pub fn point() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b)| Complex64::new(a, b))
}
