//! Numerical integration of rational densities over the real plane.
//!
//! The plane is split into the closed unit disk and its exterior; the
//! exterior is pulled back to the unit disk by `ξ = 1/w`, which turns
//! `∫_{|ξ|≥1} f dξ₁dξ₂` into `∫_{|w|≤1} f(1/w) |w|⁻⁴ dw₁dw₂`. Both disks are
//! integrated with a polar tensor Gauss–Legendre rule whose order is doubled
//! until successive values agree. All integrals use the Lebesgue measure
//! `dξ₁dξ₂`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{BiPoly, RationalEvaluator, RationalFunction};
use crate::matrix::VectorField;
use crate::par;
use crate::projector::{Direction, Projector};
use crate::surface::{killing_product, mixed_log_derivative, SurfaceError, SurfaceField};

#[derive(Debug, Error)]
pub enum QuadratureError {
    #[error("integrand has a pole on or near the {disk} disk at {re}{im:+}i")]
    Pole { disk: Disk, re: f64, im: f64 },
    #[error("integrand is not real on the real slice: imaginary part {imag:e} (value {value:e})")]
    NonReal { value: f64, imag: f64 },
    #[error("no convergence up to {nodes}² nodes per disk: value {value:e}, last change {change:e}")]
    NonConvergence { value: f64, change: f64, nodes: usize },
    #[error("invalid quadrature options: {0}")]
    Options(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

pub type Result<T> = std::result::Result<T, QuadratureError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Disk {
    Interior,
    Exterior,
}

impl std::fmt::Display for Disk {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Disk::Interior => "interior",
            Disk::Exterior => "exterior (inverted)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureOptions {
    /// Radial and angular node count of the first level.
    pub initial_nodes: usize,
    /// Largest per-axis node count before giving up.
    pub max_nodes: usize,
    /// Relative change between levels accepted as converged.
    pub rel_tol: f64,
    /// Per-axis resolution of the pole probe grid on each disk.
    pub probe_res: usize,
    /// Denominator magnitude (relative to its coefficient sum) that counts as a pole.
    pub probe_threshold: f64,
    /// Largest tolerated imaginary part, relative to `max(1, ∫|f|)`.
    pub imag_tol: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            initial_nodes: 64,
            max_nodes: 1024,
            rel_tol: 1e-8,
            probe_res: 128,
            probe_threshold: 1e-12,
            imag_tol: 1e-10,
        }
    }
}

impl QuadratureOptions {
    fn validate(&self) -> Result<()> {
        if self.initial_nodes < 2 {
            return Err(QuadratureError::Options("initial node count must be at least 2".into()));
        }
        if self.max_nodes < 2 * self.initial_nodes {
            return Err(QuadratureError::Options(format!(
                "max nodes {} leaves no room to double {}",
                self.max_nodes, self.initial_nodes
            )));
        }
        if self.rel_tol.is_nan() || self.rel_tol <= 0.0 {
            return Err(QuadratureError::Options("tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegerSnap {
    pub nearest: i64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    /// Per-axis node count of every level that was evaluated.
    pub node_counts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integer_snap: Option<IntegerSnap>,
}

impl IntegralResult {
    pub fn zero() -> Self {
        Self { value: 0.0, error_estimate: 0.0, node_counts: Vec::new(), integer_snap: None }
    }

    pub fn scaled(mut self, s: f64) -> Self {
        self.value *= s;
        self.error_estimate *= s.abs();
        self
    }

    pub fn with_snap(mut self) -> Self {
        let nearest = self.value.round();
        self.integer_snap = Some(IntegerSnap { nearest: nearest as i64, deviation: (self.value - nearest).abs() });
        self
    }

    /// Relative deviation from `target`, with an absolute fallback at zero.
    pub fn rel_error(&self, target: f64) -> f64 {
        if target == 0.0 {
            self.value.abs()
        } else {
            ((self.value - target) / target).abs()
        }
    }
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`, by Newton iteration on
/// the three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Integrand on the exterior disk after inversion: `f(1/w)/(w₊²w₋²)`.
pub fn exterior_integrand(f: &RationalFunction) -> RationalFunction {
    let u2 = RationalFunction::from_poly(BiPoly::monomial(crate::algebra::Coeff::one(), 2, 2));
    &f.invert_variables() / &u2
}

fn probe(den: &BiPoly, disk: Disk, opts: &QuadratureOptions) -> Result<()> {
    let scale: f64 = den.terms().map(|(_, c)| c.to_complex().norm()).sum();
    let eval = crate::algebra::PolyEvaluator::new(den);
    let n = opts.probe_res.max(2);
    let step = 2.0 / (n - 1) as f64;
    for i in 0..n {
        for j in 0..n {
            let z = Complex64::new(-1.0 + i as f64 * step, -1.0 + j as f64 * step);
            if z.norm() > 1.0 + 1e-12 {
                continue;
            }
            if eval.eval(z, z.conj()).norm() <= opts.probe_threshold * scale {
                return Err(QuadratureError::Pole { disk, re: z.re, im: z.im });
            }
        }
    }
    // The boundary circle is shared by both disks.
    for j in 0..4 * n {
        let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / (4 * n) as f64);
        if eval.eval(z, z.conj()).norm() <= opts.probe_threshold * scale {
            return Err(QuadratureError::Pole { disk, re: z.re, im: z.im });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Default)]
struct Sums {
    re: f64,
    im: f64,
    abs: f64,
}

fn polar_rule(
    evals: &[(&RationalEvaluator, Disk)],
    radius: f64,
    n: usize,
) -> Result<Sums> {
    let (x, w) = gauss_legendre(n);
    let angles: Vec<(Complex64, f64)> =
        x.iter().zip(&w).map(|(&xj, &wj)| (Complex64::from_polar(1.0, PI * (xj + 1.0)), PI * wj)).collect();
    let rows = par::map_indices(n, |i| -> Result<Sums> {
        let r = radius * (x[i] + 1.0) / 2.0;
        let wr = radius * w[i] / 2.0 * r;
        let mut re = Vec::with_capacity(n * evals.len());
        let mut im = Vec::with_capacity(n * evals.len());
        let mut ab = Vec::with_capacity(n * evals.len());
        for &(ev, disk) in evals {
            for &(u, wt) in &angles {
                let z = u * r;
                let v = ev.eval(z).map_err(|_| QuadratureError::Pole { disk, re: z.re, im: z.im })?;
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(QuadratureError::Pole { disk, re: z.re, im: z.im });
                }
                re.push(v.re * wt);
                im.push(v.im * wt);
                ab.push(v.norm() * wt);
            }
        }
        Ok(Sums { re: wr * pairwise_sum(&re), im: wr * pairwise_sum(&im), abs: wr * pairwise_sum(&ab) })
    });
    let rows: Vec<Sums> = rows.into_iter().collect::<Result<_>>()?;
    let pick = |g: fn(&Sums) -> f64| pairwise_sum(&rows.iter().map(g).collect::<Vec<_>>());
    Ok(Sums { re: pick(|s| s.re), im: pick(|s| s.im), abs: pick(|s| s.abs) })
}

/// `∫_{ℝ²} f dξ₁dξ₂` by the interior/exterior split.
pub fn integrate_plane(f: &RationalFunction, opts: &QuadratureOptions) -> Result<IntegralResult> {
    opts.validate()?;
    if f.is_zero() {
        return Ok(IntegralResult::zero());
    }
    let ext = exterior_integrand(f);
    probe(f.den(), Disk::Interior, opts)?;
    probe(ext.den(), Disk::Exterior, opts)?;
    let inner = RationalEvaluator::new(f);
    let outer = RationalEvaluator::new(&ext);
    let evals = [(&inner, Disk::Interior), (&outer, Disk::Exterior)];

    let mut node_counts = Vec::new();
    let mut prev: Option<f64> = None;
    let mut n = opts.initial_nodes;
    let mut last_change = f64::INFINITY;
    let mut last = Sums::default();
    while n <= opts.max_nodes {
        let s = polar_rule(&evals, 1.0, n)?;
        node_counts.push(n);
        last = s;
        if let Some(p) = prev {
            last_change = (s.re - p).abs();
            if last_change <= opts.rel_tol * s.abs.max(f64::MIN_POSITIVE) {
                check_real(s, opts)?;
                return Ok(IntegralResult { value: s.re, error_estimate: last_change, node_counts, integer_snap: None });
            }
        }
        prev = Some(s.re);
        n *= 2;
    }
    Err(QuadratureError::NonConvergence { value: last.re, change: last_change, nodes: opts.max_nodes })
}

fn check_real(s: Sums, opts: &QuadratureOptions) -> Result<()> {
    if s.im.abs() > opts.imag_tol * s.abs.max(1.0) {
        return Err(QuadratureError::NonReal { value: s.re, imag: s.im });
    }
    Ok(())
}

/// Direct polar integral over the disk `|ξ| ≤ radius` with `n × n` nodes,
/// without splitting. Used to cross-check [`integrate_plane`].
pub fn integrate_disk(f: &RationalFunction, radius: f64, n: usize) -> Result<f64> {
    let ev = RationalEvaluator::new(f);
    Ok(polar_rule(&[(&ev, Disk::Interior)], radius, n)?.re)
}

/// `S = ∫ L dξ₁dξ₂`.
pub fn action(p: &Projector, opts: &QuadratureOptions) -> Result<IntegralResult> {
    integrate_plane(&p.lagrangian(), opts)
}

/// `A = ∫ 2 g₊₋ dξ₁dξ₂` with `g₊₋ = (∂₊F, ∂₋F)` taken from the surface itself.
pub fn area(surface: &SurfaceField, opts: &QuadratureOptions) -> Result<IntegralResult> {
    let g = killing_product(&surface.tangent(Direction::Plus), &surface.tangent(Direction::Minus))?;
    integrate_plane(&(&RationalFunction::from_int(2) * &g), opts)
}

/// `Q = (1/π) ∫ q dξ₁dξ₂`, snapped to the nearest integer.
pub fn charge(p: &Projector, opts: &QuadratureOptions) -> Result<IntegralResult> {
    Ok(integrate_plane(&p.charge_density(), opts)?.scaled(1.0 / PI).with_snap())
}

/// `Δ = −(1/π) ∫ ∂₊∂₋ ln L dξ₁dξ₂`, snapped to the nearest integer.
pub fn euler_poincare(p: &Projector, opts: &QuadratureOptions) -> Result<IntegralResult> {
    let d = mixed_log_derivative(&p.lagrangian())?;
    Ok(integrate_plane(&d, opts)?.scaled(-1.0 / PI).with_snap())
}

/// Integrand of `W = S/2 + (3/2) ∫ q²/L`; zero when `L` vanishes identically.
pub fn willmore_density(p: &Projector) -> RationalFunction {
    let l = p.lagrangian();
    if l.is_zero() {
        return l;
    }
    let q = p.charge_density();
    let half = RationalFunction::from_ratio(1, 2);
    let three_half = RationalFunction::from_ratio(3, 2);
    &(&half * &l) + &(&three_half * &(&q.pow(2) / &l))
}

pub fn willmore(p: &Projector, opts: &QuadratureOptions) -> Result<IntegralResult> {
    integrate_plane(&willmore_density(p), opts)
}

/// Density of the vector-form action `Σ_μ (D_μ f)†D_μ f / f†f`, which equals
/// `2(|D₊f|² + |D₋f|²)/f†f` in complex coordinates.
pub fn vector_action_density(f: &VectorField) -> RationalFunction {
    let norm = f.inner(f);
    let cov = |d: VectorField| {
        let conn = &f.inner(&d) / &norm;
        d.sub(&f.scale(&conn))
    };
    let dp = cov(f.d_plus());
    let dm = cov(f.d_minus());
    let sum = &dp.inner(&dp) + &dm.inner(&dm);
    &(&RationalFunction::from_int(2) * &sum) / &norm
}

/// Vector-form action of a (not necessarily normalized) vector field.
pub fn vector_action(f: &VectorField, opts: &QuadratureOptions) -> Result<IntegralResult> {
    integrate_plane(&vector_action_density(f), opts)
}
