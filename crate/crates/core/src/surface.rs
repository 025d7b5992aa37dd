//! Surfaces immersed in `su(N)` attached to a projector tower: metric,
//! curvatures, normals, polynomial certificates and the inverse problem of
//! recognising such a surface.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{Coeff, RationalFunction};
use crate::matrix::{MatrixError, MatrixField};
use crate::projector::{Direction, Frame, Projector, ProjectorError, ProjectorTower};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SurfaceError {
    #[error("surface index {k} out of range for a tower of length {len}")]
    IndexOutOfRange { k: usize, len: usize },
    #[error("Lagrangian density vanishes identically; curvature is undefined")]
    UndefinedCurvature,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Projector(#[from] ProjectorError),
}

type Result<T> = std::result::Result<T, SurfaceError>;

/// `c_k = (1 + 2k)/N`.
pub fn surface_constant(k: usize, n: usize) -> Coeff {
    Coeff::from_ratio(1 + 2 * k as i64, n as i64)
}

/// `F_k = −i(P_k + 2 Σ_{j<k} P_j − c_k I)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceField {
    f: MatrixField,
    k: usize,
    c_k: Coeff,
}

impl SurfaceField {
    pub fn matrix(&self) -> &MatrixField {
        &self.f
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn c_k(&self) -> &Coeff {
        &self.c_k
    }

    pub fn dim(&self) -> usize {
        self.f.n_rows()
    }

    pub fn tangent(&self, dir: Direction) -> MatrixField {
        dir.d(&self.f)
    }

    /// Exact checks of the defining properties against the generating
    /// projector `P_k`.
    pub fn checks(&self, p: &Projector) -> SurfaceChecks {
        let f = &self.f;
        let (tp, tm) = tangents_from_projector(p);
        SurfaceChecks {
            skew_hermitian: f.dagger() == -f,
            traceless: f.trace().is_zero(),
            tangent_plus: f.d_plus() == tp,
            tangent_minus: f.d_minus() == tm,
            closed: tp.d_minus() == tm.d_plus(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceChecks {
    pub skew_hermitian: bool,
    pub traceless: bool,
    /// `∂₊F = −i[∂₊P, P]`.
    pub tangent_plus: bool,
    /// `∂₋F = i[∂₋P, P]`.
    pub tangent_minus: bool,
    /// Mixed partials of `F` agree.
    pub closed: bool,
}

impl SurfaceChecks {
    pub fn all(&self) -> bool {
        self.skew_hermitian && self.traceless && self.tangent_plus && self.tangent_minus && self.closed
    }
}

fn times_i(m: &MatrixField) -> MatrixField {
    m.scale_coeff(&Coeff::i())
}

/// `(−i[∂₊P, P], i[∂₋P, P])`.
pub fn tangents_from_projector(p: &Projector) -> (MatrixField, MatrixField) {
    let pm = p.matrix();
    let cp = pm.d_plus().commutator(pm).expect("square");
    let cm = pm.d_minus().commutator(pm).expect("square");
    (-times_i(&cp), times_i(&cm))
}

pub fn surface_from_tower(tower: &ProjectorTower, k: usize) -> Result<SurfaceField> {
    let len = tower.len();
    if k >= len {
        return Err(SurfaceError::IndexOutOfRange { k, len });
    }
    let n = tower.dim();
    let c_k = surface_constant(k, n);
    let els = tower.elements();
    let mut sum = els[k].matrix().clone();
    for p in &els[..k] {
        sum = &sum + &p.matrix().scale_coeff(&Coeff::from_int(2));
    }
    let shifted = &sum - &MatrixField::identity(n).scale_coeff(&c_k);
    let f = -times_i(&shifted);
    Ok(SurfaceField { f, k, c_k })
}

/// `Σ_k (−1)^k F_k` over the whole tower.
pub fn alternating_sum(tower: &ProjectorTower) -> Result<MatrixField> {
    let n = tower.dim();
    let mut acc = MatrixField::zeros(n, n);
    for k in 0..tower.len() {
        let f = surface_from_tower(tower, k)?;
        acc = if k % 2 == 0 { &acc + f.matrix() } else { &acc - f.matrix() };
    }
    Ok(acc)
}

/// `(A, B) = −½ tr(AB)`.
pub fn killing_product(a: &MatrixField, b: &MatrixField) -> Result<RationalFunction> {
    let t = a.matmul(b)?.trace();
    Ok(t.scale(&Coeff::from_ratio(-1, 2)))
}

/// `∂₊∂₋ ln f = (f ∂₊∂₋f − ∂₊f ∂₋f)/f²`.
pub fn mixed_log_derivative(f: &RationalFunction) -> Result<RationalFunction> {
    if f.is_zero() {
        return Err(SurfaceError::UndefinedCurvature);
    }
    let fp = f.d_plus();
    let fm = f.d_minus();
    let fpm = fp.d_minus();
    let num = &(f * &fpm) - &(&fp * &fm);
    Ok(&num / &f.pow(2))
}

fn nonzero_lagrangian(p: &Projector) -> Result<RationalFunction> {
    let l = p.lagrangian();
    if l.is_zero() {
        return Err(SurfaceError::UndefinedCurvature);
    }
    Ok(l)
}

/// `K = −2 ∂₊∂₋ ln L / L`.
pub fn gauss_curvature(p: &Projector) -> Result<RationalFunction> {
    let l = nonzero_lagrangian(p)?;
    let m = mixed_log_derivative(&l)?;
    Ok(&m.scale(&Coeff::from_int(-2)) / &l)
}

/// Curvature of an (anti-)holomorphic element through covariant
/// derivatives: `4 − 2(||D²P||²||DP||² − |⟨DP, D²P⟩|²)/||DP||⁶`, with `D = D₊`
/// for holomorphic and `D = D₋` for antiholomorphic projectors. `None` for
/// mixed elements.
pub fn gauss_curvature_extremal(p: &Projector, e: &crate::matrix::VectorField) -> Result<Option<RationalFunction>> {
    let dir = if p.is_holomorphic() {
        Direction::Plus
    } else if p.is_antiholomorphic() {
        Direction::Minus
    } else {
        return Ok(None);
    };
    let frame = Frame::new(p, e.clone())?;
    let d1 = frame.cov_d(dir, p.matrix());
    let d2 = frame.cov_d(dir, &d1);
    let n1 = frame.norm_sq(&d1);
    if n1.is_zero() {
        return Err(SurfaceError::UndefinedCurvature);
    }
    let n2 = frame.norm_sq(&d2);
    let cross = frame.sesq(&d1, &d2);
    let cross_sq = &cross * &cross.dagger();
    let num = &(&n2 * &n1) - &cross_sq;
    let frac = &num / &n1.pow(3);
    Ok(Some(&RationalFunction::from_int(4) - &frac.scale(&Coeff::from_int(2))))
}

/// `(Γ⁺₊₊, Γ⁻₋₋) = (∂₊L/L, ∂₋L/L)`.
pub fn christoffel(p: &Projector) -> Result<(RationalFunction, RationalFunction)> {
    let l = nonzero_lagrangian(p)?;
    Ok((&l.d_plus() / &l, &l.d_minus() / &l))
}

/// Mean curvature vector `H = (−4i/L)[∂₊P, ∂₋P]` and its norm `(H, H)`.
pub fn mean_curvature(p: &Projector) -> Result<(MatrixField, RationalFunction)> {
    let l = nonzero_lagrangian(p)?;
    let c = p.d(Direction::Plus).commutator(&p.d(Direction::Minus))?;
    let s = &RationalFunction::constant(&Coeff::i() * &Coeff::from_int(-4)) / &l;
    let h = c.scale(&s);
    let norm = killing_product(&h, &h)?;
    Ok((h, norm))
}

/// `(H, H)` from the densities: `4(L² + 3q²)/L²`.
pub fn mean_norm_from_densities(l: &RationalFunction, q: &RationalFunction) -> Result<RationalFunction> {
    if l.is_zero() {
        return Err(SurfaceError::UndefinedCurvature);
    }
    let l2 = l.pow(2);
    let num = &l2 + &q.pow(2).scale(&Coeff::from_int(3));
    Ok((&num / &l2).scale(&Coeff::from_int(4)))
}

/// The three normals of the second fundamental form.
#[derive(Clone, Debug, PartialEq)]
pub struct Normals {
    /// `∂₊²F − Γ⁺₊₊ ∂₊F`.
    pub plus_plus: MatrixField,
    /// `∂₊∂₋F`.
    pub plus_minus: MatrixField,
    /// `∂₋²F − Γ⁻₋₋ ∂₋F`.
    pub minus_minus: MatrixField,
}

pub fn second_fundamental_normals(surface: &SurfaceField, p: &Projector) -> Result<Normals> {
    let (gp, gm) = christoffel(p)?;
    let fp = surface.tangent(Direction::Plus);
    let fm = surface.tangent(Direction::Minus);
    Ok(Normals {
        plus_plus: &fp.d_plus() - &fp.scale(&gp),
        plus_minus: fp.d_minus(),
        minus_minus: &fm.d_minus() - &fm.scale(&gm),
    })
}

/// Killing-orthogonality of the normals to the tangent plane and of the
/// tangent plane to every tower element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalChecks {
    pub normals_tangent_orthogonal: bool,
    /// `N₊₋ = (L/4) H`.
    pub plus_minus_is_scaled_mean: bool,
    /// `tr(P_j [∂±P_k, P_k]) = 0` for every tower element `P_j`.
    pub tower_normal: bool,
    /// `(N₊₊, P_j) = (N₋₋, P_j) = 0` for every tower element.
    pub normals_tower_orthogonal: bool,
}

impl NormalChecks {
    pub fn all(&self) -> bool {
        self.normals_tangent_orthogonal
            && self.plus_minus_is_scaled_mean
            && self.tower_normal
            && self.normals_tower_orthogonal
    }
}

pub fn check_normals(
    surface: &SurfaceField,
    tower: &ProjectorTower,
    normals: &Normals,
) -> Result<NormalChecks> {
    let p = &tower.elements()[surface.k()];
    let fp = surface.tangent(Direction::Plus);
    let fm = surface.tangent(Direction::Minus);
    let mut orth = true;
    for n in [&normals.plus_plus, &normals.plus_minus, &normals.minus_minus] {
        for t in [&fp, &fm] {
            orth &= killing_product(n, t)?.is_zero();
        }
    }
    let (h, _) = mean_curvature(p)?;
    let quarter_l = p.lagrangian().scale(&Coeff::from_ratio(1, 4));
    let scaled = normals.plus_minus == h.scale(&quarter_l);
    let pm = p.matrix();
    let cp = pm.d_plus().commutator(pm)?;
    let cm = pm.d_minus().commutator(pm)?;
    let mut tower_normal = true;
    let mut normals_tower = true;
    for q in tower.elements() {
        let qm = q.matrix();
        tower_normal &= qm.matmul(&cp)?.trace().is_zero() && qm.matmul(&cm)?.trace().is_zero();
        normals_tower &= killing_product(&normals.plus_plus, qm)?.is_zero()
            && killing_product(&normals.minus_minus, qm)?.is_zero();
    }
    Ok(NormalChecks {
        normals_tangent_orthogonal: orth,
        plus_minus_is_scaled_mean: scaled,
        tower_normal,
        normals_tower_orthogonal: normals_tower,
    })
}

/// Polynomial in `t` with coefficients in `ℚ(i)(√2)`, lowest degree first.
pub type CoeffPoly = Vec<Coeff>;

fn poly_mul_linear(p: &[Coeff], root: &Coeff) -> CoeffPoly {
    let mut out = vec![Coeff::zero(); p.len() + 1];
    for (j, c) in p.iter().enumerate() {
        out[j + 1] = &out[j + 1] + c;
        out[j] = &out[j] - &(c * root);
    }
    out
}

fn poly_from_roots(roots: &[Coeff]) -> CoeffPoly {
    roots.iter().fold(vec![Coeff::one()], |acc, r| poly_mul_linear(&acc, r))
}

/// `p_k(t) = (t − i c_k)^{N−k−1} (t − i(c_k − 1)) (t − i(c_k − 2))^k`.
pub fn expected_char_poly(k: usize, n: usize) -> CoeffPoly {
    let i = Coeff::i();
    let c = surface_constant(k, n);
    let mut roots = vec![&i * &c; n - k - 1];
    roots.push(&i * &(&c - &Coeff::one()));
    roots.extend(std::iter::repeat_n(&i * &(&c - &Coeff::from_int(2)), k));
    poly_from_roots(&roots)
}

/// Minimal polynomial `q_k`: quadratic at either end of a full tower, cubic
/// otherwise.
pub fn minimal_poly(k: usize, n: usize) -> CoeffPoly {
    let i = Coeff::i();
    let c = surface_constant(k, n);
    if k == 0 {
        // (t − ic)² + i(t − ic): eigenvalues ic and i(c − 1)
        let a = &i * &c;
        poly_from_roots(&[a.clone(), &a - &i])
    } else if k == n - 1 {
        // (t − i(c−2))² − i(t − i(c−2)): eigenvalues i(c − 2) and i(c − 1)
        let a = &i * &(&c - &Coeff::from_int(2));
        poly_from_roots(&[a.clone(), &a + &i])
    } else {
        cubic_shifted(&(&c - &Coeff::one()))
    }
}

/// `(t − iμ)³ + (t − iμ)`.
pub fn cubic_shifted(mu: &Coeff) -> CoeffPoly {
    let i = Coeff::i();
    let a = &i * mu;
    poly_from_roots(&[a.clone(), &a + &i, &a - &i])
}

/// `q(M)` by Horner's rule.
pub fn eval_matrix_poly(q: &[Coeff], m: &MatrixField) -> Result<MatrixField> {
    let n = m.n_rows();
    let ident = MatrixField::identity(n);
    let mut acc = MatrixField::zeros(n, n);
    for c in q.iter().rev() {
        acc = &acc.matmul(m)? + &ident.scale_coeff(c);
    }
    Ok(acc)
}

/// `(F − iμ)² + I`.
pub fn reconstruct_projector(f: &MatrixField, mu: &Coeff) -> Result<MatrixField> {
    let n = f.n_rows();
    let shift = &Coeff::i() * mu;
    let q = f - &MatrixField::identity(n).scale_coeff(&shift);
    Ok(&q.matmul(&q)? + &MatrixField::identity(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialCertificate {
    pub char_poly_matches: bool,
    pub char_poly_constant: bool,
    pub minimal_poly_annihilates: bool,
    pub cubic_annihilates: bool,
    pub reconstructs_projector: bool,
}

impl PolynomialCertificate {
    pub fn all(&self) -> bool {
        self.char_poly_matches
            && self.char_poly_constant
            && self.minimal_poly_annihilates
            && self.cubic_annihilates
            && self.reconstructs_projector
    }
}

pub fn certify_polynomials(surface: &SurfaceField, p: &Projector) -> Result<PolynomialCertificate> {
    let n = surface.dim();
    let k = surface.k();
    let f = surface.matrix();
    let cp = f.char_poly()?;
    let constant = cp.constant_coeffs();
    let shift = surface.c_k() - &Coeff::one();
    Ok(PolynomialCertificate {
        char_poly_matches: constant.as_ref() == Some(&expected_char_poly(k, n)),
        char_poly_constant: constant.is_some(),
        minimal_poly_annihilates: eval_matrix_poly(&minimal_poly(k, n), f)?.is_zero(),
        cubic_annihilates: eval_matrix_poly(&cubic_shifted(&shift), f)?.is_zero(),
        reconstructs_projector: reconstruct_projector(f, &shift)? == *p.matrix(),
    })
}

/// Per-candidate outcome of the surface classifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateReport {
    pub k: usize,
    pub lambda: String,
    pub det_matches: bool,
    pub cubic_annihilates: bool,
    pub differential_matches: bool,
    pub projector_laws: bool,
    pub el_solution: bool,
}

impl CandidateReport {
    pub fn accepted(&self) -> bool {
        self.det_matches && self.cubic_annihilates && self.differential_matches && self.projector_laws && self.el_solution
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub accepted: bool,
    pub k: Option<usize>,
    pub lambda: Option<Coeff>,
    pub projector: Option<Projector>,
    pub skew_hermitian: bool,
    pub determinant: RationalFunction,
    pub candidates: Vec<CandidateReport>,
}

impl Classification {
    /// Every index whose certificates all pass. More than one entry means the
    /// surface is realised at several positions (e.g. `N = 2`, where
    /// `F_1 = F_0`); `k` then holds the smallest.
    pub fn accepted_indices(&self) -> Vec<usize> {
        self.candidates.iter().filter(|c| c.accepted()).map(|c| c.k).collect()
    }

    /// First certificate that failed, for diagnostics.
    pub fn failure(&self) -> Option<String> {
        if self.accepted {
            return None;
        }
        if !self.skew_hermitian {
            return Some("matrix is not skew-Hermitian".into());
        }
        if !self.candidates.iter().any(|c| c.det_matches) {
            return Some(format!("determinant {} matches no candidate", self.determinant));
        }
        let c = self.candidates.iter().find(|c| c.det_matches).unwrap();
        let which = if !c.cubic_annihilates {
            "cubic identity"
        } else if !c.differential_matches {
            "differential"
        } else if !c.projector_laws {
            "projector laws"
        } else {
            "Euler-Lagrange equation"
        };
        Some(format!("k={} λ={}: {which} failed", c.k, c.lambda))
    }
}

/// `iⁿ λ^{N−k−1} (λ−1) (λ−2)^k`.
pub fn expected_determinant(k: usize, n: usize, lambda: &Coeff) -> Coeff {
    let one = Coeff::one();
    let two = Coeff::from_int(2);
    let mut out = Coeff::i().pow(n as u32);
    out = &out * &lambda.pow((n - k - 1) as u32);
    out = &out * &(lambda - &one);
    &out * &(lambda - &two).pow(k as u32)
}

/// Decide whether `F` is a surface of some tower: match `det F` against
/// `λ = c_k`, then check the cubic identity, the differential, and that the
/// reconstructed projector is a rank-1 Hermitian Euler-Lagrange solution.
pub fn classify_surface(f: &MatrixField) -> Result<Classification> {
    if !f.is_square() {
        return Err(MatrixError::NotSquare("classify").into());
    }
    let n = f.n_rows();
    let skew_hermitian = f.dagger() == -f;
    let determinant = f.determinant()?;
    let det_const = determinant.as_constant();
    let mut candidates = Vec::new();
    let mut found = None;
    for k in 0..n {
        let lambda = surface_constant(k, n);
        let det_matches = det_const.as_ref() == Some(&expected_determinant(k, n, &lambda));
        let mut report = CandidateReport {
            k,
            lambda: lambda.to_string(),
            det_matches,
            cubic_annihilates: false,
            differential_matches: false,
            projector_laws: false,
            el_solution: false,
        };
        if det_matches && skew_hermitian {
            let shift = &lambda - &Coeff::one();
            report.cubic_annihilates = eval_matrix_poly(&cubic_shifted(&shift), f)?.is_zero();
            let pm = reconstruct_projector(f, &shift)?;
            let (tp, tm) = differential_from(&pm)?;
            report.differential_matches = f.d_plus() == tp && f.d_minus() == tm;
            if let Ok(p) = Projector::new(pm) {
                report.projector_laws = true;
                report.el_solution = p.el_residual().is_zero();
                if report.accepted() && found.is_none() {
                    found = Some((k, lambda.clone(), p));
                }
            }
        }
        candidates.push(report);
    }
    Ok(match found {
        Some((k, lambda, p)) => Classification {
            accepted: true,
            k: Some(k),
            lambda: Some(lambda),
            projector: Some(p),
            skew_hermitian,
            determinant,
            candidates,
        },
        None => Classification {
            accepted: false,
            k: None,
            lambda: None,
            projector: None,
            skew_hermitian,
            determinant,
            candidates,
        },
    })
}

fn differential_from(pm: &MatrixField) -> Result<(MatrixField, MatrixField)> {
    let cp = pm.d_plus().commutator(pm)?;
    let cm = pm.d_minus().commutator(pm)?;
    Ok((-times_i(&cp), times_i(&cm)))
}

/// Real-coordinate derivatives `(∂₁X, ∂₂X) = (∂₊X + ∂₋X, i(∂₊X − ∂₋X))`.
pub fn real_derivatives(x: &MatrixField) -> (MatrixField, MatrixField) {
    let dp = x.d_plus();
    let dm = x.d_minus();
    (&dp + &dm, times_i(&(&dp - &dm)))
}

/// Generalized Gell-Mann matrices `λ_a` (Hermitian, `tr(λ_a λ_b) = 2δ_ab`),
/// row-major, in the order: symmetric, antisymmetric off-diagonal pairs
/// `(j < k)`, then diagonal.
pub fn gell_mann(n: usize) -> Vec<Vec<Complex64>> {
    let mut out = Vec::with_capacity(n * n - 1);
    let zero = Complex64::new(0.0, 0.0);
    for j in 0..n {
        for k in j + 1..n {
            let mut s = vec![zero; n * n];
            s[j * n + k] = Complex64::new(1.0, 0.0);
            s[k * n + j] = Complex64::new(1.0, 0.0);
            out.push(s);
            let mut a = vec![zero; n * n];
            a[j * n + k] = Complex64::new(0.0, -1.0);
            a[k * n + j] = Complex64::new(0.0, 1.0);
            out.push(a);
        }
    }
    for l in 1..n {
        let mut d = vec![zero; n * n];
        let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
        for j in 0..l {
            d[j * n + j] = Complex64::new(scale, 0.0);
        }
        d[l * n + l] = Complex64::new(-(l as f64) * scale, 0.0);
        out.push(d);
    }
    out
}

/// Coordinates of a skew-Hermitian matrix in the orthonormal basis `iλ_a`
/// of `su(N)` under `(A, B) = −½ tr(AB)`: `x_a = −½ tr(F · iλ_a)`.
pub fn su_coordinates(f: &[Complex64], n: usize, basis: &[Vec<Complex64>]) -> Vec<f64> {
    basis
        .iter()
        .map(|lam| {
            let mut tr = Complex64::new(0.0, 0.0);
            for r in 0..n {
                for c in 0..n {
                    tr += f[r * n + c] * lam[c * n + r];
                }
            }
            (tr * Complex64::new(0.0, -0.5)).re
        })
        .collect()
}
