//! Rank-1 Hermitian projectors, the sesquilinear product and covariant
//! derivative attached to a projector, raising/lowering operators and towers.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::json::{poly_from_json, PolyJson};
use crate::algebra::{AlgebraError, BiPoly, Coeff, GaussianRational, RationalFunction};
use crate::matrix::{MatrixError, MatrixField, VectorField};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProjectorError {
    #[error("the zero vector does not define a projector")]
    ZeroVector,
    #[error("matrix is not a rank-1 Hermitian projector ({0})")]
    NotProjector(&'static str),
    #[error("reference vector is annihilated by the projector")]
    DegenerateReference,
    #[error("no reference vector found among basis vectors and random trials")]
    ReferenceExhausted,
    #[error("input is not an Euler-Lagrange solution")]
    NotSolution,
    #[error("tower did not terminate within {0} steps")]
    NonTermination(usize),
    #[error("tower invariant failed: {0}")]
    TowerInvariant(String),
    #[error("invalid descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

type Result<T> = std::result::Result<T, ProjectorError>;

/// Derivative direction `ξ₊` or `ξ₋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    }

    pub fn d(self, x: &MatrixField) -> MatrixField {
        match self {
            Direction::Plus => x.d_plus(),
            Direction::Minus => x.d_minus(),
        }
    }

    pub fn d_scalar(self, x: &RationalFunction) -> RationalFunction {
        match self {
            Direction::Plus => x.d_plus(),
            Direction::Minus => x.d_minus(),
        }
    }
}

/// Which projector laws hold for a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProjectorLaws {
    pub idempotent: bool,
    pub hermitian: bool,
    pub unit_trace: bool,
}

impl ProjectorLaws {
    pub fn of(m: &MatrixField) -> std::result::Result<Self, MatrixError> {
        if !m.is_square() {
            return Err(MatrixError::NotSquare("projector"));
        }
        Ok(Self {
            idempotent: m.matmul(m)? == *m,
            hermitian: m.dagger() == *m,
            unit_trace: m.trace().is_one(),
        })
    }

    pub fn all(&self) -> bool {
        self.idempotent && self.hermitian && self.unit_trace
    }

    fn first_failure(&self) -> Option<&'static str> {
        if !self.idempotent {
            Some("P^2 != P")
        } else if !self.hermitian {
            Some("P^dagger != P")
        } else if !self.unit_trace {
            Some("tr P != 1")
        } else {
            None
        }
    }
}

/// A rank-1 Hermitian projector field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Projector {
    mat: MatrixField,
}

impl Projector {
    /// Wrap a matrix after checking `P² = P`, `P† = P`, `tr P = 1` exactly.
    pub fn new(mat: MatrixField) -> Result<Self> {
        let laws = ProjectorLaws::of(&mat)?;
        match laws.first_failure() {
            Some(why) => Err(ProjectorError::NotProjector(why)),
            None => Ok(Self { mat }),
        }
    }

    /// `f ⊗ f† / (f†f)` after clearing denominators and common polynomial
    /// factors from the components of `f`.
    pub fn from_vector(f: &VectorField) -> Result<Self> {
        let f = normalize_vector(f).ok_or(ProjectorError::ZeroVector)?;
        let norm = f.inner(&f);
        let mat = f.outer(&f).scale(&norm.inv()?);
        Ok(Self { mat })
    }

    /// Constant projector onto the `j`-th basis direction.
    pub fn basis(n: usize, j: usize) -> Self {
        Self { mat: VectorField::basis(n, j).outer(&VectorField::basis(n, j)) }
    }

    pub fn matrix(&self) -> &MatrixField {
        &self.mat
    }

    pub fn into_matrix(self) -> MatrixField {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.n_rows()
    }

    pub fn laws(&self) -> ProjectorLaws {
        ProjectorLaws::of(&self.mat).expect("projector is square")
    }

    pub fn d(&self, dir: Direction) -> MatrixField {
        dir.d(&self.mat)
    }

    pub fn apply(&self, e: &VectorField) -> VectorField {
        self.mat.apply(e).expect("reference vector length")
    }

    /// Ratio `e†Pe`.
    pub fn weight(&self, e: &VectorField) -> RationalFunction {
        e.inner(&self.apply(e))
    }

    /// `tr(∂₊P ∂₋P)`.
    pub fn lagrangian(&self) -> RationalFunction {
        (&self.d(Direction::Plus) * &self.d(Direction::Minus)).trace()
    }

    /// `||D₊P||² − ||D₋P||²`, computed as `tr(P∂₋P∂₊P − P∂₊P∂₋P)`.
    pub fn charge_density(&self) -> RationalFunction {
        let dp = self.d(Direction::Plus);
        let dm = self.d(Direction::Minus);
        let pdm = &self.mat * &dm;
        let pdp = &self.mat * &dp;
        &(&pdm * &dp).trace() - &(&pdp * &dm).trace()
    }

    /// `||D±P||²` in trace form: `tr(∂±P P ∂∓P)`.
    pub fn norm_sq_trace(&self, dir: Direction) -> RationalFunction {
        self.sandwich(dir).trace()
    }

    /// `∂±P P ∂∓P`.
    fn sandwich(&self, dir: Direction) -> MatrixField {
        let a = self.d(dir);
        let b = self.d(dir.opposite());
        &(&a * &self.mat) * &b
    }

    /// `[∂₊∂₋P, P]`.
    pub fn el_residual(&self) -> MatrixField {
        let mixed = self.mat.d_minus().d_plus();
        mixed.commutator(&self.mat).expect("square")
    }

    pub fn is_holomorphic(&self) -> bool {
        (&self.mat * &self.mat.d_plus()).is_zero() && (&self.mat.d_minus() * &self.mat).is_zero()
    }

    pub fn is_antiholomorphic(&self) -> bool {
        (&self.mat * &self.mat.d_minus()).is_zero() && (&self.mat.d_plus() * &self.mat).is_zero()
    }

    /// `Π±X`; `None` is the annihilated marker.
    pub fn step(&self, dir: Direction) -> Option<Projector> {
        let m = self.sandwich(dir);
        if m.is_zero() {
            return None;
        }
        let t = m.trace();
        let inv = t.inv().expect("nonzero rank-1 sandwich has nonzero trace");
        Some(Projector { mat: m.scale(&inv) })
    }

    pub fn raise(&self) -> Option<Projector> {
        self.step(Direction::Plus)
    }

    pub fn lower(&self) -> Option<Projector> {
        self.step(Direction::Minus)
    }

    /// `Π±X` built as the projector onto `∂±X X e`.
    pub fn step_via_vector(&self, dir: Direction, e: &VectorField) -> Result<Option<Projector>> {
        let v = self.d(dir).apply(&self.apply(e))?;
        if v.is_zero() {
            return Ok(None);
        }
        Ok(Some(Projector::from_vector(&v)?))
    }

    /// The projector with `ξ± ↦ 1/ξ±` substituted entrywise.
    pub fn invert(&self) -> Projector {
        Projector { mat: self.mat.invert_variables() }
    }
}

fn normalize_vector(f: &VectorField) -> Option<VectorField> {
    if f.is_zero() {
        return None;
    }
    let lcm = f.0.iter().fold(BiPoly::one(), |acc, x| {
        let g = BiPoly::gcd(&acc, x.den());
        &acc * &x.den().div_exact(&g).expect("gcd divides")
    });
    let nums: Vec<BiPoly> = f
        .0
        .iter()
        .map(|x| x.num() * &lcm.div_exact(x.den()).expect("den divides lcm"))
        .collect();
    let g = nums.iter().fold(BiPoly::zero(), |acc, p| BiPoly::gcd(&acc, p));
    Some(VectorField(
        nums.iter()
            .map(|p| RationalFunction::from_poly(p.div_exact(&g).expect("gcd divides")))
            .collect(),
    ))
}

/// First basis vector, or else a seeded random Gaussian-integer vector, not
/// annihilated by any of the given projectors.
pub fn choose_reference(projectors: &[&Projector]) -> Result<VectorField> {
    let n = projectors.first().map_or(0, |p| p.dim());
    let ok = |e: &VectorField| projectors.iter().all(|p| !p.apply(e).is_zero());
    for j in 0..n {
        let e = VectorField::basis(n, j);
        if ok(&e) {
            return Ok(e);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..8 {
        let cs: Vec<Coeff> = (0..n)
            .map(|_| {
                let re = rng.gen_range(-3..=3);
                let im = rng.gen_range(-3..=3);
                GaussianRational::from_parts((re, 1), (im, 1)).into()
            })
            .collect();
        let e = VectorField::from_coeffs(&cs);
        if !e.is_zero() && ok(&e) {
            return Ok(e);
        }
    }
    Err(ProjectorError::ReferenceExhausted)
}

/// A projector together with a reference vector `e`: carries the
/// sesquilinear product and covariant derivatives it defines.
#[derive(Clone, Debug)]
pub struct Frame<'a> {
    p: &'a Projector,
    e: VectorField,
    inv_weight: RationalFunction,
}

impl<'a> Frame<'a> {
    pub fn new(p: &'a Projector, e: VectorField) -> Result<Self> {
        let w = p.weight(&e);
        if w.is_zero() {
            return Err(ProjectorError::DegenerateReference);
        }
        Ok(Self { p, e, inv_weight: w.inv()? })
    }

    /// Frame with the reference vector picked by [`choose_reference`].
    pub fn auto(p: &'a Projector) -> Result<Self> {
        let e = choose_reference(&[p])?;
        Self::new(p, e)
    }

    pub fn projector(&self) -> &Projector {
        self.p
    }

    pub fn reference(&self) -> &VectorField {
        &self.e
    }

    /// `⟨X,Y⟩ = e†X†Ye / e†Pe`.
    pub fn sesq(&self, x: &MatrixField, y: &MatrixField) -> RationalFunction {
        let xe = x.apply(&self.e).expect("shape");
        let ye = y.apply(&self.e).expect("shape");
        &xe.inner(&ye) * &self.inv_weight
    }

    pub fn norm_sq(&self, x: &MatrixField) -> RationalFunction {
        self.sesq(x, x)
    }

    /// `⟨P, ∂±P⟩`.
    pub fn connection(&self, dir: Direction) -> RationalFunction {
        self.sesq(self.p.matrix(), &self.p.d(dir))
    }

    /// `D±X = ∂±X − ⟨P, ∂±P⟩X`.
    pub fn cov_d(&self, dir: Direction, x: &MatrixField) -> MatrixField {
        let a = self.connection(dir);
        &dir.d(x) - &x.scale(&a)
    }

    /// `D±^k X`.
    pub fn cov_d_pow(&self, dir: Direction, x: &MatrixField, k: usize) -> MatrixField {
        let a = self.connection(dir);
        let mut out = x.clone();
        for _ in 0..k {
            out = &dir.d(&out) - &out.scale(&a);
        }
        out
    }

    /// `(||D₊P||², ||D₋P||²)`, computed through the sesquilinear product and
    /// through traces; the two routes must coincide.
    pub fn norms(&self) -> Result<(RationalFunction, RationalFunction)> {
        let mut out = Vec::with_capacity(2);
        for dir in [Direction::Plus, Direction::Minus] {
            let via_sesq = self.norm_sq(&self.cov_d(dir, self.p.matrix()));
            let via_trace = self.p.norm_sq_trace(dir);
            if via_sesq != via_trace {
                return Err(ProjectorError::TowerInvariant(format!(
                    "||D{}P||^2 differs between sesquilinear and trace forms",
                    if dir == Direction::Plus { '+' } else { '-' }
                )));
            }
            out.push(via_sesq);
        }
        let minus = out.pop().unwrap();
        Ok((out.pop().unwrap(), minus))
    }

    /// `||D₊P||² + ||D₋P||²`.
    pub fn lagrangian(&self) -> RationalFunction {
        let p = self.p.matrix();
        &self.norm_sq(&self.cov_d(Direction::Plus, p)) + &self.norm_sq(&self.cov_d(Direction::Minus, p))
    }

    /// `||D₊P||² − ||D₋P||²`.
    pub fn charge_density(&self) -> RationalFunction {
        let p = self.p.matrix();
        &self.norm_sq(&self.cov_d(Direction::Plus, p)) - &self.norm_sq(&self.cov_d(Direction::Minus, p))
    }

    /// `(D₊D₋P + ||D₋P||² P) e`.
    pub fn el_vector_residual(&self) -> VectorField {
        let p = self.p.matrix();
        let dm = self.cov_d(Direction::Minus, p);
        let dpdm = self.cov_d(Direction::Plus, &dm);
        let m = &dpdm + &p.scale(&self.norm_sq(&dm));
        m.apply(&self.e).expect("shape")
    }

    /// `A_ij = ⟨D₋ⁱP, D₊ʲP⟩` for `0 ≤ i, j ≤ kmax`.
    pub fn orthogonality_table(&self, kmax: usize) -> Vec<Vec<RationalFunction>> {
        let p = self.p.matrix();
        let lower: Vec<MatrixField> = pow_chain(self, Direction::Minus, p, kmax);
        let upper: Vec<MatrixField> = pow_chain(self, Direction::Plus, p, kmax);
        lower
            .iter()
            .map(|x| upper.iter().map(|y| self.sesq(x, y)).collect())
            .collect()
    }
}

fn pow_chain(frame: &Frame<'_>, dir: Direction, p: &MatrixField, kmax: usize) -> Vec<MatrixField> {
    let a = frame.connection(dir);
    let mut out = vec![p.clone()];
    for k in 0..kmax {
        let next = &dir.d(&out[k]) - &out[k].scale(&a);
        out.push(next);
    }
    out
}

/// Outcome of the Euler-Lagrange test.
#[derive(Clone, Debug)]
pub struct ElCheck {
    pub residual: MatrixField,
    pub is_solution: bool,
    /// Whether `(D₊D₋P + ||D₋P||²P)e = 0`, when a reference vector was available.
    pub vector_form: Option<bool>,
}

pub fn is_el_solution(p: &Projector, e: Option<&VectorField>) -> Result<ElCheck> {
    let residual = p.el_residual();
    let is_solution = residual.is_zero();
    let vector_form = match e {
        Some(e) => Some(Frame::new(p, e.clone())?.el_vector_residual().is_zero()),
        None => None,
    };
    Ok(ElCheck { residual, is_solution, vector_form })
}

/// Verification outcome for one tower element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementChecks {
    pub idempotent: bool,
    pub hermitian: bool,
    pub unit_trace: bool,
    pub el_solution: bool,
    pub el_vector_form: bool,
    pub norms_agree: bool,
    pub lagrangian_forms_agree: bool,
    pub charge_forms_agree: bool,
    /// `Π₊` agrees with the projector onto `∂₊X X e`.
    pub raise_vector_form: bool,
    pub lower_vector_form: bool,
    /// `Π∓Π±X = X` where `Π±X` is nonzero.
    pub raise_lower_inverse: bool,
    pub lower_raise_inverse: bool,
    /// Total degree of `[∂₊∂₋P, P]`, present only when nonzero.
    pub el_residual_degree: Option<u32>,
}

impl ElementChecks {
    pub fn all(&self) -> bool {
        self.idempotent
            && self.hermitian
            && self.unit_trace
            && self.el_solution
            && self.el_vector_form
            && self.norms_agree
            && self.lagrangian_forms_agree
            && self.charge_forms_agree
            && self.raise_vector_form
            && self.lower_vector_form
            && self.raise_lower_inverse
            && self.lower_raise_inverse
    }

    pub fn to_map(&self) -> BTreeMap<&'static str, bool> {
        BTreeMap::from([
            ("idempotent", self.idempotent),
            ("hermitian", self.hermitian),
            ("unit_trace", self.unit_trace),
            ("el_solution", self.el_solution),
            ("el_vector_form", self.el_vector_form),
            ("norms_agree", self.norms_agree),
            ("lagrangian_forms_agree", self.lagrangian_forms_agree),
            ("charge_forms_agree", self.charge_forms_agree),
            ("raise_vector_form", self.raise_vector_form),
            ("lower_vector_form", self.lower_vector_form),
            ("raise_lower_inverse", self.raise_lower_inverse),
            ("lower_raise_inverse", self.lower_raise_inverse),
        ])
    }
}

/// Checks that involve the whole tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerChecks {
    pub first_holomorphic: bool,
    pub last_antiholomorphic: bool,
    pub pairwise_orthogonal: bool,
    pub length_within_dimension: bool,
    /// `Σ P_i = I`; only meaningful for a full-length tower.
    pub resolves_identity: Option<bool>,
    pub recovers_input: bool,
}

impl TowerChecks {
    pub fn all(&self) -> bool {
        self.first_holomorphic
            && self.last_antiholomorphic
            && self.pairwise_orthogonal
            && self.length_within_dimension
            && self.resolves_identity.unwrap_or(true)
            && self.recovers_input
    }
}

/// `P₀, Π₊P₀, …, Π₊^{n+m}P₀` together with the reference vector used to
/// verify it.
#[derive(Clone, Debug)]
pub struct ProjectorTower {
    elements: Vec<Projector>,
    reference: VectorField,
    hol_index: usize,
    antihol_index: usize,
    element_checks: Vec<ElementChecks>,
    tower_checks: TowerChecks,
}

impl ProjectorTower {
    pub fn elements(&self) -> &[Projector] {
        &self.elements
    }

    pub fn get(&self, k: usize) -> Option<&Projector> {
        self.elements.get(k)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn reference(&self) -> &VectorField {
        &self.reference
    }

    /// Number of lowering steps from the input to the holomorphic end.
    pub fn hol_index(&self) -> usize {
        self.hol_index
    }

    /// Number of raising steps from the input to the antiholomorphic end.
    pub fn antihol_index(&self) -> usize {
        self.antihol_index
    }

    pub fn element_checks(&self) -> &[ElementChecks] {
        &self.element_checks
    }

    pub fn tower_checks(&self) -> &TowerChecks {
        &self.tower_checks
    }

    pub fn report(&self) -> TowerReport {
        TowerReport {
            schema_version: crate::SCHEMA_VERSION,
            dimension: self.dim(),
            length: self.len(),
            hol_index: self.hol_index,
            antihol_index: self.antihol_index,
            reference: self.reference.0.iter().map(ToString::to_string).collect(),
            elements: self
                .elements
                .iter()
                .zip(&self.element_checks)
                .enumerate()
                .map(|(index, (p, c))| ElementReport {
                    index,
                    max_degree: p.matrix().max_degree(),
                    lagrangian: p.lagrangian().to_string(),
                    checks: c.to_map(),
                    el_residual_degree: c.el_residual_degree,
                })
                .collect(),
            tower_checks: self.tower_checks.clone(),
            all_passed: self.element_checks.iter().all(ElementChecks::all) && self.tower_checks.all(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementReport {
    pub index: usize,
    pub max_degree: u32,
    pub lagrangian: String,
    pub checks: BTreeMap<&'static str, bool>,
    pub el_residual_degree: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub schema_version: u32,
    pub dimension: usize,
    pub length: usize,
    pub hol_index: usize,
    pub antihol_index: usize,
    pub reference: Vec<String>,
    pub elements: Vec<ElementReport>,
    pub tower_checks: TowerChecks,
    pub all_passed: bool,
}

fn check_element(p: &Projector, e: &VectorField, prev: Option<&Projector>, next: Option<&Projector>) -> Result<ElementChecks> {
    let laws = p.laws();
    let frame = Frame::new(p, e.clone())?;
    let el = is_el_solution(p, Some(e))?;
    let norms_agree = frame.norms().is_ok();
    let raised = p.raise();
    let lowered = p.lower();
    let raise_lower_inverse = match &raised {
        Some(r) => r.lower().as_ref() == Some(p),
        None => true,
    };
    let lower_raise_inverse = match &lowered {
        Some(l) => l.raise().as_ref() == Some(p),
        None => true,
    };
    Ok(ElementChecks {
        idempotent: laws.idempotent,
        hermitian: laws.hermitian,
        unit_trace: laws.unit_trace,
        el_solution: el.is_solution,
        el_vector_form: el.vector_form.unwrap_or(false),
        norms_agree,
        lagrangian_forms_agree: frame.lagrangian() == p.lagrangian(),
        charge_forms_agree: frame.charge_density() == p.charge_density(),
        raise_vector_form: p.step_via_vector(Direction::Plus, e)? == raised && raised.as_ref() == next,
        lower_vector_form: p.step_via_vector(Direction::Minus, e)? == lowered && lowered.as_ref() == prev,
        raise_lower_inverse,
        lower_raise_inverse,
        el_residual_degree: (!el.is_solution).then(|| el.residual.max_degree()),
    })
}

/// Lower to the holomorphic end, then raise to the antiholomorphic end,
/// verifying every tower invariant on the way.
pub fn build_tower(p: &Projector) -> Result<ProjectorTower> {
    let n_dim = p.dim();
    if !p.el_residual().is_zero() {
        return Err(ProjectorError::NotSolution);
    }
    let mut start = p.clone();
    let mut hol_index = 0;
    while let Some(q) = start.lower() {
        hol_index += 1;
        if hol_index >= n_dim {
            return Err(ProjectorError::NonTermination(n_dim - 1));
        }
        start = q;
    }
    let mut elements = vec![start];
    while let Some(q) = elements.last().unwrap().raise() {
        if elements.len() >= n_dim {
            return Err(ProjectorError::NonTermination(n_dim - 1));
        }
        elements.push(q);
    }
    let antihol_index = elements.len() - 1 - hol_index.min(elements.len() - 1);
    let refs: Vec<&Projector> = elements.iter().collect();
    let reference = choose_reference(&refs)?;

    let element_checks = elements
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let prev = i.checked_sub(1).map(|j| &elements[j]);
            check_element(q, &reference, prev, elements.get(i + 1))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut pairwise_orthogonal = true;
    for i in 0..elements.len() {
        for j in 0..elements.len() {
            if i != j && !(elements[i].matrix() * elements[j].matrix()).is_zero() {
                pairwise_orthogonal = false;
            }
        }
    }
    let resolves_identity = (elements.len() == n_dim).then(|| {
        let sum = elements
            .iter()
            .fold(MatrixField::zeros(n_dim, n_dim), |acc, q| &acc + q.matrix());
        sum == MatrixField::identity(n_dim)
    });
    let tower_checks = TowerChecks {
        first_holomorphic: elements[0].is_holomorphic(),
        last_antiholomorphic: elements.last().unwrap().is_antiholomorphic(),
        pairwise_orthogonal,
        length_within_dimension: elements.len() <= n_dim,
        resolves_identity,
        recovers_input: elements.get(hol_index) == Some(p),
    };
    let tower = ProjectorTower { elements, reference, hol_index, antihol_index, element_checks, tower_checks };
    Ok(tower)
}

/// Like [`build_tower`] but fails unless every invariant holds.
pub fn build_verified_tower(p: &Projector) -> Result<ProjectorTower> {
    let tower = build_tower(p)?;
    for (i, c) in tower.element_checks.iter().enumerate() {
        if !c.all() {
            let failed: Vec<&str> = c.to_map().into_iter().filter(|(_, ok)| !ok).map(|(k, _)| k).collect();
            return Err(ProjectorError::TowerInvariant(format!("element {i}: {}", failed.join(", "))));
        }
    }
    if !tower.tower_checks.all() {
        return Err(ProjectorError::TowerInvariant(format!("{:?}", tower.tower_checks)));
    }
    Ok(tower)
}

/// Input file describing a vector field `f(ξ₊, ξ₋)` with polynomial components.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorDescriptor {
    #[serde(rename = "N")]
    pub n: usize,
    pub components: Vec<PolyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<String>,
}

impl VectorDescriptor {
    pub fn to_vector(&self) -> Result<VectorField> {
        match self.extension.as_deref() {
            None | Some("sqrt2") => {}
            Some(other) => return Err(ProjectorError::Descriptor(format!("unsupported extension {other:?}"))),
        }
        if self.n < 2 {
            return Err(ProjectorError::Descriptor("N must be at least 2".into()));
        }
        if self.components.len() != self.n {
            return Err(ProjectorError::Descriptor(format!(
                "expected {} components, found {}",
                self.n,
                self.components.len()
            )));
        }
        let mut out = Vec::with_capacity(self.n);
        for c in &self.components {
            let p = poly_from_json(c)?;
            if p.degree_minus() > 0 {
                return Err(ProjectorError::Descriptor("components must be polynomials in xp only".into()));
            }
            if self.extension.is_none() && p.terms().any(|(_, k)| !k.in_gaussian()) {
                return Err(ProjectorError::Descriptor(
                    "sqrt2 coefficients require \"extension\": \"sqrt2\"".into(),
                ));
            }
            out.push(RationalFunction::from_poly(p));
        }
        let v = VectorField(out);
        if v.is_zero() {
            return Err(ProjectorError::ZeroVector);
        }
        Ok(v)
    }

    pub fn projector(&self) -> Result<Projector> {
        Projector::from_vector(&self.to_vector()?)
    }
}
