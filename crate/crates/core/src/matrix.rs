//! Dense matrices and vectors of rational functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::json::{rational_from_json, rational_to_json, RationalJson};
use crate::algebra::{AlgebraError, BiPoly, Coeff, RationalEvaluator, RationalFunction};
use crate::par;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatrixError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{0}: matrix is not square")]
    NotSquare(&'static str),
    #[error("ragged or empty matrix rows")]
    Ragged,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An `n_rows × n_cols` matrix of rational functions, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatrixField {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<RationalFunction>,
}

impl MatrixField {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, entries: vec![RationalFunction::zero(); n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { RationalFunction::one() } else { RationalFunction::zero() })
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, f: impl Fn(usize, usize) -> RationalFunction) -> Self {
        let entries = (0..n_rows * n_cols).map(|k| f(k / n_cols, k % n_cols)).collect();
        Self { n_rows, n_cols, entries }
    }

    fn from_fn_par<F>(n_rows: usize, n_cols: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> RationalFunction + Sync + Send,
    {
        let entries = par::map_indices(n_rows * n_cols, |k| f(k / n_cols, k % n_cols));
        Self { n_rows, n_cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<RationalFunction>>) -> Result<Self, MatrixError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if n_rows == 0 || n_cols == 0 || rows.iter().any(|r| r.len() != n_cols) {
            return Err(MatrixError::Ragged);
        }
        Ok(Self { n_rows, n_cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(diag: Vec<RationalFunction>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_rows, self.n_cols)
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.entries[i * self.n_cols + j] = v;
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[RationalFunction] {
        &self.entries[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RationalFunction::is_zero)
    }

    pub fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction + Sync + Send) -> Self {
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries: par::map_indices(self.entries.len(), |k| f(&self.entries[k])),
        }
    }

    pub fn scale(&self, s: &RationalFunction) -> Self {
        self.map(|x| x * s)
    }

    pub fn scale_coeff(&self, c: &Coeff) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.same_shape("add", rhs)?;
        Ok(Self::from_fn_par(self.n_rows, self.n_cols, |i, j| self.get(i, j) + rhs.get(i, j)))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.same_shape("sub", rhs)?;
        Ok(Self::from_fn_par(self.n_rows, self.n_cols, |i, j| self.get(i, j) - rhs.get(i, j)))
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.n_cols != rhs.n_rows {
            return Err(MatrixError::DimensionMismatch { op: "matmul", left: self.shape(), right: rhs.shape() });
        }
        Ok(Self::from_fn_par(self.n_rows, rhs.n_cols, |i, j| {
            (0..self.n_cols)
                .filter(|&k| !self.get(i, k).is_zero() && !rhs.get(k, j).is_zero())
                .map(|k| self.get(i, k) * rhs.get(k, j))
                .sum()
        }))
    }

    fn same_shape(&self, op: &'static str, rhs: &Self) -> Result<(), MatrixError> {
        if self.shape() != rhs.shape() {
            return Err(MatrixError::DimensionMismatch { op, left: self.shape(), right: rhs.shape() });
        }
        Ok(())
    }

    pub fn trace(&self) -> RationalFunction {
        (0..self.n_rows.min(self.n_cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// `A·B − B·A`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.matmul(rhs)?.checked_sub(&rhs.matmul(self)?)
    }

    /// Conjugate transpose, with scalar dagger on every entry.
    pub fn dagger(&self) -> Self {
        Self::from_fn_par(self.n_cols, self.n_rows, |i, j| self.get(j, i).dagger())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n_cols, self.n_rows, |i, j| self.get(j, i).clone())
    }

    pub fn d_plus(&self) -> Self {
        self.map(RationalFunction::d_plus)
    }

    pub fn d_minus(&self) -> Self {
        self.map(RationalFunction::d_minus)
    }

    /// Entrywise `ξ± ← 1/w±`.
    pub fn invert_variables(&self) -> Self {
        self.map(RationalFunction::invert_variables)
    }

    pub fn pow(&self, exp: u32) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare("pow"));
        }
        let mut acc = Self::identity(self.n_rows);
        for _ in 0..exp {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &VectorField) -> Result<VectorField, MatrixError> {
        if self.n_cols != v.len() {
            return Err(MatrixError::DimensionMismatch { op: "apply", left: self.shape(), right: (v.len(), 1) });
        }
        Ok(VectorField(
            (0..self.n_rows)
                .map(|i| (0..self.n_cols).map(|k| self.get(i, k) * &v.0[k]).sum())
                .collect(),
        ))
    }

    /// Determinant by fraction-free elimination on the row-wise cleared
    /// polynomial matrix.
    pub fn determinant(&self) -> Result<RationalFunction, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare("determinant"));
        }
        let n = self.n_rows;
        let mut scale = BiPoly::one();
        let mut m: Vec<Vec<BiPoly>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let lcm = row.iter().fold(BiPoly::one(), |acc, x| {
                let g = BiPoly::gcd(&acc, x.den());
                &acc * &x.den().div_exact(&g).expect("gcd divides")
            });
            m.push(
                row.iter()
                    .map(|x| x.num() * &lcm.div_exact(x.den()).expect("den divides lcm"))
                    .collect(),
            );
            scale = &scale * &lcm;
        }
        let det = bareiss(m);
        Ok(RationalFunction::new(det, scale)?)
    }

    /// Characteristic polynomial `det(t·I − A)` by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Result<CharPoly, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare("char_poly"));
        }
        let n = self.n_rows;
        let mut coeffs = vec![RationalFunction::zero(); n + 1];
        coeffs[n] = RationalFunction::one();
        let mut m = Self::zeros(n, n);
        let ident = Self::identity(n);
        for k in 1..=n {
            m = &self.matmul(&m)? + &ident.scale(&coeffs[n - k + 1]);
            let am = self.matmul(&m)?;
            coeffs[n - k] = -(&am.trace() * &RationalFunction::from_ratio(1, k as i64));
        }
        Ok(CharPoly { coeffs })
    }

    /// Evaluate every entry at `ξ₊ = z, ξ₋ = z̄`, row-major.
    pub fn eval(&self, z: Complex64) -> Result<Vec<Complex64>, AlgebraError> {
        self.entries.iter().map(|x| x.eval(z)).collect()
    }

    pub fn evaluator(&self) -> MatrixEvaluator {
        MatrixEvaluator {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries: self.entries.iter().map(RationalEvaluator::new).collect(),
        }
    }

    /// Largest total degree among entries.
    pub fn max_degree(&self) -> u32 {
        self.entries.iter().map(RationalFunction::degree).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> MatrixJson {
        (0..self.n_rows)
            .map(|i| self.row(i).iter().map(rational_to_json).collect())
            .collect()
    }

    pub fn from_json(j: &MatrixJson) -> Result<Self, MatrixError> {
        let rows = j
            .iter()
            .map(|r| r.iter().map(rational_from_json).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(rows)
    }
}

/// Row-major nested arrays of rational-function JSON.
pub type MatrixJson = Vec<Vec<RationalJson>>;

fn bareiss(mut m: Vec<Vec<BiPoly>>) -> BiPoly {
    let n = m.len();
    let mut negate = false;
    let mut prev = BiPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = cross.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = BiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Monic characteristic polynomial; `coeffs[j]` multiplies `t^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub coeffs: Vec<RationalFunction>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients as constants, if none depends on `ξ₊, ξ₋`.
    pub fn constant_coeffs(&self) -> Option<Vec<Coeff>> {
        self.coeffs.iter().map(RationalFunction::as_constant).collect()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{j}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Column vector of rational functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorField(pub Vec<RationalFunction>);

impl VectorField {
    pub fn new(entries: Vec<RationalFunction>) -> Self {
        Self(entries)
    }

    /// Standard basis vector `e_j` of length `n`.
    pub fn basis(n: usize, j: usize) -> Self {
        Self((0..n).map(|i| if i == j { RationalFunction::one() } else { RationalFunction::zero() }).collect())
    }

    pub fn from_coeffs(cs: &[Coeff]) -> Self {
        Self(cs.iter().cloned().map(RationalFunction::constant).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(RationalFunction::is_zero)
    }

    pub fn scale(&self, s: &RationalFunction) -> Self {
        Self(self.0.iter().map(|x| x * s).collect())
    }

    /// `v†w = Σ dagger(vᵢ)·wᵢ`.
    pub fn inner(&self, w: &Self) -> RationalFunction {
        self.0.iter().zip(&w.0).map(|(a, b)| &a.dagger() * b).sum()
    }

    /// `v ⊗ w†`.
    pub fn outer(&self, w: &Self) -> MatrixField {
        let wd: Vec<RationalFunction> = w.0.iter().map(RationalFunction::dagger).collect();
        MatrixField::from_fn_par(self.len(), w.len(), |i, j| &self.0[i] * &wd[j])
    }

    pub fn d_plus(&self) -> Self {
        Self(self.0.iter().map(RationalFunction::d_plus).collect())
    }

    pub fn d_minus(&self) -> Self {
        Self(self.0.iter().map(RationalFunction::d_minus).collect())
    }

    pub fn sub(&self, w: &Self) -> Self {
        Self(self.0.iter().zip(&w.0).map(|(a, b)| a - b).collect())
    }
}

/// Floating-point evaluator for every entry of a matrix.
#[derive(Clone, Debug)]
pub struct MatrixEvaluator {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<RationalEvaluator>,
}

impl MatrixEvaluator {
    pub fn shape(&self) -> (usize, usize) {
        (self.n_rows, self.n_cols)
    }

    pub fn eval(&self, z: Complex64) -> Result<Vec<Complex64>, AlgebraError> {
        self.entries.iter().map(|e| e.eval(z)).collect()
    }
}

impl Add for &MatrixField {
    type Output = MatrixField;
    fn add(self, rhs: Self) -> MatrixField {
        self.checked_add(rhs).expect("matrix add")
    }
}

impl Sub for &MatrixField {
    type Output = MatrixField;
    fn sub(self, rhs: Self) -> MatrixField {
        self.checked_sub(rhs).expect("matrix sub")
    }
}

impl Mul for &MatrixField {
    type Output = MatrixField;
    /// Panics on a dimension mismatch; see [`MatrixField::matmul`].
    fn mul(self, rhs: Self) -> MatrixField {
        self.matmul(rhs).expect("matrix product")
    }
}

impl Neg for &MatrixField {
    type Output = MatrixField;
    fn neg(self) -> MatrixField {
        self.map(|x| -x)
    }
}

impl Neg for MatrixField {
    type Output = MatrixField;
    fn neg(self) -> MatrixField {
        -&self
    }
}

impl fmt::Display for MatrixField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n_rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub matrix: MatrixJson,
}
