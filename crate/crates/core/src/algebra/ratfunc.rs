//! Rational functions in `ξ₊, ξ₋`, always kept in reduced canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::coeff::Coeff;
use super::gaussian::{forward_owned, GaussianRational};
use super::poly::{BiPoly, PolyEvaluator};
use super::AlgebraError;

/// `num / den` with `gcd(num, den) = 1` and `den` monic in graded-lex order.
///
/// Because the form is canonical, structural equality is mathematical
/// equality and the zero test is a check on `num`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: BiPoly,
    den: BiPoly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: BiPoly, den: BiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero constant denominator");
            return Self { num: num.scale(&inv), den: BiPoly::one() };
        }
        let g = BiPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize(num, den)
    }

    /// Scale so the denominator is monic; assumes coprime inputs.
    fn normalize(num: BiPoly, den: BiPoly) -> Self {
        let (den, lc) = den.monic();
        if lc.is_one() {
            Self { num, den }
        } else {
            Self { num: num.scale(&lc.inv().expect("nonzero")), den }
        }
    }

    pub fn zero() -> Self {
        Self { num: BiPoly::zero(), den: BiPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(BiPoly::one())
    }

    pub fn from_poly(p: BiPoly) -> Self {
        Self { num: p, den: BiPoly::one() }
    }

    pub fn constant(c: Coeff) -> Self {
        Self::from_poly(BiPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Coeff::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(Coeff::from_ratio(num, den))
    }

    pub fn i() -> Self {
        Self::constant(Coeff::i())
    }

    pub fn xi_plus() -> Self {
        Self::from_poly(BiPoly::xi_plus())
    }

    pub fn xi_minus() -> Self {
        Self::from_poly(BiPoly::xi_minus())
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value, if this function does not depend on `ξ₊, ξ₋`.
    pub fn as_constant(&self) -> Option<Coeff> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self::normalize(self.num.pow(exp), self.den.pow(exp))
    }

    /// `∂/∂ξ₊` by the quotient rule.
    pub fn d_plus(&self) -> Self {
        self.derivative(BiPoly::d_plus)
    }

    /// `∂/∂ξ₋` by the quotient rule.
    pub fn d_minus(&self) -> Self {
        self.derivative(BiPoly::d_minus)
    }

    fn derivative(&self, d: fn(&BiPoly) -> BiPoly) -> Self {
        if self.den.is_one() {
            return Self::from_poly(d(&self.num));
        }
        // (n/g)' = (n'g - n g')/g²; only factors of g can cancel.
        let dn = d(&self.num);
        let dd = d(&self.den);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        if top.is_zero() {
            return Self::zero();
        }
        let g = BiPoly::gcd(&top, &self.den);
        let den_red = self.den.div_exact(&g).expect("gcd divides");
        let top = top.div_exact(&g).expect("gcd divides");
        let g2 = BiPoly::gcd(&top, &self.den);
        let top = top.div_exact(&g2).expect("gcd divides");
        let den = &den_red * &self.den.div_exact(&g2).expect("gcd divides");
        Self::normalize(top, den)
    }

    /// Hermitian conjugation of a scalar field: conjugate coefficients and
    /// swap `ξ₊ ↔ ξ₋`.
    pub fn dagger(&self) -> Self {
        Self::normalize(self.num.dagger(), self.den.dagger())
    }

    /// Substitute `ξ± ← 1/w±`; the result is read in the same two slots.
    pub fn invert_variables(&self) -> Self {
        let p = self.num.degree_plus().max(self.den.degree_plus());
        let m = self.num.degree_minus().max(self.den.degree_minus());
        Self::reduce(self.num.reflect(p, m), self.den.reflect(p, m))
    }

    /// Evaluate on the real slice `ξ₊ = z`, `ξ₋ = z̄`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, AlgebraError> {
        self.eval_formal(z, z.conj())
    }

    /// Evaluate at unrelated values of `ξ₊` and `ξ₋`. Debugging aid only.
    pub fn eval_formal(&self, xp: Complex64, xm: Complex64) -> Result<Complex64, AlgebraError> {
        RationalEvaluator::new(self).eval_formal(xp, xm)
    }

    /// Maximum total degree of numerator and denominator.
    pub fn degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    /// `true` if every coefficient lies in `ℚ(i)`.
    pub fn in_gaussian(&self) -> bool {
        self.num.terms().chain(self.den.terms()).all(|(_, c)| c.in_gaussian())
    }
}

impl From<BiPoly> for RationalFunction {
    fn from(p: BiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Coeff> for RationalFunction {
    fn from(c: Coeff) -> Self {
        Self::constant(c)
    }
}

impl From<GaussianRational> for RationalFunction {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c.into())
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> RationalFunction {
        add_sub(self, rhs, false)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: Self) -> RationalFunction {
        add_sub(self, rhs, true)
    }
}

fn add_sub(a: &RationalFunction, b: &RationalFunction, negate: bool) -> RationalFunction {
    let combine = |x: &BiPoly, y: &BiPoly| if negate { x - y } else { x + y };
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    if a.den.is_one() && b.den.is_one() {
        return RationalFunction::from_poly(combine(&a.num, &b.num));
    }
    if a.den == b.den {
        return RationalFunction::reduce(combine(&a.num, &b.num), a.den.clone());
    }
    // Henrici: with g = gcd(b₁, b₂) only factors of g can cancel afterwards.
    let g = BiPoly::gcd(&a.den, &b.den);
    let ad = a.den.div_exact(&g).expect("gcd divides");
    let bd = b.den.div_exact(&g).expect("gcd divides");
    let num = combine(&(&a.num * &bd), &(&b.num * &ad));
    if num.is_zero() {
        return RationalFunction::zero();
    }
    let den = &a.den * &bd;
    if g.is_one() {
        return RationalFunction::normalize(num, den);
    }
    let h = BiPoly::gcd(&num, &g);
    if h.is_one() {
        RationalFunction::normalize(num, den)
    } else {
        RationalFunction::normalize(
            num.div_exact(&h).expect("gcd divides"),
            den.div_exact(&h).expect("gcd divides"),
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let cancel = |n: &BiPoly, d: &BiPoly| -> (BiPoly, BiPoly) {
            if d.is_one() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = BiPoly::gcd(n, d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
            }
        };
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        RationalFunction::normalize(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::checked_div`] to
    /// get an error instead.
    fn div(self, rhs: Self) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -self.num, den: self.den }
    }
}

forward_owned!(RationalFunction, Add::add, Sub::sub, Mul::mul, Div::div);

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for RationalFunction {
    /// `p` for polynomials, `(p)/(q)` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Precompiled floating-point evaluator for a rational function.
#[derive(Clone, Debug)]
pub struct RationalEvaluator {
    num: PolyEvaluator,
    den: PolyEvaluator,
}

/// Denominator magnitude below which evaluation reports a pole.
pub const POLE_THRESHOLD: f64 = 1e-300;

impl RationalEvaluator {
    pub fn new(f: &RationalFunction) -> Self {
        Self { num: PolyEvaluator::new(&f.num), den: PolyEvaluator::new(&f.den) }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, AlgebraError> {
        self.eval_formal(z, z.conj())
    }

    pub fn eval_formal(&self, xp: Complex64, xm: Complex64) -> Result<Complex64, AlgebraError> {
        let d = self.den.eval(xp, xm);
        if d.norm().is_nan() || d.norm() < POLE_THRESHOLD {
            return Err(AlgebraError::Pole { re: xp.re, im: xp.im });
        }
        Ok(self.num.eval(xp, xm) / d)
    }

    /// Numerator and denominator separately.
    pub fn eval_parts(&self, z: Complex64) -> (Complex64, Complex64) {
        (self.num.eval(z, z.conj()), self.den.eval(z, z.conj()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xp() -> RationalFunction {
        RationalFunction::xi_plus()
    }
    fn xm() -> RationalFunction {
        RationalFunction::xi_minus()
    }
    fn one() -> RationalFunction {
        RationalFunction::one()
    }

    fn u1() -> RationalFunction {
        &(&xp() * &xm()) + &one()
    }

    #[test]
    fn ring_basics() {
        let p = &(&xp() * &xm()) + &one();
        assert!(p.is_polynomial());
        assert_eq!(p.to_string(), "xp*xm + 1");
    }

    #[test]
    fn self_division_is_one() {
        let x = &u1() / &(&xp() - &RationalFunction::from_int(3));
        assert!((&x / &x).is_one());
    }

    #[test]
    fn square_over_base_reduces() {
        let x = &u1().pow(2) / &u1();
        assert_eq!(x, u1());
        // cross-multiplication oracle
        assert_eq!(&x.num * &u1().den, &u1().num * &x.den);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(one().checked_div(&RationalFunction::zero()), Err(AlgebraError::DivisionByZero));
        assert!(RationalFunction::new(BiPoly::one(), BiPoly::zero()).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert!((&xp() * &xp()).d_minus().is_zero());
        let f = &one() / &u1();
        let expected = &(-&xm()) / &u1().pow(2);
        assert_eq!(f.d_plus(), expected);
    }

    #[test]
    fn dagger_examples() {
        let x = &RationalFunction::i() * &xp();
        assert_eq!(x.dagger(), -(&RationalFunction::i() * &xm()));
        assert_eq!(u1().dagger(), u1());
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(xp().invert_variables(), &one() / &xp());
        let f = &one() / &u1().pow(2);
        let expected = &(&xp() * &xm()).pow(2) / &u1().pow(2);
        assert_eq!(f.invert_variables(), expected);
        assert_eq!(f.invert_variables().invert_variables(), f);
    }

    #[test]
    fn evaluation_examples() {
        let z0 = Complex64::new(0.0, 0.0);
        assert_eq!((&one() / &u1()).eval(z0).unwrap(), Complex64::new(1.0, 0.0));
        let p = &xp() * &xm();
        assert!((p.eval(Complex64::new(1.0, 1.0)).unwrap() - 2.0).norm() < 1e-15);
        let pole = &one() / &xp();
        assert!(matches!(pole.eval(z0), Err(AlgebraError::Pole { .. })));
    }
}
