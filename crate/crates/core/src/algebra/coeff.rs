//! The coefficient field `ℚ(i)(√2)`.
//!
//! Every coefficient is `a + b·√2` with Gaussian rationals `a` and `b`. The
//! `√2` part is almost always zero; all arithmetic fast-paths that case so
//! pure `ℚ(i)` computations pay nothing for the extension.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::gaussian::{forward_owned, GaussianRational};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Coeff {
    /// Part in `ℚ(i)`.
    pub base: GaussianRational,
    /// Multiplier of `√2`.
    pub sqrt2: GaussianRational,
}

impl Coeff {
    pub fn new(base: GaussianRational, sqrt2: GaussianRational) -> Self {
        Self { base, sqrt2 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        GaussianRational::one().into()
    }

    pub fn i() -> Self {
        GaussianRational::i().into()
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::from_int(n).into()
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::from_ratio(num, den).into()
    }

    /// The element `√2`.
    pub fn sqrt2() -> Self {
        Self::new(GaussianRational::zero(), GaussianRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.sqrt2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.base.is_one() && self.sqrt2.is_zero()
    }

    pub fn in_gaussian(&self) -> bool {
        self.sqrt2.is_zero()
    }

    /// Complex conjugation; `√2` is real and stays fixed.
    pub fn conj(&self) -> Self {
        Self::new(self.base.conj(), self.sqrt2.conj())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.sqrt2.is_zero() {
            return self.base.inv().map(Into::into);
        }
        // (a + b√2)(a - b√2) = a² - 2b², nonzero because √2 ∉ ℚ(i).
        let two = GaussianRational::from_int(2);
        let norm = &(&self.base * &self.base) - &(&two * &(&self.sqrt2 * &self.sqrt2));
        let ninv = norm.inv()?;
        Some(Self::new(&self.base * &ninv, -(&self.sqrt2 * &ninv)))
    }

    pub fn to_complex(&self) -> Complex64 {
        self.base.to_complex() + self.sqrt2.to_complex() * std::f64::consts::SQRT_2
    }

    /// Real rational value, if this coefficient is one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.sqrt2.is_zero() && self.base.im.is_zero()).then_some(&self.base.re)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl From<GaussianRational> for Coeff {
    fn from(base: GaussianRational) -> Self {
        Self::new(base, GaussianRational::zero())
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for Coeff {
    fn from(r: BigRational) -> Self {
        GaussianRational::new(r, BigRational::zero()).into()
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: Self) -> Coeff {
        if self.sqrt2.is_zero() && rhs.sqrt2.is_zero() {
            return (&self.base + &rhs.base).into();
        }
        Coeff::new(&self.base + &rhs.base, &self.sqrt2 + &rhs.sqrt2)
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Self) -> Coeff {
        if self.sqrt2.is_zero() && rhs.sqrt2.is_zero() {
            return (&self.base - &rhs.base).into();
        }
        Coeff::new(&self.base - &rhs.base, &self.sqrt2 - &rhs.sqrt2)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Self) -> Coeff {
        match (self.sqrt2.is_zero(), rhs.sqrt2.is_zero()) {
            (true, true) => (&self.base * &rhs.base).into(),
            (true, false) => Coeff::new(&self.base * &rhs.base, &self.base * &rhs.sqrt2),
            (false, true) => Coeff::new(&self.base * &rhs.base, &self.sqrt2 * &rhs.base),
            (false, false) => {
                let two = GaussianRational::from_int(2);
                let rat = &(&self.base * &rhs.base) + &(&two * &(&self.sqrt2 * &rhs.sqrt2));
                let irr = &(&self.base * &rhs.sqrt2) + &(&self.sqrt2 * &rhs.base);
                Coeff::new(rat, irr)
            }
        }
    }
}

impl Div for &Coeff {
    type Output = Coeff;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Coeff {
        self * &rhs.inv().expect("division by zero coefficient")
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::new(-&self.base, -&self.sqrt2)
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::new(-self.base, -self.sqrt2)
    }
}

forward_owned!(Coeff, Add::add, Sub::sub, Mul::mul, Div::div);

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt2.is_zero() {
            return write!(f, "{}", self.base);
        }
        let irr = if self.sqrt2.is_one() {
            "sqrt2".to_string()
        } else {
            format!("{}*sqrt2", self.sqrt2)
        };
        if self.base.is_zero() {
            write!(f, "{irr}")
        } else {
            write!(f, "({}+{})", self.base, irr)
        }
    }
}
