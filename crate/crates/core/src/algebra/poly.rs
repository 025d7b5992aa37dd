//! Sparse bivariate polynomials in the commuting variables `ξ₊`, `ξ₋`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::coeff::Coeff;
use super::gaussian::forward_owned;

/// Exponent pair `ξ₊^dp ξ₋^dm`, ordered graded-lexicographically with `ξ₊ > ξ₋`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub dp: u32,
    pub dm: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { dp: 0, dm: 0 };

    pub fn new(dp: u32, dm: u32) -> Self {
        Self { dp, dm }
    }

    pub fn degree(self) -> u32 {
        self.dp + self.dm
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.dp.cmp(&other.dp))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `ξ₊, ξ₋` over `ℚ(i)(√2)`. Never stores zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Coeff, dp: u32, dm: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(dp, dm), c);
        }
        Self { terms }
    }

    /// The variable `ξ₊`.
    pub fn xi_plus() -> Self {
        Self::monomial(Coeff::one(), 1, 0)
    }

    /// The variable `ξ₋`.
    pub fn xi_minus() -> Self {
        Self::monomial(Coeff::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(iter: I) -> Self {
        let mut terms: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in iter {
            accumulate(&mut terms, m, c);
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: Monomial) -> Coeff {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        self.is_constant().then(|| self.coeff(Monomial::ONE))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(Coeff::is_one)
    }

    pub fn leading(&self) -> Option<(Monomial, &Coeff)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map_or(0, |(m, _)| m.degree())
    }

    pub fn degree_plus(&self) -> u32 {
        self.terms.keys().map(|m| m.dp).max().unwrap_or(0)
    }

    pub fn degree_minus(&self) -> u32 {
        self.terms.keys().map(|m| m.dm).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Leading coefficient normalized to one; returns the removed factor.
    pub fn monic(&self) -> (Self, Coeff) {
        match self.leading() {
            None => (Self::zero(), Coeff::one()),
            Some((_, lc)) if lc.is_one() => (self.clone(), Coeff::one()),
            Some((_, lc)) => {
                let lc = lc.clone();
                (self.scale(&lc.inv().expect("nonzero leading coefficient")), lc)
            }
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn d_plus(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.dp > 0)
                .map(|(m, c)| (Monomial::new(m.dp - 1, m.dm), c * &Coeff::from_int(m.dp as i64))),
        )
    }

    pub fn d_minus(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.dm > 0)
                .map(|(m, c)| (Monomial::new(m.dp, m.dm - 1), c * &Coeff::from_int(m.dm as i64))),
        )
    }

    /// Conjugate coefficients and swap `ξ₊ ↔ ξ₋`.
    pub fn dagger(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.dm, m.dp), c.conj()))
                .collect(),
        }
    }

    /// `ξ₊^p ξ₋^m · f(1/ξ₊, 1/ξ₋)`; requires `p ≥ deg₊` and `m ≥ deg₋`.
    pub fn reflect(&self, p: u32, m: u32) -> Self {
        debug_assert!(p >= self.degree_plus() && m >= self.degree_minus());
        Self {
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| (Monomial::new(p - mono.dp, m - mono.dm), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        let (dlead, dlc) = d.leading()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        let dinv = dlc.inv()?;
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        while let Some((&m, c)) = rem.iter().next_back() {
            if m.dp < dlead.dp || m.dm < dlead.dm {
                return None;
            }
            let qm = Monomial::new(m.dp - dlead.dp, m.dm - dlead.dm);
            let qc = c * &dinv;
            for (dm, dc) in &d.terms {
                let prod = Monomial::new(dm.dp + qm.dp, dm.dm + qm.dm);
                accumulate(&mut rem, prod, -(dc * &qc));
                if rem.get(&prod).is_some_and(Coeff::is_zero) {
                    rem.remove(&prod);
                }
            }
            quot.insert(qm, qc);
        }
        Some(Self { terms: quot })
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
        if a.is_zero() {
            return b.monic().0;
        }
        if b.is_zero() {
            return a.monic().0;
        }
        if a.is_constant() || b.is_constant() {
            return BiPoly::one();
        }
        if a == b {
            return a.monic().0;
        }
        let (ma, a) = a.split_monomial();
        let (mb, b) = b.split_monomial();
        let mono = BiPoly::monomial(Coeff::one(), ma.dp.min(mb.dp), ma.dm.min(mb.dm));
        if a.is_constant() || b.is_constant() {
            return mono;
        }
        match (a.as_poly_in_product(), b.as_poly_in_product()) {
            (Some(ua), Some(ub)) => return &mono * &Self::from_poly_in_product(&UniPoly::gcd(&ua, &ub)),
            (Some(g), None) => return &mono * &Self::from_poly_in_product(&b.gcd_with_product_poly(g)),
            (None, Some(g)) => return &mono * &Self::from_poly_in_product(&a.gcd_with_product_poly(g)),
            (None, None) => {}
        }
        let (small, big) = if a.num_terms() <= b.num_terms() { (&a, &b) } else { (&b, &a) };
        if big.div_exact(small).is_some() {
            return &mono * &small.monic().0;
        }
        if Self::images_coprime(&a, &b) {
            return mono;
        }
        &mono * &Self::gcd_prs(&a, &b)
    }

    /// `g(u)` when `self = g(ξ₊ξ₋)`.
    fn as_poly_in_product(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|m| m.dp != m.dm) {
            return None;
        }
        let mut out = vec![Coeff::zero(); self.degree_plus() as usize + 1];
        for (m, c) in &self.terms {
            out[m.dp as usize] = c.clone();
        }
        Some(UniPoly(out).trim())
    }

    /// `gcd(self, g(ξ₊ξ₋))` for `g(0) ≠ 0`. Every factor of such a `g` is
    /// itself a polynomial in `u` (it must be homogeneous for the grading
    /// `deg ξ₊ = 1, deg ξ₋ = −1`, and a nonzero grade would force a monomial
    /// factor). So the gcd divides each graded part of `self`, written as
    /// `ξ₊ᵏ a_k(u)` or `ξ₋ᵏ a_{−k}(u)`.
    fn gcd_with_product_poly(&self, g: UniPoly) -> UniPoly {
        let mut parts: BTreeMap<i64, Vec<Coeff>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let grade = m.dp as i64 - m.dm as i64;
            let power = m.dp.min(m.dm) as usize;
            let part = parts.entry(grade).or_default();
            if part.len() <= power {
                part.resize(power + 1, Coeff::zero());
            }
            part[power] = c.clone();
        }
        let mut acc = g;
        for part in parts.into_values() {
            if acc.degree() == 0 {
                break;
            }
            acc = UniPoly::gcd(&acc, &UniPoly(part).trim());
        }
        acc
    }

    fn from_poly_in_product(u: &UniPoly) -> BiPoly {
        Self::from_terms(
            u.0.iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(i as u32, i as u32), c.clone())),
        )
    }

    /// Split off the largest monomial factor.
    fn split_monomial(&self) -> (Monomial, BiPoly) {
        let dp = self.terms.keys().map(|m| m.dp).min().unwrap_or(0);
        let dm = self.terms.keys().map(|m| m.dm).min().unwrap_or(0);
        if dp == 0 && dm == 0 {
            return (Monomial::ONE, self.clone());
        }
        let rest = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial::new(m.dp - dp, m.dm - dm), c.clone()))
            .collect();
        (Monomial::new(dp, dm), BiPoly { terms: rest })
    }

    /// Exact coprimality certificate from univariate images. If the gcd had
    /// positive degree in one variable, specialising the other variable at a
    /// point where the leading coefficient of `a` survives would leave a
    /// common factor of that degree.
    fn images_coprime(a: &BiPoly, b: &BiPoly) -> bool {
        let plus_free = Self::image_gcd_trivial(a, b, false);
        plus_free && Self::image_gcd_trivial(a, b, true)
    }

    /// `true` when the gcd is proven to have degree zero in `ξ₊` (or in `ξ₋`
    /// when `swap`).
    fn image_gcd_trivial(a: &BiPoly, b: &BiPoly, swap: bool) -> bool {
        let (a, b) = if swap { (a.swapped(), b.swapped()) } else { (a.clone(), b.clone()) };
        if a.degree_plus() == 0 || b.degree_plus() == 0 {
            return true;
        }
        let lead = a.leading_in_plus();
        let point = (2i64..)
            .map(Coeff::from_int)
            .find(|r| !lead.eval_at(r).is_zero())
            .expect("nonzero polynomial has a non-root");
        let ia = a.specialize_minus(&point);
        let ib = b.specialize_minus(&point);
        UniPoly::gcd(&ia, &ib).degree() == 0
    }

    fn swapped(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(m, c)| (Monomial::new(m.dm, m.dp), c.clone())).collect() }
    }

    /// Coefficient of the top power of `ξ₊`, as a polynomial in `ξ₋`.
    fn leading_in_plus(&self) -> UniPoly {
        let d = self.degree_plus();
        let mut out = Vec::new();
        for (m, c) in self.terms.iter().filter(|(m, _)| m.dp == d) {
            if out.len() <= m.dm as usize {
                out.resize(m.dm as usize + 1, Coeff::zero());
            }
            out[m.dm as usize] = c.clone();
        }
        UniPoly(out).trim()
    }

    /// `ξ₋ ↦ r`, as a polynomial in `ξ₊`.
    fn specialize_minus(&self, r: &Coeff) -> UniPoly {
        let mut out = vec![Coeff::zero(); self.degree_plus() as usize + 1];
        for (m, c) in &self.terms {
            let v = c * &r.pow(m.dm);
            out[m.dp as usize] = &out[m.dp as usize] + &v;
        }
        UniPoly(out).trim()
    }

    fn gcd_prs(a: &BiPoly, b: &BiPoly) -> BiPoly {
        let ra = Recursive::from_poly(a);
        let rb = Recursive::from_poly(b);
        let ca = ra.content();
        let cb = rb.content();
        let content = UniPoly::gcd(&ca, &cb);
        let mut p = ra.divide_content(&ca);
        let mut q = rb.divide_content(&cb);
        if p.degree() < q.degree() {
            std::mem::swap(&mut p, &mut q);
        }
        // Primitive polynomial remainder sequence in ξ₋ over ℚ(i)(√2)[ξ₊].
        let prim = loop {
            if q.degree() == 0 {
                break Recursive::one();
            }
            let r = p.pseudo_rem(&q);
            if r.is_zero() {
                break q;
            }
            let rc = r.content();
            p = q;
            q = r.divide_content(&rc);
        };
        let g = &prim.to_poly() * &BiPoly::from_uni_plus(&content);
        g.monic().0
    }

    fn from_uni_plus(u: &UniPoly) -> BiPoly {
        Self::from_terms(
            u.0.iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(i as u32, 0), c.clone())),
        )
    }

    /// Evaluate at independent complex values of `ξ₊` and `ξ₋`.
    pub fn eval(&self, xp: Complex64, xm: Complex64) -> Complex64 {
        PolyEvaluator::new(self).eval(xp, xm)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, Coeff>, m: Monomial, c: Coeff) {
    match terms.get_mut(&m) {
        Some(existing) => *existing = &*existing + &c,
        None => {
            terms.insert(m, c);
        }
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: Self) -> BiPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut terms, *m, c.clone());
        }
        terms.retain(|_, c| !c.is_zero());
        BiPoly { terms }
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: Self) -> BiPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut terms, *m, -c);
        }
        terms.retain(|_, c| !c.is_zero());
        BiPoly { terms }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: Self) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                accumulate(&mut terms, Monomial::new(ma.dp + mb.dp, ma.dm + mb.dm), ca * cb);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        BiPoly { terms }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

forward_owned!(BiPoly, Add::add, Sub::sub, Mul::mul);

fn fmt_monomial(m: &Monomial) -> String {
    let var = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    [var("xp", m.dp), var("xm", m.dm)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for BiPoly {
    /// Terms in descending graded-lex order joined by `" + "`, e.g.
    /// `xp^2*xm^2 + 2*xp*xm + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if *m == Monomial::ONE {
                    c.to_string()
                } else if c.is_one() {
                    fmt_monomial(m)
                } else if (-c).is_one() {
                    format!("-{}", fmt_monomial(m))
                } else {
                    format!("{}*{}", c, fmt_monomial(m))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Dense univariate polynomial in `ξ₊`, ascending coefficients, trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
struct UniPoly(Vec<Coeff>);

impl UniPoly {
    fn one() -> Self {
        UniPoly(vec![Coeff::one()])
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(Coeff::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn eval_at(&self, x: &Coeff) -> Coeff {
        self.0.iter().rev().fold(Coeff::zero(), |acc, c| &(&acc * x) + c)
    }

    fn lc(&self) -> &Coeff {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    fn monic(&self) -> Self {
        if self.is_zero() || self.lc().is_one() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero");
        UniPoly(self.0.iter().map(|c| c * &inv).collect())
    }

    fn scale(&self, c: &Coeff) -> Self {
        UniPoly(self.0.iter().map(|a| a * c).collect()).trim()
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::default();
        }
        let mut out = vec![Coeff::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly(out).trim()
    }

    fn sub(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let zero = Coeff::zero();
        UniPoly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) - rhs.0.get(i).unwrap_or(&zero))
                .collect(),
        )
        .trim()
    }

    fn divrem(&self, d: &Self) -> (Self, Self) {
        let dinv = d.lc().inv().expect("nonzero divisor");
        let mut rem = self.0.clone();
        if rem.len() < d.0.len() {
            return (UniPoly::default(), self.clone());
        }
        let mut quot = vec![Coeff::zero(); rem.len() - d.0.len() + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d.0.len() - 1] * &dinv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(dc * &c);
            }
            quot[k] = c;
        }
        rem.truncate(d.0.len() - 1);
        (UniPoly(quot).trim(), UniPoly(rem).trim())
    }

    fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            if b.degree() == 0 {
                return UniPoly::one();
            }
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }
}

/// Polynomial in `ξ₋` with coefficients in `ℚ(i)(√2)[ξ₊]`.
#[derive(Clone, Debug)]
struct Recursive(Vec<UniPoly>);

impl Recursive {
    fn one() -> Self {
        Recursive(vec![UniPoly::one()])
    }

    fn from_poly(p: &BiPoly) -> Self {
        let mut rows = vec![UniPoly::default(); p.degree_minus() as usize + 1];
        for (m, c) in &p.terms {
            let row = &mut rows[m.dm as usize].0;
            if row.len() <= m.dp as usize {
                row.resize(m.dp as usize + 1, Coeff::zero());
            }
            row[m.dp as usize] = c.clone();
        }
        Recursive(rows)
    }

    fn to_poly(&self) -> BiPoly {
        BiPoly::from_terms(self.0.iter().enumerate().flat_map(|(dm, row)| {
            row.0
                .iter()
                .enumerate()
                .map(move |(dp, c)| (Monomial::new(dp as u32, dm as u32), c.clone()))
        }))
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(UniPoly::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(UniPoly::is_zero)
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn content(&self) -> UniPoly {
        let mut g = UniPoly::default();
        for c in &self.0 {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c.monic() } else { UniPoly::gcd(&g, c) };
            if g.degree() == 0 {
                break;
            }
        }
        g
    }

    fn divide_content(&self, content: &UniPoly) -> Self {
        if content.degree() == 0 {
            let inv = content.lc().inv().expect("nonzero content");
            return Recursive(self.0.iter().map(|c| c.scale(&inv)).collect()).trim();
        }
        Recursive(
            self.0
                .iter()
                .map(|c| {
                    let (q, r) = c.divrem(content);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect(),
        )
        .trim()
    }

    /// A nonzero constant multiple of the pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let m = d.degree();
        let b = d.0[m].clone();
        let mut r = self.clone().trim();
        while !r.is_zero() && r.degree() >= m {
            let k = r.degree();
            let lead = r.0[k].clone();
            let shift = k - m;
            let mut next: Vec<UniPoly> = r.0.iter().map(|c| c.mul(&b)).collect();
            for (j, dc) in d.0.iter().enumerate() {
                next[j + shift] = next[j + shift].sub(&dc.mul(&lead));
            }
            r = Recursive(next).trim();
        }
        r
    }
}

/// Horner evaluator: outer scheme in `ξ₋`, inner in `ξ₊`.
#[derive(Clone, Debug)]
pub struct PolyEvaluator {
    rows: Vec<Vec<Complex64>>,
}

impl PolyEvaluator {
    pub fn new(p: &BiPoly) -> Self {
        let mut rows = vec![Vec::new(); if p.is_zero() { 0 } else { p.degree_minus() as usize + 1 }];
        for (m, c) in &p.terms {
            let row: &mut Vec<Complex64> = &mut rows[m.dm as usize];
            if row.len() <= m.dp as usize {
                row.resize(m.dp as usize + 1, Complex64::new(0.0, 0.0));
            }
            row[m.dp as usize] = c.to_complex();
        }
        Self { rows }
    }

    pub fn eval(&self, xp: Complex64, xm: Complex64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        self.rows.iter().rev().fold(zero, |acc, row| {
            acc * xm + row.iter().rev().fold(zero, |a, c| a * xp + c)
        })
    }
}
