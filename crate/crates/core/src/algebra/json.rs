//! JSON forms of polynomials and rational functions.
//!
//! A polynomial is a list of terms
//! `{"dp": int, "dm": int, "re": "p/q", "im": "p/q"}`; coefficients carrying
//! a `√2` part add `"re_sqrt2"` / `"im_sqrt2"`. A rational function is either
//! such a list (denominator one) or `{"num": [...], "den": [...]}`.

use serde::{Deserialize, Serialize};

use super::coeff::Coeff;
use super::gaussian::{parse_rational, rational_string, GaussianRational};
use super::poly::{BiPoly, Monomial};
use super::ratfunc::RationalFunction;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub dp: u32,
    pub dm: u32,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub re_sqrt2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im_sqrt2: Option<String>,
}

fn zero_string() -> String {
    "0".to_string()
}

pub type PolyJson = Vec<TermJson>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Fraction { num: PolyJson, den: PolyJson },
    Polynomial(PolyJson),
}

fn gaussian(re: &str, im: &str) -> Result<GaussianRational, AlgebraError> {
    Ok(GaussianRational::new(
        parse_rational(re).map_err(AlgebraError::Parse)?,
        parse_rational(im).map_err(AlgebraError::Parse)?,
    ))
}

pub fn poly_to_json(p: &BiPoly) -> PolyJson {
    p.terms()
        .map(|(m, c)| {
            let irr = (!c.sqrt2.is_zero()).then_some(&c.sqrt2);
            TermJson {
                dp: m.dp,
                dm: m.dm,
                re: rational_string(&c.base.re),
                im: rational_string(&c.base.im),
                re_sqrt2: irr.map(|s| rational_string(&s.re)),
                im_sqrt2: irr.map(|s| rational_string(&s.im)),
            }
        })
        .collect()
}

pub fn poly_from_json(terms: &[TermJson]) -> Result<BiPoly, AlgebraError> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let base = gaussian(&t.re, &t.im)?;
        let sqrt2 = gaussian(
            t.re_sqrt2.as_deref().unwrap_or("0"),
            t.im_sqrt2.as_deref().unwrap_or("0"),
        )?;
        out.push((Monomial::new(t.dp, t.dm), Coeff::new(base, sqrt2)));
    }
    Ok(BiPoly::from_terms(out))
}

pub fn rational_to_json(f: &RationalFunction) -> RationalJson {
    RationalJson::Fraction { num: poly_to_json(f.num()), den: poly_to_json(f.den()) }
}

pub fn rational_from_json(j: &RationalJson) -> Result<RationalFunction, AlgebraError> {
    match j {
        RationalJson::Polynomial(p) => Ok(RationalFunction::from_poly(poly_from_json(p)?)),
        RationalJson::Fraction { num, den } => {
            RationalFunction::new(poly_from_json(num)?, poly_from_json(den)?)
        }
    }
}
