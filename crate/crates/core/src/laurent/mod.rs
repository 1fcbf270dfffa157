//! Exact arithmetic in the field `k` of Laurent series in `s` whose exponents
//! are bounded above.
//!
//! Elements are stored as reduced rational functions `num/den` with a monic
//! denominator. Expanding `num/den` in descending powers of `s` yields a series
//! `Σ z_j s^j` with `z_j = 0` for all large `j`, so every rational function is
//! an element of `k`, and all the algebra we need (products, inverses, linear
//! solves) stays inside this subfield.

mod gaussian;
mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use gaussian::{parse_rational, rational_to_string, GaussianRational, Rational};
pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Top exponent of a Laurent expansion; `NegInfinity` marks the zero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    NegInfinity,
    Finite(i64),
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::NegInfinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    /// `ν(a) + ν(b)` with `−∞` absorbing.
    pub fn plus(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::NegInfinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::NegInfinity => write!(f, "-inf"),
            Valuation::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// An element of `k`, kept as `num/den` with `gcd(num, den) = 1` and `den`
/// monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    num: Poly,
    den: Poly,
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl FieldElement {
    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    /// `c · s^e` for any integer exponent.
    pub fn monomial(c: GaussianRational, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if e >= 0 {
            Self {
                num: Poly::monomial(c, e as usize),
                den: Poly::one(),
            }
        } else {
            Self {
                num: Poly::constant(c),
                den: Poly::monomial(GaussianRational::one(), (-e) as usize),
            }
        }
    }

    /// `s^e`.
    pub fn s_pow(e: i64) -> Self {
        Self::monomial(GaussianRational::one(), e)
    }

    /// Builds `Σ c·s^e` from (exponent, coefficient) terms.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, GaussianRational)>,
    {
        let terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let Some(min) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let max = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![GaussianRational::zero(); (max - min) as usize + 1];
        for (e, c) in terms {
            coeffs[(e - min) as usize] += &c;
        }
        let body =
            Self::from_polys(Poly::from_coeffs(coeffs), Poly::one()).expect("unit denominator");
        &body * &Self::s_pow(min)
    }

    /// Reduces `num/den` to canonical form.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self, LaurentError> {
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().unwrap().clone();
        if lc.is_one() {
            return Ok(Self { num, den });
        }
        let inv = lc.inv()?;
        Ok(Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    /// `num/den` for coprime `num`, `den`: only makes `den` monic.
    fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            return Self { num, den };
        }
        let inv = lc.inv().expect("nonzero leading coefficient");
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `deg(num) − deg(den)`, the top exponent of the descending expansion.
    pub fn valuation(&self) -> Valuation {
        match self.num.degree() {
            None => Valuation::NegInfinity,
            Some(dn) => Valuation::Finite(dn as i64 - self.den.degree().unwrap() as i64),
        }
    }

    pub fn inv(&self) -> Result<Self, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Self::from_polys(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, LaurentError> {
        Ok(self * &rhs.inv()?)
    }

    /// True when the element is a Laurent polynomial (denominator `s^m`).
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_monomial()
    }

    /// Nonzero (exponent, coefficient) terms in descending order when the
    /// element is a Laurent polynomial.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, GaussianRational)>> {
        if !self.is_laurent_polynomial() {
            return None;
        }
        let shift = self.den.degree().unwrap() as i64;
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 - shift, c.clone()))
                .collect(),
        )
    }

    /// Coefficient of `s^0` in the descending expansion.
    pub fn constant_term(&self) -> GaussianRational {
        match self.valuation() {
            Valuation::Finite(v) if v >= 0 => self
                .truncated_expansion(0)
                .into_iter()
                .find(|(e, _)| *e == 0)
                .map(|(_, c)| c)
                .unwrap_or_default(),
            _ => GaussianRational::zero(),
        }
    }

    /// Nonzero coefficients of the descending Laurent expansion, from the top
    /// exponent down to `floor` inclusive.
    pub fn truncated_expansion(&self, floor: i64) -> Vec<(i64, GaussianRational)> {
        let Valuation::Finite(top) = self.valuation() else {
            return Vec::new();
        };
        if floor > top {
            return Vec::new();
        }
        // num/den = s^top · N(t)/D(t) with t = 1/s and D(0) = 1.
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let n_t: Vec<GaussianRational> = (0..=dn).rev().map(|i| self.num.coeff(i)).collect();
        let d_t: Vec<GaussianRational> = (0..=dd).rev().map(|i| self.den.coeff(i)).collect();
        let count = (top - floor) as usize + 1;
        let mut series: Vec<GaussianRational> = Vec::with_capacity(count);
        for i in 0..count {
            let mut c = n_t.get(i).cloned().unwrap_or_default();
            for j in 1..=i.min(dd) {
                if !d_t[j].is_zero() && !series[i - j].is_zero() {
                    c -= &(&d_t[j] * &series[i - j]);
                }
            }
            series.push(c);
        }
        series
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (top - i as i64, c))
            .collect()
    }

    /// Multiplies by the constant `c`.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

/// `s^e` in compact Unicode form: `""`, `"s"`, `"s²"`, `"s⁻¹"`.
pub fn format_s_power(e: i64) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    match e {
        0 => String::new(),
        1 => "s".to_string(),
        _ => {
            let mut out = String::from("s");
            if e < 0 {
                out.push('⁻');
            }
            for d in e.unsigned_abs().to_string().chars() {
                out.push(SUP[d.to_digit(10).unwrap() as usize]);
            }
            out
        }
    }
}

fn format_poly(p: &Poly) -> String {
    let terms: Vec<(i64, GaussianRational)> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, c.clone()))
        .collect();
    format_terms(&terms)
}

/// Formats descending (exponent, coefficient) terms as `2s² − s⁻¹ + 3/2`.
pub(crate) fn format_terms(terms: &[(i64, GaussianRational)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in terms.iter().enumerate() {
        let (neg, mag) = if c.is_negative_real() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " − " } else { " + " });
        }
        let pow = format_s_power(*e);
        if pow.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&pow);
        } else if mag.is_compound() {
            out.push_str(&format!("({mag}){pow}"));
        } else {
            out.push_str(&format!("{mag}{pow}"));
        }
    }
    out
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(terms) = self.laurent_terms() {
            return write!(f, "{}", format_terms(&terms));
        }
        write!(
            f,
            "({})/({})",
            format_poly(&self.num),
            format_poly(&self.den)
        )
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return FieldElement::from_polys(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        // Henrici: only the common factor of the denominators can cancel.
        let g = Poly::gcd(&self.den, &rhs.den);
        let (a, b) = (self.den.div_rem(&g).0, rhs.den.div_rem(&g).0);
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        if num.is_zero() {
            return FieldElement::zero();
        }
        let h = Poly::gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_rem(&h).0, g.div_rem(&h).0)
        };
        FieldElement::normalized(num, &(&a * &b) * &g)
    }
}

/// Divides `a` and `b` by their gcd.
fn cancel(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let g = Poly::gcd(a, b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.div_rem(&g).0, b.div_rem(&g).0)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        if self.is_zero() || rhs.is_zero() {
            return FieldElement::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return FieldElement {
                num: &self.num * &rhs.num,
                den: Poly::one(),
            };
        }
        // Henrici: cancel across the two fractions, both already reduced.
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        FieldElement::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero; see [`FieldElement::checked_div`].
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero in k")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

type WireTerm = (i64, String, String);

#[derive(Serialize, Deserialize)]
struct WireFieldElement {
    num: Vec<WireTerm>,
    #[serde(default)]
    den: Vec<WireTerm>,
}

fn poly_to_wire(p: &Poly) -> Vec<WireTerm> {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            (
                i as i64,
                rational_to_string(&c.re),
                rational_to_string(&c.im),
            )
        })
        .collect()
}

fn wire_to_element(terms: &[WireTerm]) -> Result<FieldElement, LaurentError> {
    let parsed = terms
        .iter()
        .map(|(e, re, im)| Ok((*e, GaussianRational::parse_parts(re, im)?)))
        .collect::<Result<Vec<_>, LaurentError>>()?;
    Ok(FieldElement::from_terms(parsed))
}

impl FieldElement {
    /// Decodes the `{"num": [[exp, "re", "im"], …], "den": […]}` encoding.
    /// Negative exponents are accepted on input; a missing or empty `den`
    /// means 1.
    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, LaurentError> {
        let wire: WireFieldElement = serde_json::from_value(value.clone())
            .map_err(|e| LaurentError::Parse(e.to_string()))?;
        Self::from_wire(&wire)
    }

    fn from_wire(wire: &WireFieldElement) -> Result<Self, LaurentError> {
        let num = wire_to_element(&wire.num)?;
        if wire.den.is_empty() {
            return Ok(num);
        }
        let den = wire_to_element(&wire.den)?;
        num.checked_div(&den)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WireFieldElement {
            num: poly_to_wire(&self.num),
            den: poly_to_wire(&self.den),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WireFieldElement::deserialize(deserializer)?;
        Self::from_wire(&wire).map_err(serde::de::Error::custom)
    }
}
