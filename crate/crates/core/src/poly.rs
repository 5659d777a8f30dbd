//! Exact integer Laurent polynomials in `t` and Conway polynomials in `z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("not normalizable as an Alexander polynomial: |p(1)| = {0}")]
    NotNormalizable(BigInt),
    #[error("polynomial is not symmetric under t -> 1/t")]
    NotSymmetric,
    #[error("no integral Conway polynomial solves the substitution")]
    NonIntegralSolution,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("odd powers of z have no integral Laurent expansion in t")]
    OddConwayPower,
    #[error("link Conway conversion is not supported")]
    UnsupportedLink,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Laurent polynomial in `t` with arbitrary-precision integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds `c[0] t^low + c[1] t^(low+1) + ...`.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(low + i as i64, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `t -> 1/t`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitutes `t -> t^k` for a nonzero integer `k`.
    pub fn compose_power(&self, k: i64) -> Self {
        assert!(k != 0);
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut p = Self::zero();
        for (e, v) in &self.terms {
            p.add_term(*e, v * c);
        }
        p
    }

    /// If every exponent is divisible by `k`, returns the polynomial in `t^k`.
    pub fn divide_exponents(&self, k: i64) -> Option<Self> {
        if self.terms.keys().any(|e| e.rem_euclid(k) != 0) {
            return None;
        }
        Some(Self {
            terms: self.terms.iter().map(|(e, c)| (e / k, c.clone())).collect(),
        })
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dlow, dhigh) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(dhigh);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rhigh) = rem.max_exp() {
            let rlow = rem.min_exp()?;
            if rhigh - rlow < dhigh - dlow {
                return None;
            }
            let c = rem.coeff(rhigh);
            if !(&c % &lead).is_zero() {
                return None;
            }
            let q = Self::monomial(&c / &lead, rhigh - dhigh);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Some(quot)
    }

    fn lowest_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    fn highest_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Parses the text form produced by `Display`, in the variable `var`.
    pub fn parse_in(text: &str, var: char) -> Result<Self, PolyError> {
        let err = || PolyError::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let mut p = Self::zero();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = BigInt::one();
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if i != 0 {
                return Err(err());
            }
            let start = i;
            while i < chars.len() && !((chars[i] == '+' || chars[i] == '-') && chars[i - 1] != '^') {
                i += 1;
            }
            let term: String = chars[start..i].iter().collect();
            if term.is_empty() {
                return Err(err());
            }
            let (coeff, exp) = match term.find(var) {
                None => (BigInt::from_str(&term).map_err(|_| err())?, 0),
                Some(pos) => {
                    let head = term[..pos].trim_end_matches('*');
                    let coeff = if head.is_empty() {
                        BigInt::one()
                    } else {
                        BigInt::from_str(head).map_err(|_| err())?
                    };
                    let tail = &term[pos + var.len_utf8()..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        let e = tail.strip_prefix('^').ok_or_else(err)?;
                        let e = e.trim_start_matches('(').trim_end_matches(')');
                        e.parse::<i64>().map_err(|_| err())?
                    };
                    (coeff, exp)
                }
            };
            p.add_term(exp, sign * coeff);
        }
        Ok(p)
    }

    pub fn fmt_in(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var_part = match *e {
                0 => String::new(),
                1 => var.to_string(),
                e => format!("{var}^{e}"),
            };
            if var_part.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&var_part);
            } else {
                out.push_str(&format!("{mag}*{var_part}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_in('t'))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_in(s, 't')
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

/// Normal form of an Alexander polynomial up to units `±t^k`.
///
/// The result has lowest exponent 0 and a positive lowest coefficient, which
/// is how tables print them (`1 - t + t^2`, `t^2 - 3*t + 1`). Zero passes
/// through. Knot polynomials have `|p(1)| = 1`, link polynomials `p(1) = 0`;
/// anything else cannot have come from a diagram.
pub fn normalize_alexander(p: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    if p.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let v = p.eval_one().abs();
    if !(v.is_one() || v.is_zero()) {
        return Err(PolyError::NotNormalizable(v));
    }
    let low = p.min_exp().expect("nonzero");
    let shifted = p.shift(-low);
    if shifted.lowest_coeff().expect("nonzero").is_negative() {
        Ok(-shifted)
    } else {
        Ok(shifted)
    }
}

/// Centered Conway-normalized form of a knot's Alexander polynomial:
/// symmetric about exponent 0 with `p(1) = 1`.
pub fn centered_alexander(p: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let v = p.eval_one();
    if !v.abs().is_one() {
        return Err(PolyError::NotNormalizable(v.abs()));
    }
    let (low, high) = (p.min_exp().unwrap(), p.max_exp().unwrap());
    if (high - low) % 2 != 0 {
        return Err(PolyError::NotSymmetric);
    }
    let mut q = p.shift(-(low + high) / 2);
    if v.is_negative() {
        q = -q;
    }
    if q != q.invert_variable() {
        return Err(PolyError::NotSymmetric);
    }
    Ok(q)
}

pub fn is_monic(p: &LaurentPoly) -> Result<bool, PolyError> {
    match (p.lowest_coeff(), p.highest_coeff()) {
        (Some(lo), Some(hi)) => Ok(lo.abs().is_one() && hi.abs().is_one()),
        _ => Err(PolyError::ZeroPolynomial),
    }
}

/// Conway polynomial in `z` with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ConwayPoly {
    terms: BTreeMap<u32, BigInt>,
}

impl ConwayPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds `c[0] + c[1] z + c[2] z^2 + ...`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(i as u32, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn has_only_even_powers(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for ConwayPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let as_laurent = LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e as i64, c.clone())).collect(),
        };
        f.write_str(&as_laurent.fmt_in('z'))
    }
}

impl fmt::Debug for ConwayPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConwayPoly({self})")
    }
}

impl FromStr for ConwayPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let p = LaurentPoly::parse_in(s, 'z')?;
        let mut out = ConwayPoly::zero();
        for (e, c) in p.terms() {
            let e = u32::try_from(e).map_err(|_| PolyError::Parse(s.to_string()))?;
            out.add_term(e, c.clone());
        }
        Ok(out)
    }
}

impl<'a> Add<&'a ConwayPoly> for &'a ConwayPoly {
    type Output = ConwayPoly;
    fn add(self, rhs: &ConwayPoly) -> ConwayPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a ConwayPoly> for &'a ConwayPoly {
    type Output = ConwayPoly;
    fn mul(self, rhs: &ConwayPoly) -> ConwayPoly {
        let mut out = ConwayPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// `(t - 2 + 1/t)^k`, the image of `z^(2k)`.
fn z_squared_power(k: u32) -> LaurentPoly {
    LaurentPoly::from_coeffs(-1, &[1, -2, 1]).pow(k)
}

/// Solves `Δ(t) = ∇(z)` under `z^2 = t - 2 + 1/t`.
///
/// The input may carry any unit `±t^k`; it is centered and sign-fixed to
/// `Δ(1) = 1` first. Only the knot case is supported.
pub fn conway_from_alexander(p: &LaurentPoly, knot: bool) -> Result<ConwayPoly, PolyError> {
    if !knot {
        return Err(PolyError::UnsupportedLink);
    }
    let mut rem = centered_alexander(p)?;
    let mut out = ConwayPoly::zero();
    while let Some(top) = rem.max_exp() {
        if top < 0 {
            return Err(PolyError::NonIntegralSolution);
        }
        let c = rem.coeff(top);
        let k = top as u32;
        rem = &rem - &z_squared_power(k).scale(&c);
        out.add_term(2 * k, c);
    }
    if out.coeff(0) != BigInt::one() {
        return Err(PolyError::NonIntegralSolution);
    }
    Ok(out)
}

/// Expands `∇(z)` into the centered Laurent polynomial in `t`.
pub fn alexander_from_conway(n: &ConwayPoly) -> Result<LaurentPoly, PolyError> {
    let mut out = LaurentPoly::zero();
    for (e, c) in n.terms() {
        if e % 2 != 0 {
            return Err(PolyError::OddConwayPower);
        }
        out += &z_squared_power(e / 2).scale(c);
    }
    Ok(out)
}
