//! Exact Laurent polynomials in `q` with rational coefficients.
//!
//! This is the coefficient ring of every symbolic computation in the crate.
//! The zero polynomial is the empty map and no zero coefficient is ever stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentScalar {
    coeffs: BTreeMap<i32, Rational64>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational64::one(), 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: Rational64, exp: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    pub fn int(c: i64) -> Self {
        Self::monomial(Rational64::from_integer(c), 0)
    }

    /// `q^exp`.
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(Rational64::one(), exp)
    }

    /// `(-q)^exp`.
    pub fn neg_q_pow(exp: i32) -> Self {
        let sign = if exp.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(Rational64::from_integer(sign), exp)
    }

    /// `q - q^{-1}`.
    pub fn q_minus_q_inv() -> Self {
        Self::q_pow(1) - Self::q_pow(-1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i32) -> Rational64 {
        self.coeffs.get(&exp).copied().unwrap_or_else(Rational64::zero)
    }

    /// Iterates `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, Rational64)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    fn add_term(&mut self, exp: i32, c: Rational64) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(Rational64::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, *c)).collect(),
        }
    }

    pub fn scale(&self, c: Rational64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Numerical value at a real `q`.
    pub fn eval(&self, q: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * q.powi(*e))
            .sum()
    }
}

impl From<i64> for LaurentScalar {
    fn from(c: i64) -> Self {
        Self::int(c)
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(mut self, rhs: LaurentScalar) -> LaurentScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, *c);
        }
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        self + &(-rhs)
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: LaurentScalar) -> LaurentScalar {
        &self - &rhs
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}

fn fmt_rational(c: &Rational64) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_q_power(e: i32) -> String {
    match e {
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    }
}

/// Ascending exponent order, e.g. `1 - q^2`, `q^-1 - q`, `-2*q^3`.
impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match (*e, abs.is_one()) {
                (0, _) => write!(f, "{}", fmt_rational(&abs))?,
                (_, true) => write!(f, "{}", fmt_q_power(*e))?,
                (_, false) => write!(f, "{}*{}", fmt_rational(&abs), fmt_q_power(*e))?,
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<Rational64, ParseError> {
    let bad = || ParseError::new(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => Ok(Rational64::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn parse_unsigned_term(s: &str) -> Result<(i32, Rational64), ParseError> {
    let s = s.trim();
    let (coef, qpart) = match s.find('q') {
        None => return Ok((0, parse_rational(s)?)),
        Some(idx) => {
            let head = s[..idx].trim().trim_end_matches('*').trim();
            let coef = if head.is_empty() {
                Rational64::one()
            } else {
                parse_rational(head)?
            };
            (coef, &s[idx + 1..])
        }
    };
    let exp = if qpart.is_empty() {
        1
    } else {
        let e = qpart
            .strip_prefix('^')
            .ok_or_else(|| ParseError::new(format!("bad q-power in `{s}`")))?;
        e.trim()
            .parse::<i32>()
            .map_err(|_| ParseError::new(format!("bad exponent in `{s}`")))?
    };
    Ok((exp, coef))
}

/// Serialized as its canonical text form, e.g. `"1 - q^2"`.
impl serde::Serialize for LaurentScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for LaurentScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for LaurentScalar {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseError::new("empty Laurent scalar"));
        }
        let mut out = LaurentScalar::zero();
        let mut sign = 1i64;
        let mut rest = s;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        loop {
            // split at the next top-level " + " / " - " (a '-' right after '^' is an exponent sign)
            let bytes = rest.as_bytes();
            let mut cut = None;
            for i in 0..bytes.len() {
                if (bytes[i] == b'+' || bytes[i] == b'-') && i > 0 && bytes[i - 1] != b'^' {
                    cut = Some(i);
                    break;
                }
            }
            let (piece, next) = match cut {
                Some(i) => (&rest[..i], Some((bytes[i], &rest[i + 1..]))),
                None => (rest, None),
            };
            let (e, c) = parse_unsigned_term(piece)?;
            out.add_term(e, c * Rational64::from_integer(sign));
            match next {
                None => break,
                Some((op, r)) => {
                    sign = if op == b'-' { -1 } else { 1 };
                    rest = r;
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_has_no_stored_terms() {
        let a = LaurentScalar::q_pow(2);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).num_terms(), 0);
    }

    #[test]
    fn shift_by_q_power() {
        let a = LaurentScalar::int(1) - LaurentScalar::q_pow(2);
        let b = &a * &LaurentScalar::q_pow(-3);
        assert_eq!(b, a.shift(-3));
        assert_eq!(b.to_string(), "q^-3 - q^-1");
    }

    #[test]
    fn display_examples() {
        let a = LaurentScalar::int(1) - LaurentScalar::q_pow(2);
        assert_eq!(a.to_string(), "1 - q^2");
        assert_eq!(LaurentScalar::q_minus_q_inv().to_string(), "-q^-1 + q");
        assert_eq!(LaurentScalar::neg_q_pow(3).to_string(), "-q^3");
        assert_eq!(LaurentScalar::zero().to_string(), "0");
        let half = LaurentScalar::monomial(Rational64::new(1, 2), 1);
        assert_eq!(half.to_string(), "1/2*q");
    }

    #[test]
    fn parse_examples() {
        let a: LaurentScalar = "1 - q^2".parse().unwrap();
        assert_eq!(a, LaurentScalar::int(1) - LaurentScalar::q_pow(2));
        let b: LaurentScalar = "-q^-1 + q".parse().unwrap();
        assert_eq!(b, LaurentScalar::q_minus_q_inv());
        let c: LaurentScalar = "-3/4*q^-2".parse().unwrap();
        assert_eq!(c, LaurentScalar::monomial(Rational64::new(-3, 4), -2));
        assert!("q^x".parse::<LaurentScalar>().is_err());
    }

    #[test]
    fn eval_matches_formula() {
        let a = LaurentScalar::int(1) - LaurentScalar::q_pow(2);
        assert!((a.eval(0.5) - 0.75).abs() < 1e-15);
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentScalar> {
        prop::collection::vec((-4i32..5, -5i64..6, 1i64..4), 0..5).prop_map(|v| {
            LaurentScalar::from_terms(v.into_iter().map(|(e, n, d)| (e, Rational64::new(n, d))))
        })
    }

    proptest! {
        #[test]
        fn text_roundtrip(a in arb_laurent()) {
            let back: LaurentScalar = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn ring_laws(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
