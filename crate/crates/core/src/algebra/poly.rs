use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;

use super::generator::{AlgebraTag, GeneratorSymbol, Word};
use crate::error::AlgebraError;
use crate::laurent::LaurentScalar;

/// Finite linear combination of words with [`LaurentScalar`] coefficients.
///
/// Terms are kept in the monomial order; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCPolynomial {
    tag: AlgebraTag,
    n: usize,
    terms: BTreeMap<Word, LaurentScalar>,
}

impl NCPolynomial {
    pub fn zero(tag: AlgebraTag, n: usize) -> Self {
        Self { tag, n, terms: BTreeMap::new() }
    }

    pub fn one(tag: AlgebraTag, n: usize) -> Self {
        Self::scalar(tag, n, LaurentScalar::one())
    }

    pub fn scalar(tag: AlgebraTag, n: usize, c: LaurentScalar) -> Self {
        Self::term(tag, n, Word::unit(), c)
    }

    pub fn term(tag: AlgebraTag, n: usize, w: Word, c: LaurentScalar) -> Self {
        let mut p = Self::zero(tag, n);
        p.add_term(w, c);
        p
    }

    pub fn word(tag: AlgebraTag, n: usize, w: Word) -> Self {
        Self::term(tag, n, w, LaurentScalar::one())
    }

    /// A single generator as a polynomial; `n` is taken from the caller.
    pub fn gen(n: usize, g: GeneratorSymbol) -> Self {
        Self::word(g.tag, n, Word::single(g))
    }

    pub fn z(n: usize, row: usize, col: usize) -> Self {
        Self::gen(n, GeneratorSymbol::z(row, col))
    }

    pub fn z_star(n: usize, row: usize, col: usize) -> Self {
        Self::gen(n, GeneratorSymbol::z_star(row, col))
    }

    pub fn t(n: usize, row: usize, col: usize) -> Self {
        Self::gen(n, GeneratorSymbol::t(row, col))
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant().is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> LaurentScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(&Word, &LaurentScalar)> {
        self.terms.iter().next_back()
    }

    /// Maximal word length; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|w| !w.has_starred())
    }

    /// The constant term.
    pub fn constant(&self) -> LaurentScalar {
        self.coeff(&Word::unit())
    }

    pub fn add_term(&mut self, w: Word, c: LaurentScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NCPolynomial, c: &LaurentScalar) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        let mut out = Self::zero(self.tag, self.n);
        out.add_scaled(self, c);
        out
    }

    pub fn scale_rational(&self, c: Rational64) -> Self {
        self.scale(&LaurentScalar::monomial(c, 0))
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.tag != other.tag || self.n != other.n {
            return Err(AlgebraError::Mismatch {
                left: format!("{} (n={})", self.tag, self.n),
                right: format!("{} (n={})", other.tag, other.n),
            });
        }
        Ok(())
    }

    /// Free concatenation product (no reduction).
    pub fn nc_multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.tag, self.n);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &LaurentScalar::one());
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(self.tag, self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Maps every word through `f` and sums the results, scaled by the coefficients.
    pub fn map_words<F>(&self, tag: AlgebraTag, n: usize, mut f: F) -> Result<Self, AlgebraError>
    where
        F: FnMut(&Word) -> Result<NCPolynomial, AlgebraError>,
    {
        let mut out = Self::zero(tag, n);
        for (w, c) in &self.terms {
            let img = f(w)?;
            out.add_scaled(&img, c);
        }
        Ok(out)
    }

    /// Checks that every symbol carries the polynomial's tag and valid indices.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        for w in self.terms.keys() {
            for g in w.letters() {
                if g.tag != self.tag {
                    return Err(AlgebraError::Mismatch {
                        left: self.tag.to_string(),
                        right: g.tag.to_string(),
                    });
                }
                if g.row() == 0 || g.col() == 0 || g.row() > self.n || g.col() > self.n {
                    return Err(AlgebraError::IndexOutOfRange(format!("{g} with n={}", self.n)));
                }
            }
        }
        Ok(())
    }

    /// Evaluates the coefficients at a numerical `q`.
    pub fn eval_coeffs(&self, q: f64) -> Vec<(Word, f64)> {
        self.terms.iter().map(|(w, c)| (w.clone(), c.eval(q))).collect()
    }
}

impl Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.try_add(rhs).expect("adding polynomials from different algebras")
    }
}

impl Add for NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: NCPolynomial) -> NCPolynomial {
        &self + &rhs
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.scale(&LaurentScalar::int(-1))
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        self + &(-rhs)
    }
}

impl Sub for NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: NCPolynomial) -> NCPolynomial {
        &self - &rhs
    }
}

impl Mul for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.nc_multiply(rhs).expect("multiplying polynomials from different algebras")
    }
}

impl Mul for NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: NCPolynomial) -> NCPolynomial {
        &self * &rhs
    }
}

impl Mul<&NCPolynomial> for &LaurentScalar {
    type Output = NCPolynomial;
    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        rhs.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::generator::GeneratorSymbol as G;

    #[test]
    fn concatenation_product() {
        let p = NCPolynomial::z(2, 1, 1) * NCPolynomial::z(2, 2, 1);
        assert_eq!(p.num_terms(), 1);
        let (w, c) = p.leading().unwrap();
        assert_eq!(w.letters(), &[G::z(1, 1), G::z(2, 1)]);
        assert!(c.is_one());
    }

    #[test]
    fn unit_is_neutral() {
        let p = NCPolynomial::z(2, 1, 2) + NCPolynomial::z_star(2, 2, 2);
        let one = NCPolynomial::one(AlgebraTag::MatQ, 2);
        assert_eq!(&one * &p, p);
        assert_eq!(&p * &one, p);
    }

    #[test]
    fn scalar_cancellation() {
        let a = NCPolynomial::z(1, 1, 1).scale(&LaurentScalar::q_pow(1));
        let b = NCPolynomial::z(1, 1, 1).scale(&LaurentScalar::q_pow(-1));
        let p = &a * &b;
        let (w, c) = p.leading().unwrap();
        assert_eq!(w.len(), 2);
        assert!(c.is_one());
    }

    #[test]
    fn mismatched_tags_are_rejected() {
        let a = NCPolynomial::z(2, 1, 1);
        let b = NCPolynomial::t(2, 1, 1);
        assert!(matches!(a.nc_multiply(&b), Err(AlgebraError::Mismatch { .. })));
        let c = NCPolynomial::z(3, 1, 1);
        assert!(a.nc_multiply(&c).is_err());
    }

    #[test]
    fn validate_catches_bad_index() {
        let p = NCPolynomial::z(2, 3, 1);
        assert!(p.validate().is_err());
    }
}
