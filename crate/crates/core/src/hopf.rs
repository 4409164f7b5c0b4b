//! Hopf structure of `C[SU_n]_q` and the coaction `D_n` on `Pol(Mat_n)_q`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{
    complementary_minor, normal_form, star, system, AlgebraKind, AlgebraTag, GeneratorSymbol, NCPolynomial, Word,
};
use crate::error::AlgebraError;
use crate::laurent::LaurentScalar;

/// Element of a tensor product of polynomial algebras, one word per leg.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPolynomial {
    legs: Vec<(AlgebraTag, usize)>,
    terms: BTreeMap<Vec<Word>, LaurentScalar>,
}

impl TensorPolynomial {
    pub fn zero(legs: Vec<(AlgebraTag, usize)>) -> Self {
        Self { legs, terms: BTreeMap::new() }
    }

    pub fn one(legs: Vec<(AlgebraTag, usize)>) -> Self {
        let mut t = Self::zero(legs);
        let k = t.arity();
        t.add_term(vec![Word::unit(); k], LaurentScalar::one());
        t
    }

    /// `p_1 (x) ... (x) p_k`.
    pub fn pure(factors: &[NCPolynomial]) -> Self {
        let legs = factors.iter().map(|p| (p.tag(), p.n())).collect();
        let mut out = Self::one(legs);
        for (i, p) in factors.iter().enumerate() {
            let mut next = Self::zero(out.legs.clone());
            for (ws, c) in &out.terms {
                for (w, d) in p.terms() {
                    let mut ws = ws.clone();
                    ws[i] = w.clone();
                    next.add_term(ws, c * d);
                }
            }
            out = next;
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.legs.len()
    }

    pub fn legs(&self) -> &[(AlgebraTag, usize)] {
        &self.legs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, words: Vec<Word>, c: LaurentScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(words) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn check_legs(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.legs != other.legs {
            return Err(AlgebraError::Mismatch { left: format!("{:?}", self.legs), right: format!("{:?}", other.legs) });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_legs(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        let mut out = Self::zero(self.legs.clone());
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d * c);
        }
        out
    }

    /// Leg-wise product, each leg reduced afterwards.
    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_legs(other)?;
        let mut raw = Self::zero(self.legs.clone());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let ws = w1.iter().zip(w2).map(|(a, b)| a.concat(b)).collect();
                raw.add_term(ws, c1 * c2);
            }
        }
        raw.normalized()
    }

    /// Every leg in normal form.
    pub fn normalized(&self) -> Result<Self, AlgebraError> {
        let mut cache: Vec<BTreeMap<Word, NCPolynomial>> = vec![BTreeMap::new(); self.arity()];
        let mut out = Self::zero(self.legs.clone());
        for (ws, c) in &self.terms {
            let mut factors = Vec::with_capacity(ws.len());
            for (i, w) in ws.iter().enumerate() {
                if !cache[i].contains_key(w) {
                    let (tag, n) = self.legs[i];
                    cache[i].insert(w.clone(), normal_form(&NCPolynomial::word(tag, n, w.clone()))?);
                }
                factors.push(cache[i][w].clone());
            }
            let expanded = Self::pure(&factors);
            for (w, d) in expanded.terms {
                out.add_term(w, &d * c);
            }
        }
        Ok(out)
    }

    /// Replaces leg `leg` by the image of its word under `f`, a map into a tensor
    /// product; the new legs are spliced in place.
    pub fn expand_leg<F>(&self, leg: usize, mut f: F) -> Result<Self, AlgebraError>
    where
        F: FnMut(&Word) -> Result<TensorPolynomial, AlgebraError>,
    {
        let mut out: Option<Self> = None;
        for (ws, c) in &self.terms {
            let img = f(&ws[leg])?;
            let legs: Vec<_> =
                self.legs[..leg].iter().chain(&img.legs).chain(&self.legs[leg + 1..]).copied().collect();
            let acc = out.get_or_insert_with(|| Self::zero(legs));
            for (iw, d) in &img.terms {
                let words = ws[..leg].iter().chain(iw).chain(&ws[leg + 1..]).cloned().collect();
                acc.add_term(words, c * d);
            }
        }
        Ok(out.unwrap_or_else(|| Self::zero(Vec::new())))
    }

    /// Applies a scalar-valued map to leg `leg`, dropping it.
    pub fn collapse_leg<F>(&self, leg: usize, mut f: F) -> Self
    where
        F: FnMut(&Word) -> LaurentScalar,
    {
        let legs: Vec<_> = self.legs.iter().enumerate().filter(|(i, _)| *i != leg).map(|(_, l)| *l).collect();
        let mut out = Self::zero(legs);
        for (ws, c) in &self.terms {
            let v = f(&ws[leg]);
            let rest = ws.iter().enumerate().filter(|(i, _)| *i != leg).map(|(_, w)| w.clone()).collect();
            out.add_term(rest, c * &v);
        }
        out
    }

    /// The single leg of an arity-1 tensor as a polynomial.
    pub fn into_polynomial(self) -> Result<NCPolynomial, AlgebraError> {
        let [(tag, n)] = self.legs[..] else {
            return Err(AlgebraError::Invalid(format!("arity {} is not 1", self.arity())));
        };
        let mut out = NCPolynomial::zero(tag, n);
        for (mut ws, c) in self.terms {
            out.add_term(ws.pop().expect("one leg"), c);
        }
        Ok(out)
    }
}

impl fmt::Display for TensorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (ws, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "({c}) ")?;
            }
            let legs: Vec<String> = ws.iter().map(Word::to_string).collect();
            write!(f, "{}", legs.join(" ⊗ "))?;
        }
        Ok(())
    }
}

fn require(p: &NCPolynomial, tag: AlgebraTag) -> Result<(), AlgebraError> {
    if p.tag() != tag {
        return Err(AlgebraError::Mismatch { left: p.tag().to_string(), right: tag.to_string() });
    }
    Ok(())
}

/// Extends per-letter tensor images multiplicatively over a reduced polynomial.
fn extend_multiplicatively<F>(
    p: &NCPolynomial,
    legs: Vec<(AlgebraTag, usize)>,
    mut letter: F,
) -> Result<TensorPolynomial, AlgebraError>
where
    F: FnMut(GeneratorSymbol) -> Result<TensorPolynomial, AlgebraError>,
{
    let mut images: BTreeMap<GeneratorSymbol, TensorPolynomial> = BTreeMap::new();
    let mut out = TensorPolynomial::zero(legs.clone());
    for (w, c) in p.terms() {
        let mut acc = TensorPolynomial::one(legs.clone());
        for g in w.letters() {
            if !images.contains_key(g) {
                images.insert(*g, letter(*g)?);
            }
            acc = acc.multiply(&images[g])?;
        }
        out = out.try_add(&acc.scale(c))?;
    }
    Ok(out)
}

/// `Delta(t_{ij}) = sum_k t_{ik} (x) t_{kj}`, extended as an algebra homomorphism.
pub fn comultiply(p: &NCPolynomial) -> Result<TensorPolynomial, AlgebraError> {
    require(p, AlgebraTag::SLnQ)?;
    let n = p.n();
    let p = normal_form(p)?;
    let legs = vec![(AlgebraTag::SLnQ, n); 2];
    extend_multiplicatively(&p, legs.clone(), |g| {
        let mut t = TensorPolynomial::zero(legs.clone());
        for k in 1..=n {
            t.add_term(vec![Word::single(GeneratorSymbol::t(g.row(), k)), Word::single(GeneratorSymbol::t(k, g.col()))], LaurentScalar::one());
        }
        Ok(t)
    })
}

/// `epsilon(t_{ij}) = delta_{ij}`.
pub fn counit(p: &NCPolynomial) -> Result<LaurentScalar, AlgebraError> {
    require(p, AlgebraTag::SLnQ)?;
    let p = normal_form(p)?;
    Ok(counit_of_reduced(&p))
}

fn counit_of_reduced(p: &NCPolynomial) -> LaurentScalar {
    let mut out = LaurentScalar::zero();
    for (w, c) in p.terms() {
        if w.letters().iter().all(|g| g.row() == g.col()) {
            out += c;
        }
    }
    out
}

fn counit_of_word(n: usize, w: &Word) -> LaurentScalar {
    if w.letters().iter().all(|g| !g.is_starred()) {
        return LaurentScalar::from(i64::from(w.letters().iter().all(|g| g.row() == g.col())));
    }
    let p = normal_form(&NCPolynomial::word(AlgebraTag::SLnQ, n, w.clone())).expect("valid word");
    counit_of_reduced(&p)
}

/// `S(t_{ij}) = (-q)^{i-j}` times the minor with row `j` and column `i` removed,
/// extended as an antihomomorphism.
pub fn antipode(p: &NCPolynomial) -> Result<NCPolynomial, AlgebraError> {
    require(p, AlgebraTag::SLnQ)?;
    let n = p.n();
    let p = normal_form(p)?;
    let mut images: BTreeMap<GeneratorSymbol, NCPolynomial> = BTreeMap::new();
    let raw = p.map_words(AlgebraTag::SLnQ, n, |w| {
        let mut acc = NCPolynomial::one(AlgebraTag::SLnQ, n);
        for g in w.letters().iter().rev() {
            if !images.contains_key(g) {
                let m = complementary_minor(AlgebraTag::SLnQ, n, g.col(), g.row())?;
                images.insert(*g, m.scale(&LaurentScalar::neg_q_pow(g.row() as i32 - g.col() as i32)));
            }
            acc = acc.nc_multiply(&images[g])?;
        }
        Ok(acc)
    })?;
    normal_form(&raw)
}

/// `D_n(z_j^i) = sum_{a,b} z_b^a (x) t_{b,j} (x) t_{a,i}`, extended as a
/// *-homomorphism into `Pol(Mat_n)_q (x) C[SU_n]_q (x) C[SU_n]_q`.
pub fn coaction_dn(p: &NCPolynomial) -> Result<TensorPolynomial, AlgebraError> {
    require(p, AlgebraTag::MatQ)?;
    let n = p.n();
    let legs = vec![(AlgebraTag::MatQ, n), (AlgebraTag::SLnQ, n), (AlgebraTag::SLnQ, n)];
    let t_star = |row: usize, col: usize| star(&NCPolynomial::t(n, row, col)).and_then(|s| normal_form(&s));
    extend_multiplicatively(p, legs.clone(), |g| {
        let (i, j) = (g.row(), g.col());
        let mut out = TensorPolynomial::zero(legs.clone());
        for a in 1..=n {
            for b in 1..=n {
                let term = if g.is_starred() {
                    TensorPolynomial::pure(&[NCPolynomial::z_star(n, a, b), t_star(b, j)?, t_star(a, i)?])
                } else {
                    TensorPolynomial::pure(&[NCPolynomial::z(n, a, b), NCPolynomial::t(n, b, j), NCPolynomial::t(n, a, i)])
                };
                out = out.try_add(&term)?;
            }
        }
        Ok(out)
    })
}

/// `(Delta (x) id) Delta - (id (x) Delta) Delta` on `p`, reduced.
pub fn coassociativity_defect(p: &NCPolynomial) -> Result<TensorPolynomial, AlgebraError> {
    let d = comultiply(p)?;
    let n = p.n();
    let delta_word = |w: &Word| comultiply(&NCPolynomial::word(AlgebraTag::SLnQ, n, w.clone()));
    let left = d.expand_leg(0, delta_word)?.normalized()?;
    let right = d.expand_leg(1, delta_word)?.normalized()?;
    left.try_add(&right.scale(&LaurentScalar::int(-1)))
}

/// `(epsilon (x) id) Delta(p)` and `(id (x) epsilon) Delta(p)`, both reduced.
pub fn counit_collapses(p: &NCPolynomial) -> Result<(NCPolynomial, NCPolynomial), AlgebraError> {
    let d = comultiply(p)?;
    let n = p.n();
    let left = d.collapse_leg(0, |w| counit_of_word(n, w)).into_polynomial()?;
    let right = d.collapse_leg(1, |w| counit_of_word(n, w)).into_polynomial()?;
    Ok((normal_form(&left)?, normal_form(&right)?))
}

/// `m (S (x) id) Delta(p)` and `m (id (x) S) Delta(p)`, reduced; both equal `epsilon(p) 1`.
pub fn antipode_contractions(p: &NCPolynomial) -> Result<(NCPolynomial, NCPolynomial), AlgebraError> {
    let d = comultiply(p)?;
    let n = p.n();
    let rs = system(AlgebraKind::SLn, n)?;
    let word = |w: &Word| NCPolynomial::word(AlgebraTag::SLnQ, n, w.clone());
    let mut left = NCPolynomial::zero(AlgebraTag::SLnQ, n);
    let mut right = NCPolynomial::zero(AlgebraTag::SLnQ, n);
    for (ws, c) in d.terms() {
        left.add_scaled(&rs.multiply(&antipode(&word(&ws[0]))?, &word(&ws[1]))?, c);
        right.add_scaled(&rs.multiply(&word(&ws[0]), &antipode(&word(&ws[1]))?)?, c);
    }
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comultiply_generator() {
        let d = comultiply(&NCPolynomial::t(2, 1, 1)).unwrap();
        assert_eq!(d.num_terms(), 2);
        assert_eq!(d.to_string(), "t[1,1] ⊗ t[1,1] + t[1,2] ⊗ t[2,1]");
    }

    #[test]
    fn counit_values() {
        assert!(counit(&NCPolynomial::t(2, 1, 2)).unwrap().is_zero());
        let p = NCPolynomial::t(2, 1, 1) * NCPolynomial::t(2, 2, 2);
        assert!(counit(&p).unwrap().is_one());
        assert!(counit(&NCPolynomial::one(AlgebraTag::SLnQ, 2)).unwrap().is_one());
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&NCPolynomial::t(2, 1, 1)).unwrap(), NCPolynomial::t(2, 2, 2));
        let s2 = antipode(&antipode(&NCPolynomial::t(2, 1, 2)).unwrap()).unwrap();
        assert_eq!(s2, NCPolynomial::t(2, 1, 2).scale(&LaurentScalar::q_pow(-2)));
    }

    #[test]
    fn coaction_for_n1() {
        // in C[SU_1]_q the determinant relation makes t[1,1] = 1
        let d = coaction_dn(&NCPolynomial::z(1, 1, 1)).unwrap();
        let t = NCPolynomial::t(1, 1, 1);
        let expected = TensorPolynomial::pure(&[NCPolynomial::z(1, 1, 1), t.clone(), t]).normalized().unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.to_string(), "z[1,1] ⊗ 1 ⊗ 1");
    }
}
