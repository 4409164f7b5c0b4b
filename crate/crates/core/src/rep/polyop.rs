//! Polynomials in operators, applied word by word without expanding products.

use std::collections::HashMap;

use num_complex::Complex64;

use super::config::TruncationConfig;
use super::factor::FactorKind;
use super::operator::{GatherMatrix, SparseTensorOperator};
use super::vector::{DenseSpace, FockVector};
use crate::algebra::{GeneratorSymbol, NCPolynomial};
use crate::error::RepError;

/// `sum_w c_w L_{w_1} ... L_{w_r}` over a table of letter operators.
#[derive(Clone, Debug)]
pub struct PolyOperator {
    pub slots: usize,
    pub letters: Vec<SparseTensorOperator>,
    pub terms: Vec<(Complex64, Vec<usize>)>,
}

impl PolyOperator {
    /// Evaluates `p` at `q` with each generator replaced by `letter(g)`.
    pub fn from_polynomial<F>(p: &NCPolynomial, q: f64, slots: usize, mut letter: F) -> Result<Self, RepError>
    where
        F: FnMut(GeneratorSymbol) -> Result<SparseTensorOperator, RepError>,
    {
        let mut index: HashMap<GeneratorSymbol, usize> = HashMap::new();
        let mut letters = Vec::new();
        let mut terms = Vec::new();
        for (w, c) in p.terms() {
            let mut ids = Vec::with_capacity(w.len());
            for g in w.letters() {
                let id = match index.get(g) {
                    Some(&id) => id,
                    None => {
                        let op = letter(*g)?;
                        if op.slots != slots {
                            return Err(RepError::Shape(format!("letter {g} has {} slots, expected {slots}", op.slots)));
                        }
                        letters.push(op);
                        index.insert(*g, letters.len() - 1);
                        letters.len() - 1
                    }
                };
                ids.push(id);
            }
            terms.push((Complex64::new(c.eval(q), 0.0), ids));
        }
        Ok(Self { slots, letters, terms })
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.1.len()).max().unwrap_or(0)
    }

    /// Largest number of letters in one word that act on a common slot; no
    /// level can move further than this during an application.
    pub fn slot_degree(&self) -> usize {
        let touches: Vec<Vec<bool>> = self
            .letters
            .iter()
            .map(|l| (0..self.slots).map(|s| l.terms.iter().any(|t| t.factors[s] != FactorKind::Identity)).collect())
            .collect();
        self.terms
            .iter()
            .flat_map(|(_, w)| (0..self.slots).map(move |s| (w, s)))
            .map(|(w, s)| w.iter().filter(|&&id| touches[id][s]).count())
            .max()
            .unwrap_or(0)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            slots: self.slots,
            letters: self.letters.iter().map(|l| l.adjoint()).collect(),
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c.conj(), w.iter().rev().copied().collect()))
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.0 *= c;
        }
        out
    }

    /// Sparse application; the last letter of each word acts first.
    pub fn apply(&self, v: &FockVector, cfg: &TruncationConfig) -> Result<FockVector, RepError> {
        let mut out = FockVector::zero(self.slots);
        for (c, w) in &self.terms {
            let mut x = v.clone();
            for &id in w.iter().rev() {
                x = self.letters[id].apply(&x, cfg)?;
            }
            out = out.axpy(*c, &x)?;
        }
        Ok(out)
    }

    /// Every letter in gather form on `space`, if the total fits in `max_entries`.
    pub fn compile(&self, space: &DenseSpace, max_entries: usize) -> Option<CompiledPoly> {
        let mut budget = max_entries;
        let mut letters = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let g = l.compile(space, budget)?;
            budget = budget.checked_sub(g.nnz())?;
            letters.push(g);
        }
        Some(CompiledPoly { terms: self.terms.clone(), letters })
    }

    pub fn apply_dense(&self, v: &[Complex64], space: &DenseSpace) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (c, w) in &self.terms {
            let mut x = v.to_vec();
            for &id in w.iter().rev() {
                x = self.letters[id].apply_dense(&x, space);
            }
            for (o, y) in out.iter_mut().zip(&x) {
                *o += c * y;
            }
        }
        out
    }
}

/// A [`PolyOperator`] with its letters precomputed on one dense grid.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(Complex64, Vec<usize>)>,
    letters: Vec<GatherMatrix>,
}

impl CompiledPoly {
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (c, w) in &self.terms {
            let mut x = v.to_vec();
            for &id in w.iter().rev() {
                x = self.letters[id].apply(&x);
            }
            for (o, y) in out.iter_mut().zip(&x) {
                *o += c * y;
            }
        }
        out
    }
}
