//! Operators on truncated tensor powers of `l^2(Z_+)` as sums of elementary tensors.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::TruncationConfig;
use super::factor::FactorKind;
use super::vector::{DenseSpace, FockVector};
use crate::error::RepError;
use crate::laurent::LaurentScalar;

/// `scalar * (F_1 (x) ... (x) F_m)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorTerm {
    #[serde(with = "complex_pair")]
    pub scalar: Complex64,
    pub factors: Vec<FactorKind>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseTensorOperator {
    pub slots: usize,
    pub terms: Vec<TensorTerm>,
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        (c.re, c.im).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let (re, im) = <(f64, f64)>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// Per-kind weight tables for one truncation, indexed by source level.
pub(crate) struct WeightTable {
    trunc: usize,
    table: Vec<Vec<Option<(usize, f64)>>>,
}

impl WeightTable {
    pub(crate) fn new(q: f64, trunc: usize) -> Self {
        let table = FactorKind::ALL
            .iter()
            .map(|k| (0..trunc).map(|m| k.act(q, trunc, m)).collect())
            .collect();
        Self { trunc, table }
    }

    fn index(kind: FactorKind) -> usize {
        FactorKind::ALL.iter().position(|&k| k == kind).expect("kind is listed")
    }

    #[inline]
    pub(crate) fn act(&self, kind: FactorKind, m: usize) -> Option<(usize, f64)> {
        if m >= self.trunc {
            return None;
        }
        self.table[Self::index(kind)][m]
    }
}

impl SparseTensorOperator {
    pub fn zero(slots: usize) -> Self {
        Self { slots, terms: Vec::new() }
    }

    pub fn identity(slots: usize) -> Self {
        Self::scalar(slots, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(slots: usize, c: Complex64) -> Self {
        let mut op = Self::zero(slots);
        op.push(c, vec![FactorKind::Identity; slots]);
        op
    }

    pub fn push(&mut self, scalar: Complex64, factors: Vec<FactorKind>) {
        debug_assert_eq!(factors.len(), self.slots);
        if scalar != Complex64::new(0.0, 0.0) {
            self.terms.push(TensorTerm { scalar, factors });
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.slots);
        for t in &self.terms {
            out.push(t.scalar * c, t.factors.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, RepError> {
        self.check_slots(other.slots)?;
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    fn check_slots(&self, slots: usize) -> Result<(), RepError> {
        if self.slots != slots {
            return Err(RepError::Shape(format!("{} slots vs {}", self.slots, slots)));
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        Self {
            slots: self.slots,
            terms: self
                .terms
                .iter()
                .map(|t| TensorTerm { scalar: t.scalar.conj(), factors: t.factors.iter().map(|f| f.adjoint()).collect() })
                .collect(),
        }
    }

    /// Merges terms with equal factor lists and drops zeros.
    pub fn simplified(&self) -> Self {
        let mut map: BTreeMap<&[FactorKind], Complex64> = BTreeMap::new();
        for t in &self.terms {
            *map.entry(&t.factors).or_default() += t.scalar;
        }
        let mut out = Self::zero(self.slots);
        for (f, c) in map {
            out.push(c, f.to_vec());
        }
        out
    }

    /// Replaces the factor at `slot` (1-based) by its value under the character
    /// `S -> e^{i angle}` of `C*(S)`; terms with `d(q)` there vanish.
    pub fn evaluate_slot(&self, slot: usize, angle: f64) -> Result<Self, RepError> {
        if slot == 0 || slot > self.slots {
            return Err(RepError::SlotOutOfRange { slot, slots: self.slots });
        }
        let mut out = Self::zero(self.slots - 1);
        for t in &self.terms {
            let Some(v) = slot_value(t.factors[slot - 1], angle) else { continue };
            let mut f = t.factors.clone();
            f.remove(slot - 1);
            out.push(t.scalar * v, f);
        }
        Ok(out)
    }

    /// Image of one basis vector under one term, or `None` if it is annihilated.
    #[inline]
    fn term_on_basis(&self, t: &TensorTerm, w: &WeightTable, idx: &[u16]) -> Option<(Vec<u16>, Complex64)> {
        let mut out = Vec::with_capacity(idx.len());
        let mut c = t.scalar;
        for (f, &m) in t.factors.iter().zip(idx) {
            let (m2, x) = w.act(*f, m as usize)?;
            out.push(m2 as u16);
            c *= x;
        }
        Some((out, c))
    }

    /// Sparse application at truncation `cfg.trunc`; entries that would cross the
    /// cutoff are annihilated, so callers check leak-freeness beforehand.
    pub fn apply(&self, v: &FockVector, cfg: &TruncationConfig) -> Result<FockVector, RepError> {
        self.check_slots(v.slots())?;
        let w = WeightTable::new(cfg.q, cfg.trunc);
        let mut out = FockVector::zero(self.slots);
        for (idx, &c) in v.entries() {
            for t in &self.terms {
                if let Some((j, x)) = self.term_on_basis(t, &w, idx) {
                    out.add(j, c * x);
                }
            }
        }
        Ok(out)
    }

    /// Dense application on `space`, parallel over blocks of output indices.
    pub fn apply_dense(&self, v: &[Complex64], space: &DenseSpace) -> Vec<Complex64> {
        assert_eq!(space.slots, self.slots);
        let w = WeightTable::new(space.q, space.base);
        let shifts: Vec<Vec<i32>> = self.terms.iter().map(|t| t.factors.iter().map(|f| f.shift()).collect()).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        out.par_chunks_mut(1024).enumerate().for_each(|(chunk, block)| {
            let mut digits = vec![0usize; self.slots];
            for (off, slot_out) in block.iter_mut().enumerate() {
                space.decode(chunk * 1024 + off, &mut digits);
                let mut acc = Complex64::new(0.0, 0.0);
                'terms: for (t, sh) in self.terms.iter().zip(&shifts) {
                    let mut src = 0usize;
                    let mut c = t.scalar;
                    for ((f, &d), &s) in t.factors.iter().zip(&digits).zip(sh) {
                        let m = d as i64 - s as i64;
                        if m < 0 {
                            continue 'terms;
                        }
                        match w.act(*f, m as usize) {
                            Some((_, x)) => c *= x,
                            None => continue 'terms,
                        }
                        src = src * space.base + m as usize;
                    }
                    acc += c * v[src];
                }
                *slot_out = acc;
            }
        });
        out
    }

    /// Gather form on `space`; `None` when it would exceed `max_entries`.
    pub fn compile(&self, space: &DenseSpace, max_entries: usize) -> Option<GatherMatrix> {
        assert_eq!(space.slots, self.slots);
        let dim = space.dim();
        if dim.saturating_mul(self.terms.len()) > max_entries || dim > u32::MAX as usize {
            return None;
        }
        let w = WeightTable::new(space.q, space.base);
        let shifts: Vec<Vec<i32>> = self.terms.iter().map(|t| t.factors.iter().map(|f| f.shift()).collect()).collect();
        let mut offsets = Vec::with_capacity(dim + 1);
        let mut src = Vec::new();
        let mut vals = Vec::new();
        let mut digits = vec![0usize; self.slots];
        offsets.push(0);
        for i in 0..dim {
            space.decode(i, &mut digits);
            'terms: for (t, sh) in self.terms.iter().zip(&shifts) {
                let mut from = 0usize;
                let mut c = t.scalar;
                for ((f, &d), &s) in t.factors.iter().zip(&digits).zip(sh) {
                    let m = d as i64 - s as i64;
                    if m < 0 {
                        continue 'terms;
                    }
                    match w.act(*f, m as usize) {
                        Some((_, x)) => c *= x,
                        None => continue 'terms,
                    }
                    from = from * space.base + m as usize;
                }
                if c != Complex64::new(0.0, 0.0) {
                    src.push(from as u32);
                    vals.push(c);
                }
            }
            offsets.push(src.len());
        }
        Some(GatherMatrix { offsets, src, vals })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("operators serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, RepError> {
        serde_json::from_str(s).map_err(|e| RepError::Shape(e.to_string()))
    }
}

/// Row `i` of the product is the sum of `vals[k] * v[src[k]]` over
/// `offsets[i]..offsets[i + 1]`.
#[derive(Clone, Debug)]
pub struct GatherMatrix {
    offsets: Vec<usize>,
    src: Vec<u32>,
    vals: Vec<Complex64>,
}

impl GatherMatrix {
    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.offsets.len() - 1];
        out.par_chunks_mut(4096).enumerate().for_each(|(chunk, block)| {
            for (off, o) in block.iter_mut().enumerate() {
                let i = chunk * 4096 + off;
                let (a, b) = (self.offsets[i], self.offsets[i + 1]);
                *o = self.src[a..b].iter().zip(&self.vals[a..b]).map(|(&j, c)| c * v[j as usize]).sum();
            }
        });
        out
    }
}

/// Character `S -> e^{i angle}` on the factor kinds.
pub fn slot_value(kind: FactorKind, angle: f64) -> Option<Complex64> {
    let u = Complex64::from_polar(1.0, angle);
    match kind {
        FactorKind::CqS | FactorKind::S => Some(u),
        FactorKind::SstarCq | FactorKind::Sstar => Some(u.conj()),
        FactorKind::Cq | FactorKind::Identity => Some(Complex64::new(1.0, 0.0)),
        FactorKind::Dq => None,
    }
}

impl fmt::Display for SparseTensorOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({:.6}{:+.6}i) ", t.scalar.re, t.scalar.im)?;
            let parts: Vec<_> = t.factors.iter().map(|k| k.symbol()).collect();
            f.write_str(&parts.join("⊗"))?;
        }
        Ok(())
    }
}

/// A sum of elementary tensors with exact Laurent coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactOperator {
    pub slots: usize,
    pub terms: BTreeMap<Vec<FactorKind>, LaurentScalar>,
}

impl ExactOperator {
    pub fn zero(slots: usize) -> Self {
        Self { slots, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, factors: Vec<FactorKind>, c: LaurentScalar) {
        debug_assert_eq!(factors.len(), self.slots);
        let slot = self.terms.entry(factors).or_insert_with(LaurentScalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn to_numeric(&self, q: f64) -> SparseTensorOperator {
        let mut out = SparseTensorOperator::zero(self.slots);
        for (f, c) in &self.terms {
            out.push(Complex64::new(c.eval(q), 0.0), f.clone());
        }
        out
    }
}

impl fmt::Display for ExactOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "({c}) ")?;
            }
            let parts: Vec<_> = k.iter().map(|k| k.symbol()).collect();
            f.write_str(&parts.join("⊗"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_and_adjoint() {
        let mut op = SparseTensorOperator::zero(2);
        op.push(Complex64::new(0.5, -1.0), vec![FactorKind::CqS, FactorKind::Dq]);
        let back = SparseTensorOperator::from_json(&op.to_json()).unwrap();
        assert_eq!(back, op);
        let v: serde_json::Value = serde_json::from_str(&op.to_json()).unwrap();
        assert_eq!(v["terms"][0]["scalar"][1], -1.0);
        let adj = op.adjoint();
        assert_eq!(adj.terms[0].factors[0], FactorKind::SstarCq);
        assert_eq!(adj.terms[0].scalar.im, 1.0);
    }

    #[test]
    fn evaluate_slot_rules() {
        let mut op = SparseTensorOperator::zero(2);
        op.push(Complex64::new(1.0, 0.0), vec![FactorKind::Dq, FactorKind::CqS]);
        op.push(Complex64::new(2.0, 0.0), vec![FactorKind::Identity, FactorKind::CqS]);
        let ev = op.evaluate_slot(1, 0.3).unwrap();
        assert_eq!(ev.num_terms(), 1);
        assert_eq!(ev.terms[0].scalar, Complex64::new(2.0, 0.0));
        assert!(op.evaluate_slot(3, 0.0).is_err());
    }
}
