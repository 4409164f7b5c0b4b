use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::RepError;

/// A finitely supported vector of `l^2(Z_+)^{(x) m}`, keyed by multi-index.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FockVector {
    slots: usize,
    entries: BTreeMap<Vec<u16>, Complex64>,
}

impl FockVector {
    pub fn zero(slots: usize) -> Self {
        Self { slots, entries: BTreeMap::new() }
    }

    pub fn basis(levels: &[usize]) -> Self {
        let mut v = Self::zero(levels.len());
        v.add(levels.iter().map(|&m| m as u16).collect(), Complex64::new(1.0, 0.0));
        v
    }

    /// `e_0 (x) ... (x) e_0`.
    pub fn vacuum(slots: usize) -> Self {
        Self::basis(&vec![0; slots])
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u16>, &Complex64)> {
        self.entries.iter()
    }

    pub fn get(&self, idx: &[u16]) -> Complex64 {
        self.entries.get(idx).copied().unwrap_or_default()
    }

    pub fn add(&mut self, idx: Vec<u16>, c: Complex64) {
        let e = self.entries.entry(idx).or_default();
        *e += c;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|c| c.norm() == 0.0)
    }

    /// Largest level occurring in the support.
    pub fn height(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, c)| c.norm() != 0.0)
            .flat_map(|(k, _)| k.iter().map(|&m| m as usize))
            .max()
            .unwrap_or(0)
    }

    pub fn norm(&self) -> f64 {
        self.entries.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self, other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.entries.iter().map(|(k, c)| c.conj() * other.get(k)).sum()
    }

    pub fn axpy(&self, a: Complex64, other: &Self) -> Result<Self, RepError> {
        if self.slots != other.slots {
            return Err(RepError::Shape(format!("{} slots vs {}", self.slots, other.slots)));
        }
        let mut out = self.clone();
        for (k, c) in &other.entries {
            out.add(k.clone(), a * c);
        }
        Ok(out)
    }
}

/// Dense layout of `span{e_i : i_s < base}`, slot 1 most significant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DenseSpace {
    pub slots: usize,
    pub base: usize,
    pub q: f64,
}

impl DenseSpace {
    pub fn new(slots: usize, base: usize, q: f64) -> Result<Self, RepError> {
        let dim = (base as f64).powi(slots as i32);
        if dim > 5.0e7 {
            return Err(RepError::Config(format!("dense space {base}^{slots} is too large")));
        }
        Ok(Self { slots, base, q })
    }

    pub fn dim(&self) -> usize {
        self.base.pow(self.slots as u32)
    }

    pub fn decode(&self, mut i: usize, digits: &mut [usize]) {
        for d in digits.iter_mut().rev() {
            *d = i % self.base;
            i /= self.base;
        }
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.base + d)
    }

    /// Zeroes every coordinate with some level `>= keep`.
    pub fn project(&self, v: &mut [Complex64], keep: usize) {
        let mut digits = vec![0; self.slots];
        for (i, x) in v.iter_mut().enumerate() {
            self.decode(i, &mut digits);
            if digits.iter().any(|&d| d >= keep) {
                *x = Complex64::new(0.0, 0.0);
            }
        }
    }

    pub fn from_sparse(&self, v: &FockVector) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (k, c) in v.entries() {
            let d: Vec<usize> = k.iter().map(|&m| m as usize).collect();
            out[self.encode(&d)] += c;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let s = DenseSpace::new(3, 4, 0.5).unwrap();
        let mut d = vec![0; 3];
        s.decode(s.encode(&[1, 2, 3]), &mut d);
        assert_eq!(d, vec![1, 2, 3]);
        let v = FockVector::basis(&[1, 0, 2]);
        assert_eq!(v.height(), 2);
        assert_eq!(s.from_sparse(&v)[s.encode(&[1, 0, 2])], Complex64::new(1.0, 0.0));
    }
}
