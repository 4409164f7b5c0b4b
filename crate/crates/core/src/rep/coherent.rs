//! Coherent representations: the Fock representation with slot `n` evaluated on the circle.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::config::TruncationConfig;
use super::factor::FactorKind;
use super::fock::fock_letter;
use super::operator::{ExactOperator, SparseTensorOperator};
use super::paths::fock_generator_exact;
use super::polyop::PolyOperator;
use crate::algebra::NCPolynomial;
use crate::error::RepError;

/// `T_psi(p)` on `n^2 - 1` slots.
pub fn coherent_rep(psi: f64, p: &NCPolynomial, cfg: &TruncationConfig) -> Result<PolyOperator, RepError> {
    let n = p.n();
    PolyOperator::from_polynomial(p, cfg.q, n * n - 1, |g| fock_letter(n, g, cfg)?.evaluate_slot(n, psi))
}

/// `T(z_1^1) = B (x) C_qS + A_11 (x) I` and `T(z_k^j) = A_jk (x) I`, with the
/// second factor at slot `n`.
#[derive(Clone, Debug)]
pub struct SplitAB {
    pub n: usize,
    pub b: ExactOperator,
    /// Keyed by `(row, col)` of the generator.
    pub a: BTreeMap<(usize, usize), ExactOperator>,
}

fn without_slot(f: &[FactorKind], slot: usize) -> Vec<FactorKind> {
    let mut f = f.to_vec();
    f.remove(slot - 1);
    f
}

fn with_slot(f: &[FactorKind], slot: usize, kind: FactorKind) -> Vec<FactorKind> {
    let mut f = f.to_vec();
    f.insert(slot - 1, kind);
    f
}

pub fn split_a_b(n: usize) -> Result<SplitAB, RepError> {
    let slots = n * n - 1;
    let mut b = ExactOperator::zero(slots);
    let mut a = BTreeMap::new();
    for row in 1..=n {
        for col in 1..=n {
            let t = fock_generator_exact(n, row, col)?;
            let mut aj = ExactOperator::zero(slots);
            for (f, c) in &t.terms {
                match f[n - 1] {
                    FactorKind::Identity => aj.add_term(without_slot(f, n), c.clone()),
                    FactorKind::CqS if (row, col) == (1, 1) => b.add_term(without_slot(f, n), c.clone()),
                    other => return Err(RepError::UnexpectedFactor { slot: n, found: other.symbol().to_string() }),
                }
            }
            a.insert((row, col), aj);
        }
    }
    Ok(SplitAB { n, b, a })
}

impl SplitAB {
    /// `T(z_col^row)` rebuilt from the pieces.
    pub fn reconstruct(&self, row: usize, col: usize) -> ExactOperator {
        let n = self.n;
        let mut out = ExactOperator::zero(n * n);
        if (row, col) == (1, 1) {
            for (f, c) in &self.b.terms {
                out.add_term(with_slot(f, n, FactorKind::CqS), c.clone());
            }
        }
        for (f, c) in &self.a[&(row, col)].terms {
            out.add_term(with_slot(f, n, FactorKind::Identity), c.clone());
        }
        out
    }

    /// `e^{i psi} B + A_11`.
    pub fn coherent_z11(&self, psi: f64, cfg: &TruncationConfig) -> SparseTensorOperator {
        let b = self.b.to_numeric(cfg.q).scale(Complex64::from_polar(1.0, psi));
        b.add(&self.a[&(1, 1)].to_numeric(cfg.q)).expect("same slot count")
    }
}

/// Largest entry of `A - B` over the union of their terms.
pub fn operator_difference(a: &SparseTensorOperator, b: &SparseTensorOperator) -> f64 {
    let d = a.add(&b.scale(Complex64::new(-1.0, 0.0))).expect("same slot count").simplified();
    d.terms.iter().map(|t| t.scalar.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::vector::FockVector;

    #[test]
    fn eigenrelations_n2() {
        let cfg = TruncationConfig::new(0.5, 4).unwrap();
        let psi = 0.7;
        let omega = FockVector::vacuum(3);
        let z11 = coherent_rep(psi, &NCPolynomial::z(2, 1, 1), &cfg).unwrap();
        let v = z11.apply(&omega, &cfg).unwrap();
        assert!((v.get(&[0, 0, 0]) + Complex64::from_polar(1.0, psi)).norm() < 1e-15);
        assert!((v.norm() - 1.0).abs() < 1e-15);
        let z12 = coherent_rep(psi, &NCPolynomial::z_star(2, 1, 2), &cfg).unwrap();
        assert!(z12.apply(&omega, &cfg).unwrap().is_zero());
    }

    #[test]
    fn split_reconstructs() {
        for n in 1..=3 {
            let s = split_a_b(n).unwrap();
            for r in 1..=n {
                for c in 1..=n {
                    assert_eq!(s.reconstruct(r, c), fock_generator_exact(n, r, c).unwrap());
                }
            }
        }
        let s1 = split_a_b(1).unwrap();
        assert_eq!(s1.b.num_terms(), 1);
        assert!(s1.b.terms.values().all(|c| c.is_one()));
        assert_eq!(s1.a[&(1, 1)].num_terms(), 0);
    }

    #[test]
    fn coherent_matches_split() {
        let cfg = TruncationConfig::new(0.5, 4).unwrap();
        let s = split_a_b(2).unwrap();
        let direct = fock_letter(2, crate::algebra::GeneratorSymbol::z(1, 1), &cfg).unwrap().evaluate_slot(2, 1.3).unwrap();
        assert!(operator_difference(&direct, &s.coherent_z11(1.3, &cfg)) < 1e-15);
    }
}
