//! The Fock representation `T` on `l^2(Z_+)^{(x) n^2}`.

use num_complex::Complex64;

use super::config::TruncationConfig;
use super::paths::{box_of, fock_generator};
use super::polyop::PolyOperator;
use super::vector::FockVector;
use crate::algebra::{AlgebraTag, GeneratorSymbol, NCPolynomial, SymbolKind};
use crate::error::RepError;

/// `T(g)` for a plain or starred generator.
pub fn fock_letter(n: usize, g: GeneratorSymbol, cfg: &TruncationConfig) -> Result<super::SparseTensorOperator, RepError> {
    if g.tag != AlgebraTag::MatQ {
        return Err(RepError::Config(format!("{g} is not a generator of Pol(Mat_n)_q")));
    }
    let op = fock_generator(n, g.row(), g.col(), cfg)?;
    Ok(match g.kind {
        SymbolKind::Plain => op,
        SymbolKind::Starred => op.adjoint(),
    })
}

/// `T(p)` as a word-wise operator.
pub fn fock_operator(p: &NCPolynomial, cfg: &TruncationConfig) -> Result<PolyOperator, RepError> {
    let n = p.n();
    PolyOperator::from_polynomial(p, cfg.q, n * n, |g| fock_letter(n, g, cfg))
}

/// `T(p) v`, refusing inputs whose result could touch the truncation cutoff.
pub fn fock_apply(p: &NCPolynomial, v: &FockVector, cfg: &TruncationConfig) -> Result<FockVector, RepError> {
    let n = p.n();
    if v.slots() != n * n {
        return Err(RepError::Shape(format!("vector has {} slots, T acts on {}", v.slots(), n * n)));
    }
    let deg = p.degree().unwrap_or(0);
    cfg.check_leak_free(deg, v.height())?;
    fock_operator(p, cfg)?.apply(v, cfg)
}

/// `X_{n^2}^{m_{n^2}} ... X_1^{m_1} v_0` with `X_{h(k,j)} = T(z_k^j)`.
pub fn fock_basis(n: usize, m: &[usize], cfg: &TruncationConfig) -> Result<FockVector, RepError> {
    if m.len() != n * n {
        return Err(RepError::Shape(format!("multi-index of length {} for n={n}", m.len())));
    }
    let total: usize = m.iter().sum();
    cfg.check_leak_free(total, 0)?;
    let mut v = FockVector::vacuum(n * n);
    for (i, &mi) in m.iter().enumerate() {
        let (k, j) = box_of(n, i + 1);
        let x = fock_generator(n, j, k, cfg)?;
        for _ in 0..mi {
            v = x.apply(&v, cfg)?;
        }
    }
    Ok(v)
}

/// All basis vectors `e_{i_1} (x) ... (x) e_{i_m}` with every level at most `height`.
pub fn basis_up_to(slots: usize, height: usize) -> Vec<FockVector> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; slots];
    loop {
        out.push(FockVector::basis(&idx));
        let mut s = slots;
        loop {
            if s == 0 {
                return out;
            }
            s -= 1;
            if idx[s] < height {
                idx[s] += 1;
                break;
            }
            idx[s] = 0;
        }
    }
}

/// All multi-indices of length `len` with entries summing to at most `total`.
pub fn multi_indices(len: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(len, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, total, &mut Vec::new(), &mut out);
    out
}

/// Largest off-diagonal modulus of the Gram matrix, relative to the diagonal.
pub fn gram_off_diagonal(vectors: &[FockVector]) -> f64 {
    let mut worst = 0.0f64;
    for (a, u) in vectors.iter().enumerate() {
        for w in &vectors[a + 1..] {
            let g: Complex64 = u.inner(w);
            worst = worst.max(g.norm() / (u.norm() * w.norm()));
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_generator_is_weighted_shift() {
        let cfg = TruncationConfig::new(0.5, 6).unwrap();
        let z = NCPolynomial::z(1, 1, 1);
        let v = fock_apply(&z, &FockVector::basis(&[2]), &cfg).unwrap();
        let w = (1.0 - 0.5f64.powi(6)).sqrt();
        assert!((v.get(&[3]).re - w).abs() < 1e-15);
        let one = NCPolynomial::one(AlgebraTag::MatQ, 1);
        assert_eq!(fock_apply(&one, &FockVector::basis(&[2]), &cfg).unwrap(), FockVector::basis(&[2]));
        assert!(matches!(fock_apply(&z, &FockVector::basis(&[5]), &cfg), Err(RepError::LeakRisk { .. })));
    }

    #[test]
    fn n1_basis_vector() {
        let cfg = TruncationConfig::new(0.5, 6).unwrap();
        let v = fock_basis(1, &[2], &cfg).unwrap();
        let beta = (1.0 - 0.25f64).sqrt() * (1.0 - 0.0625f64).sqrt();
        assert!((v.get(&[2]).re - beta).abs() < 1e-15);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(basis_up_to(2, 1).len(), 4);
        assert_eq!(multi_indices(4, 2).len(), 15);
    }
}
