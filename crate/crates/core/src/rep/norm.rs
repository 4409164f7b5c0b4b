//! Matrix-free operator norms.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::config::TruncationConfig;
use super::operator::SparseTensorOperator;
use super::polyop::{CompiledPoly, PolyOperator};
use super::vector::{DenseSpace, FockVector};
use crate::error::RepError;

/// A linear map on `C^dim` together with its adjoint.
pub trait MatrixFree: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, v: &[Complex64]) -> Vec<Complex64>;
    fn apply_adjoint(&self, v: &[Complex64]) -> Vec<Complex64>;
    /// Deterministic start vector.
    fn start(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|i| Complex64::new(1.0 + 0.25 * ((i as f64) * 0.7).sin(), 0.0)).collect()
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value by Lanczos on `X^* X` with full reorthogonalization.
///
/// Stops when the top Ritz value is certified to relative accuracy `tol`:
/// either its residual `r` or the gap bound `r^2 / gap` is below `tol * lambda`.
/// Inside a tight cluster neither bound applies; the iteration then stops once
/// the (monotone) top Ritz value has stagnated to `tol` over four steps. An
/// invariant Krylov space also stops the iteration.
pub fn lanczos_norm<M: MatrixFree>(x: &M, tol: f64, max_iter: usize) -> Result<f64, RepError> {
    let dim = x.dim();
    let mut v = x.start();
    let nv = norm(&v);
    if dim == 0 || nv == 0.0 {
        return Ok(0.0);
    }
    v.iter_mut().for_each(|c| *c /= nv);
    let mut basis: Vec<Vec<Complex64>> = vec![v];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut last_check: Option<(usize, f64)> = None;
    // keeps the stored Krylov basis near a gigabyte
    let budget = ((1usize << 26) / dim).max(16);
    let limit = max_iter.min(dim).min(budget).max(1);
    for j in 0..limit {
        let mut w = x.apply_adjoint(&x.apply(&basis[j]));
        let a = dot(&basis[j], &w).re;
        alphas.push(a);
        // a second pass only after heavy cancellation
        let before = norm(&w);
        reorthogonalize(&basis, &mut w);
        if norm(&w) < 0.7 * before {
            reorthogonalize(&basis, &mut w);
        }
        let beta = norm(&w);
        if j >= 24 && j % 4 != 0 && j + 1 < limit && beta > 0.0 {
            betas.push(beta);
            w.iter_mut().for_each(|c| *c /= beta);
            basis.push(w);
            continue;
        }
        let (lam, last, gap) = top_ritz(&alphas, &betas);
        if lam <= 0.0 && beta < 1e-300 {
            return Ok(0.0);
        }
        let stalled = matches!(last_check, Some((k, prev)) if j >= 8 && j - k >= 4 && lam - prev <= tol * lam);
        if beta <= 1e-14 * lam.max(1e-300) || stalled || (j >= 1 && certified(beta * last.abs(), gap, lam, tol)) {
            return Ok(lam.max(0.0).sqrt());
        }
        if last_check.is_none_or(|(k, _)| j - k >= 4) {
            last_check = Some((j, lam));
        }
        betas.push(beta);
        w.iter_mut().for_each(|c| *c /= beta);
        basis.push(w);
    }
    Err(RepError::NoConvergence(limit))
}

fn reorthogonalize(basis: &[Vec<Complex64>], w: &mut [Complex64]) {
    for b in basis {
        let c = dot(b, w);
        w.iter_mut().zip(b).for_each(|(wi, bi)| *wi -= c * bi);
    }
}

fn certified(residual: f64, gap: f64, lam: f64, tol: f64) -> bool {
    residual <= tol * lam || (gap > 0.0 && residual * residual / gap <= tol * lam)
}

/// Largest eigenvalue of the tridiagonal matrix, the last entry of its
/// eigenvector, and the distance to the next Ritz value.
fn top_ritz(alphas: &[f64], betas: &[f64]) -> (f64, f64, f64) {
    let k = alphas.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i + 1 < k {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = t.symmetric_eigen();
    let (idx, lam) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &l)| if l > acc.1 { (i, l) } else { acc });
    let second = eig.eigenvalues.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, &l)| l).fold(f64::NEG_INFINITY, f64::max);
    let gap = if second.is_finite() { lam - second } else { 0.0 };
    (lam, eig.eigenvectors[(k - 1, idx)], gap)
}

/// Gather entries allowed per compression before falling back to on-the-fly weights.
const COMPILE_BUDGET: usize = 40_000_000;

enum Backend {
    Compiled(CompiledPoly),
    Direct(PolyOperator),
}

impl Backend {
    fn new(op: PolyOperator, space: &DenseSpace) -> Self {
        match op.compile(space, COMPILE_BUDGET / 2) {
            Some(c) => Backend::Compiled(c),
            None => Backend::Direct(op),
        }
    }

    fn apply(&self, v: &[Complex64], space: &DenseSpace) -> Vec<Complex64> {
        match self {
            Backend::Compiled(c) => c.apply(v),
            Backend::Direct(op) => op.apply_dense(v, space),
        }
    }
}

/// `P_N A P_N` for a word-wise operator, evaluated on a grid `slot_degree`
/// levels taller than `N` so that no intermediate vector reaches the cutoff.
pub struct Compression {
    op: Backend,
    adj: Backend,
    space: DenseSpace,
    /// Coordinates with every level below `N`.
    kept: Vec<bool>,
    project_output: bool,
}

impl Compression {
    pub fn new(op: &PolyOperator, cfg: &TruncationConfig) -> Result<Self, RepError> {
        let base = cfg.trunc + op.slot_degree();
        let space = DenseSpace::new(op.slots, base, cfg.q)?;
        let mut digits = vec![0; op.slots];
        let kept = (0..space.dim())
            .map(|i| {
                space.decode(i, &mut digits);
                digits.iter().all(|&d| d < cfg.trunc)
            })
            .collect();
        Ok(Self {
            op: Backend::new(op.clone(), &space),
            adj: Backend::new(op.adjoint(), &space),
            space,
            kept,
            project_output: true,
        })
    }

    /// `A P_N` instead of `P_N A P_N`.
    pub fn restricted(op: &PolyOperator, cfg: &TruncationConfig) -> Result<Self, RepError> {
        Ok(Self { project_output: false, ..Self::new(op, cfg)? })
    }

    fn projected(&self, v: &[Complex64]) -> Vec<Complex64> {
        v.iter().zip(&self.kept).map(|(x, &k)| if k { *x } else { Complex64::new(0.0, 0.0) }).collect()
    }
}

impl MatrixFree for Compression {
    fn dim(&self) -> usize {
        self.space.dim()
    }

    fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let w = self.op.apply(&self.projected(v), &self.space);
        if self.project_output {
            self.projected(&w)
        } else {
            w
        }
    }

    fn apply_adjoint(&self, v: &[Complex64]) -> Vec<Complex64> {
        let x = if self.project_output { self.projected(v) } else { v.to_vec() };
        self.projected(&self.adj.apply(&x, &self.space))
    }

    fn start(&self) -> Vec<Complex64> {
        let dim = self.dim();
        let v: Vec<Complex64> = (0..dim).map(|i| Complex64::new(1.0 + 0.25 * ((i as f64) * 0.7).sin(), 0.0)).collect();
        self.projected(&v)
    }
}

pub const DEFAULT_NORM_TOL: f64 = 1e-10;

/// `||P_N T P_N||` for a polynomial operator.
pub fn compressed_norm(op: &PolyOperator, cfg: &TruncationConfig, tol: f64) -> Result<f64, RepError> {
    if op.slots == 0 {
        return Ok(op.apply(&FockVector::vacuum(0), cfg)?.get(&[]).norm());
    }
    let c = Compression::new(op, cfg)?;
    lanczos_norm(&c, tol, 300)
}

/// `||A P_N||`: the norm of `A` on vectors with every level below `N`.
pub fn restricted_norm(op: &PolyOperator, cfg: &TruncationConfig, tol: f64) -> Result<f64, RepError> {
    if op.slots == 0 {
        return compressed_norm(op, cfg, tol);
    }
    let c = Compression::restricted(op, cfg)?;
    lanczos_norm(&c, tol, 300)
}

/// Largest singular value of `P_N op P_N`.
pub fn operator_norm_estimate(op: &SparseTensorOperator, cfg: &TruncationConfig, tol: f64) -> Result<f64, RepError> {
    if !(tol > 0.0) {
        return Err(RepError::Config(format!("tolerance {tol} is not positive")));
    }
    let poly = PolyOperator { slots: op.slots, letters: vec![op.clone()], terms: vec![(Complex64::new(1.0, 0.0), vec![0])] };
    compressed_norm(&poly, cfg, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::FactorKind;

    fn single(kind: FactorKind) -> SparseTensorOperator {
        let mut op = SparseTensorOperator::zero(1);
        op.push(Complex64::new(1.0, 0.0), vec![kind]);
        op
    }

    #[test]
    fn single_slot_norms() {
        let cfg = TruncationConfig::new(0.5, 8).unwrap();
        let s = operator_norm_estimate(&single(FactorKind::S), &cfg, 1e-12).unwrap();
        assert!((s - 1.0).abs() < 1e-10);
        let c = operator_norm_estimate(&single(FactorKind::CqS), &cfg, 1e-12).unwrap();
        assert!((c - (1.0 - 0.5f64.powi(14)).sqrt()).abs() < 1e-10);
        let d = operator_norm_estimate(&single(FactorKind::Dq), &cfg, 1e-12).unwrap();
        assert!((d - 1.0).abs() < 1e-10);
    }

    #[test]
    fn two_slot_product_norm() {
        let cfg = TruncationConfig::new(0.3, 5).unwrap();
        let mut op = SparseTensorOperator::zero(2);
        op.push(Complex64::new(2.0, 0.0), vec![FactorKind::CqS, FactorKind::Dq]);
        op.push(Complex64::new(0.0, 1.0), vec![FactorKind::Identity, FactorKind::SstarCq]);
        let est = operator_norm_estimate(&op, &cfg, 1e-12).unwrap();
        let a = FactorKind::CqS.to_dense(&cfg).kronecker(&FactorKind::Dq.to_dense(&cfg)) * Complex64::new(2.0, 0.0)
            + FactorKind::Identity.to_dense(&cfg).kronecker(&FactorKind::SstarCq.to_dense(&cfg)) * Complex64::new(0.0, 1.0);
        let exact = crate::rep::factor::dense_norm(&a);
        assert!((est - exact).abs() < 1e-9, "{est} vs {exact}");
    }
}
