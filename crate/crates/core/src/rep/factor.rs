//! Single-slot operators on truncated `l^2(Z_+)`: all are weighted shifts.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::TruncationConfig;
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorKind {
    /// `S e_m = e_{m+1}`.
    S,
    Sstar,
    /// `C_q e_m = sqrt(1 - q^{2m}) e_m`.
    Cq,
    /// `d(q) e_m = q^m e_m`.
    Dq,
    CqS,
    SstarCq,
    Identity,
}

impl FactorKind {
    pub const ALL: [FactorKind; 7] = [
        FactorKind::S,
        FactorKind::Sstar,
        FactorKind::Cq,
        FactorKind::Dq,
        FactorKind::CqS,
        FactorKind::SstarCq,
        FactorKind::Identity,
    ];

    /// Level change `m -> m + shift`.
    pub fn shift(self) -> i32 {
        match self {
            FactorKind::S | FactorKind::CqS => 1,
            FactorKind::Sstar | FactorKind::SstarCq => -1,
            _ => 0,
        }
    }

    pub fn adjoint(self) -> Self {
        match self {
            FactorKind::S => FactorKind::Sstar,
            FactorKind::Sstar => FactorKind::S,
            FactorKind::CqS => FactorKind::SstarCq,
            FactorKind::SstarCq => FactorKind::CqS,
            k => k,
        }
    }

    /// `(m', w)` with `F e_m = w e_{m'}` in the truncation, or `None` when `F e_m = 0`.
    pub fn act(self, q: f64, trunc: usize, m: usize) -> Option<(usize, f64)> {
        let target = m as i64 + i64::from(self.shift());
        if target < 0 || target >= trunc as i64 {
            return None;
        }
        let c = |k: usize| (1.0 - q.powi(2 * k as i32)).sqrt();
        let w = match self {
            FactorKind::S | FactorKind::Sstar | FactorKind::Identity => 1.0,
            FactorKind::Cq => c(m),
            FactorKind::Dq => q.powi(m as i32),
            FactorKind::CqS => c(m + 1),
            FactorKind::SstarCq => c(m),
        };
        (w != 0.0).then_some((target as usize, w))
    }

    pub fn to_dense(self, cfg: &TruncationConfig) -> DMatrix<Complex64> {
        let n = cfg.trunc;
        let mut m = DMatrix::zeros(n, n);
        for col in 0..n {
            if let Some((row, w)) = self.act(cfg.q, n, col) {
                m[(row, col)] = Complex64::new(w, 0.0);
            }
        }
        m
    }

    pub fn symbol(self) -> &'static str {
        match self {
            FactorKind::S => "S",
            FactorKind::Sstar => "S*",
            FactorKind::Cq => "C_q",
            FactorKind::Dq => "d",
            FactorKind::CqS => "C_qS",
            FactorKind::SstarCq => "S*C_q",
            FactorKind::Identity => "I",
        }
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A scalar multiple of one factor kind, materialized on demand.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorMatrix {
    pub kind: FactorKind,
    pub scalar: Complex64,
}

impl FactorMatrix {
    pub fn new(kind: FactorKind) -> Self {
        Self { kind, scalar: Complex64::new(1.0, 0.0) }
    }

    pub fn scaled(kind: FactorKind, scalar: f64) -> Self {
        Self { kind, scalar: Complex64::new(scalar, 0.0) }
    }

    pub fn to_dense(&self, cfg: &TruncationConfig) -> DMatrix<Complex64> {
        self.kind.to_dense(cfg) * self.scalar
    }

    /// `(M e_m)` as a dense column.
    pub fn apply_basis(&self, cfg: &TruncationConfig, m: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); cfg.trunc];
        if let Some((t, w)) = self.kind.act(cfg.q, cfg.trunc, m) {
            v[t] = self.scalar * w;
        }
        v
    }
}

/// `S`, `C_q` and `d(q)` at the given truncation.
pub struct BasicOperators {
    pub s: DMatrix<Complex64>,
    pub cq: DMatrix<Complex64>,
    pub dq: DMatrix<Complex64>,
}

pub fn basic_operators(cfg: &TruncationConfig) -> BasicOperators {
    BasicOperators {
        s: FactorKind::S.to_dense(cfg),
        cq: FactorKind::Cq.to_dense(cfg),
        dq: FactorKind::Dq.to_dense(cfg),
    }
}

/// Spectral norm of a small dense matrix.
pub fn dense_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().iter().cloned().fold(0.0, f64::max)
}

/// Partial sums of the series for `C_q` and `d(q)` in powers of `S`, `S*`,
/// compared with the operators themselves in operator norm.
pub fn series_identities_check(cfg: &TruncationConfig, terms: usize) -> CheckReport {
    let ops = basic_operators(cfg);
    let q = cfg.q;
    let n = cfg.trunc;
    let id = DMatrix::<Complex64>::identity(n, n);
    // P_k = S^k S*^k
    let mut powers = vec![id.clone()];
    let mut s_k = id.clone();
    for _ in 1..=terms + 1 {
        s_k = &ops.s * &s_k;
        powers.push(&s_k * s_k.adjoint());
    }
    let mut sum = DMatrix::<Complex64>::zeros(n, n);
    let mut dsum = DMatrix::<Complex64>::zeros(n, n);
    for k in 0..terms {
        let w = Complex64::new(q.powi(2 * k as i32), 0.0);
        sum += &powers[k + 1] * w;
        dsum += (&powers[k] - &powers[k + 1]) * Complex64::new(q.powi(k as i32), 0.0);
    }
    let cq_series = super::dilation::hermitian_sqrt(&(sum * Complex64::new(1.0 - q * q, 0.0)));
    let tail = if terms == 0 { f64::INFINITY } else { q.powi(2 * terms as i32) / (1.0 - q * q) };
    let mut report = CheckReport::new("series");
    let cq_res = dense_norm(&(&cq_series - &ops.cq));
    let d_res = dense_norm(&(&dsum - &ops.dq));
    report.push_timed(format!("C_q series, {terms} terms"), cq_res, tail.max(1e-14), 0.0);
    report.push_timed(format!("d(q) series, {terms} terms"), d_res, tail.max(1e-14), 0.0);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> TruncationConfig {
        TruncationConfig::new(0.5, 4).unwrap()
    }

    #[test]
    fn weights() {
        let c = cfg();
        let (m, w) = FactorKind::Cq.act(c.q, c.trunc, 2).unwrap();
        assert_eq!(m, 2);
        assert!((w - 0.968246).abs() < 1e-6);
        assert_eq!(FactorKind::Dq.act(c.q, c.trunc, 3), Some((3, 0.125)));
        assert_eq!(FactorKind::Sstar.act(c.q, c.trunc, 0), None);
        assert_eq!(FactorKind::S.act(c.q, c.trunc, 3), None);
    }

    #[test]
    fn cq_and_d_are_complementary() {
        let ops = basic_operators(&cfg());
        let lhs = ops.cq.adjoint() * &ops.cq + ops.dq.adjoint() * &ops.dq;
        assert!(dense_norm(&(lhs - DMatrix::identity(4, 4))) < 1e-15);
    }

    #[test]
    fn adjoint_kinds_match_dense_adjoints() {
        let c = cfg();
        for k in FactorKind::ALL {
            let d = k.to_dense(&c).adjoint() - k.adjoint().to_dense(&c);
            assert!(dense_norm(&d) < 1e-15, "{k}");
        }
    }
}
