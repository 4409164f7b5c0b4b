use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::suites::norm_truncation;
use super::{sample_polynomial, SuiteConfig};
use crate::algebra::NCPolynomial;
use crate::error::RepError;
use crate::hopf::coaction_dn;
use crate::report::CheckReport;
use crate::rep::boundary::{angle_grid, boundary_rep, boundary_words, coaction_rep};
use crate::rep::fock::fock_operator;
use crate::rep::norm::compressed_norm;
use crate::rep::TruncationConfig;

/// Truncation slack `eps_factor * q^(N - degree)`.
pub fn epsilon(cfg: &SuiteConfig, trunc: usize, degree: usize) -> f64 {
    cfg.tol("eps_factor") * cfg.q.powi(trunc as i32 - degree as i32)
}

/// Angle resolution of the boundary supremum: a fine circle for `n = 1`, `8^n` otherwise.
pub fn grid_points(n: usize) -> usize {
    if n == 1 {
        4096
    } else {
        8
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleNorms {
    pub seed: u64,
    pub degree: usize,
    #[serde(rename = "N")]
    pub trunc: usize,
    pub fock: f64,
    pub boundary: f64,
    pub eps: f64,
}

impl SampleNorms {
    pub fn deficit(&self) -> f64 {
        self.fock - self.boundary
    }

    /// Amount by which `boundary <= fock + eps` is violated.
    pub fn excess(&self) -> f64 {
        (self.boundary - self.fock - self.eps).max(0.0)
    }
}

/// `max` over the angle grid and word list of `||P_N pi_{phi,w}(p) P_N||`.
pub fn boundary_sup(p: &NCPolynomial, cfg: &TruncationConfig, points: usize, tol: f64) -> Result<f64, RepError> {
    let n = p.n();
    let grid = angle_grid(n, points);
    let mut words = boundary_words(n);
    words.dedup();
    let mut best: f64 = 0.0;
    for w in &words {
        let norms: Result<Vec<f64>, RepError> =
            grid.par_iter().map(|phis| compressed_norm(&boundary_rep(phis, w, p, cfg)?, cfg, tol)).collect();
        best = norms?.into_iter().fold(best, f64::max);
    }
    Ok(best)
}

/// `||P_N T(p) P_N||` on `l^2(Z_+)`, `n = 1`, for each truncation in `truncs`.
pub fn n1_max_modulus(p: &NCPolynomial, q: f64, truncs: &[usize], tol: f64) -> Result<Vec<f64>, RepError> {
    if p.n() != 1 {
        return Err(RepError::Shape(format!("expected n = 1, got n = {}", p.n())));
    }
    truncs
        .par_iter()
        .map(|&t| {
            let cfg = TruncationConfig::new(q, t)?;
            compressed_norm(&fock_operator(p, &cfg)?, &cfg, tol)
        })
        .collect()
}

/// Fock and boundary norms for seeded holomorphic samples.
pub fn sample_norms(cfg: &SuiteConfig, samples: usize) -> Result<Vec<SampleNorms>, RepError> {
    let tc = cfg.validate()?;
    let n = cfg.n;
    (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.seed.wrapping_add(i);
            let p = sample_polynomial(seed, n, cfg.degree, true)?;
            let degree = p.degree().unwrap_or(0);
            let nc = norm_truncation(n, degree, &tc)?;
            let fock = compressed_norm(&fock_operator(&p, &nc)?, &nc, cfg.tol("norm"))?;
            let boundary = boundary_sup(&p, &nc, grid_points(n), cfg.tol("norm"))?;
            Ok(SampleNorms { seed, degree, trunc: nc.trunc, fock, boundary, eps: epsilon(cfg, nc.trunc, degree) })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxModulusSummary {
    pub samples: Vec<SampleNorms>,
    pub violations: usize,
    pub max_excess: f64,
    pub max_relative_deficit: f64,
}

/// Truncations `N/8, N/4, N/2, N` used for the monotonicity check.
fn ladder(trunc: usize) -> Vec<usize> {
    [8, 4, 2, 1].iter().map(|d| trunc / d).filter(|&t| t >= 2).collect()
}

pub fn max_modulus_check(cfg: &SuiteConfig, samples: usize) -> Result<CheckReport, RepError> {
    let tc = cfg.validate()?;
    let samples = samples.max(1);
    let n = cfg.n;
    let mut report = CheckReport::new("max-modulus");
    let start = Instant::now();
    let data = sample_norms(cfg, samples)?;
    let summary = MaxModulusSummary {
        violations: data.iter().filter(|s| s.excess() > 0.0).count(),
        max_excess: data.iter().map(SampleNorms::excess).fold(0.0, f64::max),
        max_relative_deficit: data.iter().map(|s| s.deficit().abs() / s.boundary.max(1e-300)).fold(0.0, f64::max),
        samples: data,
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    report.push_timed(
        format!("boundary <= Fock + eps: {} of {samples} violated", summary.violations),
        summary.max_excess,
        0.0,
        elapsed,
    );
    if n == 1 {
        report.push_timed(
            format!("relative deficit |F - Bdd| / Bdd at N={}", tc.trunc),
            summary.max_relative_deficit,
            cfg.tol("max_modulus_rel"),
            0.0,
        );
        let start = Instant::now();
        let ns = ladder(tc.trunc);
        let rises: Result<Vec<f64>, RepError> = summary
            .samples
            .iter()
            .map(|s| {
                let p = sample_polynomial(s.seed, 1, cfg.degree, true)?;
                let f = n1_max_modulus(&p, cfg.q, &ns, cfg.tol("norm").min(1e-13))?;
                // deficit against the fixed boundary supremum
                let d: Vec<f64> = f.iter().map(|x| s.boundary - x).collect();
                Ok(d.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max))
            })
            .collect();
        let rise = rises?.into_iter().fold(0.0, f64::max);
        report.push_timed(format!("deficit non-increasing over N in {ns:?}"), rise, cfg.tol("monotone_slack"), start.elapsed().as_secs_f64() * 1e3);
    }
    if n == 2 {
        report.merge(coaction_check(cfg, &tc, samples.min(10))?);
    }
    Ok(report)
}

/// `||(T (x) pi_s (x) pi_s) D_n(p)|| <= ||T(p)|| + eps` on holomorphic samples.
fn coaction_check(cfg: &SuiteConfig, tc: &TruncationConfig, samples: usize) -> Result<CheckReport, RepError> {
    let mut report = CheckReport::new("coaction");
    let start = Instant::now();
    let trunc = tc.trunc.min(4);
    let excess: Result<Vec<f64>, RepError> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let p = sample_polynomial(cfg.seed.wrapping_add(i), 2, cfg.degree.min(2), true)?;
            let degree = p.degree().unwrap_or(0);
            let nc = TruncationConfig::new(cfg.q, trunc.max(degree + 1))?;
            let fock = compressed_norm(&fock_operator(&p, &nc)?, &nc, cfg.tol("norm"))?;
            let d = coaction_dn(&p)?;
            let induced = compressed_norm(&coaction_rep(&d, &[1], &[1], &nc)?, &nc, cfg.tol("norm"))?;
            Ok((induced - fock - epsilon(cfg, nc.trunc, degree)).max(0.0))
        })
        .collect();
    let excess = excess?;
    let violations = excess.iter().filter(|&&e| e > 0.0).count();
    report.push_timed(
        format!("coaction-induced <= Fock + eps: {violations} of {samples} violated"),
        excess.into_iter().fold(0.0, f64::max),
        0.0,
        start.elapsed().as_secs_f64() * 1e3,
    );
    Ok(report)
}
