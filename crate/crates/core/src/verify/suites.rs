use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{epsilon, sample_polynomial, SuiteConfig};
use crate::algebra::relations::pol_rules;
use crate::algebra::rewrite::{binomial, commutative_dimension};
use crate::algebra::{boundary_ideal_generators, system, AlgebraKind, GeneratorSymbol, NCPolynomial};
use crate::error::RepError;
use crate::report::CheckReport;
use crate::rep::boundary::{angle_grid, boundary_rep, boundary_words, isometry_defect};
use crate::rep::character::{character_chi, character_via_fock};
use crate::rep::coherent::{coherent_rep, operator_difference, split_a_b};
use crate::rep::dilation::finite_dilation;
use crate::rep::fock::{basis_up_to, fock_basis, fock_letter, fock_operator, gram_off_diagonal, multi_indices};
use crate::rep::norm::compressed_norm;
use crate::rep::oracle::brute_force_generator;
use crate::rep::paths::{enumerate_paths, fock_generator, fock_generator_exact};
use crate::rep::{series_identities_check, FactorKind, FockVector, PolyOperator, SparseTensorOperator, TruncationConfig};
use crate::rep::vector::DenseSpace;

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Basis vectors on which an operator of degree `degree` cannot reach the cutoff.
pub(crate) fn leak_free_basis(slots: usize, degree: usize, cfg: &TruncationConfig) -> Result<Vec<FockVector>, RepError> {
    if degree >= cfg.trunc {
        return Err(RepError::LeakRisk { degree, height: 0, safe: cfg.safe_degree });
    }
    Ok(basis_up_to(slots, cfg.trunc - 1 - degree))
}

/// `max_v ||A v||` over unit basis vectors `v`.
pub(crate) fn max_image_norm(op: &PolyOperator, vectors: &[FockVector], cfg: &TruncationConfig) -> Result<f64, RepError> {
    let norms: Result<Vec<f64>, RepError> = vectors.par_iter().map(|v| Ok(op.apply(v, cfg)?.norm())).collect();
    Ok(norms?.into_iter().fold(0.0, f64::max))
}

pub(crate) fn generators(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|r| (1..=n).map(move |c| (r, c))).collect()
}

pub fn relations(cfg: &SuiteConfig, tc: &TruncationConfig) -> Result<CheckReport, RepError> {
    let n = cfg.n;
    let tol = cfg.tol("relations");
    let vectors = leak_free_basis(n * n, 2, tc)?;
    let rules = pol_rules(n);
    let results: Result<Vec<(String, f64, f64)>, RepError> = rules
        .par_iter()
        .map(|rule| {
            let start = Instant::now();
            let op = fock_operator(&rule.relation(), tc)?;
            let r = max_image_norm(&op, &vectors, tc)?;
            Ok((format!("{} {} on {} vectors", rule.family.label(), rule.lhs, vectors.len()), r, ms(start)))
        })
        .collect();
    let mut report = CheckReport::new("relations");
    for (name, r, t) in results? {
        report.push_timed(name, r, tol, t);
    }
    Ok(report)
}

pub fn confluence(cfg: &SuiteConfig) -> Result<CheckReport, RepError> {
    let mut report = CheckReport::new("confluence");
    let degree = cfg.degree.max(3);
    for kind in [AlgebraKind::Holomorphic, AlgebraKind::Pol] {
        let rs = system(kind, cfg.n)?;
        let mut part = rs.check_confluence(degree);
        for c in &mut part.checks {
            c.name = format!("{kind:?} {}", c.name);
        }
        report.merge(part);
    }
    Ok(report)
}

pub fn dimensions(cfg: &SuiteConfig) -> Result<CheckReport, RepError> {
    let mut report = CheckReport::new("dimensions");
    let n = cfg.n;
    let hol = system(AlgebraKind::Holomorphic, n)?;
    let pol = system(AlgebraKind::Pol, n)?;
    for d in 0..=cfg.degree.max(1) {
        let start = Instant::now();
        let got = hol.count_normal_words(d);
        let want = commutative_dimension(n, d);
        report.push_timed(format!("holomorphic degree {d}: {got} vs {want}"), got.abs_diff(want) as f64, 0.0, ms(start));
        let start = Instant::now();
        let got = pol.count_normal_words(d);
        let want: u64 = (0..=d).map(|a| commutative_dimension(n, a) * commutative_dimension(n, d - a)).sum();
        report.push_timed(format!("Pol degree {d}: {got} vs {want}"), got.abs_diff(want) as f64, 0.0, ms(start));
    }
    Ok(report)
}

pub fn fock_oracle(cfg: &SuiteConfig, tc: &TruncationConfig) -> Result<CheckReport, RepError> {
    let n = cfg.n;
    let tol = cfg.tol("exact");
    let results: Result<Vec<CheckReport>, RepError> = generators(n)
        .par_iter()
        .map(|&(row, col)| {
            let mut part = CheckReport::new("fock-oracle");
            let start = Instant::now();
            let paths = fock_generator_exact(n, row, col)?;
            let brute = brute_force_generator(n, row, col)?;
            let mismatched = paths
                .terms
                .iter()
                .filter(|(f, c)| brute.terms.get(*f) != Some(*c))
                .count()
                + brute.terms.keys().filter(|f| !paths.terms.contains_key(*f)).count();
            part.push_timed(format!("z[{row},{col}] symbolic terms differing"), mismatched as f64, tol, ms(start));
            let start = Instant::now();
            let numeric = operator_difference(&fock_generator(n, row, col, tc)?, &brute.to_numeric(tc.q));
            part.push_timed(format!("z[{row},{col}] numeric entries"), numeric, tol, ms(start));
            let start = Instant::now();
            let count = enumerate_paths(n, row, col)?.len() as u64;
            let want = binomial((2 * n - row - col) as u64, (n - row) as u64);
            part.push_timed(format!("z[{row},{col}] route count {count} vs {want}"), count.abs_diff(want) as f64, tol, ms(start));
            Ok(part)
        })
        .collect();
    let mut report = CheckReport::new("fock-oracle");
    results?.into_iter().for_each(|p| report.merge(p));
    Ok(report)
}

pub fn vacuum(cfg: &SuiteConfig, tc: &TruncationConfig) -> Result<CheckReport, RepError> {
    let n = cfg.n;
    let mut report = CheckReport::new("vacuum");
    let omega = FockVector::vacuum(n * n);
    for (row, col) in generators(n) {
        let start = Instant::now();
        let op = fock_letter(n, GeneratorSymbol::z_star(row, col), tc)?;
        let r = op.apply(&omega, tc)?.norm();
        report.push_timed(format!("z*[{row},{col}] on the vacuum"), r, cfg.tol("exact"), ms(start));
    }
    Ok(report)
}

pub fn basis(cfg: &SuiteConfig, tc: &TruncationConfig) -> Result<CheckReport, RepError> {
    let n = cfg.n;
    let mut report = CheckReport::new("basis");
    let top = 3.min(tc.trunc - 1);
    let start = Instant::now();
    let vectors: Vec<FockVector> = multi_indices(n * n, top).iter().map(|m| fock_basis(n, m, tc)).collect::<Result<_, _>>()?;
    let zero = vectors.iter().filter(|v| v.norm() == 0.0).count();
    report.push_timed(format!("{} basis vectors with |m| <= {top} nonzero", vectors.len()), zero as f64, 0.0, ms(start));
    let start = Instant::now();
    let off = gram_off_diagonal(&vectors);
    report.push_timed("relative off-diagonal Gram entries", off, cfg.tol("basis"), ms(start));
    Ok(report)
}

fn random_angles(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect()
}

/// Grid base used for norms of `T(p)` on `n^2` slots; capped so the dense
/// evaluation stays near a million coordinates.
pub(crate) fn norm_truncation(n: usize, degree: usize, tc: &TruncationConfig) -> Result<TruncationConfig, RepError> {
    let slots = (n * n) as f64;
    let cap = (1.0e6f64.powf(1.0 / slots)).floor() as usize;
    let trunc = tc.trunc.min(cap.saturating_sub(degree)).max(2);
    TruncationConfig::new(tc.q, trunc)
}

/// Samples whose Fock norm enters the domination check; the 9-slot grid is costly.
fn domination_samples(n: usize, samples: usize) -> usize {
    if n >= 3 {
        samples.min(5)
    } else {
        samples
    }
}

pub fn character(cfg: &SuiteConfig, tc: &TruncationConfig) -> Result<CheckReport, RepError> {
    let n = cfg.n;
    let tol = cfg.tol("character");
    let seeds: Vec<u64> = (0..cfg.samples as u64).map(|i| cfg.seed.wrapping_add(i)).collect();
    let mut report = CheckReport::new("character");
    let start = Instant::now();
    let agree: Result<Vec<f64>, RepError> = seeds
        .par_iter()
        .map(|&seed| {
            let p = sample_polynomial(seed, n, cfg.degree, false)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17));
            let phis = random_angles(&mut rng, n);
            let direct = character_chi(&phis, &p, tc)?;
            let fock = character_via_fock(&phis, &p, tc)?;
            Ok((direct - fock).norm() / (1.0 + direct.norm()))
        })
        .collect();
    let agree = agree?.into_iter().fold(0.0, f64::max);
    report.push_timed(format!("direct vs Delta_tau o T on {} samples", seeds.len()), agree, tol, ms(start));

    let start = Instant::now();
    let m = domination_samples(n, seeds.len());
    let rows: Result<Vec<(f64, f64, usize)>, RepError> = seeds[..m]
        .par_iter()
        .map(|&seed| {
            let p = sample_polynomial(seed, n, cfg.degree, false)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17));
            let phis = random_angles(&mut rng, n);
            let chi = character_chi(&phis, &p, tc)?.norm();
            let deg = p.degree().unwrap_or(0);
            let nc = norm_truncation(n, deg, tc)?;
            let norm = compressed_norm(&fock_operator(&p, &nc)?, &nc, cfg.tol("norm"))?;
            Ok((chi - norm, (chi - norm - epsilon(cfg, nc.trunc, deg)).max(0.0), nc.trunc))
        })
        .collect();
    let rows = rows?;
    let margin = rows.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let excess = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let used = rows.iter().map(|r| r.2).min().unwrap_or(tc.trunc);
    report.push_timed(
        format!("|chi(p)| <= ||T(p)|| + eps on {m} samples, N >= {used}, max |chi| - ||T|| = {margin:.3e}"),
        excess,
        0.0,
        ms(start),
    );
    Ok(report)
}

pub fn coherent(cfg: &SuiteConfig, tc: &TruncationConfig) -> Result<CheckReport, RepError> {
    let n = cfg.n;
    let tol = cfg.tol("coherent");
    let mut report = CheckReport::new("coherent");
    let slots = n * n - 1;
    let omega = FockVector::vacuum(slots);
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    for psi in [0.0, 1.3, 4.0] {
        let start = Instant::now();
        let z11 = coherent_rep(psi, &NCPolynomial::z(n, 1, 1), tc)?;
        let got = z11.apply(&omega, tc)?;
        let r = got.axpy(-Complex64::from_polar(1.0, psi) * sign, &omega)?.norm();
        report.push_timed(format!("T_psi(z[1,1]) vacuum at psi={psi}"), r, tol, ms(start));
        let start = Instant::now();
        let mut worst: f64 = 0.0;
        for (row, col) in generators(n).into_iter().filter(|&g| g != (1, 1)) {
            let op = coherent_rep(psi, &NCPolynomial::z_star(n, row, col), tc)?;
            worst = worst.max(op.apply(&omega, tc)?.norm());
        }
        report.push_timed(format!("other starred generators kill the vacuum at psi={psi}"), worst, tol, ms(start));
    }
    let start = Instant::now();
    let split = split_a_b(n)?;
    let mismatched = generators(n)
        .into_iter()
        .map(|(r, c)| Ok((split.reconstruct(r, c) != fock_generator_exact(n, r, c)?) as usize))
        .sum::<Result<usize, RepError>>()?;
    report.push_timed("B/A split reconstructs every generator", mismatched as f64, cfg.tol("exact"), ms(start));
    let start = Instant::now();
    let direct = fock_letter(n, GeneratorSymbol::z(1, 1), tc)?.evaluate_slot(n, 0.7)?;
    let r = operator_difference(&direct, &split.coherent_z11(0.7, tc));
    report.push_timed("T_psi(z[1,1]) = e^{i psi} B + A_11", r, cfg.tol("exact"), ms(start));
    Ok(report)
}

pub fn boundary_ideal(cfg: &SuiteConfig, tc: &TruncationConfig) -> Result<CheckReport, RepError> {
    let n = cfg.n;
    let tol = cfg.tol("boundary");
    let gens = boundary_ideal_generators(n);
    let grid = angle_grid(n, 8);
    let mut report = CheckReport::new("boundary-ideal");
    for word in boundary_words(n) {
        let vectors = leak_free_basis(word.len(), 2, tc)?;
        let start = Instant::now();
        let worst: Result<Vec<f64>, RepError> = grid
            .par_iter()
            .map(|phis| {
                let mut w: f64 = 0.0;
                for g in &gens {
                    w = w.max(max_image_norm(&boundary_rep(phis, &word, g, tc)?, &vectors, tc)?);
                }
                Ok(w)
            })
            .collect();
        let worst = worst?.into_iter().fold(0.0, f64::max);
        report.push_timed(format!("J_n generators, word {word:?}, {} angles", grid.len()), worst, tol, ms(start));
        let start = Instant::now();
        let mut iso: f64 = 0.0;
        for phis in grid.iter().step_by(7) {
            for l in 1..=n {
                for m in 1..=n {
                    iso = iso.max(max_image_norm(&isometry_defect(phis, &word, l, m, tc)?, &vectors, tc)?);
                }
            }
        }
        report.push_timed(format!("isometry of the rescaled t-matrix, word {word:?}"), iso, tol, ms(start));
    }
    Ok(report)
}

fn dense_of(op: &SparseTensorOperator, base: usize, q: f64) -> Result<DMatrix<Complex64>, RepError> {
    let space = DenseSpace::new(op.slots, base, q)?;
    let dim = space.dim();
    let mut m = DMatrix::zeros(dim, dim);
    let mut e = vec![Complex64::new(0.0, 0.0); dim];
    for j in 0..dim {
        e[j] = Complex64::new(1.0, 0.0);
        let col = op.apply_dense(&e, &space);
        e[j] = Complex64::new(0.0, 0.0);
        for (i, x) in col.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    Ok(m)
}

/// `max_k || P (B (x) U + A (x) I)^k P - (B (x) T + A (x) I)^k ||` for the
/// dilation `U` of `T = C_qS`.
pub fn compression_residual(n: usize, q: f64, base: usize, steps: usize) -> Result<f64, RepError> {
    let cfg = TruncationConfig::new(q, base)?;
    let split = split_a_b(n)?;
    let b = dense_of(&split.b.to_numeric(q), base, q)?;
    let a = dense_of(&split.a[&(1, 1)].to_numeric(q), base, q)?;
    let t = FactorKind::CqS.to_dense(&cfg);
    let (dil, _) = finite_dilation(&t, steps)?;
    let u = &dil.unitary;
    let big = b.kronecker(u) + a.kronecker(&DMatrix::identity(u.nrows(), u.ncols()));
    let small = b.kronecker(&t) + a.kronecker(&DMatrix::identity(t.nrows(), t.ncols()));
    let (db, dt, du) = (b.nrows(), t.nrows(), u.nrows());
    // P embeds H_B (x) (first block)
    let mut p = DMatrix::<Complex64>::zeros(db * du, db * dt);
    for i in 0..db {
        for j in 0..dt {
            p[(i * du + j, i * dt + j)] = Complex64::new(1.0, 0.0);
        }
    }
    let mut pow_big = DMatrix::identity(db * du, db * du);
    let mut pow_small = DMatrix::identity(db * dt, db * dt);
    let mut worst: f64 = 0.0;
    for _ in 1..=steps {
        pow_big = &big * pow_big;
        pow_small = &small * pow_small;
        let diff = p.adjoint() * &pow_big * &p - &pow_small;
        worst = worst.max(diff.iter().map(|x| x.norm()).fold(0.0, f64::max));
    }
    Ok(worst)
}

pub fn dilation(cfg: &SuiteConfig, tc: &TruncationConfig) -> Result<CheckReport, RepError> {
    let mut report = CheckReport::new("dilation");
    let t = FactorKind::CqS.to_dense(tc);
    let (_, mut part) = finite_dilation(&t, 4)?;
    for c in &mut part.checks {
        c.tol = cfg.tol("dilation");
        c.pass = c.residual <= c.tol;
    }
    part.pass = part.checks.iter().all(|c| c.pass);
    report.merge(part);
    let start = Instant::now();
    let n = cfg.n.min(2);
    let r = compression_residual(n, tc.q, 3, 4)?;
    report.push_timed(format!("(B (x) U + A_11 (x) I)^k compresses to C_qS powers, n={n}"), r, cfg.tol("compression"), ms(start));
    report.merge(series_identities_check(tc, 60));
    Ok(report)
}
