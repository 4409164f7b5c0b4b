//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line reaches the terminal.
//! Exits nonzero when a criterion fails that is not a known finite-N limit.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;

use qball::algebra::relations::pol_rules;
use qball::algebra::{boundary_ideal_generators, graded_dimension, system, AlgebraKind, AlgebraTag, NCPolynomial};
use qball::hopf::{antipode, antipode_contractions, coaction_dn, coassociativity_defect, counit, counit_collapses};
use qball::rep::boundary::{angle_grid, boundary_rep, boundary_words};
use qball::rep::character::{character_chi, character_via_fock};
use qball::rep::coherent::{coherent_rep, split_a_b};
use qball::rep::dilation::finite_dilation;
use qball::rep::fock::{basis_up_to, fock_basis, fock_letter, fock_operator, multi_indices};
use qball::rep::norm::compressed_norm;
use qball::rep::paths::{enumerate_paths, fock_generator, fock_generator_exact};
use qball::rep::{ExactOperator, FactorKind, FockVector, TruncationConfig};
use qball::verify::{compression_residual, n1_max_modulus, sample_norms, sample_polynomial, SuiteConfig};
use qball::LaurentScalar;

type Res<T> = Result<T, Box<dyn std::error::Error>>;

const Q: f64 = 0.5;
const SEED: u64 = 7;
const EPS_FACTOR: f64 = 10.0;

struct Outcome {
    pass: bool,
    detail: String,
    residual: f64,
    tol: f64,
    /// Fails only through a clause that no finite truncation can meet.
    known_limit: bool,
}

impl Outcome {
    fn bound(detail: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self { pass: residual <= tol, detail: detail.into(), residual, tol, known_limit: false }
    }
}

fn eps(trunc: usize, degree: usize) -> f64 {
    EPS_FACTOR * Q.powi(trunc as i32 - degree as i32)
}

// ---------------------------------------------------------------- oracles

fn choose(m: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

/// `Pi(t_{ij})` on `l^2(Z_+)`: kind, power of `q`, sign.
fn su2_entry(i: usize, j: usize) -> (FactorKind, i32, bool) {
    match (i, j) {
        (1, 1) => (FactorKind::SstarCq, 0, false),
        (1, 2) => (FactorKind::Dq, 1, false),
        (2, 1) => (FactorKind::Dq, 0, true),
        _ => (FactorKind::CqS, 0, false),
    }
}

fn pi_s(i: usize, a: usize, b: usize) -> Option<(FactorKind, i32, bool)> {
    let inside = |x: usize| x == i || x == i + 1;
    if inside(a) && inside(b) {
        Some(su2_entry(a - i + 1, b - i + 1))
    } else if a == b {
        Some((FactorKind::Identity, 0, false))
    } else {
        None
    }
}

/// `T(z_k^j)` as the literal coproduct sum through `pi_{s_{i_1}} (x) ... (x) pi_{s_{i_{n^2}}}`.
fn literal_generator(n: usize, j: usize, k: usize) -> ExactOperator {
    let word: Vec<usize> = (1..=n).flat_map(|l| (l..l + n).rev()).collect();
    let mut out = ExactOperator::zero(n * n);
    let mut stack = vec![(n + j, Vec::new(), j as i32 - n as i32, false)];
    while let Some((a, factors, power, neg)) = stack.pop() {
        let h = factors.len();
        if h == word.len() {
            let c = LaurentScalar::q_pow(power);
            out.add_term(factors, if neg { -c } else { c });
            continue;
        }
        let targets: Vec<usize> = if h + 1 == word.len() { vec![n + k] } else { (1..=2 * n).collect() };
        for b in targets {
            if let Some((kind, p, s)) = pi_s(word[h], a, b) {
                let mut f = factors.clone();
                f.push(kind);
                stack.push((b, f, power + p, neg ^ s));
            }
        }
    }
    out
}

/// `chi_phi` straight from the generator values.
fn literal_character(phis: &[f64], p: &NCPolynomial) -> Complex64 {
    let n = phis.len();
    p.terms()
        .map(|(w, c)| {
            let v: Complex64 = w
                .letters()
                .iter()
                .map(|g| {
                    if g.row() != g.col() {
                        return Complex64::new(0.0, 0.0);
                    }
                    let z = Complex64::from_polar(Q.powi(g.row() as i32 - n as i32), phis[g.col() - 1]);
                    if g.is_starred() {
                        z.conj()
                    } else {
                        z
                    }
                })
                .product();
            v * c.eval(Q)
        })
        .sum()
}

/// `max |p(e^{i theta})|` on `points` equally spaced angles, `n = 1`.
fn circle_sup(p: &NCPolynomial, points: usize) -> f64 {
    let mut coeffs = vec![0.0; p.degree().unwrap_or(0) + 1];
    for (w, c) in p.terms() {
        coeffs[w.len()] += c.eval(Q);
    }
    (0..points)
        .map(|i| {
            let z = Complex64::from_polar(1.0, TAU * i as f64 / points as f64);
            coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c).norm()
        })
        .fold(0.0, f64::max)
}

fn max_entry(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

// ---------------------------------------------------------------- criteria

fn dimensions_and_confluence() -> Res<Outcome> {
    let mut off = 0u64;
    for n in 1..=3 {
        for d in 0..=4 {
            let want = choose((n * n + d - 1) as u64, d as u64);
            off = off.max(graded_dimension(AlgebraKind::Holomorphic, n, d)?.abs_diff(want));
        }
    }
    let mut failed = 0;
    for n in 1..=3 {
        for kind in [AlgebraKind::Holomorphic, AlgebraKind::Pol] {
            failed += usize::from(!system(kind, n)?.check_confluence(3).pass);
        }
    }
    Ok(Outcome::bound(
        format!("graded dimensions n<=3 d<=4 (max miss {off}), confluence at degree 3 ({failed} systems failing)"),
        (off + failed as u64) as f64,
        0.0,
    ))
}

fn path_oracle() -> Res<Outcome> {
    let mut symbolic = 0usize;
    let mut numeric: f64 = 0.0;
    for (n, trunc) in [(2, 6), (3, 3)] {
        let cfg = TruncationConfig::new(Q, trunc)?;
        let vectors = basis_up_to(n * n, trunc - 2);
        for j in 1..=n {
            for k in 1..=n {
                let literal = literal_generator(n, j, k);
                symbolic += usize::from(fock_generator_exact(n, j, k)? != literal);
                let got = fock_generator(n, j, k, &cfg)?;
                let want = literal.to_numeric(Q);
                for v in &vectors {
                    let d = got.apply(v, &cfg)?.axpy(Complex64::new(-1.0, 0.0), &want.apply(v, &cfg)?)?;
                    numeric = numeric.max(d.norm());
                }
            }
        }
    }
    let paths = enumerate_paths(3, 1, 1)?;
    let first: Vec<&str> = paths[0].factors().iter().map(|f| f.symbol()).collect();
    let first = first.join("⊗");
    let shape_ok = paths.len() == 6 && first == "d⊗d⊗C_qS⊗I⊗I⊗d⊗I⊗I⊗d";
    let residual = symbolic as f64 + numeric + f64::from(u8::from(!shape_ok));
    Ok(Outcome::bound(
        format!("{symbolic} symbolic mismatches, {} routes for (3,1,1), first {first}", paths.len()),
        residual,
        0.0,
    ))
}

fn relation_fidelity() -> Res<Outcome> {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (n, trunc) in [(2, 12), (3, 4)] {
        let cfg = TruncationConfig::new(Q, trunc)?;
        let vectors = basis_up_to(n * n, trunc - 3);
        for rule in pol_rules(n) {
            let op = fock_operator(&rule.relation(), &cfg)?;
            for v in &vectors {
                worst = worst.max(op.apply(v, &cfg)?.norm());
            }
            count += 1;
        }
    }
    Ok(Outcome::bound(format!("{count} relations on leak-free basis vectors"), worst, 1e-10))
}

fn vacuum_and_basis() -> Res<Outcome> {
    let mut nonzero = 0;
    for n in 1..=3 {
        let cfg = TruncationConfig::new(Q, 4)?;
        let omega = FockVector::vacuum(n * n);
        for r in 1..=n {
            for c in 1..=n {
                let g = qball::algebra::GeneratorSymbol::z_star(r, c);
                nonzero += usize::from(!fock_letter(n, g, &cfg)?.apply(&omega, &cfg)?.is_zero());
            }
        }
    }
    let cfg = TruncationConfig::new(Q, 6)?;
    let vectors: Vec<FockVector> = multi_indices(4, 3).iter().map(|m| fock_basis(2, m, &cfg)).collect::<Result<_, _>>()?;
    let mut gram: f64 = 0.0;
    for (a, u) in vectors.iter().enumerate() {
        for w in &vectors[a + 1..] {
            gram = gram.max(u.inner(w).norm() / (u.norm() * w.norm()));
        }
    }
    if nonzero > 0 {
        return Ok(Outcome { pass: false, detail: format!("{nonzero} starred generators miss the vacuum"), residual: nonzero as f64, tol: 0.0, known_limit: false });
    }
    Ok(Outcome::bound(format!("vacuum exact, Gram of {} basis vectors", vectors.len()), gram, 1e-12))
}

fn character_and_coherent() -> Res<Outcome> {
    let cfg = TruncationConfig::new(Q, 6)?;
    let mut agree: f64 = 0.0;
    let mut excess: f64 = 0.0;
    for i in 0..100u64 {
        let p = sample_polynomial(SEED + i, 2, 2, false)?;
        let phis = [0.37 * (i as f64 + 1.0), 1.91 * (i as f64 + 0.5)];
        let want = literal_character(&phis, &p);
        agree = agree.max((character_chi(&phis, &p, &cfg)? - want).norm());
        agree = agree.max((character_via_fock(&phis, &p, &cfg)? - want).norm());
        let deg = p.degree().unwrap_or(0);
        let norm = compressed_norm(&fock_operator(&p, &cfg)?, &cfg, 1e-6)?;
        excess = excess.max(want.norm() - norm - eps(cfg.trunc, deg));
    }
    let mut coherent: f64 = 0.0;
    let mut split = 0usize;
    for n in 1..=3 {
        let omega = FockVector::vacuum(n * n - 1);
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        for psi in [0.0, 1.3, 4.0] {
            let got = coherent_rep(psi, &NCPolynomial::z(n, 1, 1), &cfg)?.apply(&omega, &cfg)?;
            coherent = coherent.max(got.axpy(-Complex64::from_polar(sign, psi), &omega)?.norm());
        }
        let s = split_a_b(n)?;
        for r in 1..=n {
            for c in 1..=n {
                split += usize::from(s.reconstruct(r, c) != fock_generator_exact(n, r, c)?);
            }
        }
    }
    let exact = coherent == 0.0 && split == 0 && excess <= 0.0;
    Ok(Outcome {
        pass: exact && agree <= 1e-12,
        detail: format!(
            "100 samples: agreement {agree:.1e}, max |chi| - ||T|| - eps = {excess:.3}, coherent {coherent:.1e}, split mismatches {split}"
        ),
        residual: agree,
        tol: 1e-12,
        known_limit: false,
    })
}

fn boundary_ideal() -> Res<Outcome> {
    let cfg = TruncationConfig::new(Q, 8)?;
    let grid = angle_grid(2, 8);
    let words = boundary_words(2);
    let gens = boundary_ideal_generators(2);
    let mut worst: f64 = 0.0;
    for w in &words {
        for phis in &grid {
            for g in &gens {
                worst = worst.max(compressed_norm(&boundary_rep(phis, w, g, &cfg)?, &cfg, 1e-12)?);
            }
        }
    }
    Ok(Outcome::bound(
        format!("{} generators x {} angles x {} words", gens.len(), grid.len(), words.len()),
        worst,
        1e-10,
    ))
}

fn max_modulus() -> Res<Outcome> {
    let ladder = [32, 64, 128, 256];
    let mut rel: f64 = 0.0;
    let mut rise: f64 = 0.0;
    let mut violations = 0;
    let mut max_excess: f64 = 0.0;
    for i in 0..50u64 {
        let p = sample_polynomial(SEED + i, 1, 5, true)?;
        let sup = circle_sup(&p, 4096);
        let f = n1_max_modulus(&p, Q, &ladder, 1e-13)?;
        if i < 20 {
            rel = rel.max((f[3] - sup).abs() / sup);
            let d: Vec<f64> = f.iter().map(|x| sup - x).collect();
            rise = rise.max(d.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max));
        }
        let e = sup - f[3] - eps(256, p.degree().unwrap_or(0));
        violations += usize::from(e > 0.0);
        max_excess = max_excess.max(e);
    }
    let cfg = SuiteConfig { n: 2, trunc: 8, degree: 2, seed: SEED, samples: 50, ..SuiteConfig::default() };
    for s in sample_norms(&cfg, 50)? {
        violations += usize::from(s.excess() > 0.0);
        max_excess = max_excess.max(s.excess());
    }
    Ok(Outcome {
        pass: rel <= 0.02 && rise <= 1e-9 && violations == 0,
        detail: format!(
            "n=1 N=256 relative deficit {rel:.2e} (tol 2e-2), monotone rise {rise:.1e} (tol 1e-9); \
             one-sided: {violations} of 100 violated, max excess {max_excess:.3e}"
        ),
        residual: max_excess.max(0.0),
        tol: 0.0,
        // P_N p(T) P_N sits strictly below sup |p| on the circle at every finite N
        known_limit: rel <= 0.02 && rise <= 1e-9,
    })
}

fn dilation() -> Res<Outcome> {
    let cfg = TruncationConfig::new(Q, 8)?;
    let t = FactorKind::CqS.to_dense(&cfg);
    let (dil, _) = finite_dilation(&t, 4)?;
    let u = &dil.unitary;
    let b = t.nrows();
    let mut unitarity = max_entry(&(u.adjoint() * u - DMatrix::identity(u.nrows(), u.ncols())));
    let mut uk = DMatrix::<Complex64>::identity(u.nrows(), u.ncols());
    let mut tk = DMatrix::<Complex64>::identity(b, b);
    let mut worst: f64 = 0.0;
    for _ in 1..=4 {
        uk = u * uk;
        tk = &t * tk;
        worst = worst.max(max_entry(&(uk.view((0, 0), (b, b)).into_owned() - &tk)));
    }
    let tensor = compression_residual(2, Q, 3, 4)?;
    unitarity = unitarity.max(tensor);
    Ok(Outcome::bound(
        format!("steps=4: powers {worst:.1e}, unitarity and tensored coherent powers {unitarity:.1e}"),
        worst.max(unitarity),
        1e-12,
    ))
}

fn hopf_axioms() -> Res<Outcome> {
    let n = 2;
    let t = |i, j| NCPolynomial::t(n, i, j);
    let mut samples: Vec<NCPolynomial> = (1..=2).flat_map(|i| (1..=2).map(move |j| (i, j))).map(|(i, j)| t(i, j)).collect();
    samples.push(t(1, 2) * t(2, 1));
    samples.push(t(1, 1) * t(2, 2) + t(1, 2));
    let mut failures = Vec::new();
    for p in &samples {
        let p = qball::algebra::normal_form(p)?;
        if !coassociativity_defect(&p)?.is_zero() {
            failures.push(format!("coassociativity {p}"));
        }
        let (l, r) = counit_collapses(&p)?;
        if l != p || r != p {
            failures.push(format!("counit {p}"));
        }
        let unit = NCPolynomial::scalar(AlgebraTag::SLnQ, n, counit(&p)?);
        let (l, r) = antipode_contractions(&p)?;
        if l != unit || r != unit {
            failures.push(format!("antipode {p}"));
        }
    }
    for i in 1..=2 {
        for j in 1..=2 {
            let s2 = antipode(&antipode(&t(i, j))?)?;
            if s2 != t(i, j).scale(&LaurentScalar::q_pow(2 * (i as i32 - j as i32))) {
                failures.push(format!("S^2 on t[{i},{j}]"));
            }
        }
    }
    let rules = pol_rules(n);
    for rule in &rules {
        if !coaction_dn(&rule.relation())?.normalized()?.is_zero() {
            failures.push(format!("D_n on {}", rule.lhs));
        }
    }
    Ok(Outcome {
        pass: failures.is_empty(),
        detail: format!("{} samples, S^2 on 4 generators, D_n on {} relations; failing: {failures:?}", samples.len(), rules.len()),
        residual: failures.len() as f64,
        tol: 0.0,
        known_limit: false,
    })
}

fn main() -> ExitCode {
    type Criterion = fn() -> Res<Outcome>;
    let criteria: [(&str, Criterion); 9] = [
        ("diamond-lemma basis", dimensions_and_confluence),
        ("path-calculus oracle", path_oracle),
        ("relation fidelity", relation_fidelity),
        ("vacuum and basis", vacuum_and_basis),
        ("character and coherent", character_and_coherent),
        ("boundary ideal", boundary_ideal),
        ("maximum modulus", max_modulus),
        ("dilation compression", dilation),
        ("hopf layer", hopf_axioms),
    ];
    let mut unexpected = 0;
    let total = Instant::now();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match result {
            Ok(o) => {
                let tag = if o.pass { "PASS" } else { "FAIL" };
                println!(
                    "{tag} criterion {}: {name}: {} [residual {:.3e}, tol {:.0e}, {ms:.0} ms]",
                    i + 1,
                    o.detail,
                    o.residual,
                    o.tol
                );
                if !o.pass && !o.known_limit {
                    unexpected += 1;
                }
            }
            Err(e) => {
                println!("FAIL criterion {}: {name}: error: {e} [{ms:.0} ms]", i + 1);
                unexpected += 1;
            }
        }
    }
    println!("acceptance finished in {:.1} s", total.elapsed().as_secs_f64());
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
