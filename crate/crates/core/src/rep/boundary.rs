//! Boundary representations `z_l^k -> e^{i phi_k} q^{k-n} pi_w(t_{k,l})` and the
//! coaction-induced representations.

use num_complex::Complex64;

use super::config::TruncationConfig;
use super::factor::FactorKind;
use super::fock::fock_letter;
use super::operator::{ExactOperator, SparseTensorOperator};
use super::polyop::PolyOperator;
use super::su2::{coxeter_word, is_reduced, longest_word, pi_sigma_factor};
use crate::algebra::{AlgebraTag, GeneratorSymbol, NCPolynomial, SymbolKind};
use crate::error::RepError;
use crate::hopf::TensorPolynomial;
use crate::laurent::LaurentScalar;

/// `pi_{s_{w_1}} (x) ... (x) pi_{s_{w_r}}` applied to `t_{a,b}` of `C[SU_m]_q`,
/// expanded through the coproduct.
pub fn pi_word(m: usize, word: &[usize], a: usize, b: usize) -> Result<ExactOperator, RepError> {
    if a == 0 || b == 0 || a > m || b > m {
        return Err(RepError::IndexOutOfRange(format!("t[{a},{b}] in C[SU_{m}]_q")));
    }
    let mut out = ExactOperator::zero(word.len());
    if word.is_empty() {
        if a == b {
            out.add_term(Vec::new(), LaurentScalar::one());
        }
        return Ok(out);
    }
    let mut factors = Vec::with_capacity(word.len());
    expand(m, word, a, b, &LaurentScalar::one(), &mut factors, &mut out)?;
    Ok(out)
}

fn expand(
    m: usize,
    word: &[usize],
    a: usize,
    last: usize,
    coeff: &LaurentScalar,
    factors: &mut Vec<FactorKind>,
    out: &mut ExactOperator,
) -> Result<(), RepError> {
    let h = factors.len();
    if h == word.len() {
        out.add_term(factors.clone(), coeff.clone());
        return Ok(());
    }
    let choices: Vec<usize> = if h + 1 == word.len() { vec![last] } else { (1..=m).collect() };
    for b in choices {
        let Some(f) = pi_sigma_factor(m, word[h], a, b)? else { continue };
        let mut c = coeff.shift(f.q_power);
        if f.negative {
            c = -c;
        }
        factors.push(f.kind);
        expand(m, word, b, last, &c, factors, out)?;
        factors.pop();
    }
    Ok(())
}

fn check_word(n: usize, word: &[usize]) -> Result<(), RepError> {
    if !is_reduced(n, word) {
        return Err(RepError::NotReduced(word.to_vec()));
    }
    Ok(())
}

/// Image of one generator of `Pol(Mat_n)_q`.
pub fn boundary_letter(phis: &[f64], word: &[usize], g: GeneratorSymbol, cfg: &TruncationConfig) -> Result<SparseTensorOperator, RepError> {
    let n = phis.len();
    let (k, l) = (g.row(), g.col());
    let c = Complex64::from_polar(cfg.q.powi(k as i32 - n as i32), phis[k - 1]);
    let op = pi_word(n, word, k, l)?.to_numeric(cfg.q).scale(c);
    Ok(match g.kind {
        SymbolKind::Plain => op,
        SymbolKind::Starred => op.adjoint(),
    })
}

pub fn boundary_rep(phis: &[f64], word: &[usize], p: &NCPolynomial, cfg: &TruncationConfig) -> Result<PolyOperator, RepError> {
    let n = p.n();
    if phis.len() != n {
        return Err(RepError::Shape(format!("{} angles for n={n}", phis.len())));
    }
    check_word(n, word)?;
    PolyOperator::from_polynomial(p, cfg.q, word.len(), |g| boundary_letter(phis, word, g, cfg))
}

/// Words sampled for boundary suprema: the identity, `s_{n-1} ... s_1` and the longest element.
pub fn boundary_words(n: usize) -> Vec<Vec<usize>> {
    vec![Vec::new(), coxeter_word(n), longest_word(n)]
}

/// Uniform grid of `points^n` angle vectors.
pub fn angle_grid(n: usize, points: usize) -> Vec<Vec<f64>> {
    let step = std::f64::consts::TAU / points as f64;
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..points).map(move |i| {
                    let mut w = v.clone();
                    w.push(i as f64 * step);
                    w
                })
            })
            .collect();
    }
    out
}

/// `M^* M - I` for `M_{kl} = e^{i phi_k} pi_w(t_{k,l})`, entry `(l, m)`.
pub fn isometry_defect(phis: &[f64], word: &[usize], l: usize, m: usize, cfg: &TruncationConfig) -> Result<PolyOperator, RepError> {
    let n = phis.len();
    check_word(n, word)?;
    let mut letters = Vec::new();
    let mut terms = Vec::new();
    for k in 1..=n {
        let u = Complex64::from_polar(1.0, phis[k - 1]);
        let a = pi_word(n, word, k, l)?.to_numeric(cfg.q).scale(u);
        let b = pi_word(n, word, k, m)?.to_numeric(cfg.q).scale(u);
        letters.push(a.adjoint());
        letters.push(b);
        terms.push((Complex64::new(1.0, 0.0), vec![letters.len() - 2, letters.len() - 1]));
    }
    if l == m {
        letters.push(SparseTensorOperator::identity(word.len()));
        terms.push((Complex64::new(-1.0, 0.0), vec![letters.len() - 1]));
    }
    Ok(PolyOperator { slots: word.len(), letters, terms })
}

/// `(T (x) pi_{w1} (x) pi_{w2})(D_n p)` on `n^2 + |w1| + |w2|` slots.
pub fn coaction_rep(
    d: &TensorPolynomial,
    w1: &[usize],
    w2: &[usize],
    cfg: &TruncationConfig,
) -> Result<PolyOperator, RepError> {
    let legs = d.legs();
    if legs.len() != 3 || legs[0].0 != AlgebraTag::MatQ {
        return Err(RepError::Shape("expected a coaction image".into()));
    }
    let n = legs[0].1;
    check_word(n, w1)?;
    check_word(n, w2)?;
    let (s0, s1, s2) = (n * n, w1.len(), w2.len());
    let slots = s0 + s1 + s2;
    let pad = |op: SparseTensorOperator, before: usize| {
        let mut out = SparseTensorOperator::zero(slots);
        for t in op.terms {
            let mut f = vec![FactorKind::Identity; before];
            f.extend(t.factors);
            f.resize(slots, FactorKind::Identity);
            out.push(t.scalar, f);
        }
        out
    };
    let mut letters = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut terms = Vec::new();
    for (words, c) in d.terms() {
        let mut ids = Vec::new();
        for (leg, w) in words.iter().enumerate() {
            for g in w.letters() {
                let key = (leg, *g);
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        let op = match leg {
                            0 => pad(fock_letter(n, *g, cfg)?, 0),
                            _ => {
                                let (word, before) = if leg == 1 { (w1, s0) } else { (w2, s0 + s1) };
                                let base = pi_word(n, word, g.row(), g.col())?.to_numeric(cfg.q);
                                let base = if g.kind == SymbolKind::Starred { base.adjoint() } else { base };
                                pad(base, before)
                            }
                        };
                        letters.push(op);
                        index.insert(key, letters.len() - 1);
                        letters.len() - 1
                    }
                };
                ids.push(id);
            }
        }
        terms.push((Complex64::new(c.eval(cfg.q), 0.0), ids));
    }
    Ok(PolyOperator { slots, letters, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::fock::basis_up_to;

    #[test]
    fn n1_is_scalar() {
        let cfg = TruncationConfig::new(0.5, 4).unwrap();
        let op = boundary_rep(&[0.9], &[], &NCPolynomial::z(1, 1, 1), &cfg).unwrap();
        assert_eq!(op.slots, 0);
        let v = op.apply(&crate::rep::FockVector::vacuum(0), &cfg).unwrap();
        assert!((v.get(&[]) - Complex64::from_polar(1.0, 0.9)).norm() < 1e-15);
    }

    #[test]
    fn rejects_non_reduced() {
        let cfg = TruncationConfig::new(0.5, 4).unwrap();
        let r = boundary_rep(&[0.0, 0.0], &[1, 1], &NCPolynomial::z(2, 1, 1), &cfg);
        assert!(matches!(r, Err(RepError::NotReduced(_))));
    }

    #[test]
    fn su2_word_is_pi() {
        let t = pi_word(2, &[1], 2, 2).unwrap();
        assert_eq!(t.to_string(), "C_qS");
        assert_eq!(pi_word(3, &[], 1, 2).unwrap().num_terms(), 0);
    }

    #[test]
    fn t_matrix_is_isometric() {
        let cfg = TruncationConfig::new(0.5, 6).unwrap();
        for word in [vec![1], vec![2, 1], vec![1, 2, 1]] {
            let n = if word.len() == 1 { 2 } else { 3 };
            let phis: Vec<f64> = (0..n).map(|i| 0.3 * i as f64).collect();
            for l in 1..=n {
                for m in 1..=n {
                    let d = isometry_defect(&phis, &word, l, m, &cfg).unwrap();
                    for v in basis_up_to(word.len(), 4) {
                        assert!(d.apply(&v, &cfg).unwrap().norm() < 1e-14, "{word:?} {l} {m}");
                    }
                }
            }
        }
    }
}
