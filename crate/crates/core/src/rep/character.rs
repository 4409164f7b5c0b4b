//! One-dimensional representations `chi_phi : z_k^l -> e^{i phi_k} q^{l-n} delta_{kl}`.

use num_complex::Complex64;

use super::config::TruncationConfig;
use super::fock::fock_letter;
use super::operator::{slot_value, SparseTensorOperator};
use super::paths::slot_of;
use crate::algebra::{GeneratorSymbol, NCPolynomial, SymbolKind};
use crate::error::RepError;

fn check_angles(phis: &[f64], p: &NCPolynomial) -> Result<(), RepError> {
    if phis.len() != p.n() {
        return Err(RepError::Shape(format!("{} angles for n={}", phis.len(), p.n())));
    }
    Ok(())
}

fn letter_value(phis: &[f64], q: f64, g: &GeneratorSymbol) -> Complex64 {
    let n = phis.len();
    if g.row() != g.col() {
        return Complex64::new(0.0, 0.0);
    }
    let v = Complex64::from_polar(q.powi(g.row() as i32 - n as i32), phis[g.col() - 1]);
    match g.kind {
        SymbolKind::Plain => v,
        SymbolKind::Starred => v.conj(),
    }
}

/// `chi_phi(p)` from the generator values.
pub fn character_chi(phis: &[f64], p: &NCPolynomial, cfg: &TruncationConfig) -> Result<Complex64, RepError> {
    check_angles(phis, p)?;
    let mut out = Complex64::new(0.0, 0.0);
    for (w, c) in p.terms() {
        let prod: Complex64 = w.letters().iter().map(|g| letter_value(phis, cfg.q, g)).product();
        out += prod * c.eval(cfg.q);
    }
    Ok(out)
}

/// Angles `tau_h` (indexed by slot - 1) with `Delta_tau o T = chi_phi`.
///
/// The hook-only route of `z_k^k` puts right hooks on the antidiagonal
/// `row + col = n + k` and up hooks on `n + k + 1`; only the bottom box of each
/// antidiagonal gets a nonzero angle.
pub fn solve_tau(phis: &[f64]) -> Vec<f64> {
    let n = phis.len();
    let mut tau = vec![0.0; n * n];
    let mut above = 0.0;
    for k in (1..=n).rev() {
        let t = phis[k - 1] + above;
        tau[slot_of(n, n, k) - 1] = t;
        above = t;
    }
    tau
}

/// `Delta_tau` on an elementary-tensor sum: every slot evaluated at its angle.
pub fn delta_tau(op: &SparseTensorOperator, tau: &[f64]) -> Result<Complex64, RepError> {
    if tau.len() != op.slots {
        return Err(RepError::Shape(format!("{} angles for {} slots", tau.len(), op.slots)));
    }
    let mut out = Complex64::new(0.0, 0.0);
    'terms: for t in &op.terms {
        let mut c = t.scalar;
        for (f, &a) in t.factors.iter().zip(tau) {
            match slot_value(*f, a) {
                Some(v) => c *= v,
                None => continue 'terms,
            }
        }
        out += c;
    }
    Ok(out)
}

/// `chi_phi(p)` computed as `Delta_tau(T(p))`, letter by letter.
pub fn character_via_fock(phis: &[f64], p: &NCPolynomial, cfg: &TruncationConfig) -> Result<Complex64, RepError> {
    check_angles(phis, p)?;
    let n = p.n();
    let tau = solve_tau(phis);
    let mut cache = std::collections::HashMap::new();
    let mut out = Complex64::new(0.0, 0.0);
    for (w, c) in p.terms() {
        let mut prod = Complex64::new(c.eval(cfg.q), 0.0);
        for g in w.letters() {
            let v = match cache.get(g) {
                Some(v) => *v,
                None => {
                    let v = delta_tau(&fock_letter(n, *g, cfg)?, &tau)?;
                    cache.insert(*g, v);
                    v
                }
            };
            prod *= v;
        }
        out += prod;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_values() {
        let cfg = TruncationConfig::new(0.5, 4).unwrap();
        let phis = [0.3, 1.1];
        assert_eq!(character_chi(&phis, &NCPolynomial::z(2, 2, 1), &cfg).unwrap(), Complex64::new(0.0, 0.0));
        let v = character_chi(&phis, &NCPolynomial::z(2, 2, 2), &cfg).unwrap();
        assert!((v - Complex64::from_polar(1.0, 1.1)).norm() < 1e-15);
    }

    #[test]
    fn routes_agree_on_generators() {
        let cfg = TruncationConfig::new(0.5, 4).unwrap();
        for n in 1..=3 {
            let phis: Vec<f64> = (0..n).map(|i| 0.4 + 0.9 * i as f64).collect();
            for r in 1..=n {
                for c in 1..=n {
                    for p in [NCPolynomial::z(n, r, c), NCPolynomial::z_star(n, r, c)] {
                        let a = character_chi(&phis, &p, &cfg).unwrap();
                        let b = character_via_fock(&phis, &p, &cfg).unwrap();
                        assert!((a - b).norm() < 1e-14, "n={n} {p}: {a} vs {b}");
                    }
                }
            }
        }
    }
}
