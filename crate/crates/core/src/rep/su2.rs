//! `C[SU_2]_q` and the factors `pi_{s_i}` of `C[SU_m]_q`.

use super::config::TruncationConfig;
use super::factor::{FactorKind, FactorMatrix};
use crate::error::RepError;

/// A single-slot image: `coeff * kind`, where `coeff` is `+-1` or `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Su2Factor {
    pub kind: FactorKind,
    /// Power of `q` in the coefficient.
    pub q_power: i32,
    pub negative: bool,
}

impl Su2Factor {
    fn new(kind: FactorKind, q_power: i32, negative: bool) -> Self {
        Self { kind, q_power, negative }
    }

    pub fn coeff(&self, q: f64) -> f64 {
        let c = q.powi(self.q_power);
        if self.negative {
            -c
        } else {
            c
        }
    }

    pub fn matrix(&self, q: f64) -> FactorMatrix {
        FactorMatrix::scaled(self.kind, self.coeff(q))
    }
}

/// `Pi(t_{i,j})` of the irreducible representation of `C[SU_2]_q` on `l^2(Z_+)`.
pub fn su2_factor(i: usize, j: usize) -> Result<Su2Factor, RepError> {
    Ok(match (i, j) {
        (1, 1) => Su2Factor::new(FactorKind::SstarCq, 0, false),
        (1, 2) => Su2Factor::new(FactorKind::Dq, 1, false),
        (2, 1) => Su2Factor::new(FactorKind::Dq, 0, true),
        (2, 2) => Su2Factor::new(FactorKind::CqS, 0, false),
        _ => return Err(RepError::IndexOutOfRange(format!("t[{i},{j}] in C[SU_2]_q"))),
    })
}

pub fn su2_rep(i: usize, j: usize, cfg: &TruncationConfig) -> Result<FactorMatrix, RepError> {
    Ok(su2_factor(i, j)?.matrix(cfg.q))
}

/// `pi_{s_i}(t_{a,b})` for `C[SU_m]_q`, or `None` when it vanishes.
pub fn pi_sigma_factor(m: usize, i: usize, a: usize, b: usize) -> Result<Option<Su2Factor>, RepError> {
    if i == 0 || i >= m {
        return Err(RepError::IndexOutOfRange(format!("s_{i} in S_{m}")));
    }
    if a == 0 || b == 0 || a > m || b > m {
        return Err(RepError::IndexOutOfRange(format!("t[{a},{b}] in C[SU_{m}]_q")));
    }
    let inside = |x: usize| x == i || x == i + 1;
    if inside(a) && inside(b) {
        return su2_factor(a - i + 1, b - i + 1).map(Some);
    }
    Ok((a == b).then(|| Su2Factor::new(FactorKind::Identity, 0, false)))
}

pub fn pi_sigma(m: usize, i: usize, a: usize, b: usize, cfg: &TruncationConfig) -> Result<Option<FactorMatrix>, RepError> {
    Ok(pi_sigma_factor(m, i, a, b)?.map(|f| f.matrix(cfg.q)))
}

/// The reduced word `c_1 c_2 ... c_n` of the permutation swapping the two halves
/// of `{1..2n}`, with `c_l = s_{l+n-1} ... s_l`.
pub fn reduced_word_u(n: usize) -> Vec<usize> {
    (1..=n).flat_map(|l| (l..l + n).rev()).collect()
}

/// The permutation (as images of `1..m`, 1-based) of a product of adjacent transpositions.
pub fn permutation_of(m: usize, word: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=m).collect();
    for &i in word {
        p.swap(i - 1, i);
    }
    p
}

/// A word is reduced when its length equals the inversion count of its permutation.
pub fn is_reduced(m: usize, word: &[usize]) -> bool {
    if word.iter().any(|&i| i == 0 || i >= m) {
        return false;
    }
    let p = permutation_of(m, word);
    let inv = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
    inv == word.len()
}

/// `s_{m-1} ... s_1`.
pub fn coxeter_word(m: usize) -> Vec<usize> {
    (1..m).rev().collect()
}

/// A reduced word of the longest element of `S_m`.
pub fn longest_word(m: usize) -> Vec<usize> {
    (1..m).flat_map(|k| (1..=k).rev()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_on_vacuum() {
        let cfg = TruncationConfig::new(0.5, 4).unwrap();
        let t21 = su2_rep(2, 1, &cfg).unwrap().apply_basis(&cfg, 0);
        assert_eq!(t21[0].re, -1.0);
        let t22 = su2_rep(2, 2, &cfg).unwrap().apply_basis(&cfg, 0);
        assert!((t22[1].re - (0.75f64).sqrt()).abs() < 1e-15);
        let t11 = su2_rep(1, 1, &cfg).unwrap().apply_basis(&cfg, 0);
        assert!(t11.iter().all(|c| c.norm() == 0.0));
        assert!(su2_rep(3, 1, &cfg).is_err());
    }

    #[test]
    fn words() {
        assert_eq!(reduced_word_u(1), vec![1]);
        assert_eq!(reduced_word_u(2), vec![2, 1, 3, 2]);
        assert_eq!(reduced_word_u(3), vec![3, 2, 1, 4, 3, 2, 5, 4, 3]);
        for n in 1..=4 {
            let u = reduced_word_u(n);
            assert!(is_reduced(2 * n, &u));
            let p = permutation_of(2 * n, &u);
            assert_eq!(p, (n + 1..=2 * n).chain(1..=n).collect::<Vec<_>>());
        }
        assert!(!is_reduced(3, &[1, 1]));
        assert_eq!(longest_word(3).len(), 3);
        assert!(is_reduced(4, &longest_word(4)));
    }

    #[test]
    fn pi_sigma_table() {
        use FactorKind::*;
        let f = |i, a, b| pi_sigma_factor(4, i, a, b).unwrap().map(|f| (f.kind, f.q_power, f.negative));
        assert_eq!(f(1, 3, 3), Some((Identity, 0, false)));
        assert_eq!(f(2, 2, 3), Some((Dq, 1, false)));
        assert_eq!(f(2, 1, 3), None);
        assert_eq!(f(2, 3, 2), Some((Dq, 0, true)));
        assert!(pi_sigma_factor(4, 4, 1, 1).is_err());
    }
}
