//! Action of `U_q su_n (x) U_q su_n` (generators with index `k != n`) on `Pol(Mat_n)_q`.

use std::fmt;

use super::generator::{AlgebraTag, GeneratorSymbol, SymbolKind, Word};
use super::poly::NCPolynomial;
use super::rewrite::RewriteSystem;
use crate::error::AlgebraError;
use crate::laurent::LaurentScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UqGenerator {
    K(usize),
    KInv(usize),
    E(usize),
    F(usize),
}

impl UqGenerator {
    pub fn index(self) -> usize {
        match self {
            UqGenerator::K(k) | UqGenerator::KInv(k) | UqGenerator::E(k) | UqGenerator::F(k) => k,
        }
    }

    /// Power of `q^{1/2}` common to every term of the image.
    fn half_power(self) -> i32 {
        match self {
            UqGenerator::E(_) => -1,
            UqGenerator::F(_) => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for UqGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UqGenerator::K(k) => write!(f, "K_{k}"),
            UqGenerator::KInv(k) => write!(f, "K_{k}^-1"),
            UqGenerator::E(k) => write!(f, "E_{k}"),
            UqGenerator::F(k) => write!(f, "F_{k}"),
        }
    }
}

/// `q^{sqrt_q_power / 2} * poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UqImage {
    pub sqrt_q_power: i32,
    pub poly: NCPolynomial,
}

impl fmt::Display for UqImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sqrt_q_power {
            0 => write!(f, "{}", self.poly),
            p => write!(f, "q^({p}/2) * ({})", self.poly),
        }
    }
}

/// Which index of `z_a^alpha` a generator with index `k` moves, and the
/// position `m` it acts at: `K_k z = q z` at `m`, `q^-1 z` at `m + 1`.
fn acting_index(n: usize, k: usize) -> Result<(bool, usize), AlgebraError> {
    if k == 0 || k >= 2 * n || k == n {
        return Err(AlgebraError::UnsupportedGenerator(format!("index {k} with n={n}")));
    }
    // (acts on column, position)
    Ok(if k < n { (true, k) } else { (false, 2 * n - k) })
}

fn moved(g: &GeneratorSymbol, on_col: bool) -> usize {
    if on_col {
        g.col()
    } else {
        g.row()
    }
}

/// Exponent `e` with `K_k g = q^e g`.
fn k_weight(g: &GeneratorSymbol, on_col: bool, m: usize) -> i32 {
    let idx = moved(g, on_col);
    let e = if idx == m {
        1
    } else if idx == m + 1 {
        -1
    } else {
        0
    };
    match g.kind {
        SymbolKind::Plain => e,
        SymbolKind::Starred => -e,
    }
}

fn shifted(g: &GeneratorSymbol, on_col: bool, delta: i32) -> GeneratorSymbol {
    let mut out = *g;
    if on_col {
        out.col = (g.col as i32 + delta) as u8;
    } else {
        out.row = (g.row as i32 + delta) as u8;
    }
    out
}

/// `E` (or `F`) on one letter, without the common `q^{-1/2}` (or `q^{1/2}`).
fn raise_lower(g: &GeneratorSymbol, on_col: bool, m: usize, lower: bool) -> Option<(GeneratorSymbol, LaurentScalar)> {
    let idx = moved(g, on_col);
    match (g.kind, lower) {
        // E z: m+1 -> m
        (SymbolKind::Plain, true) if idx == m + 1 => Some((shifted(g, on_col, -1), LaurentScalar::one())),
        // E z* = -q^-2 (F z)*
        (SymbolKind::Starred, true) if idx == m => Some((shifted(g, on_col, 1), -LaurentScalar::q_pow(-1))),
        // F z: m -> m+1
        (SymbolKind::Plain, false) if idx == m => Some((shifted(g, on_col, 1), LaurentScalar::one())),
        // F z* = -q^2 (E z)*
        (SymbolKind::Starred, false) if idx == m + 1 => Some((shifted(g, on_col, -1), -LaurentScalar::q_pow(1))),
        _ => None,
    }
}

/// Action on a single word, unreduced.
fn act_on_word(gen: UqGenerator, w: &Word, on_col: bool, m: usize, n: usize) -> NCPolynomial {
    let letters = w.letters();
    let mut out = NCPolynomial::zero(AlgebraTag::MatQ, n);
    let weights: Vec<i32> = letters.iter().map(|g| k_weight(g, on_col, m)).collect();
    match gen {
        UqGenerator::K(_) | UqGenerator::KInv(_) => {
            let sign = if matches!(gen, UqGenerator::K(_)) { 1 } else { -1 };
            let e: i32 = weights.iter().sum();
            out.add_term(w.clone(), LaurentScalar::q_pow(sign * e));
        }
        UqGenerator::E(_) => {
            // Delta E = E (x) 1 + K (x) E
            let mut prefix = 0;
            for (i, g) in letters.iter().enumerate() {
                if let Some((h, c)) = raise_lower(g, on_col, m, true) {
                    let mut v = letters.to_vec();
                    v[i] = h;
                    out.add_term(Word(v), c.shift(prefix));
                }
                prefix += weights[i];
            }
        }
        UqGenerator::F(_) => {
            // Delta F = F (x) K^-1 + 1 (x) F
            let total: i32 = weights.iter().sum();
            let mut upto = 0;
            for (i, g) in letters.iter().enumerate() {
                upto += weights[i];
                if let Some((h, c)) = raise_lower(g, on_col, m, false) {
                    let mut v = letters.to_vec();
                    v[i] = h;
                    out.add_term(Word(v), c.shift(-(total - upto)));
                }
            }
        }
    }
    out
}

/// Action of `gen` on `p`, reduced in `rs` (a `Pol(Mat_n)_q` system).
pub fn uq_action(gen: UqGenerator, p: &NCPolynomial, rs: &RewriteSystem) -> Result<UqImage, AlgebraError> {
    let n = p.n();
    if p.tag() != AlgebraTag::MatQ {
        return Err(AlgebraError::Mismatch { left: p.tag().to_string(), right: AlgebraTag::MatQ.to_string() });
    }
    let (on_col, m) = acting_index(n, gen.index())?;
    let raw = p.map_words(AlgebraTag::MatQ, n, |w| Ok(act_on_word(gen, w, on_col, m, n)))?;
    Ok(UqImage { sqrt_q_power: gen.half_power(), poly: rs.normal_form(&raw)? })
}

/// The coproduct side of the module-algebra identity, `sum xi'(f) xi''(g)`, reduced.
pub fn coproduct_side(
    gen: UqGenerator,
    f: &NCPolynomial,
    g: &NCPolynomial,
    rs: &RewriteSystem,
) -> Result<UqImage, AlgebraError> {
    let k = gen.index();
    let act = |x: UqGenerator, p: &NCPolynomial| uq_action(x, p, rs).map(|i| i.poly);
    let poly = match gen {
        UqGenerator::K(_) | UqGenerator::KInv(_) => rs.multiply(&act(gen, f)?, &act(gen, g)?)?,
        UqGenerator::E(_) => {
            let a = rs.multiply(&act(gen, f)?, g)?;
            let b = rs.multiply(&act(UqGenerator::K(k), f)?, &act(gen, g)?)?;
            &a + &b
        }
        UqGenerator::F(_) => {
            let a = rs.multiply(&act(gen, f)?, &act(UqGenerator::KInv(k), g)?)?;
            let b = rs.multiply(f, &act(gen, g)?)?;
            &a + &b
        }
    };
    Ok(UqImage { sqrt_q_power: gen.half_power(), poly })
}

/// All generators acting on `Pol(Mat_n)_q`: `K^{+-1}_k, E_k, F_k` for `k in 1..2n`, `k != n`.
pub fn all_generators(n: usize) -> Vec<UqGenerator> {
    (1..2 * n)
        .filter(|&k| k != n)
        .flat_map(|k| [UqGenerator::K(k), UqGenerator::KInv(k), UqGenerator::E(k), UqGenerator::F(k)])
        .collect()
}
