use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Which relation system a symbol (or polynomial) lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraTag {
    /// `Pol(Mat_n)_q` and its holomorphic / antiholomorphic subalgebras, generators `z_a^alpha`.
    MatQ,
    /// `C[SL_n]_q` with the `SU_n` involution, generators `t_{alpha,a}`.
    SLnQ,
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraTag::MatQ => write!(f, "Pol(Mat)_q"),
            AlgebraTag::SLnQ => write!(f, "C[SL]_q"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymbolKind {
    Plain,
    Starred,
}

/// `z_a^alpha`, `(z_a^alpha)^*`, `t_{alpha,a}` or `t_{alpha,a}^*`.
///
/// `row` is the upper index `alpha` of `z` (first index of `t`), `col` the lower one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSymbol {
    pub tag: AlgebraTag,
    pub kind: SymbolKind,
    pub row: u8,
    pub col: u8,
}

impl GeneratorSymbol {
    /// `z_col^row`.
    pub fn z(row: usize, col: usize) -> Self {
        Self { tag: AlgebraTag::MatQ, kind: SymbolKind::Plain, row: row as u8, col: col as u8 }
    }

    /// `(z_col^row)^*`.
    pub fn z_star(row: usize, col: usize) -> Self {
        Self { kind: SymbolKind::Starred, ..Self::z(row, col) }
    }

    /// `t_{row,col}`.
    pub fn t(row: usize, col: usize) -> Self {
        Self { tag: AlgebraTag::SLnQ, kind: SymbolKind::Plain, row: row as u8, col: col as u8 }
    }

    pub fn t_star(row: usize, col: usize) -> Self {
        Self { kind: SymbolKind::Starred, ..Self::t(row, col) }
    }

    pub fn is_starred(&self) -> bool {
        self.kind == SymbolKind::Starred
    }

    pub fn row(&self) -> usize {
        self.row as usize
    }

    pub fn col(&self) -> usize {
        self.col as usize
    }

    /// Same indices, kind toggled.
    pub fn toggled(&self) -> Self {
        let kind = match self.kind {
            SymbolKind::Plain => SymbolKind::Starred,
            SymbolKind::Starred => SymbolKind::Plain,
        };
        Self { kind, ..*self }
    }

    /// Lexicographic `(row, col)` key.
    pub fn key(&self) -> (u8, u8) {
        (self.row, self.col)
    }

    /// Letter rank used by the monomial order: plain symbols first in decreasing
    /// key order, then starred symbols in increasing key order.
    fn rank(&self) -> (u8, u8, u8) {
        match self.kind {
            SymbolKind::Plain => (0, u8::MAX - self.row, u8::MAX - self.col),
            SymbolKind::Starred => (1, self.row, self.col),
        }
    }
}

impl Ord for GeneratorSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tag.cmp(&other.tag).then_with(|| self.rank().cmp(&other.rank()))
    }
}

impl PartialOrd for GeneratorSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.is_starred() { "*" } else { "" };
        match self.tag {
            AlgebraTag::MatQ => write!(f, "z{star}[{},{}]", self.col, self.row),
            AlgebraTag::SLnQ => write!(f, "t{star}[{},{}]", self.row, self.col),
        }
    }
}

/// A monomial: a finite sequence of generator symbols. The empty word is the unit.
///
/// Ordered by length, then by the number of (starred, plain) inversions, then
/// lexicographically by letter rank. Every rewrite rule strictly decreases this
/// order and the order is compatible with concatenation for composition-preserving
/// rules.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<GeneratorSymbol>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: GeneratorSymbol) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GeneratorSymbol] {
        &self.0
    }

    /// Number of pairs `i < j` with a starred letter at `i` and a plain one at `j`.
    pub fn inversions(&self) -> usize {
        let mut stars = 0;
        let mut inv = 0;
        for g in &self.0 {
            if g.is_starred() {
                stars += 1;
            } else {
                inv += stars;
            }
        }
        inv
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn has_starred(&self) -> bool {
        self.0.iter().any(|g| g.is_starred())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.inversions().cmp(&other.inversions()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl From<Vec<GeneratorSymbol>> for Word {
    fn from(v: Vec<GeneratorSymbol>) -> Self {
        Word(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_letters_rank_descending() {
        // larger key => smaller letter
        assert!(GeneratorSymbol::z(2, 2) < GeneratorSymbol::z(1, 1));
        assert!(GeneratorSymbol::z_star(1, 1) < GeneratorSymbol::z_star(2, 2));
        assert!(GeneratorSymbol::z(1, 1) < GeneratorSymbol::z_star(1, 1));
    }

    #[test]
    fn word_order_prefers_fewer_inversions() {
        let a = Word(vec![GeneratorSymbol::z(1, 1), GeneratorSymbol::z_star(1, 1)]);
        let b = Word(vec![GeneratorSymbol::z_star(1, 1), GeneratorSymbol::z(1, 1)]);
        assert!(a < b);
        assert!(Word::unit() < a);
    }

    #[test]
    fn display_uses_column_then_row_for_z() {
        assert_eq!(GeneratorSymbol::z(2, 1).to_string(), "z[1,2]");
        assert_eq!(GeneratorSymbol::t(2, 1).to_string(), "t[2,1]");
        assert_eq!(GeneratorSymbol::z_star(1, 3).to_string(), "z*[3,1]");
    }
}
