//! Admissible routes in the `n x n` box tableau and the Fock generators they encode.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::config::TruncationConfig;
use super::factor::FactorKind;
use super::operator::{ExactOperator, SparseTensorOperator};
use crate::error::RepError;
use crate::laurent::LaurentScalar;

/// What a box on a route contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArrowBox {
    /// Entered from the left, left to the right: `q d(q)`.
    Right,
    /// Entered from below, left upwards: `-d(q)`.
    Up,
    /// Entered from the left, left upwards: `S* C_q`.
    UpHook,
    /// Entered from below, left to the right: `C_q S`.
    RightHook,
    Empty,
}

impl ArrowBox {
    pub fn factor(self) -> FactorKind {
        match self {
            ArrowBox::Right | ArrowBox::Up => FactorKind::Dq,
            ArrowBox::UpHook => FactorKind::SstarCq,
            ArrowBox::RightHook => FactorKind::CqS,
            ArrowBox::Empty => FactorKind::Identity,
        }
    }

    fn glyph(self) -> char {
        match self {
            ArrowBox::Right => '→',
            ArrowBox::Up => '↑',
            ArrowBox::UpHook => '┘',
            ArrowBox::RightHook => '└',
            ArrowBox::Empty => '·',
        }
    }
}

/// Slot of box `(k, l)` (row `k` counted from the top, column `l`): columns are
/// read bottom-up, first column first.
pub fn slot_of(n: usize, k: usize, l: usize) -> usize {
    n * (l - 1) + n - k + 1
}

/// Inverse of [`slot_of`].
pub fn box_of(n: usize, slot: usize) -> (usize, usize) {
    let l = (slot - 1) / n + 1;
    let k = n - (slot - 1) % n;
    (k, l)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathDiagram {
    pub n: usize,
    pub start: (usize, usize),
    pub end: (usize, usize),
    /// `(slot, kind)` in route order.
    pub boxes: Vec<(usize, ArrowBox)>,
    /// Overall coefficient, a signed power of `q`.
    pub prefactor: LaurentScalar,
}

impl PathDiagram {
    pub fn kind_at(&self, slot: usize) -> ArrowBox {
        self.boxes.iter().find(|(s, _)| *s == slot).map_or(ArrowBox::Empty, |b| b.1)
    }

    pub fn count(&self, kind: ArrowBox) -> usize {
        self.boxes.iter().filter(|b| b.1 == kind).count()
    }

    /// The elementary tensor, slot by slot.
    pub fn factors(&self) -> Vec<FactorKind> {
        (1..=self.n * self.n).map(|s| self.kind_at(s).factor()).collect()
    }

    /// Tableau picture, top row first.
    pub fn picture(&self) -> String {
        let n = self.n;
        let mut out = String::new();
        for k in 1..=n {
            for l in 1..=n {
                out.push(self.kind_at(slot_of(n, k, l)).glyph());
            }
            if k < n {
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Display for PathDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.factors().iter().map(|k| k.symbol()).collect();
        if self.prefactor.is_one() {
            write!(f, "{}", parts.join("⊗"))
        } else {
            write!(f, "({}) {}", self.prefactor, parts.join("⊗"))
        }
    }
}

/// All routes from box `(n, j)`, entered from below, to box `(k, n)`, left to the
/// right, moving up or right one box at a time.
pub fn enumerate_paths(n: usize, j: usize, k: usize) -> Result<Vec<PathDiagram>, RepError> {
    if n == 0 || j == 0 || k == 0 || j > n || k > n {
        return Err(RepError::IndexOutOfRange(format!("route ({n},{j}) -> ({k},{n})")));
    }
    let ups = n - k;
    let rights = n - j;
    let mut out = Vec::new();
    // moves[i] = true for an up move
    let mut moves = Vec::with_capacity(ups + rights);
    fn rec(ups: usize, rights: usize, moves: &mut Vec<bool>, emit: &mut dyn FnMut(&[bool])) {
        if ups == 0 && rights == 0 {
            emit(moves);
            return;
        }
        if ups > 0 {
            moves.push(true);
            rec(ups - 1, rights, moves, emit);
            moves.pop();
        }
        if rights > 0 {
            moves.push(false);
            rec(ups, rights - 1, moves, emit);
            moves.pop();
        }
    }
    rec(ups, rights, &mut moves, &mut |mv| out.push(route(n, j, k, mv)));
    Ok(out)
}

fn route(n: usize, j: usize, k: usize, moves: &[bool]) -> PathDiagram {
    let (mut row, mut col) = (n, j);
    let mut from_below = true;
    let mut boxes = Vec::with_capacity(moves.len() + 1);
    // the exit of the last box is to the right
    for exit_up in moves.iter().copied().chain(std::iter::once(false)) {
        let kind = match (from_below, exit_up) {
            (true, true) => ArrowBox::Up,
            (true, false) => ArrowBox::RightHook,
            (false, false) => ArrowBox::Right,
            (false, true) => ArrowBox::UpHook,
        };
        boxes.push((slot_of(n, row, col), kind));
        if exit_up {
            row -= 1;
        } else if col < n {
            col += 1;
        }
        from_below = exit_up;
    }
    let rights = boxes.iter().filter(|b| b.1 == ArrowBox::Right).count() as i32;
    let ups = boxes.iter().filter(|b| b.1 == ArrowBox::Up).count();
    let mut prefactor = LaurentScalar::q_pow(j as i32 - n as i32 + rights);
    if ups % 2 == 1 {
        prefactor = -prefactor;
    }
    PathDiagram { n, start: (n, j), end: (k, n), boxes, prefactor }
}

/// `T(z_col^row)` as the exact sum over its routes.
pub fn fock_generator_exact(n: usize, row: usize, col: usize) -> Result<ExactOperator, RepError> {
    let mut out = ExactOperator::zero(n * n);
    for p in enumerate_paths(n, row, col)? {
        out.add_term(p.factors(), p.prefactor.clone());
    }
    Ok(out)
}

pub fn fock_generator(n: usize, row: usize, col: usize, cfg: &TruncationConfig) -> Result<SparseTensorOperator, RepError> {
    Ok(fock_generator_exact(n, row, col)?.to_numeric(cfg.q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_numbering() {
        let n = 3;
        assert_eq!(slot_of(n, 3, 1), 1);
        assert_eq!(slot_of(n, 1, 1), 3);
        assert_eq!(slot_of(n, 1, 3), 9);
        for s in 1..=9 {
            let (k, l) = box_of(n, s);
            assert_eq!(slot_of(n, k, l), s);
        }
    }

    #[test]
    fn six_diagrams_for_n3() {
        let paths = enumerate_paths(3, 1, 1).unwrap();
        assert_eq!(paths.len(), 6);
        assert_eq!(paths[0].to_string(), "d⊗d⊗C_qS⊗I⊗I⊗d⊗I⊗I⊗d");
        assert!(paths[0].prefactor.is_one());
    }

    #[test]
    fn n2_generator() {
        let t = fock_generator_exact(2, 1, 1).unwrap();
        assert_eq!(t.num_terms(), 2);
        let s = t.to_string();
        assert!(s.contains("(-1) d⊗C_qS⊗I⊗d"), "{s}");
        assert!(s.contains("(q^-1) C_qS⊗I⊗S*C_q⊗C_qS"), "{s}");
    }

    #[test]
    fn corner_has_a_single_hook() {
        for n in 1..=4 {
            let p = enumerate_paths(n, n, n).unwrap();
            assert_eq!(p.len(), 1);
            assert_eq!(p[0].boxes, vec![(slot_of(n, n, n), ArrowBox::RightHook)]);
        }
    }

    #[test]
    fn hooks_alternate() {
        for n in 1..=4 {
            for j in 1..=n {
                for k in 1..=n {
                    for p in enumerate_paths(n, j, k).unwrap() {
                        assert_eq!(p.count(ArrowBox::RightHook), p.count(ArrowBox::UpHook) + 1);
                    }
                }
            }
        }
    }
}
