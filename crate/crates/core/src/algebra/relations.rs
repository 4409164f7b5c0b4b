//! The defining relations, written as oriented rewrite rules.

use num_rational::Rational64;

use super::det::q_determinant;
use super::generator::{AlgebraTag, GeneratorSymbol, Word};
use super::poly::NCPolynomial;
use crate::laurent::LaurentScalar;

/// Relation family a rule instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `xy = q yx` (same column or same row).
    QCommute,
    /// `xy = yx` for "anti-diagonal" pairs.
    Commute,
    /// `xy = yx + (q - q^-1) ...` for "diagonal" pairs.
    Diagonal,
    QCommuteStar,
    CommuteStar,
    DiagonalStar,
    /// Starred symbol followed by a plain one.
    Mixed,
    /// `det_q t = 1`.
    Determinant,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::QCommute => "q-commute",
            Family::Commute => "commute",
            Family::Diagonal => "diagonal",
            Family::QCommuteStar => "q-commute*",
            Family::CommuteStar => "commute*",
            Family::DiagonalStar => "diagonal*",
            Family::Mixed => "mixed",
            Family::Determinant => "det",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub family: Family,
    pub lhs: Word,
    pub rhs: NCPolynomial,
}

impl Rule {
    /// The relation `lhs - rhs` as an (unreduced) polynomial.
    pub fn relation(&self) -> NCPolynomial {
        let lhs = NCPolynomial::word(self.rhs.tag(), self.rhs.n(), self.lhs.clone());
        &lhs - &self.rhs
    }
}

fn plain(tag: AlgebraTag, row: usize, col: usize) -> GeneratorSymbol {
    match tag {
        AlgebraTag::MatQ => GeneratorSymbol::z(row, col),
        AlgebraTag::SLnQ => GeneratorSymbol::t(row, col),
    }
}

fn pair(a: GeneratorSymbol, b: GeneratorSymbol) -> Word {
    Word(vec![a, b])
}

/// Holomorphic rules `x y -> ...` for every pair of plain symbols with `key(x) < key(y)`.
pub fn holomorphic_rules(tag: AlgebraTag, n: usize) -> Vec<Rule> {
    let mut out = Vec::new();
    let keys: Vec<(usize, usize)> = (1..=n).flat_map(|r| (1..=n).map(move |c| (r, c))).collect();
    for (i, &(alpha, a)) in keys.iter().enumerate() {
        for &(beta, b) in &keys[i + 1..] {
            let x = plain(tag, alpha, a);
            let y = plain(tag, beta, b);
            let yx = NCPolynomial::word(tag, n, pair(y, x));
            let (family, rhs) = if (a == b && alpha < beta) || (a < b && alpha == beta) {
                (Family::QCommute, yx.scale(&LaurentScalar::q_pow(1)))
            } else if alpha < beta && a > b {
                (Family::Commute, yx)
            } else {
                let extra = NCPolynomial::term(
                    tag,
                    n,
                    pair(plain(tag, beta, a), plain(tag, alpha, b)),
                    LaurentScalar::q_minus_q_inv(),
                );
                (Family::Diagonal, &yx + &extra)
            };
            out.push(Rule { family, lhs: pair(x, y), rhs });
        }
    }
    out
}

/// Involution on words with real coefficients: reverse and toggle every symbol.
pub fn star_word(w: &Word) -> Word {
    Word(w.letters().iter().rev().map(GeneratorSymbol::toggled).collect())
}

pub fn star_formal(p: &NCPolynomial) -> NCPolynomial {
    let mut out = NCPolynomial::zero(p.tag(), p.n());
    for (w, c) in p.terms() {
        out.add_term(star_word(w), c.clone());
    }
    out
}

fn antiholomorphic_rules(n: usize) -> Vec<Rule> {
    holomorphic_rules(AlgebraTag::MatQ, n)
        .into_iter()
        .map(|r| Rule {
            family: match r.family {
                Family::QCommute => Family::QCommuteStar,
                Family::Commute => Family::CommuteStar,
                _ => Family::DiagonalStar,
            },
            lhs: star_word(&r.lhs),
            rhs: star_formal(&r.rhs),
        })
        .collect()
}

/// `R_{ij}^{kl}`.
pub fn r_matrix(i: usize, j: usize, k: usize, l: usize) -> LaurentScalar {
    if i != j && i == k && j == l {
        LaurentScalar::q_pow(-1)
    } else if i == j && j == k && k == l {
        LaurentScalar::one()
    } else if i == j && k == l && l > j {
        LaurentScalar::one() - LaurentScalar::q_pow(-2)
    } else {
        LaurentScalar::zero()
    }
}

/// `(z_b^beta)^* z_a^alpha -> q^2 sum R R z_{a'}^{alpha'} (z_{b'}^{beta'})^* + (1 - q^2) delta delta`.
fn mixed_rules(n: usize) -> Vec<Rule> {
    let tag = AlgebraTag::MatQ;
    let mut out = Vec::new();
    for beta in 1..=n {
        for b in 1..=n {
            for alpha in 1..=n {
                for a in 1..=n {
                    let mut rhs = NCPolynomial::zero(tag, n);
                    for a2 in 1..=n {
                        for b2 in 1..=n {
                            let r1 = r_matrix(b, a, b2, a2);
                            if r1.is_zero() {
                                continue;
                            }
                            for alpha2 in 1..=n {
                                for beta2 in 1..=n {
                                    let r2 = r_matrix(beta, alpha, beta2, alpha2);
                                    if r2.is_zero() {
                                        continue;
                                    }
                                    let w = pair(GeneratorSymbol::z(alpha2, a2), GeneratorSymbol::z_star(beta2, b2));
                                    rhs.add_term(w, (&r1 * &r2).shift(2));
                                }
                            }
                        }
                    }
                    if a == b && alpha == beta {
                        rhs.add_term(Word::unit(), LaurentScalar::one() - LaurentScalar::q_pow(2));
                    }
                    out.push(Rule {
                        family: Family::Mixed,
                        lhs: pair(GeneratorSymbol::z_star(beta, b), GeneratorSymbol::z(alpha, a)),
                        rhs,
                    });
                }
            }
        }
    }
    out
}

/// Rules of `Pol(Mat_n)_q`: holomorphic, antiholomorphic and mixed families.
pub fn pol_rules(n: usize) -> Vec<Rule> {
    let mut out = holomorphic_rules(AlgebraTag::MatQ, n);
    out.extend(antiholomorphic_rules(n));
    out.extend(mixed_rules(n));
    out
}

pub fn antiholomorphic_only_rules(n: usize) -> Vec<Rule> {
    antiholomorphic_rules(n)
}

/// The rule eliminating the leading monomial of `det_q t` (already in normal form
/// with respect to `holomorphic`), so that `det_q t = 1` holds.
pub(crate) fn determinant_rule(det_nf: &NCPolynomial) -> Option<Rule> {
    let (lead, c) = det_nf.leading()?;
    let mut terms = c.terms();
    let (exp, coeff) = terms.next()?;
    if terms.next().is_some() {
        return None;
    }
    let inv = LaurentScalar::monomial(Rational64::from_integer(1) / coeff, -exp);
    let lead = lead.clone();
    let mut rest = det_nf.clone();
    rest.add_term(lead.clone(), -c.clone());
    let one = NCPolynomial::one(det_nf.tag(), det_nf.n());
    let rhs = (&one - &rest).scale(&inv);
    Some(Rule { family: Family::Determinant, lhs: lead, rhs })
}

/// Unreduced `det_q t` for `C[SL_n]_q`.
pub fn sl_determinant(n: usize) -> NCPolynomial {
    q_determinant(AlgebraTag::SLnQ, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_counts() {
        let n = 2;
        assert_eq!(holomorphic_rules(AlgebraTag::MatQ, n).len(), 6);
        assert_eq!(pol_rules(n).len(), 6 + 6 + 16);
    }

    #[test]
    fn every_rule_decreases_the_order() {
        for n in 1..=3 {
            for r in pol_rules(n) {
                for (w, _) in r.rhs.terms() {
                    assert!(w < &r.lhs, "{} -> {}", r.lhs, w);
                }
            }
        }
    }

    #[test]
    fn one_dimensional_mixed_rule() {
        let rules = pol_rules(1);
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].rhs.to_string(), "(q^2) z[1,1] z*[1,1] + (1 - q^2)");
    }
}
