//! Symbolic layer: generators, relations, normal forms and the maps between algebras.

pub mod det;
pub mod generator;
pub mod hom;
pub mod poly;
pub mod relations;
pub mod rewrite;
pub mod text;
pub mod uq;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use det::{complementary_minor, q_determinant, quantum_minor};
pub use generator::{AlgebraTag, GeneratorSymbol, SymbolKind, Word};
pub use hom::{apply_hom, HomSpec, PhasedPolynomial};
pub use poly::NCPolynomial;
pub use rewrite::{graded_dimension, AlgebraKind, RewriteSystem};
pub use uq::{uq_action, UqGenerator, UqImage};

use crate::error::AlgebraError;
use crate::laurent::LaurentScalar;

type SystemCache = Mutex<HashMap<(AlgebraKind, usize), Arc<RewriteSystem>>>;

/// Shared, lazily built rewrite system for `(kind, n)`.
pub fn system(kind: AlgebraKind, n: usize) -> Result<Arc<RewriteSystem>, AlgebraError> {
    static CACHE: OnceLock<SystemCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(rs) = cache.lock().expect("rewrite cache poisoned").get(&(kind, n)) {
        return Ok(rs.clone());
    }
    // built outside the lock; a concurrent duplicate build is harmless
    let rs = Arc::new(RewriteSystem::new(kind, n)?);
    cache.lock().expect("rewrite cache poisoned").entry((kind, n)).or_insert(rs.clone());
    Ok(rs)
}

/// The default system for a polynomial's tag: `Pol(Mat_n)_q` or `C[SL_n]_q`.
pub fn system_for(p: &NCPolynomial) -> Result<Arc<RewriteSystem>, AlgebraError> {
    match p.tag() {
        AlgebraTag::MatQ => system(AlgebraKind::Pol, p.n()),
        AlgebraTag::SLnQ => system(AlgebraKind::SLn, p.n()),
    }
}

/// Normal form in the default system of the polynomial's tag.
pub fn normal_form(p: &NCPolynomial) -> Result<NCPolynomial, AlgebraError> {
    if p.n() == 0 {
        return Ok(p.clone());
    }
    system_for(p)?.normal_form(p)
}

/// The involution, unreduced.
///
/// In `Pol(Mat_n)_q` words are reversed and every symbol toggled. In
/// `C[SU_n]_q` a plain `t_{ij}` becomes `(-q)^{j-i}` times its complementary
/// minor and `t*_{ij}` becomes `t_{ij}`. Coefficients are real Laurent
/// polynomials, so antilinearity is the identity on them.
pub fn star(p: &NCPolynomial) -> Result<NCPolynomial, AlgebraError> {
    match p.tag() {
        AlgebraTag::MatQ => Ok(relations::star_formal(p)),
        AlgebraTag::SLnQ => {
            let n = p.n();
            p.map_words(p.tag(), n, |w| {
                let mut acc = NCPolynomial::one(AlgebraTag::SLnQ, n);
                for g in w.letters().iter().rev() {
                    let img = sl_star_letter(n, *g)?;
                    acc = acc.nc_multiply(&img)?;
                }
                Ok(acc)
            })
        }
    }
}

/// `g^*` for a single `C[SU_n]_q` symbol.
pub(crate) fn sl_star_letter(n: usize, g: GeneratorSymbol) -> Result<NCPolynomial, AlgebraError> {
    match g.kind {
        SymbolKind::Starred => Ok(NCPolynomial::gen(n, g.toggled())),
        SymbolKind::Plain => {
            let m = complementary_minor(AlgebraTag::SLnQ, n, g.row(), g.col())?;
            Ok(m.scale(&LaurentScalar::neg_q_pow(g.col() as i32 - g.row() as i32)))
        }
    }
}

/// Generators of the boundary ideal:
/// `sum_j q^{2n-alpha-beta} z_j^alpha (z_j^beta)^* - delta^{alpha beta}`, row-major in `(alpha, beta)`.
pub fn boundary_ideal_generators(n: usize) -> Vec<NCPolynomial> {
    let mut out = Vec::with_capacity(n * n);
    for alpha in 1..=n {
        for beta in 1..=n {
            let mut p = NCPolynomial::zero(AlgebraTag::MatQ, n);
            let c = LaurentScalar::q_pow((2 * n - alpha - beta) as i32);
            for j in 1..=n {
                p.add_term(Word(vec![GeneratorSymbol::z(alpha, j), GeneratorSymbol::z_star(beta, j)]), c.clone());
            }
            if alpha == beta {
                p.add_term(Word::unit(), LaurentScalar::int(-1));
            }
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_generators_small() {
        let g1 = boundary_ideal_generators(1);
        assert_eq!(g1.len(), 1);
        assert_eq!(g1[0].to_string(), "z[1,1] z*[1,1] + (-1)");
        let g2 = boundary_ideal_generators(2);
        assert_eq!(g2.len(), 4);
        let expected = "(q^2) z[1,1] z*[1,1] + (q^2) z[2,1] z*[2,1] + (-1)";
        assert_eq!(g2[0].to_string(), expected);
    }

    #[test]
    fn sl2_star_examples() {
        let s11 = normal_form(&star(&NCPolynomial::t(2, 1, 1)).unwrap()).unwrap();
        assert_eq!(s11, NCPolynomial::t(2, 2, 2));
        let s12 = normal_form(&star(&NCPolynomial::t(2, 1, 2)).unwrap()).unwrap();
        assert_eq!(s12.to_string(), "(-q) t[2,1]");
    }

    #[test]
    fn star_is_involutive_on_generators() {
        let z = NCPolynomial::z_star(2, 1, 2);
        assert_eq!(star(&star(&z).unwrap()).unwrap(), z);
        for i in 1..=2 {
            for j in 1..=2 {
                let t = NCPolynomial::t(2, i, j);
                let back = normal_form(&star(&star(&t).unwrap()).unwrap()).unwrap();
                assert_eq!(back, t);
            }
        }
    }
}
