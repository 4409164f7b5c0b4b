//! *-homomorphisms between the polynomial algebras.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use super::generator::{AlgebraTag, GeneratorSymbol};
use super::poly::NCPolynomial;
use super::{normal_form, sl_star_letter};
use crate::error::AlgebraError;
use crate::laurent::LaurentScalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HomSpec {
    /// `Pol(Mat_n) -> Pol(Mat_{n-1})`: drops the last row and column, `z_n^n -> e^{i phi}`.
    PiPhi(f64),
    /// `Pol(Mat_n) -> Pol(Mat_{2n})`, `z_j^i -> z_{j+n}^{i+n}`.
    Embed2n,
    /// `Pol(Mat_n) -> C[SU_n]`, `z_j^i -> q^{i-n} t_{i,j}`.
    PhiN,
    /// `C[SU_n] -> C[SU_n]`, `t_{i,j} -> q^{j-i} t_{j,i}`.
    Theta,
    /// `Pol(Mat_n) -> C[SU_{2n}]`, `z_j^i -> q^{i-n} t_{n+i,n+j}`.
    Iota,
    /// `C[SU_n] -> C[SU_2]` on the block `{j, j+1}`.
    PsiJ(usize),
}

impl HomSpec {
    pub fn name(&self) -> String {
        match self {
            HomSpec::PiPhi(phi) => format!("Pi_phi(phi={phi})"),
            HomSpec::Embed2n => "embed_2n".into(),
            HomSpec::PhiN => "Phi_n".into(),
            HomSpec::Theta => "theta".into(),
            HomSpec::Iota => "iota".into(),
            HomSpec::PsiJ(j) => format!("psi_{j}"),
        }
    }

    pub fn source_tag(&self) -> AlgebraTag {
        match self {
            HomSpec::Theta | HomSpec::PsiJ(_) => AlgebraTag::SLnQ,
            _ => AlgebraTag::MatQ,
        }
    }

    /// Target algebra and dimension for a source of dimension `n`.
    pub fn target(&self, n: usize) -> (AlgebraTag, usize) {
        match self {
            HomSpec::PiPhi(_) => (AlgebraTag::MatQ, n - 1),
            HomSpec::Embed2n => (AlgebraTag::MatQ, 2 * n),
            HomSpec::PhiN | HomSpec::Theta => (AlgebraTag::SLnQ, n),
            HomSpec::Iota => (AlgebraTag::SLnQ, 2 * n),
            HomSpec::PsiJ(_) => (AlgebraTag::SLnQ, 2),
        }
    }

    fn validate(&self, p: &NCPolynomial) -> Result<(), AlgebraError> {
        if p.tag() != self.source_tag() {
            return Err(AlgebraError::Mismatch { left: p.tag().to_string(), right: self.source_tag().to_string() });
        }
        match *self {
            HomSpec::PiPhi(phi) if !(0.0..TAU).contains(&phi) => Err(AlgebraError::AngleOutOfRange(phi)),
            HomSpec::PiPhi(_) if p.n() == 0 => Err(AlgebraError::IndexOutOfRange("n=0".into())),
            HomSpec::PsiJ(j) if j == 0 || j >= p.n() => {
                Err(AlgebraError::IndexOutOfRange(format!("psi_{j} with n={}", p.n())))
            }
            _ => Ok(()),
        }
    }

    /// Image of one generator symbol.
    fn letter_image(&self, n: usize, g: GeneratorSymbol) -> Result<PhasedPolynomial, AlgebraError> {
        let (ttag, tn) = self.target(n);
        let (i, j) = (g.row(), g.col());
        let starred = g.is_starred();
        let plain = |p: NCPolynomial| PhasedPolynomial::plain(p);
        // images of plain symbols; starred ones are the involution of these
        let sl_gen = |row: usize, col: usize, c: LaurentScalar| -> Result<NCPolynomial, AlgebraError> {
            let t = GeneratorSymbol::t(row, col);
            let base = if starred { sl_star_letter(tn, t)? } else { NCPolynomial::gen(tn, t) };
            Ok(base.scale(&c))
        };
        Ok(match *self {
            HomSpec::PiPhi(phi) => {
                if i < n && j < n {
                    let s = if starred { GeneratorSymbol::z_star(i, j) } else { GeneratorSymbol::z(i, j) };
                    plain(NCPolynomial::gen(tn, s).scale(&LaurentScalar::q_pow(-1)))
                } else if i == n && j == n {
                    let k = if starred { -1 } else { 1 };
                    PhasedPolynomial::phase(phi, k, NCPolynomial::one(ttag, tn))
                } else {
                    plain(NCPolynomial::zero(ttag, tn))
                }
            }
            HomSpec::Embed2n => {
                let s = GeneratorSymbol { row: (i + n) as u8, col: (j + n) as u8, ..g };
                plain(NCPolynomial::gen(tn, s))
            }
            HomSpec::PhiN => plain(sl_gen(i, j, LaurentScalar::q_pow(i as i32 - n as i32))?),
            HomSpec::Iota => plain(sl_gen(n + i, n + j, LaurentScalar::q_pow(i as i32 - n as i32))?),
            HomSpec::Theta => plain(sl_gen(j, i, LaurentScalar::q_pow(j as i32 - i as i32))?),
            HomSpec::PsiJ(b) => {
                if (b..=b + 1).contains(&i) && (b..=b + 1).contains(&j) {
                    plain(sl_gen(i - b + 1, j - b + 1, LaurentScalar::one())?)
                } else if i == j {
                    plain(NCPolynomial::one(ttag, tn))
                } else {
                    plain(NCPolynomial::zero(ttag, tn))
                }
            }
        })
    }
}

impl fmt::Display for HomSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `sum_k e^{i k angle} p_k`: a polynomial with coefficients in Laurent
/// polynomials of the formal unit-circle symbol `u = e^{i angle}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasedPolynomial {
    pub angle: f64,
    pub tag: AlgebraTag,
    pub n: usize,
    pub components: BTreeMap<i32, NCPolynomial>,
}

impl PhasedPolynomial {
    pub fn plain(p: NCPolynomial) -> Self {
        Self::phase(0.0, 0, p)
    }

    pub fn phase(angle: f64, k: i32, p: NCPolynomial) -> Self {
        let (tag, n) = (p.tag(), p.n());
        let mut components = BTreeMap::new();
        if !p.is_zero() {
            components.insert(k, p);
        }
        Self { angle, tag, n, components }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// The polynomial itself when no phase power other than `0` occurs.
    pub fn as_plain(&self) -> Option<NCPolynomial> {
        match self.components.len() {
            0 => Some(NCPolynomial::zero(self.tag, self.n)),
            1 => self.components.get(&0).cloned(),
            _ => None,
        }
    }

    fn add_component(&mut self, k: i32, p: NCPolynomial) {
        let entry = self.components.entry(k).or_insert_with(|| NCPolynomial::zero(p.tag(), p.n()));
        *entry = &*entry + &p;
        if entry.is_zero() {
            self.components.remove(&k);
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        let mut out = Self { angle: self.angle.max(other.angle), tag: self.tag, n: self.n, components: BTreeMap::new() };
        for (k1, p1) in &self.components {
            for (k2, p2) in &other.components {
                out.add_component(k1 + k2, p1.nc_multiply(p2)?);
            }
        }
        Ok(out)
    }

    fn normalized(mut self) -> Result<Self, AlgebraError> {
        let mut comps = BTreeMap::new();
        for (k, p) in std::mem::take(&mut self.components) {
            let nf = normal_form(&p)?;
            if !nf.is_zero() {
                comps.insert(k, nf);
            }
        }
        self.components = comps;
        Ok(self)
    }

    /// Numerical evaluation of the phases: `(e^{i k angle}, p_k)` pairs.
    pub fn evaluate_phases(&self) -> Vec<(num_complex::Complex64, &NCPolynomial)> {
        self.components
            .iter()
            .map(|(k, p)| (num_complex::Complex64::from_polar(1.0, *k as f64 * self.angle), p))
            .collect()
    }
}

impl fmt::Display for PhasedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, p)) in self.components.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "[{p}]")?,
                _ => write!(f, "u^{k} [{p}]")?,
            }
        }
        Ok(())
    }
}

/// Applies `h` to `p`: generator images extended multiplicatively and linearly,
/// then reduced in the target algebra.
pub fn apply_hom(h: HomSpec, p: &NCPolynomial) -> Result<PhasedPolynomial, AlgebraError> {
    h.validate(p)?;
    p.validate()?;
    let n = p.n();
    let (ttag, tn) = h.target(n);
    let mut images: BTreeMap<GeneratorSymbol, PhasedPolynomial> = BTreeMap::new();
    let mut out = PhasedPolynomial::plain(NCPolynomial::zero(ttag, tn));
    for (w, c) in p.terms() {
        let mut acc = PhasedPolynomial::plain(NCPolynomial::scalar(ttag, tn, c.clone()));
        for g in w.letters() {
            if !images.contains_key(g) {
                images.insert(*g, h.letter_image(n, *g)?);
            }
            acc = acc.multiply(&images[g])?;
            if acc.is_zero() {
                break;
            }
        }
        for (k, q) in acc.components {
            out.add_component(k, q);
        }
    }
    if let HomSpec::PiPhi(phi) = h {
        out.angle = phi;
    }
    out.normalized()
}

/// Convenience for maps without phases.
pub fn apply_hom_plain(h: HomSpec, p: &NCPolynomial) -> Result<NCPolynomial, AlgebraError> {
    let img = apply_hom(h, p)?;
    img.as_plain().ok_or_else(|| AlgebraError::Invalid(format!("{h} produced phases")))
}
