//! Normal forms by leftmost rewriting, overlap checking and Hilbert series counts.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use super::det::complementary_minor;
use super::generator::{AlgebraTag, GeneratorSymbol, SymbolKind, Word};
use super::poly::NCPolynomial;
use super::relations::{self, Rule};
use crate::error::AlgebraError;
use crate::laurent::LaurentScalar;
use crate::report::CheckReport;

/// Rule applications allowed per `normal_form` call.
pub const STEP_BUDGET: usize = 1_000_000;

/// Which relation system a [`RewriteSystem`] implements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// `C[Mat_n]_q`.
    Holomorphic,
    /// The antiholomorphic subalgebra.
    Antiholomorphic,
    /// `Pol(Mat_n)_q`.
    Pol,
    /// `C[SL_n]_q` with `det_q t = 1`.
    SLn,
}

impl AlgebraKind {
    pub fn tag(self) -> AlgebraTag {
        match self {
            AlgebraKind::SLn => AlgebraTag::SLnQ,
            _ => AlgebraTag::MatQ,
        }
    }

    /// Letters of the alphabet the kind is generated by.
    pub fn alphabet(self, n: usize) -> Vec<GeneratorSymbol> {
        let keys = (1..=n).flat_map(|r| (1..=n).map(move |c| (r, c)));
        match self {
            AlgebraKind::Holomorphic => keys.map(|(r, c)| GeneratorSymbol::z(r, c)).collect(),
            AlgebraKind::Antiholomorphic => keys.map(|(r, c)| GeneratorSymbol::z_star(r, c)).collect(),
            AlgebraKind::Pol => keys.flat_map(|(r, c)| [GeneratorSymbol::z(r, c), GeneratorSymbol::z_star(r, c)]).collect(),
            AlgebraKind::SLn => keys.map(|(r, c)| GeneratorSymbol::t(r, c)).collect(),
        }
    }
}

/// Oriented relations of one algebra together with a lookup index.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    kind: AlgebraKind,
    n: usize,
    rules: Vec<Rule>,
    pairs: HashMap<(GeneratorSymbol, GeneratorSymbol), usize>,
    long: Vec<usize>,
    /// `t*_{ij}` expansions, indexed `(i-1)*n + (j-1)`.
    star_images: Vec<NCPolynomial>,
    det: Option<DetReduction>,
}

/// Division by the central element `det_q t - 1` in `C[SL_n]_q`.
///
/// Normal words of the holomorphic part are sorted monomials, so the reduction
/// is by multiset divisibility rather than by subwords.
#[derive(Clone, Debug)]
struct DetReduction {
    rule: Rule,
    /// Holomorphic normal form of `det_q t - 1`.
    relation: NCPolynomial,
    lead_counts: BTreeMap<GeneratorSymbol, usize>,
}

fn letter_counts(letters: &[GeneratorSymbol]) -> BTreeMap<GeneratorSymbol, usize> {
    let mut counts = BTreeMap::new();
    for g in letters {
        *counts.entry(*g).or_insert(0) += 1;
    }
    counts
}

impl DetReduction {
    /// The cofactor `m` with `sorted(m, lead) = w`, if the lead divides `w`.
    fn cofactor(&self, w: &Word) -> Option<Word> {
        let mut need = self.lead_counts.clone();
        let mut rest = Vec::with_capacity(w.len());
        for g in w.letters() {
            match need.get_mut(g) {
                Some(k) if *k > 0 => *k -= 1,
                _ => rest.push(*g),
            }
        }
        need.values().all(|&k| k == 0).then_some(Word(rest))
    }

    fn divides(&self, counts: &BTreeMap<GeneratorSymbol, usize>) -> bool {
        self.lead_counts.iter().all(|(g, k)| counts.get(g).copied().unwrap_or(0) >= *k)
    }
}

/// `1 / c` for a monomial Laurent scalar.
fn invert_monomial(c: &LaurentScalar) -> Option<LaurentScalar> {
    let mut terms = c.terms();
    let (exp, coeff) = terms.next()?;
    if terms.next().is_some() {
        return None;
    }
    Some(LaurentScalar::monomial(coeff.recip(), -exp))
}

impl RewriteSystem {
    pub const ORDER: &'static str =
        "deg-inversions-lex; plain letters by decreasing (row, col), then starred by increasing (row, col)";

    pub fn new(kind: AlgebraKind, n: usize) -> Result<Self, AlgebraError> {
        if n == 0 || n > 16 {
            return Err(AlgebraError::IndexOutOfRange(format!("n={n}")));
        }
        let rules = match kind {
            AlgebraKind::Holomorphic => relations::holomorphic_rules(AlgebraTag::MatQ, n),
            AlgebraKind::Antiholomorphic => relations::antiholomorphic_only_rules(n),
            AlgebraKind::Pol => relations::pol_rules(n),
            AlgebraKind::SLn => relations::holomorphic_rules(AlgebraTag::SLnQ, n),
        };
        let mut rs = Self::from_rules(kind, n, rules);
        if kind == AlgebraKind::SLn {
            let det = rs.normal_form(&relations::sl_determinant(n))?;
            let rule = relations::determinant_rule(&det).ok_or_else(|| {
                AlgebraError::Invalid(format!("leading coefficient of det_q is not invertible for n={n}"))
            })?;
            let relation = &det - &NCPolynomial::one(AlgebraTag::SLnQ, n);
            let lead_counts = letter_counts(rule.lhs.letters());
            rs.det = Some(DetReduction { rule, relation, lead_counts });
            let mut images = Vec::with_capacity(n * n);
            for i in 1..=n {
                for j in 1..=n {
                    let m = complementary_minor(AlgebraTag::SLnQ, n, i, j)?;
                    images.push(m.scale(&LaurentScalar::neg_q_pow(j as i32 - i as i32)));
                }
            }
            rs.star_images = images;
        }
        Ok(rs)
    }

    fn from_rules(kind: AlgebraKind, n: usize, rules: Vec<Rule>) -> Self {
        let mut pairs = HashMap::new();
        let mut long = Vec::new();
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.len() == 2 {
                pairs.insert((r.lhs.letters()[0], r.lhs.letters()[1]), i);
            } else {
                long.push(i);
            }
        }
        Self { kind, n, rules, pairs, long, star_images: Vec::new(), det: None }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn tag(&self) -> AlgebraTag {
        self.kind.tag()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Word rules; the determinant reduction of `C[SL_n]_q` is kept apart.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// `lead(det_q t) -> ...` in `C[SL_n]_q`, applied up to reordering of letters.
    pub fn determinant_rule(&self) -> Option<&Rule> {
        self.det.as_ref().map(|d| &d.rule)
    }

    /// Leftmost occurrence of a rule's leading word.
    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let letters = w.letters();
        for pos in 0..letters.len() {
            if pos + 1 < letters.len() {
                if let Some(&i) = self.pairs.get(&(letters[pos], letters[pos + 1])) {
                    return Some((pos, i));
                }
            }
            for &i in &self.long {
                let lhs = self.rules[i].lhs.letters();
                if letters[pos..].starts_with(lhs) {
                    return Some((pos, i));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w).is_none() && self.det.as_ref().is_none_or(|d| d.cofactor(w).is_none())
    }

    /// `t^*` image of a generator `t_{ij}`, i.e. `(-q)^{j-i}` times its complementary minor.
    pub fn sl_star_image(&self, g: GeneratorSymbol) -> Option<&NCPolynomial> {
        if self.kind != AlgebraKind::SLn {
            return None;
        }
        self.star_images.get((g.row() - 1) * self.n + g.col() - 1)
    }

    /// In `C[SL_n]_q` replaces every `t*` letter by its minor expansion.
    fn expand_sl_stars(&self, p: &NCPolynomial) -> Result<NCPolynomial, AlgebraError> {
        if self.kind != AlgebraKind::SLn || p.terms().all(|(w, _)| !w.has_starred()) {
            return Ok(p.clone());
        }
        p.map_words(p.tag(), p.n(), |w| {
            let mut acc = NCPolynomial::one(p.tag(), p.n());
            for g in w.letters() {
                let img = match g.kind {
                    SymbolKind::Plain => NCPolynomial::gen(p.n(), *g),
                    SymbolKind::Starred => self.sl_star_image(g.toggled()).cloned().ok_or_else(|| {
                        AlgebraError::IndexOutOfRange(g.to_string())
                    })?,
                };
                acc = acc.nc_multiply(&img)?;
            }
            Ok(acc)
        })
    }

    fn check_input(&self, p: &NCPolynomial) -> Result<(), AlgebraError> {
        if p.tag() != self.tag() || p.n() != self.n {
            return Err(AlgebraError::Mismatch {
                left: format!("{} (n={})", p.tag(), p.n()),
                right: format!("{} (n={})", self.tag(), self.n),
            });
        }
        p.validate()
    }

    /// Unique reduced representative of `p`.
    pub fn normal_form(&self, p: &NCPolynomial) -> Result<NCPolynomial, AlgebraError> {
        self.check_input(p)?;
        let p = self.expand_sl_stars(p)?;
        let reduced = self.rewrite(&p)?;
        match &self.det {
            None => Ok(reduced),
            Some(det) => self.divide_by_det(det, reduced),
        }
    }

    /// Removes every word divisible by the determinant's leading word. Each step
    /// subtracts a multiple of `m (det_q t - 1)`, whose leading word is the one removed.
    fn divide_by_det(&self, det: &DetReduction, p: NCPolynomial) -> Result<NCPolynomial, AlgebraError> {
        let mut pending: BTreeMap<Word, LaurentScalar> = p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = NCPolynomial::zero(p.tag(), p.n());
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_last() {
            let Some(m) = det.cofactor(&w) else {
                out.add_term(w, c);
                continue;
            };
            steps += 1;
            if steps > STEP_BUDGET {
                return Err(AlgebraError::StepBudgetExceeded(STEP_BUDGET));
            }
            let multiple = self.rewrite(&NCPolynomial::word(p.tag(), p.n(), m).nc_multiply(&det.relation)?)?;
            let lc = match multiple.leading() {
                Some((lw, lc)) if *lw == w => lc.clone(),
                _ => return Err(AlgebraError::Invalid(format!("leading word of m * det_q is not {w}"))),
            };
            let inv = invert_monomial(&lc)
                .ok_or_else(|| AlgebraError::Invalid(format!("non-monomial leading coefficient {lc}")))?;
            let factor = -(&c * &inv);
            for (mw, mc) in multiple.terms().rev().skip(1) {
                let coeff = mc * &factor;
                match pending.entry(mw.clone()) {
                    Entry::Occupied(mut e) => {
                        *e.get_mut() += &coeff;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    Entry::Vacant(e) => {
                        e.insert(coeff);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Leftmost rewriting with the word rules.
    fn rewrite(&self, p: &NCPolynomial) -> Result<NCPolynomial, AlgebraError> {
        let mut pending: BTreeMap<Word, LaurentScalar> = BTreeMap::new();
        for (w, c) in p.terms() {
            pending.insert(w.clone(), c.clone());
        }
        let mut out = NCPolynomial::zero(p.tag(), p.n());
        let mut steps = 0usize;
        // Words produced by a rewrite are strictly smaller, so the largest pending
        // word never reappears once popped.
        while let Some((w, c)) = pending.pop_last() {
            match self.find_redex(&w) {
                None => out.add_term(w, c),
                Some((pos, i)) => {
                    steps += 1;
                    if steps > STEP_BUDGET {
                        return Err(AlgebraError::StepBudgetExceeded(STEP_BUDGET));
                    }
                    let rule = &self.rules[i];
                    let head = &w.letters()[..pos];
                    let tail = &w.letters()[pos + rule.lhs.len()..];
                    for (rw, rc) in rule.rhs.terms() {
                        let mut v = Vec::with_capacity(head.len() + rw.len() + tail.len());
                        v.extend_from_slice(head);
                        v.extend_from_slice(rw.letters());
                        v.extend_from_slice(tail);
                        let coeff = rc * &c;
                        match pending.entry(Word(v)) {
                            Entry::Occupied(mut e) => {
                                *e.get_mut() += &coeff;
                                if e.get().is_zero() {
                                    e.remove();
                                }
                            }
                            Entry::Vacant(e) => {
                                e.insert(coeff);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced product.
    pub fn multiply(&self, a: &NCPolynomial, b: &NCPolynomial) -> Result<NCPolynomial, AlgebraError> {
        self.normal_form(&a.nc_multiply(b)?)
    }

    /// Resolves every overlap and inclusion ambiguity between leading words whose
    /// combined word has length at most `max_degree`.
    pub fn check_confluence(&self, max_degree: usize) -> CheckReport {
        let mut report = CheckReport::new("confluence");
        let start = Instant::now();
        let mut failures = Vec::new();
        let mut checked = 0usize;
        let tag = self.tag();
        let n = self.n;
        let word_poly = |letters: &[GeneratorSymbol]| NCPolynomial::word(tag, n, Word(letters.to_vec()));
        for r1 in &self.rules {
            for r2 in &self.rules {
                let l1 = r1.lhs.letters();
                let l2 = r2.lhs.letters();
                for k in 1..l1.len().min(l2.len()) {
                    if l1.len() + l2.len() - k > max_degree || l1[l1.len() - k..] != l2[..k] {
                        continue;
                    }
                    checked += 1;
                    let left = &r1.rhs * &word_poly(&l2[k..]);
                    let right = &word_poly(&l1[..l1.len() - k]) * &r2.rhs;
                    let label = format!("{} | {}", r1.lhs, r2.lhs);
                    self.compare_branches(&left, &right, label, &mut failures);
                }
                if std::ptr::eq(r1, r2) || l2.len() > l1.len() || l1.len() > max_degree {
                    continue;
                }
                for pos in 0..=l1.len() - l2.len() {
                    if l1[pos..pos + l2.len()] != *l2 {
                        continue;
                    }
                    checked += 1;
                    let left = r1.rhs.clone();
                    let right = &(&word_poly(&l1[..pos]) * &r2.rhs) * &word_poly(&l1[pos + l2.len()..]);
                    let label = format!("{} in {}", r2.lhs, r1.lhs);
                    self.compare_branches(&left, &right, label, &mut failures);
                }
            }
        }
        if let Some(det) = &self.det {
            checked += self.check_determinant(det, max_degree, &mut failures);
        }
        let ms = start.elapsed().as_secs_f64() * 1e3;
        report.push_timed(
            format!("ambiguities resolved ({checked} checked, n={n}, degree<={max_degree})"),
            failures.len() as f64,
            0.0,
            ms,
        );
        for (label, residual) in failures {
            report.push_timed(format!("unresolved: {label}"), residual, 0.0, 0.0);
        }
        report
    }

    /// `det_q t` commutes with every generator, and every multiple
    /// `m (det_q t - 1)`, `(det_q t - 1) m` of low degree reduces to zero.
    fn check_determinant(&self, det: &DetReduction, max_degree: usize, failures: &mut Vec<(String, f64)>) -> usize {
        let (tag, n) = (self.tag(), self.n);
        let mut checked = 0;
        let zero = NCPolynomial::zero(tag, n);
        for g in self.kind.alphabet(n) {
            checked += 1;
            let x = NCPolynomial::gen(n, g);
            let comm = &(&x * &det.relation) - &(&det.relation * &x);
            self.compare_branches(&comm, &zero, format!("det_q central w.r.t. {g}"), failures);
        }
        let alphabet = self.kind.alphabet(n);
        for d in 0..=max_degree.saturating_sub(n) {
            for m in self.holomorphic_normal_words(&alphabet, d) {
                let m = NCPolynomial::word(tag, n, m);
                for (side, p) in [("left", &m * &det.relation), ("right", &det.relation * &m)] {
                    checked += 1;
                    let label = format!("{side} multiple of det_q - 1 by {}", m);
                    self.compare_branches(&p, &zero, label, failures);
                }
            }
        }
        checked
    }

    fn holomorphic_normal_words(&self, alphabet: &[GeneratorSymbol], d: usize) -> Vec<Word> {
        fn rec(rs: &RewriteSystem, alphabet: &[GeneratorSymbol], d: usize, w: &mut Vec<GeneratorSymbol>, out: &mut Vec<Word>) {
            if w.len() == d {
                out.push(Word(w.clone()));
                return;
            }
            for &g in alphabet {
                w.push(g);
                if !rs.ends_with_leading_word(w) {
                    rec(rs, alphabet, d, w, out);
                }
                w.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, alphabet, d, &mut Vec::with_capacity(d), &mut out);
        out
    }

    fn compare_branches(
        &self,
        left: &NCPolynomial,
        right: &NCPolynomial,
        label: String,
        failures: &mut Vec<(String, f64)>,
    ) {
        match (self.normal_form(left), self.normal_form(right)) {
            (Ok(a), Ok(b)) => {
                let diff = &a - &b;
                if !diff.is_zero() {
                    failures.push((label, diff.num_terms() as f64));
                }
            }
            _ => failures.push((label, f64::INFINITY)),
        }
    }

    /// Number of normal words of length `d` over the kind's alphabet.
    pub fn count_normal_words(&self, d: usize) -> u64 {
        let alphabet = self.kind.alphabet(self.n);
        let mut word = Vec::with_capacity(d);
        self.count_rec(&alphabet, d, &mut word)
    }

    fn count_rec(&self, alphabet: &[GeneratorSymbol], d: usize, word: &mut Vec<GeneratorSymbol>) -> u64 {
        if word.len() == d {
            return 1;
        }
        let mut total = 0;
        for &g in alphabet {
            word.push(g);
            let det_divides = self.det.as_ref().is_some_and(|d| d.divides(&letter_counts(word)));
            if !det_divides && !self.ends_with_leading_word(word) {
                total += self.count_rec(alphabet, d, word);
            }
            word.pop();
        }
        total
    }

    fn ends_with_leading_word(&self, w: &[GeneratorSymbol]) -> bool {
        let len = w.len();
        if len >= 2 && self.pairs.contains_key(&(w[len - 2], w[len - 1])) {
            return true;
        }
        self.long.iter().any(|&i| w.ends_with(self.rules[i].lhs.letters()))
    }
}

/// Number of normal monomials of degree `d`.
pub fn graded_dimension(kind: AlgebraKind, n: usize, d: usize) -> Result<u64, AlgebraError> {
    Ok(RewriteSystem::new(kind, n)?.count_normal_words(d))
}

/// `C(m, k)`.
pub fn binomial(m: u64, k: u64) -> u64 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    (0..k).fold(1u64, |acc, i| acc * (m - i) / (i + 1))
}

/// Dimension of degree-`d` polynomials in `n^2` commuting variables.
pub fn commutative_dimension(n: usize, d: usize) -> u64 {
    let m = (n * n) as u64;
    if d == 0 {
        return 1;
    }
    binomial(m + d as u64 - 1, d as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol(n: usize) -> RewriteSystem {
        RewriteSystem::new(AlgebraKind::Pol, n).unwrap()
    }

    #[test]
    fn same_column_rule() {
        let rs = pol(2);
        let p = NCPolynomial::z(2, 1, 1) * NCPolynomial::z(2, 2, 1);
        let nf = rs.normal_form(&p).unwrap();
        assert_eq!(nf.to_string(), "(q) z[1,2] z[1,1]");
    }

    #[test]
    fn one_dimensional_commutation() {
        let rs = pol(1);
        let p = NCPolynomial::z_star(1, 1, 1) * NCPolynomial::z(1, 1, 1);
        assert_eq!(rs.normal_form(&p).unwrap().to_string(), "(q^2) z[1,1] z*[1,1] + (1 - q^2)");
    }

    #[test]
    fn unit_is_normal() {
        let rs = pol(3);
        let one = NCPolynomial::one(AlgebraTag::MatQ, 3);
        assert_eq!(rs.normal_form(&one).unwrap(), one);
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(graded_dimension(AlgebraKind::Holomorphic, 2, 0).unwrap(), 1);
        assert_eq!(graded_dimension(AlgebraKind::Holomorphic, 2, 1).unwrap(), 4);
        assert_eq!(graded_dimension(AlgebraKind::Holomorphic, 2, 2).unwrap(), 10);
    }

    #[test]
    fn sl2_determinant_rule() {
        let rs = RewriteSystem::new(AlgebraKind::SLn, 2).unwrap();
        let det = rs.determinant_rule().unwrap();
        assert_eq!(det.lhs.to_string(), "t[2,1] t[1,2]");
        assert_eq!(det.rhs.to_string(), "(q) t[2,2] t[1,1] + (-q)");
        let d = relations::sl_determinant(2);
        assert!(rs.normal_form(&d).unwrap().is_one());
    }

    #[test]
    fn tag_mismatch_is_rejected() {
        let rs = pol(2);
        assert!(rs.normal_form(&NCPolynomial::t(2, 1, 1)).is_err());
    }
}
