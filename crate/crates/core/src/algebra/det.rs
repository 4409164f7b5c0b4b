use super::generator::{AlgebraTag, GeneratorSymbol, Word};
use super::poly::NCPolynomial;
use crate::error::AlgebraError;
use crate::laurent::LaurentScalar;

fn entry(tag: AlgebraTag, row: usize, col: usize) -> GeneratorSymbol {
    match tag {
        AlgebraTag::MatQ => GeneratorSymbol::z(row, col),
        AlgebraTag::SLnQ => GeneratorSymbol::t(row, col),
    }
}

/// All permutations of `0..k` together with their inversion counts.
pub(crate) fn permutations(k: usize) -> Vec<(Vec<usize>, usize)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, usize)>) {
        let k = used.len();
        if prefix.len() == k {
            let mut inv = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), inv));
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Quantum minor on the kept `rows` and `cols` (1-based, increasing):
/// `sum_s (-q)^{l(s)} x[rows[s(1)], cols[1]] ... x[rows[s(k)], cols[k]]`.
///
/// No reduction is applied. The empty minor is `1`.
pub fn quantum_minor(
    tag: AlgebraTag,
    n: usize,
    rows: &[usize],
    cols: &[usize],
) -> Result<NCPolynomial, AlgebraError> {
    if rows.len() != cols.len() {
        return Err(AlgebraError::MinorSize { rows: rows.len(), cols: cols.len() });
    }
    for &i in rows.iter().chain(cols) {
        if i == 0 || i > n {
            return Err(AlgebraError::IndexOutOfRange(format!("minor index {i} with n={n}")));
        }
    }
    let mut out = NCPolynomial::zero(tag, n);
    for (perm, inv) in permutations(rows.len()) {
        let word: Vec<_> = perm
            .iter()
            .enumerate()
            .map(|(c, &r)| entry(tag, rows[r], cols[c]))
            .collect();
        out.add_term(Word(word), LaurentScalar::neg_q_pow(inv as i32));
    }
    Ok(out)
}

/// Minor of the generator matrix with row `i` and column `j` removed.
pub fn complementary_minor(tag: AlgebraTag, n: usize, i: usize, j: usize) -> Result<NCPolynomial, AlgebraError> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(AlgebraError::IndexOutOfRange(format!("({i},{j}) with n={n}")));
    }
    let rows: Vec<usize> = (1..=n).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (1..=n).filter(|&c| c != j).collect();
    quantum_minor(tag, n, &rows, &cols)
}

/// `det_q` of the full generator matrix, unreduced.
pub fn q_determinant(tag: AlgebraTag, n: usize) -> NCPolynomial {
    let all: Vec<usize> = (1..=n).collect();
    quantum_minor(tag, n, &all, &all).expect("full index sets are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_sizes() {
        assert_eq!(q_determinant(AlgebraTag::MatQ, 1).num_terms(), 1);
        let d2 = q_determinant(AlgebraTag::MatQ, 2);
        assert_eq!(d2.to_string(), "z[1,1] z[2,2] + (-q) z[1,2] z[2,1]");
        let d3 = q_determinant(AlgebraTag::MatQ, 3);
        let mut exps: Vec<i32> = d3.terms().map(|(_, c)| c.terms().next().unwrap().0).collect();
        exps.sort();
        assert_eq!(exps, vec![0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(matches!(
            quantum_minor(AlgebraTag::SLnQ, 3, &[1, 2], &[1]),
            Err(AlgebraError::MinorSize { .. })
        ));
    }

    #[test]
    fn complementary_minor_of_2x2() {
        let m = complementary_minor(AlgebraTag::SLnQ, 2, 1, 1).unwrap();
        assert_eq!(m, NCPolynomial::t(2, 2, 2));
    }
}
