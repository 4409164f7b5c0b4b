//! Direct expansion of `T(z_k^j) = q^{j-n} sum pi_{sigma_1}(t_{n+j,k_1}) (x) ... (x) pi_{sigma_{n^2}}(t_{k_{n^2-1},n+k})`.

use super::factor::FactorKind;
use super::operator::ExactOperator;
use super::su2::{pi_sigma_factor, reduced_word_u};
use crate::error::RepError;
use crate::laurent::LaurentScalar;

/// Sums over every intermediate index in `1..=2n`, skipping vanishing factors.
pub fn brute_force_generator(n: usize, row: usize, col: usize) -> Result<ExactOperator, RepError> {
    if row == 0 || col == 0 || row > n || col > n {
        return Err(RepError::IndexOutOfRange(format!("z[{col},{row}] with n={n}")));
    }
    let m = 2 * n;
    let sigma = reduced_word_u(n);
    let mut out = ExactOperator::zero(n * n);
    let mut factors = Vec::with_capacity(n * n);
    let start = LaurentScalar::q_pow(row as i32 - n as i32);
    expand(m, &sigma, n + row, n + col, &start, &mut factors, &mut out)?;
    Ok(out)
}

fn expand(
    m: usize,
    sigma: &[usize],
    a: usize,
    last: usize,
    coeff: &LaurentScalar,
    factors: &mut Vec<FactorKind>,
    out: &mut ExactOperator,
) -> Result<(), RepError> {
    let h = factors.len();
    if h == sigma.len() {
        out.add_term(factors.clone(), coeff.clone());
        return Ok(());
    }
    let choices: Vec<usize> = if h + 1 == sigma.len() { vec![last] } else { (1..=m).collect() };
    for b in choices {
        let Some(f) = pi_sigma_factor(m, sigma[h], a, b)? else { continue };
        let mut c = coeff.shift(f.q_power);
        if f.negative {
            c = -c;
        }
        factors.push(f.kind);
        expand(m, sigma, b, last, &c, factors, out)?;
        factors.pop();
    }
    Ok(())
}
