use num_complex::Complex64;

use qball::algebra::NCPolynomial;
use qball::rep::boundary::boundary_rep;
use qball::rep::dilation::finite_dilation;
use qball::rep::fock::{fock_apply, fock_operator};
use qball::rep::norm::compressed_norm;
use qball::rep::{enumerate_paths, fock_generator, FactorKind, FockVector, SparseTensorOperator, TruncationConfig};
use qball::RepError;

fn choose(m: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

#[test]
fn route_counts_for_four_by_four() {
    let n = 4;
    for j in 1..=n {
        for k in 1..=n {
            let routes = enumerate_paths(n, j, k).unwrap();
            assert_eq!(routes.len(), choose(2 * n - j - k, n - j), "({j},{k})");
        }
    }
    assert!(matches!(enumerate_paths(2, 3, 1), Err(RepError::IndexOutOfRange(_))));
}

#[test]
fn hooks_are_adjoint() {
    let cfg = TruncationConfig::new(0.3, 6).unwrap();
    let a = FactorKind::CqS.to_dense(&cfg);
    let b = FactorKind::SstarCq.to_dense(&cfg);
    assert!((a.adjoint() - b).iter().all(|x| x.norm() < 1e-15));
}

#[test]
fn one_variable_norm_is_the_top_weight() {
    let cfg = TruncationConfig::new(0.5, 8).unwrap();
    let op = fock_operator(&NCPolynomial::z(1, 1, 1), &cfg).unwrap();
    let norm = compressed_norm(&op, &cfg, 1e-12).unwrap();
    assert!((norm - (1.0 - 0.5f64.powi(14)).sqrt()).abs() < 1e-10);
}

#[test]
fn leak_is_refused() {
    let cfg = TruncationConfig::new(0.5, 4).unwrap();
    let p = NCPolynomial::z(2, 1, 1) * NCPolynomial::z(2, 2, 2);
    let v = FockVector::basis(&[2, 0, 0, 3]);
    assert!(matches!(fock_apply(&p, &v, &cfg), Err(RepError::LeakRisk { .. })));
}

#[test]
fn operator_json_round_trip() {
    let cfg = TruncationConfig::new(0.5, 5).unwrap();
    let op = fock_generator(2, 1, 2, &cfg).unwrap();
    let back = SparseTensorOperator::from_json(&op.to_json()).unwrap();
    let v = FockVector::basis(&[1, 0, 2, 1]);
    assert_eq!(op.apply(&v, &cfg).unwrap(), back.apply(&v, &cfg).unwrap());
}

#[test]
fn boundary_rep_needs_a_reduced_word() {
    let cfg = TruncationConfig::new(0.5, 4).unwrap();
    let err = boundary_rep(&[0.0, 0.0], &[1, 1], &NCPolynomial::z(2, 1, 1), &cfg);
    assert!(matches!(err, Err(RepError::NotReduced(_))));
}

#[test]
fn dilation_rejects_expansions() {
    let cfg = TruncationConfig::new(0.5, 3).unwrap();
    let t = FactorKind::S.to_dense(&cfg) * Complex64::new(1.5, 0.0);
    assert!(matches!(finite_dilation(&t, 2), Err(RepError::NotContraction(_))));
}
