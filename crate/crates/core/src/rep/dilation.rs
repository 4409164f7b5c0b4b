//! Finite unitary dilations of a contraction.

use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::factor::dense_norm;
use crate::error::RepError;
use crate::report::CheckReport;

type CMatrix = DMatrix<Complex64>;

/// Positive square root of a Hermitian matrix; tiny negative eigenvalues from
/// rounding are clamped to zero.
pub fn hermitian_sqrt(m: &CMatrix) -> CMatrix {
    if m.is_empty() {
        return m.clone();
    }
    let sym = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let roots = eig.eigenvalues.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    v * CMatrix::from_diagonal(&roots) * v.adjoint()
}

/// `(I - X^* X)^{1/2}`.
pub fn defect(t: &CMatrix) -> CMatrix {
    let id = CMatrix::identity(t.ncols(), t.ncols());
    hermitian_sqrt(&(id - t.adjoint() * t))
}

pub struct Dilation {
    pub unitary: CMatrix,
    pub steps: usize,
    pub block: usize,
}

impl Dilation {
    /// Top-left block of `U^k`.
    pub fn compressed_power(&self, k: usize) -> CMatrix {
        let b = self.block;
        let mut p = CMatrix::identity(self.unitary.nrows(), self.unitary.ncols());
        for _ in 0..k {
            p = &self.unitary * p;
        }
        p.view((0, 0), (b, b)).into_owned()
    }
}

/// The block unitary on `H^{steps+1}`
///
/// ```text
/// [ T    0 ... 0  D_{T*} ]
/// [ D_T  0 ... 0  -T*    ]
/// [ 0    I          0    ]
/// [        ...           ]
/// [ 0   ...   I     0    ]
/// ```
///
/// whose compressions satisfy `P U^k P = T^k` for `k <= steps`.
pub fn finite_dilation(t: &CMatrix, steps: usize) -> Result<(Dilation, CheckReport), RepError> {
    if t.nrows() != t.ncols() {
        return Err(RepError::Shape(format!("{}x{} is not square", t.nrows(), t.ncols())));
    }
    let steps = steps.max(1);
    let norm = dense_norm(t);
    if norm > 1.0 + 1e-12 {
        return Err(RepError::NotContraction(norm));
    }
    let b = t.nrows();
    let blocks = steps + 1;
    let mut u = CMatrix::zeros(b * blocks, b * blocks);
    let last = steps * b;
    u.view_mut((0, 0), (b, b)).copy_from(t);
    u.view_mut((0, last), (b, b)).copy_from(&defect(&t.adjoint()));
    u.view_mut((b, 0), (b, b)).copy_from(&defect(t));
    u.view_mut((b, last), (b, b)).copy_from(&(-t.adjoint()));
    for r in 2..blocks {
        u.view_mut((r * b, (r - 1) * b), (b, b)).fill_with_identity();
    }
    let dil = Dilation { unitary: u, steps, block: b };
    let mut report = CheckReport::new("dilation");
    let start = Instant::now();
    let id = CMatrix::identity(b * blocks, b * blocks);
    let unitarity = dense_norm(&(dil.unitary.adjoint() * &dil.unitary - id));
    report.push_timed("unitarity", unitarity, 1e-12, start.elapsed().as_secs_f64() * 1e3);
    let mut worst = 0.0f64;
    let mut tk = CMatrix::identity(b, b);
    let start = Instant::now();
    for k in 1..=steps {
        tk = t * tk;
        worst = worst.max(dense_norm(&(dil.compressed_power(k) - &tk)));
    }
    report.push_timed("compression of powers", worst, 1e-12, start.elapsed().as_secs_f64() * 1e3);
    Ok((dil, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{FactorKind, TruncationConfig};

    #[test]
    fn weighted_shift_dilates() {
        let cfg = TruncationConfig::new(0.5, 6).unwrap();
        let t = FactorKind::CqS.to_dense(&cfg);
        let (_, report) = finite_dilation(&t, 4).unwrap();
        assert!(report.pass, "{}", report.to_json());
    }

    #[test]
    fn unitary_and_zero() {
        let u = CMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0].map(|x| Complex64::new(x, 0.0)));
        let (d, r) = finite_dilation(&u, 3).unwrap();
        assert!(r.pass);
        assert!(dense_norm(&(d.compressed_power(2) - &u * &u)) < 1e-14);
        let z = CMatrix::zeros(3, 3);
        let (d, r) = finite_dilation(&z, 2).unwrap();
        assert!(r.pass);
        assert!(dense_norm(&d.compressed_power(2)) < 1e-15);
        let big = CMatrix::identity(2, 2) * Complex64::new(2.0, 0.0);
        assert!(matches!(finite_dilation(&big, 2), Err(RepError::NotContraction(_))));
    }
}
