use serde::{Deserialize, Serialize};

use crate::error::RepError;

/// Truncation of `l^2(Z_+)` to `span{e_0, ..., e_{N-1}}` with a hard cutoff `S e_{N-1} = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationConfig {
    pub q: f64,
    #[serde(rename = "N")]
    pub trunc: usize,
    /// Largest polynomial degree applied to the vacuum without touching the cutoff.
    pub safe_degree: usize,
}

impl TruncationConfig {
    pub fn new(q: f64, trunc: usize) -> Result<Self, RepError> {
        if !(q > 0.0 && q < 1.0) {
            return Err(RepError::Config(format!("q = {q} is not in (0, 1)")));
        }
        if trunc < 2 {
            return Err(RepError::Config(format!("N = {trunc} is below 2")));
        }
        Ok(Self { q, trunc, safe_degree: trunc - 1 })
    }

    /// Same `q`, truncation raised by `extra` levels.
    pub fn extended(&self, extra: usize) -> Self {
        Self { trunc: self.trunc + extra, safe_degree: self.trunc + extra - 1, ..*self }
    }

    /// A word of length `degree` applied to a vector whose slot levels are at most
    /// `height` never reaches the cutoff.
    pub fn is_leak_free(&self, degree: usize, height: usize) -> bool {
        degree + height < self.trunc
    }

    pub fn check_leak_free(&self, degree: usize, height: usize) -> Result<(), RepError> {
        if self.is_leak_free(degree, height) {
            Ok(())
        } else {
            Err(RepError::LeakRisk { degree, height, safe: self.safe_degree })
        }
    }
}
