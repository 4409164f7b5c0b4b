//! Verification suites wiring the symbolic and numeric layers into reports.

mod maxmod;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{normal_form, AlgebraTag, GeneratorSymbol, NCPolynomial, Word};
use crate::error::RepError;
use crate::laurent::LaurentScalar;
use crate::report::{CheckReport, ConfigEcho};
use crate::rep::TruncationConfig;

pub use maxmod::{boundary_sup, epsilon, grid_points, max_modulus_check, n1_max_modulus, sample_norms, MaxModulusSummary, SampleNorms};
pub use suites::compression_residual;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Suite {
    Relations,
    Confluence,
    Dimensions,
    FockOracle,
    Vacuum,
    Basis,
    Character,
    Coherent,
    BoundaryIdeal,
    Dilation,
    MaxModulus,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Relations,
        Suite::Confluence,
        Suite::Dimensions,
        Suite::FockOracle,
        Suite::Vacuum,
        Suite::Basis,
        Suite::Character,
        Suite::Coherent,
        Suite::BoundaryIdeal,
        Suite::Dilation,
        Suite::MaxModulus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Confluence => "confluence",
            Suite::Dimensions => "dimensions",
            Suite::FockOracle => "fock-oracle",
            Suite::Vacuum => "vacuum",
            Suite::Basis => "basis",
            Suite::Character => "character",
            Suite::Coherent => "coherent",
            Suite::BoundaryIdeal => "boundary-ideal",
            Suite::Dilation => "dilation",
            Suite::MaxModulus => "max-modulus",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| RepError::Config(format!("unknown suite `{s}`")))
    }
}

/// Tolerance keys and their defaults.
pub const DEFAULT_TOLERANCES: [(&str, f64); 12] = [
    ("relations", 1e-10),
    ("basis", 1e-12),
    ("character", 1e-12),
    ("coherent", 0.0),
    ("boundary", 1e-10),
    ("dilation", 1e-12),
    ("compression", 1e-10),
    ("eps_factor", 10.0),
    ("max_modulus_rel", 0.02),
    ("monotone_slack", 1e-9),
    ("norm", 1e-6),
    ("exact", 0.0),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub n: usize,
    pub q: f64,
    #[serde(rename = "N")]
    pub trunc: usize,
    /// Degree of sampled polynomials (and confluence / dimension bound).
    pub degree: usize,
    pub seed: u64,
    pub samples: usize,
    pub tolerances: BTreeMap<String, f64>,
    pub suites: Vec<Suite>,
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n: 2,
            q: 0.5,
            trunc: 6,
            degree: 2,
            seed: 7,
            samples: 20,
            tolerances: BTreeMap::new(),
            suites: Vec::new(),
            out: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<TruncationConfig, RepError> {
        if self.n == 0 || self.n > 4 {
            return Err(RepError::Config(format!("n = {} is outside 1..=4", self.n)));
        }
        let cfg = TruncationConfig::new(self.q, self.trunc)?;
        if self.degree > cfg.safe_degree {
            return Err(RepError::Config(format!("degree {} exceeds the safe degree {}", self.degree, cfg.safe_degree)));
        }
        if self.samples == 0 {
            return Err(RepError::Config("samples must be at least 1".into()));
        }
        for (k, v) in &self.tolerances {
            if !DEFAULT_TOLERANCES.iter().any(|(d, _)| d == k) {
                return Err(RepError::Config(format!("unknown tolerance key `{k}`")));
            }
            if !(*v >= 0.0) {
                return Err(RepError::Config(format!("tolerance {k} = {v} is negative")));
            }
        }
        Ok(cfg)
    }

    pub fn tol(&self, key: &str) -> f64 {
        self.tolerances.get(key).copied().unwrap_or_else(|| {
            DEFAULT_TOLERANCES.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).expect("known tolerance key")
        })
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho { n: self.n, q: self.q, trunc: self.trunc, seed: self.seed }
    }
}

/// Parses `key=value`.
pub fn parse_tolerance(s: &str) -> Result<(String, f64), RepError> {
    let (k, v) = s.split_once('=').ok_or_else(|| RepError::Config(format!("expected key=value, got `{s}`")))?;
    let v: f64 = v.trim().parse().map_err(|_| RepError::Config(format!("bad tolerance value in `{s}`")))?;
    Ok((k.trim().to_string(), v))
}

pub const MAX_SAMPLE_DEGREE: usize = 8;

/// Deterministic pseudo-random polynomial in `Pol(Mat_n)_q` (or `C[Mat_n]_q`),
/// in normal form, of degree at most `degree`.
pub fn sample_polynomial(seed: u64, n: usize, degree: usize, holomorphic_only: bool) -> Result<NCPolynomial, RepError> {
    if degree > MAX_SAMPLE_DEGREE {
        return Err(RepError::Config(format!("sample degree {degree} exceeds {MAX_SAMPLE_DEGREE}")));
    }
    if n == 0 {
        return Err(RepError::Config("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 48) ^ ((degree as u64) << 40));
    let mut p = NCPolynomial::zero(AlgebraTag::MatQ, n);
    let terms = rng.random_range(1..=4);
    for t in 0..terms {
        let len = if t == 0 { degree } else { rng.random_range(0..=degree) };
        let letters: Vec<GeneratorSymbol> = (0..len)
            .map(|_| {
                let r = rng.random_range(1..=n);
                let c = rng.random_range(1..=n);
                if !holomorphic_only && rng.random_bool(0.5) {
                    GeneratorSymbol::z_star(r, c)
                } else {
                    GeneratorSymbol::z(r, c)
                }
            })
            .collect();
        let mut num: i64 = rng.random_range(-3..=3);
        if num == 0 {
            num = 1;
        }
        let den: i64 = [1, 2, 4][rng.random_range(0..3)];
        let c = LaurentScalar::monomial(num_rational::Rational64::new(num, den), 0);
        p.add_term(Word(letters), c);
    }
    let p = normal_form(&p)?;
    if p.is_zero() {
        return Ok(NCPolynomial::one(AlgebraTag::MatQ, n));
    }
    Ok(p)
}

/// Runs every selected suite (all of them when the selection is empty).
pub fn run_suite(cfg: &SuiteConfig) -> Result<CheckReport, RepError> {
    let tc = cfg.validate()?;
    let selected: Vec<Suite> = if cfg.suites.is_empty() { Suite::ALL.to_vec() } else { cfg.suites.clone() };
    let name = selected.iter().map(|s| s.name()).collect::<Vec<_>>().join(",");
    let mut report = CheckReport::new(name).with_config(cfg.echo());
    for suite in selected {
        let mut part = match suite {
            Suite::Relations => suites::relations(cfg, &tc)?,
            Suite::Confluence => suites::confluence(cfg)?,
            Suite::Dimensions => suites::dimensions(cfg)?,
            Suite::FockOracle => suites::fock_oracle(cfg, &tc)?,
            Suite::Vacuum => suites::vacuum(cfg, &tc)?,
            Suite::Basis => suites::basis(cfg, &tc)?,
            Suite::Character => suites::character(cfg, &tc)?,
            Suite::Coherent => suites::coherent(cfg, &tc)?,
            Suite::BoundaryIdeal => suites::boundary_ideal(cfg, &tc)?,
            Suite::Dilation => suites::dilation(cfg, &tc)?,
            Suite::MaxModulus => max_modulus_check(cfg, cfg.samples)?,
        };
        for c in &mut part.checks {
            c.name = format!("{}: {}", suite.name(), c.name);
        }
        report.merge(part);
    }
    if let Some(path) = &cfg.out {
        std::fs::write(path, report.to_json()).map_err(|e| RepError::Config(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}
