//! Numerical layer: truncated shift operators, the Fock representation and its relatives.

pub mod boundary;
pub mod character;
pub mod coherent;
pub mod config;
pub mod dilation;
pub mod factor;
pub mod fock;
pub mod norm;
pub mod operator;
pub mod oracle;
pub mod paths;
pub mod polyop;
pub mod su2;
pub mod vector;

pub use config::TruncationConfig;
pub use factor::{basic_operators, series_identities_check, FactorKind, FactorMatrix};
pub use operator::{ExactOperator, SparseTensorOperator, TensorTerm};
pub use paths::{enumerate_paths, fock_generator, ArrowBox, PathDiagram};
pub use polyop::PolyOperator;
pub use vector::{DenseSpace, FockVector};

