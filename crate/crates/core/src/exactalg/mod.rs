//! Exact arithmetic substrate: field scalars, homogeneous polynomials in three
//! variables, dense linear algebra, interpolation and univariate factor-degree
//! computations over prime fields.

mod binary;
mod interpolate;
mod json;
mod matrix;
mod poly;
mod scalar;
mod unimodp;

use thiserror::Error;

pub use binary::{restrict_to_line, BinaryForm};
pub use interpolate::{fit_grid, grid_points, interpolate_homogeneous, GridSampler};
pub use json::{PolyJson, TermJson};
pub use matrix::{FieldMatrix, Kernel};
pub use poly::{poly_arith, HPoly, Monomial3, Operand, PolyOp, VarSet};
pub use scalar::{is_prime, Field, Scalar};
pub use unimodp::{factor_degrees_mod_p, UniPolyModP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("variable sets differ")]
    VarMismatch,
    #[error("operation would produce an inhomogeneous polynomial")]
    Inhomogeneous,
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix must have positive dimensions")]
    EmptyMatrix,
    #[error("dimension mismatch")]
    Shape,
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("interpolation grid is singular")]
    SingularFit,
    #[error("oracle values are inconsistent with a form of the assumed degree")]
    InconsistentOracle,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("bad prime {0}")]
    BadPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
}
