//! Linear algebra over the 2-element field: matrices, chain complexes,
//! group rings of `(Z/2)^n`, cube complexes, double covers and dot algebras.

mod complex;
mod cover;
mod cube;
mod dots;
mod group_ring;
pub(crate) mod matrix;

use thiserror::Error;

pub use complex::F2ChainComplex;
pub use cover::{gysin_check, random_simplicial_cover, CellComplex, GysinReport, Incidence};
pub use cube::{e1_page, mask_label, CubeComplex};
pub use dots::{DotAlgebra, DotKind, DotPoly, Monomial};
pub use group_ring::{xi_multiply, GroupRingElement};
pub use matrix::F2Matrix;

#[derive(Debug, Error)]
pub enum HomalgError {
    #[error("entry ({r}, {c}) outside a {rows}x{cols} matrix")]
    Entry {
        r: usize,
        c: usize,
        rows: usize,
        cols: usize,
    },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("not a chain complex: {0}")]
    NotComplex(String),
    #[error("subset mask {mask:#b} is not inside {{1..{n}}}")]
    Subset { mask: u32, n: u32 },
    #[error("D² is not zero: first non-zero component is D²^{{{a},{b}}}")]
    CubeSquare { a: String, b: String },
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Polynomial { input: String, reason: String },
}
