//! Exact arithmetic: cyclotomic scalars and dense matrices over them.

pub mod cyclotomic;
mod mat;
pub mod poly;
mod scalar;

pub use mat::{in_span, rref_rows, solve, span_basis, span_compare, span_rank, Mat, SolveResult, SpanComparison, SpanRelation};
pub use scalar::Scalar;
