//! Symbolic generalized polynomials: normal-form expressions over declared
//! function symbols, the difference operator, polarization, the
//! symmetrization method and fact-driven specialization.

mod eval;
mod expr;
mod facts;
mod ops;
pub mod pipelines;

use thiserror::Error;

use crate::maps::MapError;

pub use eval::Interp;
pub use expr::{Atom, Expr, FuncSymbol, Monomial, SymbolKind};
pub use facts::{Fact, FactSet};
pub use ops::{
    diagonal, difference, is_symmetric, polarize, polarize_trace, solve_for, specialize,
    symmetrization_vars, symmetrize, symmetrize_in,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("{symbol} takes {expected} argument(s), got {got}")]
    Arity {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("{symbol} is not a multi-additive symbol")]
    NotMultiAdditive { symbol: String },
    #[error("expression is not homogeneous of degree {degree}: {witness}")]
    NonHomogeneous { degree: u32, witness: String },
    #[error("expected an expression in one variable, found {0:?}")]
    NotUnivariate(Vec<String>),
    #[error("output variable {0} already occurs in the input")]
    NameClash(String),
    #[error("assignment leaves variable {0} free")]
    IncompleteAssignment(String),
    #[error("fact left-hand side must be a single application, got {0}")]
    FactLhs(String),
    #[error("fact {lhs}: {reason}")]
    NonTerminating { lhs: String, reason: String },
    #[error("fact for {0} declared twice")]
    DuplicateFact(String),
    #[error("{target} does not occur linearly in {expr}")]
    NotLinear { target: String, expr: String },
    #[error("no binding for {0}")]
    Unbound(String),
    #[error(transparent)]
    Map(#[from] MapError),
}
