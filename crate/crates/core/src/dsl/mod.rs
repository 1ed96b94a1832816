//! A small declaration-and-equation language for functional equations.
//!
//! ```text
//! biadditive B;
//! additive a;
//! eq mult: B(x*y, x*y) = B(x,x)*B(y,y);
//! degree mult 4;
//! fact unit: B(1,1) = 1;
//! fact: B(x,1) = a(x);
//! specialize mult at (x,x,1,1) with unit;
//! ```
//!
//! Identifiers that are not declared symbols are variables and must be
//! lowercase. Precedence, tightest first: `^`, `*`, unary `-`, binary `+ -`.
//! `p/q` is a single rational literal. `#` starts a comment.

mod lexer;
mod parser;
mod print;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::engine::{symmetrize_in, EngineError, Expr, Fact, FactSet, FuncSymbol};

pub use parser::parse;
pub use print::print;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    UndeclaredSymbol(String),
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct DslError {
    pub kind: ErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl DslError {
    pub(crate) fn new(kind: ErrorKind, pos: Pos, message: impl Into<String>) -> Self {
        DslError {
            kind,
            pos,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Equation {
    /// `lhs − rhs`.
    pub fn difference(&self) -> Expr {
        &self.lhs - &self.rhs
    }

    /// `lhs − rhs` with every variable replaced by the first one in name
    /// order, so `B(x*y,x*y) − B(x,x)·B(y,y)` becomes `B(x²,x²) − B(x,x)²`.
    pub fn diagonal(&self) -> Result<(Expr, Option<String>), EngineError> {
        let e = self.difference();
        let vars = e.variables();
        let Some(first) = vars.first().cloned() else {
            return Ok((e, None));
        };
        let map = vars
            .iter()
            .map(|v| (v.clone(), Expr::var(&first)))
            .collect();
        Ok((e.substitute(&map)?, Some(first)))
    }
}

/// A specialization value: the constant `1` or a variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecValue {
    One,
    Var(String),
}

impl SpecValue {
    pub fn to_expr(&self) -> Expr {
        match self {
            SpecValue::One => Expr::one(),
            SpecValue::Var(v) => Expr::var(v),
        }
    }
}

impl fmt::Display for SpecValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecValue::One => f.write_str("1"),
            SpecValue::Var(v) => f.write_str(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    pub equation: String,
    pub at: Vec<SpecValue>,
    pub with: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub symbols: Vec<FuncSymbol>,
    pub equations: Vec<Equation>,
    pub facts: Vec<Fact>,
    pub degrees: Vec<(String, u32)>,
    pub specializations: Vec<Specialization>,
}

impl Script {
    pub fn equation(&self, name: &str) -> Option<&Equation> {
        self.equations.iter().find(|e| e.name == name)
    }

    pub fn degree(&self, equation: &str) -> Option<u32> {
        self.degrees
            .iter()
            .find(|(n, _)| n == equation)
            .map(|(_, d)| *d)
    }

    /// Anonymous facts plus the named facts listed in `with`, in script order.
    pub fn fact_set(&self, with: &[String]) -> Result<FactSet, EngineError> {
        let chosen = self
            .facts
            .iter()
            .filter(|f| f.name().is_none_or(|n| with.iter().any(|w| w == n)))
            .cloned()
            .collect();
        FactSet::new(chosen)
    }

    /// Symmetrizes the diagonal of an equation at its declared degree.
    pub fn symmetrized(&self, equation: &str) -> Result<Expr, ScriptError> {
        let eq = self
            .equation(equation)
            .ok_or_else(|| ScriptError::UnknownEquation(equation.to_string()))?;
        let degree = self
            .degree(equation)
            .ok_or_else(|| ScriptError::MissingDegree(equation.to_string()))?;
        let (e, var) = eq.diagonal()?;
        Ok(match var {
            Some(v) => symmetrize_in(&e, &v, degree as usize)?,
            None => crate::engine::symmetrize(&e, degree as usize)?,
        })
    }

    /// Runs one specialization directive on the symmetrized equation.
    pub fn run_specialization(&self, spec: &Specialization) -> Result<Expr, ScriptError> {
        let sym = self.symmetrized(&spec.equation)?;
        let names = crate::engine::symmetrization_vars(spec.at.len());
        let degree = self.degree(&spec.equation).unwrap_or_default() as usize;
        if spec.at.len() != degree {
            return Err(ScriptError::TupleLength {
                equation: spec.equation.clone(),
                expected: degree,
                got: spec.at.len(),
            });
        }
        let assignment: BTreeMap<String, Expr> = names
            .into_iter()
            .zip(spec.at.iter().map(SpecValue::to_expr))
            .collect();
        let facts = self.fact_set(&spec.with)?;
        Ok(crate::engine::specialize(&sym, &assignment, &facts)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("no equation named {0}")]
    UnknownEquation(String),
    #[error("equation {0} has no degree directive")]
    MissingDegree(String),
    #[error("specialization of {equation} needs {expected} values, got {got}")]
    TupleLength {
        equation: String,
        expected: usize,
        got: usize,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
}
