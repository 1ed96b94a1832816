//! Exact ground fields: ℚ, ℚ[t], ℚ(t) and ℚ(√d).
//!
//! Every concrete model check runs over one of these carriers. All values are
//! immutable and every operation is pure.

mod parse;
mod poly;
mod quadext;
mod ratfunc;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use parse::{parse_poly, parse_ratfunc};
pub use poly::Poly;
pub use quadext::{quadext_arith, QuadExtElem};
pub use ratfunc::{poly_eval_subst, ratfunc_arith, RatFunc};

/// Arbitrary-precision rational, always stored in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Arithmetic selector used by the checked `*_arith` entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched quadratic extensions: sqrt({0}) vs sqrt({1})")]
    ExtensionMismatch(i64, i64),
    #[error("invalid extension parameter {0}: must be square-free and not 0 or 1")]
    InvalidExtension(i64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse {what} at offset {offset}: {message}")]
    Parse {
        what: &'static str,
        offset: usize,
        message: String,
    },
}

/// A commutative field of characteristic zero.
///
/// Constants are produced relative to an existing element (`zero_like`,
/// `one_like`) because some carriers, such as ℚ(√d), carry their extension
/// parameter inside each value.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn embed_like(&self, q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn try_div(&self, rhs: &Self) -> Result<Self, FieldError>;

    fn try_inv(&self) -> Result<Self, FieldError> {
        self.one_like().try_div(self)
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

/// Carrier fields on which concrete maps act. Operations a carrier does not
/// support return `None`, which the map layer reports as a carrier mismatch.
pub trait Carrier: Field {
    const NAME: &'static str;

    fn formal_derivative(&self) -> Option<Self>;
    fn substitute(&self, p: &Poly) -> Option<Self>;
    fn conjugate(&self) -> Option<Self>;
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n/d`; panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Renders a rational as `p` or `p/q`.
pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
