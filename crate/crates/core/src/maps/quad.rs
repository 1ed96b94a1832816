use std::fmt;

use super::{FieldMap, MapError, UnaryOp};
use crate::field::{rat, ratio, Carrier};

/// Quadratic maps built from derivations and homomorphisms. Each one is the
/// trace of the symmetric bi-additive form returned by [`QuadMap::bilinear`].
#[derive(Clone, Debug, PartialEq)]
pub enum QuadMap<F> {
    /// `φ₁(x)·φ₂(x)`.
    ProdOfHoms(FieldMap<F>, FieldMap<F>),
    /// `d(x²)`.
    DerivOfSquare(FieldMap<F>),
    /// `4x·D(x) − D(x²)`.
    SecondOrderForm(FieldMap<F>),
    /// `φ(4x·d(x) − d(x²))`.
    TwistedSecondOrder(FieldMap<F>, FieldMap<F>),
    /// `2(φ₁(x) + φ₂(x))·a(x) − a(x²)`.
    MomentForm(FieldMap<F>, FieldMap<F>, FieldMap<F>),
}

impl<F: Carrier> QuadMap<F> {
    /// The identically zero quadratic map.
    pub fn zero() -> Self {
        QuadMap::DerivOfSquare(FieldMap::Zero)
    }

    /// `x²`.
    pub fn square() -> Self {
        QuadMap::ProdOfHoms(FieldMap::Identity, FieldMap::Identity)
    }

    pub fn eval(&self, x: &F) -> Result<F, MapError> {
        let two = x.embed_like(&rat(2));
        let four = x.embed_like(&rat(4));
        let xx = x.clone() * x.clone();
        Ok(match self {
            QuadMap::ProdOfHoms(p1, p2) => p1.apply(x)? * p2.apply(x)?,
            QuadMap::DerivOfSquare(d) => d.apply(&xx)?,
            QuadMap::SecondOrderForm(d) => four * x.clone() * d.apply(x)? - d.apply(&xx)?,
            QuadMap::TwistedSecondOrder(phi, d) => {
                phi.apply(&(four * x.clone() * d.apply(x)? - d.apply(&xx)?))?
            }
            QuadMap::MomentForm(p1, p2, a) => {
                two * (p1.apply(x)? + p2.apply(x)?) * a.apply(x)? - a.apply(&xx)?
            }
        })
    }

    /// The symmetric bi-additive `B` with `B(x, x) = q(x)`.
    ///
    /// For a product of homomorphisms the form is normalized with a factor ½
    /// so that its trace is `q` rather than `2q`.
    pub fn bilinear(&self, x: &F, y: &F) -> Result<F, MapError> {
        let two = x.embed_like(&rat(2));
        let half = x.embed_like(&ratio(1, 2));
        let xy = x.clone() * y.clone();
        let second_order = |d: &FieldMap<F>| -> Result<F, MapError> {
            Ok(
                two.clone() * x.clone() * d.apply(y)? + two.clone() * y.clone() * d.apply(x)?
                    - d.apply(&xy)?,
            )
        };
        Ok(match self {
            QuadMap::ProdOfHoms(p1, p2) => {
                half * (p1.apply(x)? * p2.apply(y)? + p1.apply(y)? * p2.apply(x)?)
            }
            QuadMap::DerivOfSquare(d) => d.apply(&xy)?,
            QuadMap::SecondOrderForm(d) => second_order(d)?,
            QuadMap::TwistedSecondOrder(phi, d) => phi.apply(&second_order(d)?)?,
            QuadMap::MomentForm(p1, p2, a) => {
                (p1.apply(x)? + p2.apply(x)?) * a.apply(y)?
                    + (p1.apply(y)? + p2.apply(y)?) * a.apply(x)?
                    - a.apply(&xy)?
            }
        })
    }
}

impl<F: Carrier> UnaryOp<F> for QuadMap<F> {
    fn eval(&self, x: &F) -> Result<F, MapError> {
        QuadMap::eval(self, x)
    }
}

impl<F: fmt::Display> fmt::Display for QuadMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadMap::ProdOfHoms(p1, p2) => write!(f, "{p1}(x)·{p2}(x)"),
            QuadMap::DerivOfSquare(d) => write!(f, "{d}(x^2)"),
            QuadMap::SecondOrderForm(d) => write!(f, "4x·{d}(x) - {d}(x^2)"),
            QuadMap::TwistedSecondOrder(phi, d) => write!(f, "{phi}(4x·{d}(x) - {d}(x^2))"),
            QuadMap::MomentForm(p1, p2, a) => {
                write!(f, "2({p1}(x) + {p2}(x))·{a}(x) - {a}(x^2)")
            }
        }
    }
}
