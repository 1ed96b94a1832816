//! Concrete realizations of derivations, higher-order derivations,
//! differential operators and field homomorphisms, plus the quadratic maps
//! built from them and exact checkers for each functional equation.

mod checks;
mod quad;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Carrier, FieldError, Poly};

pub use checks::*;
pub use quad::QuadMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("{map} is not defined on {carrier}")]
    CarrierMismatch {
        map: &'static str,
        carrier: &'static str,
    },
    #[error("substitution homomorphism needs a nonconstant polynomial, got {0}")]
    ConstantSubstitution(Poly),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Anything that maps a field element to a field element.
pub trait UnaryOp<F> {
    fn eval(&self, x: &F) -> Result<F, MapError>;
}

/// A map ℚ(t)→ℚ(t) or ℚ(√d)→ℚ(√d), built structurally.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldMap<F> {
    /// d/dt on ℚ(t).
    FormalDerivative,
    /// `[f, g, h]` is `f∘g∘h`; the last map is applied first.
    Composition(Vec<FieldMap<F>>),
    /// `Σ cᵢ·mᵢ(x)` with coefficients from the carrier.
    LinearCombo(Vec<(F, FieldMap<F>)>),
    /// `x(t) ↦ x(p(t))` for nonconstant `p`.
    SubstitutionHom(Poly),
    /// `a + b√d ↦ a − b√d`.
    QuadConjugation,
    Identity,
    Zero,
}

impl<F: Carrier> FieldMap<F> {
    pub fn substitution(p: Poly) -> Result<Self, MapError> {
        if p.is_constant() {
            return Err(MapError::ConstantSubstitution(p));
        }
        Ok(FieldMap::SubstitutionHom(p))
    }

    /// `self∘inner`.
    pub fn compose(self, inner: FieldMap<F>) -> Self {
        let mut parts = match self {
            FieldMap::Composition(v) => v,
            other => vec![other],
        };
        match inner {
            FieldMap::Composition(v) => parts.extend(v),
            other => parts.push(other),
        }
        FieldMap::Composition(parts)
    }

    /// `d∘d∘…∘d`, `n` times.
    pub fn derivative_power(n: usize) -> Self {
        match n {
            0 => FieldMap::Identity,
            1 => FieldMap::FormalDerivative,
            _ => FieldMap::Composition(vec![FieldMap::FormalDerivative; n]),
        }
    }

    /// Order as a differential operator: the maximum composition length of
    /// its derivation chains. `None` for maps involving homomorphisms other
    /// than the identity.
    pub fn derivation_order(&self) -> Option<usize> {
        match self {
            FieldMap::FormalDerivative => Some(1),
            FieldMap::Identity | FieldMap::Zero => Some(0),
            FieldMap::SubstitutionHom(_) | FieldMap::QuadConjugation => None,
            FieldMap::Composition(parts) => parts.iter().map(Self::derivation_order).sum(),
            FieldMap::LinearCombo(terms) => terms
                .iter()
                .map(|(_, m)| m.derivation_order())
                .try_fold(0, |acc, o| o.map(|o| acc.max(o))),
        }
    }

    pub fn apply(&self, x: &F) -> Result<F, MapError> {
        let mismatch = |map| MapError::CarrierMismatch {
            map,
            carrier: F::NAME,
        };
        match self {
            FieldMap::FormalDerivative => {
                x.formal_derivative().ok_or(mismatch("formal derivative"))
            }
            FieldMap::SubstitutionHom(p) => {
                if p.is_constant() {
                    return Err(MapError::ConstantSubstitution(p.clone()));
                }
                x.substitute(p).ok_or(mismatch("substitution homomorphism"))
            }
            FieldMap::QuadConjugation => x.conjugate().ok_or(mismatch("quadratic conjugation")),
            FieldMap::Identity => Ok(x.clone()),
            FieldMap::Zero => Ok(x.zero_like()),
            FieldMap::Composition(parts) => parts
                .iter()
                .rev()
                .try_fold(x.clone(), |acc, m| m.apply(&acc)),
            FieldMap::LinearCombo(terms) => {
                let mut acc = x.zero_like();
                for (c, m) in terms {
                    acc = acc + c.clone() * m.apply(x)?;
                }
                Ok(acc)
            }
        }
    }
}

impl<F: Carrier> UnaryOp<F> for FieldMap<F> {
    fn eval(&self, x: &F) -> Result<F, MapError> {
        self.apply(x)
    }
}

impl<F: fmt::Display> fmt::Display for FieldMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMap::FormalDerivative => f.write_str("d"),
            FieldMap::SubstitutionHom(p) => write!(f, "sub({p})"),
            FieldMap::QuadConjugation => f.write_str("conj"),
            FieldMap::Identity => f.write_str("id"),
            FieldMap::Zero => f.write_str("0"),
            FieldMap::Composition(parts) => {
                let names: Vec<String> = parts.iter().map(|m| m.to_string()).collect();
                write!(f, "({})", names.join("∘"))
            }
            FieldMap::LinearCombo(terms) => {
                let names: Vec<String> = terms.iter().map(|(c, m)| format!("[{c}]·{m}")).collect();
                write!(f, "({})", names.join(" + "))
            }
        }
    }
}

type MapFn<F> = Arc<dyn Fn(&F) -> Result<F, MapError> + Send + Sync>;

/// Type-erased unary map, used where a model needs a map outside the
/// [`FieldMap`] grammar (for example a deliberately non-additive control).
#[derive(Clone)]
pub struct UnaryMap<F> {
    name: String,
    f: MapFn<F>,
}

impl<F> UnaryMap<F> {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(&F) -> Result<F, MapError> + Send + Sync + 'static,
    ) -> Self {
        UnaryMap {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl<F: Carrier> From<FieldMap<F>> for UnaryMap<F> {
    fn from(m: FieldMap<F>) -> Self {
        UnaryMap::new(m.to_string(), move |x| m.apply(x))
    }
}

impl<F> UnaryOp<F> for UnaryMap<F> {
    fn eval(&self, x: &F) -> Result<F, MapError> {
        (self.f)(x)
    }
}

impl<F> fmt::Debug for UnaryMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnaryMap({})", self.name)
    }
}
