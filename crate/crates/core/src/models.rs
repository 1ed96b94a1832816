//! Named concrete models behind a common [`Model`] trait, looked up by name
//! in a [`ModelRegistry`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::{parse_ratfunc, rat, ratio, Carrier, Poly, QuadExtElem, RatFunc};
use crate::maps::{
    check_additive, check_classical_derivation_identity, check_moment1, check_mult_closing,
    check_mult_quartic, check_mult_three_variable, check_multiplicative,
    check_order_two_derivation, check_parallelogram, check_pi2_additive, check_polarization,
    check_spadesuit, check_spadesuit_diagonal, check_twisted, FieldMap, QuadMap,
};
use crate::report::CheckReport;
use crate::sampling::{ElementSource, QuadExtSource, RatFuncSource};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Mult,
    Pi2,
    Twisted,
    Moment1,
    Spadesuit,
    Classical,
    Order2,
    Parallelogram,
}

impl Target {
    pub const ALL: [Target; 8] = [
        Target::Mult,
        Target::Pi2,
        Target::Twisted,
        Target::Moment1,
        Target::Spadesuit,
        Target::Classical,
        Target::Order2,
        Target::Parallelogram,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Target::Mult => "mult",
            Target::Pi2 => "pi2",
            Target::Twisted => "twisted",
            Target::Moment1 => "moment1",
            Target::Spadesuit => "spadesuit",
            Target::Classical => "classical",
            Target::Order2 => "order2",
            Target::Parallelogram => "parallelogram",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Target::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| ModelError::UnknownTarget(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown target `{0}` (expected one of mult, pi2, twisted, moment1, spadesuit, classical, order2, parallelogram)")]
    UnknownTarget(String),
    #[error("unknown model `{name}` (available: {available})")]
    UnknownModel { name: String, available: String },
    #[error("model `{model}` does not support target `{target}` (supported: {supported})")]
    UnsupportedTarget {
        model: String,
        target: Target,
        supported: String,
    },
}

pub trait Model: Send + Sync {
    fn name(&self) -> &str;
    /// Carrier field, e.g. `Q(t)`.
    fn carrier(&self) -> &'static str;
    fn summary(&self) -> String;
    fn targets(&self) -> &[Target];
    /// Runs the checks for `target`, which must be one of [`Model::targets`].
    fn run(&self, target: Target, samples: usize, seed: u64) -> Vec<CheckReport>;
}

/// Carriers with a seeded sample source.
pub trait Sampled: Carrier + Send + Sync + 'static {
    fn source(seed: u64) -> Box<dyn ElementSource<Self>>;
}

impl Sampled for RatFunc {
    fn source(seed: u64) -> Box<dyn ElementSource<Self>> {
        Box::new(RatFuncSource::seeded(seed))
    }
}

impl Sampled for QuadExtElem {
    fn source(seed: u64) -> Box<dyn ElementSource<Self>> {
        Box::new(QuadExtSource::seeded(2, seed).expect("2 is not a square"))
    }
}

/// The cubic used for the classical identity `a(P(x)) = P'(x)·a(x)`.
pub fn classical_polynomial() -> Poly {
    Poly::new(vec![ratio(1, 2), rat(-2), rat(0), rat(1)])
}

/// A quadratic map `q`, optionally with the operator it is built from, a
/// twisting homomorphism, or a pair of homomorphisms with `q = φ₁·φ₂`.
struct QuadraticModel<F> {
    name: &'static str,
    q: QuadMap<F>,
    operator: Option<FieldMap<F>>,
    twist: Option<FieldMap<F>>,
    factors: Option<(FieldMap<F>, FieldMap<F>)>,
    targets: Vec<Target>,
}

impl<F: Sampled + fmt::Display> Model for QuadraticModel<F> {
    fn name(&self) -> &str {
        self.name
    }

    fn carrier(&self) -> &'static str {
        F::NAME
    }

    fn summary(&self) -> String {
        match &self.q {
            QuadMap::ProdOfHoms(p1, p2) => format!("q(x) = {p1}(x)*{p2}(x)"),
            QuadMap::DerivOfSquare(d) => format!("q(x) = {d}(x^2)"),
            QuadMap::SecondOrderForm(d) => format!("q(x) = 4x*D(x) - D(x^2), D = {d}"),
            QuadMap::TwistedSecondOrder(phi, d) => format!("q(x) = {phi}(4x*{d}(x) - {d}(x^2))"),
            QuadMap::MomentForm(p1, p2, a) => format!("q(x) = 2({p1}+{p2})(x)*{a}(x) - {a}(x^2)"),
        }
    }

    fn targets(&self) -> &[Target] {
        &self.targets
    }

    fn run(&self, target: Target, samples: usize, seed: u64) -> Vec<CheckReport> {
        let mut src = F::source(seed);
        let src = src.as_mut();
        let q = &self.q;
        match target {
            Target::Mult => {
                let mut out = vec![check_multiplicative(q, samples, src)];
                if let Some((p1, p2)) = &self.factors {
                    out.push(check_mult_closing(p1, p2, samples, src));
                }
                out
            }
            Target::Pi2 => vec![check_pi2_additive(q, samples, src)],
            Target::Twisted => {
                let phi = self.twist.as_ref().expect("twisted target needs a twist");
                vec![check_twisted(q, phi, samples, src)]
            }
            Target::Parallelogram => vec![
                check_parallelogram(q, samples, src),
                check_polarization(q, samples, src),
            ],
            Target::Order2 => {
                let d = self
                    .operator
                    .as_ref()
                    .expect("order2 target needs an operator");
                vec![check_order_two_derivation(d, samples, src)]
            }
            Target::Classical => {
                let d = self
                    .operator
                    .as_ref()
                    .expect("classical target needs an operator");
                vec![check_classical_derivation_identity(
                    d,
                    &classical_polynomial(),
                    samples,
                    src,
                )]
            }
            Target::Moment1 | Target::Spadesuit => Vec::new(),
        }
    }
}

/// A field homomorphism `a`, used as a solution of the multiplicative
/// quartic and its three-variable form.
struct HomModel<F> {
    name: &'static str,
    phi: FieldMap<F>,
}

impl<F: Sampled + fmt::Display> Model for HomModel<F> {
    fn name(&self) -> &str {
        self.name
    }

    fn carrier(&self) -> &'static str {
        F::NAME
    }

    fn summary(&self) -> String {
        format!("a(x) = {}(x)", self.phi)
    }

    fn targets(&self) -> &[Target] {
        &[Target::Mult]
    }

    fn run(&self, target: Target, samples: usize, seed: u64) -> Vec<CheckReport> {
        let mut src = F::source(seed);
        let src = src.as_mut();
        let a = &self.phi;
        match target {
            Target::Mult => vec![
                check_additive(a, samples, src),
                check_multiplicative(a, samples, src),
                check_mult_quartic(a, samples, src),
                check_mult_three_variable(a, samples, src),
            ],
            _ => Vec::new(),
        }
    }
}

/// Homomorphisms `φ₁, φ₂` and an additive `a` with
/// `q(x) = 2(φ₁(x)+φ₂(x))·a(x) − a(x²)`.
struct MomentModel<F> {
    name: &'static str,
    phi1: FieldMap<F>,
    phi2: FieldMap<F>,
    a: FieldMap<F>,
}

impl<F: Sampled + fmt::Display> Model for MomentModel<F> {
    fn name(&self) -> &str {
        self.name
    }

    fn carrier(&self) -> &'static str {
        F::NAME
    }

    fn summary(&self) -> String {
        format!(
            "q(x) = 2({p1}(x)+{p2}(x))*a(x) - a(x^2), a = {a}",
            p1 = self.phi1,
            p2 = self.phi2,
            a = self.a
        )
    }

    fn targets(&self) -> &[Target] {
        &[
            Target::Moment1,
            Target::Spadesuit,
            Target::Order2,
            Target::Parallelogram,
        ]
    }

    fn run(&self, target: Target, samples: usize, seed: u64) -> Vec<CheckReport> {
        let mut src = F::source(seed);
        let src = src.as_mut();
        let q = QuadMap::MomentForm(self.phi1.clone(), self.phi2.clone(), self.a.clone());
        let (p1, p2, a) = (&self.phi1, &self.phi2, &self.a);
        match target {
            Target::Moment1 => vec![check_moment1(&q, p1, p2, samples, src)],
            Target::Spadesuit => vec![
                check_spadesuit(a, p1, p2, samples, src),
                check_spadesuit_diagonal(a, p1, p2, samples, src),
            ],
            Target::Order2 => vec![check_order_two_derivation(a, samples, src)],
            Target::Parallelogram => vec![
                check_parallelogram(&q, samples, src),
                check_polarization(&q, samples, src),
            ],
            _ => Vec::new(),
        }
    }
}

pub struct ModelRegistry {
    models: Vec<Box<dyn Model>>,
}

fn d() -> FieldMap<RatFunc> {
    FieldMap::FormalDerivative
}

fn dd() -> FieldMap<RatFunc> {
    FieldMap::derivative_power(2)
}

fn sub(p: &[i64]) -> FieldMap<RatFunc> {
    FieldMap::substitution(Poly::from_ints(p)).expect("nonconstant substitution")
}

fn coeff(s: &str) -> RatFunc {
    parse_ratfunc(s).expect("literal coefficient")
}

impl ModelRegistry {
    pub fn new(models: Vec<Box<dyn Model>>) -> Self {
        ModelRegistry { models }
    }

    /// The built-in models over ℚ(t) and ℚ(√2).
    pub fn builtin() -> Self {
        use Target::*;
        let quad = |name, q, operator, targets: &[Target]| -> Box<dyn Model> {
            Box::new(QuadraticModel::<RatFunc> {
                name,
                q,
                operator,
                twist: None,
                factors: None,
                targets: targets.to_vec(),
            })
        };
        let combo = FieldMap::LinearCombo(vec![(coeff("t"), dd()), (coeff("(3)/(t+1)"), d())]);
        let square_sub = sub(&[0, 0, 1]);
        ModelRegistry::new(vec![
            quad(
                "deriv-square",
                QuadMap::DerivOfSquare(d()),
                None,
                &[Pi2, Mult, Parallelogram],
            ),
            quad(
                "second-order-d",
                QuadMap::SecondOrderForm(d()),
                Some(d()),
                &[Pi2, Order2, Classical, Parallelogram],
            ),
            quad(
                "second-order-dd",
                QuadMap::SecondOrderForm(dd()),
                Some(dd()),
                &[Pi2, Order2, Parallelogram],
            ),
            quad(
                "second-order-combo",
                QuadMap::SecondOrderForm(combo.clone()),
                Some(combo),
                &[Pi2, Order2, Parallelogram],
            ),
            quad(
                "square",
                QuadMap::square(),
                None,
                &[Mult, Pi2, Parallelogram],
            ),
            Box::new(QuadraticModel::<RatFunc> {
                name: "subst-product",
                q: QuadMap::ProdOfHoms(FieldMap::Identity, square_sub.clone()),
                operator: None,
                twist: None,
                factors: Some((FieldMap::Identity, square_sub.clone())),
                targets: vec![Mult, Parallelogram],
            }),
            Box::new(QuadraticModel::<QuadExtElem> {
                name: "norm-sqrt2",
                q: QuadMap::ProdOfHoms(FieldMap::Identity, FieldMap::QuadConjugation),
                operator: None,
                twist: None,
                factors: Some((FieldMap::Identity, FieldMap::QuadConjugation)),
                targets: vec![Mult, Parallelogram],
            }),
            Box::new(QuadraticModel::<RatFunc> {
                name: "twisted-subst",
                q: QuadMap::TwistedSecondOrder(square_sub.clone(), d()),
                operator: None,
                twist: Some(square_sub.clone()),
                factors: None,
                targets: vec![Twisted, Parallelogram],
            }),
            Box::new(HomModel::<RatFunc> {
                name: "subst-hom",
                phi: sub(&[1, 0, 1]),
            }),
            Box::new(HomModel::<QuadExtElem> {
                name: "conj-sqrt2",
                phi: FieldMap::QuadConjugation,
            }),
            Box::new(MomentModel::<RatFunc> {
                name: "moment-d",
                phi1: FieldMap::Identity,
                phi2: FieldMap::Identity,
                a: d(),
            }),
            Box::new(MomentModel::<RatFunc> {
                name: "moment-dd",
                phi1: FieldMap::Identity,
                phi2: FieldMap::Identity,
                a: dd(),
            }),
            Box::new(MomentModel::<RatFunc> {
                name: "moment-hom",
                phi1: square_sub.clone(),
                phi2: square_sub.clone(),
                a: square_sub.compose(d()),
            }),
        ])
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Model> {
        self.models.iter().map(|m| m.as_ref())
    }

    pub fn names(&self) -> Vec<&str> {
        self.models.iter().map(|m| m.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Model, ModelError> {
        self.iter()
            .find(|m| m.name() == name)
            .ok_or_else(|| ModelError::UnknownModel {
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    /// Looks up `model`, checks that it supports `target`, and runs it.
    pub fn verify(
        &self,
        model: &str,
        target: Target,
        samples: usize,
        seed: u64,
    ) -> Result<Vec<CheckReport>, ModelError> {
        let m = self.get(model)?;
        if !m.targets().contains(&target) {
            return Err(ModelError::UnsupportedTarget {
                model: model.to_string(),
                target,
                supported: m
                    .targets()
                    .iter()
                    .map(|t| t.as_str())
                    .collect::<Vec<_>>()
                    .join(", "),
            });
        }
        Ok(m.run(target, samples, seed))
    }
}
