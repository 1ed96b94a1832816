use std::collections::BTreeMap;

use thiserror::Error;

use super::{additive_var, bell, MultiIndex};
use crate::engine::{EngineError, Expr, Interp};
use crate::field::{rat, Carrier, Field, Rational};
use crate::maps::{check_order_two_derivation, FieldMap, MapError, UnaryMap, UnaryOp};
use crate::report::CheckReport;
use crate::sampling::ElementSource;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentError {
    #[error("d_{index} is not a derivation of order two: {witness}")]
    NotOrderTwo { index: MultiIndex, witness: String },
    #[error("no additive map for index {0}")]
    MissingIndex(MultiIndex),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// The group on which the family lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupLaw {
    /// `(F, +)`.
    Additive,
    /// `(F^×, ·)`.
    Multiplicative,
}

impl GroupLaw {
    fn combine<F: Field>(self, x: &F, y: &F) -> F {
        match self {
            GroupLaw::Additive => x.clone() + y.clone(),
            GroupLaw::Multiplicative => x.clone() * y.clone(),
        }
    }
}

/// `f_α = B_α(a)·m` for `|α| ≤ bound`.
#[derive(Clone)]
pub struct MomentFamily<F> {
    rank: usize,
    bound: u32,
    group: GroupLaw,
    m: UnaryMap<F>,
    additive: BTreeMap<MultiIndex, UnaryMap<F>>,
    bells: BTreeMap<MultiIndex, Expr>,
}

impl<F: Field> MomentFamily<F> {
    /// `additive` must supply `a_β` for every nonzero `β` with `|β| ≤ bound`.
    pub fn new(
        rank: usize,
        bound: u32,
        group: GroupLaw,
        m: UnaryMap<F>,
        additive: BTreeMap<MultiIndex, UnaryMap<F>>,
    ) -> Result<Self, MomentError> {
        let indices = MultiIndex::up_to(rank, bound);
        if let Some(missing) = indices
            .iter()
            .find(|b| !b.is_zero() && !additive.contains_key(*b))
        {
            return Err(MomentError::MissingIndex(missing.clone()));
        }
        let bells = indices
            .into_iter()
            .map(|a| (a.clone(), bell(&a).expansion))
            .collect();
        Ok(MomentFamily {
            rank,
            bound,
            group,
            m,
            additive,
            bells,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn group(&self) -> GroupLaw {
        self.group
    }

    pub fn indices(&self) -> impl Iterator<Item = &MultiIndex> {
        self.bells.keys()
    }

    /// `B_α(a(x))`.
    pub fn bell_value(&self, alpha: &MultiIndex, x: &F) -> Result<F, EngineError> {
        let b = self
            .bells
            .get(alpha)
            .ok_or_else(|| EngineError::Unbound(format!("B_{alpha}")))?;
        let mut interp = Interp::new(x.one_like());
        for beta in alpha.below().iter().filter(|b| !b.is_zero()) {
            interp.set_var(&additive_var(beta), self.additive[beta].eval(x)?);
        }
        interp.eval(b)
    }

    /// `f_α(x)`.
    pub fn value(&self, alpha: &MultiIndex, x: &F) -> Result<F, EngineError> {
        Ok(self.bell_value(alpha, x)? * self.m.eval(x)?)
    }

    /// The family divided by its exponential: same additive data, `m ≡ 1`.
    pub fn normalized(&self) -> Self {
        MomentFamily {
            m: UnaryMap::new("1", |x: &F| Ok(x.one_like())),
            ..self.clone()
        }
    }
}

/// Checks `f_α(x∘y) = Σ_{β≤α} C(α,β)·f_β(x)·f_{α−β}(y)` for every `α` of
/// the family on `samples` pairs.
pub fn check_moment_recurrence<F, S>(
    fam: &MomentFamily<F>,
    samples: usize,
    source: &mut S,
) -> CheckReport
where
    F: Field,
    S: ElementSource<F> + ?Sized,
{
    const NAME: &str = "moment-recurrence";
    for _ in 0..samples {
        let pair = match fam.group {
            GroupLaw::Additive => source.tuple(2),
            GroupLaw::Multiplicative => source.nonzero_tuple(2),
        };
        let (x, y) = (&pair[0], &pair[1]);
        let xy = fam.group.combine(x, y);
        for alpha in fam.indices() {
            let verdict = (|| -> Result<Option<String>, EngineError> {
                let lhs = fam.value(alpha, &xy)?;
                let mut rhs = x.zero_like();
                for beta in alpha.below() {
                    let rest = alpha.checked_sub(&beta).expect("beta below alpha");
                    let c = x.embed_like(&Rational::from_integer(alpha.binomial(&beta)));
                    rhs = rhs + c * fam.value(&beta, x)? * fam.value(&rest, y)?;
                }
                Ok((lhs != rhs).then(|| format!("lhs={lhs}, rhs={rhs}")))
            })();
            let witness = match verdict {
                Ok(None) => continue,
                Ok(Some(w)) => w,
                Err(e) => format!("error: {e}"),
            };
            return CheckReport::fail(
                NAME,
                samples,
                format!("alpha={alpha}, x={x}, y={y}: {witness}"),
            );
        }
    }
    CheckReport::pass(NAME, samples)
}

/// `a(x) = 4d(x)/x − d(x²)/x²`.
pub fn log_additive_from<F: Carrier>(d: FieldMap<F>) -> UnaryMap<F> {
    let name = format!("4{d}(x)/x - {d}(x^2)/x^2");
    UnaryMap::new(name, move |x: &F| {
        let x2 = x.clone() * x.clone();
        let first = (x.embed_like(&rat(4)) * d.apply(x)?)
            .try_div(x)
            .map_err(MapError::from)?;
        let second = d.apply(&x2)?.try_div(&x2).map_err(MapError::from)?;
        Ok(first - second)
    })
}

fn check_log_additive<F, S>(
    name: &str,
    a: &UnaryMap<F>,
    samples: usize,
    source: &mut S,
) -> CheckReport
where
    F: Field,
    S: ElementSource<F> + ?Sized,
{
    for _ in 0..samples {
        let pair = source.nonzero_tuple(2);
        let (x, y) = (&pair[0], &pair[1]);
        let verdict = (|| -> Result<Option<String>, MapError> {
            let lhs = a.eval(&(x.clone() * y.clone()))?;
            let rhs = a.eval(x)? + a.eval(y)?;
            Ok((lhs != rhs).then(|| format!("lhs={lhs}, rhs={rhs}")))
        })();
        let witness = match verdict {
            Ok(None) => continue,
            Ok(Some(w)) => w,
            Err(e) => format!("error: {e}"),
        };
        return CheckReport::fail(name, samples, format!("x={x}, y={y}: {witness}"));
    }
    CheckReport::pass(name, samples)
}

/// Builds `q_α(x) = B_α(a(x))·x²` on the multiplicative group from one
/// second-order derivation per index, with `a_α = 4d_α(x)/x − d_α(x²)/x²`.
///
/// Each `d_α` is screened with the order-two check first; a failure aborts
/// with its witness. The returned reports cover the additivity of every
/// `a_α` on `F^×` and the moment recurrence.
pub fn build_quadratic_moment_family<F, S>(
    rank: usize,
    d: impl Fn(&MultiIndex) -> FieldMap<F>,
    bound: u32,
    samples: usize,
    source: &mut S,
) -> Result<(MomentFamily<F>, Vec<CheckReport>), MomentError>
where
    F: Carrier,
    S: ElementSource<F> + ?Sized,
{
    let mut reports = Vec::new();
    let mut additive = BTreeMap::new();
    for alpha in MultiIndex::up_to(rank, bound)
        .into_iter()
        .filter(|a| !a.is_zero())
    {
        let d_alpha = d(&alpha);
        let screen = check_order_two_derivation(&d_alpha, samples, source);
        if !screen.passed() {
            return Err(MomentError::NotOrderTwo {
                index: alpha,
                witness: screen.witness.unwrap_or_default(),
            });
        }
        reports.push(screen.renamed(format!("order2 d_{alpha}")));
        let a = log_additive_from(d_alpha);
        reports.push(check_log_additive(
            &format!("log-additive a_{alpha}"),
            &a,
            samples,
            source,
        ));
        additive.insert(alpha, a);
    }
    let square = UnaryMap::new("x^2", |x: &F| Ok(x.clone() * x.clone()));
    let fam = MomentFamily::new(rank, bound, GroupLaw::Multiplicative, square, additive)?;
    reports.push(check_moment_recurrence(&fam, samples, source));
    Ok((fam, reports))
}
