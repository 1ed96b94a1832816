//! Multi-indices, Bell polynomials defined by their recurrence, and
//! generalized moment sequences.

mod family;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::engine::{EngineError, Expr, FuncSymbol};
use crate::field::Rational;
use crate::report::CheckReport;

pub use family::{
    build_quadratic_moment_family, check_moment_recurrence, log_additive_from, GroupLaw,
    MomentError, MomentFamily,
};

/// A fixed-rank tuple of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    /// Panics on rank zero.
    pub fn new(components: Vec<u32>) -> Self {
        assert!(
            !components.is_empty(),
            "multi-index rank must be at least 1"
        );
        MultiIndex(components)
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self::new(v)
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `|α|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.rank() == other.rank() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, defined when `other ≤ self`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        other
            .le(self)
            .then(|| MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `Π C(αᵢ, βᵢ)`; zero unless `β ≤ α`.
    pub fn binomial(&self, beta: &MultiIndex) -> BigInt {
        if !beta.le(self) {
            return BigInt::zero();
        }
        self.0
            .iter()
            .zip(&beta.0)
            .map(|(&n, &k)| binomial(n, k))
            .product()
    }

    /// All `β ≤ α`, in lexicographic order.
    pub fn below(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for &c in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=c).map(move |k| {
                        let mut v = prefix.clone();
                        v.push(k);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }

    /// All indices of the given rank with `|α| ≤ bound`, ordered by weight
    /// and then lexicographically.
    pub fn up_to(rank: usize, bound: u32) -> Vec<MultiIndex> {
        let mut all = MultiIndex(vec![bound; rank]).below();
        all.retain(|a| a.weight() <= bound);
        all.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
        all
    }

    /// Suffix used in variable and symbol names: `1_0` for `(1,0)`.
    pub fn suffix(&self) -> String {
        self.0
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join("_")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [c] = self.0.as_slice() {
            return write!(f, "{c}");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// The formal variable standing for `a_β`.
pub fn additive_var(beta: &MultiIndex) -> String {
    format!("a_{}", beta.suffix())
}

/// `B_α` as a polynomial in the formal variables [`additive_var`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellPoly {
    pub index: MultiIndex,
    pub expansion: Expr,
}

impl fmt::Display for BellPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_{} = {}", self.index, self.expansion)
    }
}

/// `B_α` by the recurrence
/// `B_{γ+eᵢ} = Σ_{β≤γ} C(γ,β)·B_β·a_{γ−β+eᵢ}`, always stepping along the
/// smallest nonzero coordinate.
pub fn bell(alpha: &MultiIndex) -> BellPoly {
    bell_via(alpha, |a| {
        a.components()
            .iter()
            .position(|c| *c > 0)
            .expect("nonzero index")
    })
}

/// As [`bell`], with `coordinate` choosing which `i` to peel off at each
/// step; it must return a position where the index is positive.
pub fn bell_via(alpha: &MultiIndex, coordinate: impl Fn(&MultiIndex) -> usize) -> BellPoly {
    let mut memo = HashMap::new();
    BellPoly {
        index: alpha.clone(),
        expansion: bell_rec(alpha, &coordinate, &mut memo),
    }
}

fn bell_rec(
    alpha: &MultiIndex,
    coordinate: &dyn Fn(&MultiIndex) -> usize,
    memo: &mut HashMap<MultiIndex, Expr>,
) -> Expr {
    if alpha.is_zero() {
        return Expr::one();
    }
    if let Some(e) = memo.get(alpha) {
        return e.clone();
    }
    let i = coordinate(alpha);
    assert!(
        alpha.components()[i] > 0,
        "coordinate {i} is zero in {alpha}"
    );
    let unit = MultiIndex::unit(alpha.rank(), i);
    let gamma = alpha.checked_sub(&unit).expect("positive coordinate");
    let mut out = Expr::zero();
    for beta in gamma.below() {
        let rest = gamma
            .checked_sub(&beta)
            .expect("beta below gamma")
            .add(&unit);
        let c = Rational::from_integer(gamma.binomial(&beta));
        let term = &bell_rec(&beta, coordinate, memo) * &Expr::var(&additive_var(&rest));
        out = &out + &term.scale(&c);
    }
    memo.insert(alpha.clone(), out.clone());
    out
}

/// `f_α(x) = B_α(a(x))·mx` with each `a_β` an additive symbol applied to
/// the variable `x` and `mx` standing for the exponential at `x`.
pub fn symbolic_moment(alpha: &MultiIndex, x: &str) -> Result<Expr, EngineError> {
    let b = bell(alpha).expansion;
    let map = alpha
        .below()
        .into_iter()
        .filter(|beta| !beta.is_zero())
        .map(|beta| {
            let sym = FuncSymbol::additive(&additive_var(&beta));
            Ok((additive_var(&beta), sym.apply(vec![Expr::var(x)])?))
        })
        .collect::<Result<_, EngineError>>()?;
    Ok(&b.substitute(&map)? * &Expr::var(&format!("m{x}")))
}

/// `f_α(x+y) − Σ_{β≤α} C(α,β)·f_β(x)·f_{α−β}(y)` with `m(x+y) = mx·my`;
/// zero exactly when the Bell family solves the moment recurrence.
pub fn moment_closure_defect(alpha: &MultiIndex) -> Result<Expr, EngineError> {
    let sum = &Expr::var("x") + &Expr::var("y");
    let lhs = symbolic_moment(alpha, "x")?
        .substitute_var("x", &sum)?
        .substitute_var("mx", &(&Expr::var("mx") * &Expr::var("my")))?;
    let mut rhs = Expr::zero();
    for beta in alpha.below() {
        let rest = alpha.checked_sub(&beta).expect("beta below alpha");
        let c = Rational::from_integer(alpha.binomial(&beta));
        let term = &symbolic_moment(&beta, "x")? * &symbolic_moment(&rest, "y")?;
        rhs = &rhs + &term.scale(&c);
    }
    Ok(&lhs - &rhs)
}

/// Compares the recurrence along every nonzero coordinate against [`bell`].
pub fn check_coordinate_independence(alpha: &MultiIndex) -> CheckReport {
    let name = format!("bell-coordinates B_{alpha}");
    let reference = bell(alpha);
    for (i, _) in alpha
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
    {
        let other = bell_via(alpha, |a| {
            if a.components()[i] > 0 {
                i
            } else {
                a.components()
                    .iter()
                    .position(|c| *c > 0)
                    .expect("nonzero index")
            }
        });
        if other != reference {
            return CheckReport::fail(
                name,
                0,
                format!(
                    "coordinate {i}: {} vs {}",
                    other.expansion, reference.expansion
                ),
            );
        }
    }
    CheckReport::pass(name, 0)
}

/// Symbolic closure of the moment recurrence at `alpha`.
pub fn check_closure(alpha: &MultiIndex) -> CheckReport {
    let name = format!("closure B_{alpha}");
    match moment_closure_defect(alpha) {
        Ok(e) if e.is_zero() => CheckReport::pass(name, 0),
        Ok(e) => CheckReport::fail(name, 0, format!("defect {e}")),
        Err(e) => CheckReport::fail(name, 0, format!("error: {e}")),
    }
}
