use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::{EngineError, Expr, FactSet, FuncSymbol, Monomial, SymbolKind};
use crate::field::{rat, ratio, Rational};

/// `Δ_inc e = e[var ↦ var + inc] − e`.
pub fn difference(e: &Expr, var: &str, inc: &str) -> Result<Expr, EngineError> {
    let shifted = e.substitute_var(var, &(&Expr::var(var) + &Expr::var(inc)))?;
    Ok(&shifted - e)
}

/// `Δ_{y1} ⋯ Δ_{ym} A(x, …, x)` for a symmetric multi-additive `A`.
pub fn polarize(symbol: &FuncSymbol, m: usize) -> Result<Expr, EngineError> {
    let SymbolKind::MultiAdditive(n) = symbol.kind() else {
        return Err(EngineError::NotMultiAdditive {
            symbol: symbol.name().to_string(),
        });
    };
    let mut e = symbol.apply(vec![Expr::var("x"); n])?;
    for i in 1..=m {
        e = difference(&e, "x", &format!("y{i}"))?;
    }
    Ok(e)
}

/// `½(q(x+y) − q(x) − q(y))`: the symmetric bi-additive form whose trace is
/// the quadratic `q` in `var`.
pub fn polarize_trace(q: &Expr, var: &str, other: &str) -> Result<Expr, EngineError> {
    let sum = q.substitute_var(var, &(&Expr::var(var) + &Expr::var(other)))?;
    let at_other = q.substitute_var(var, &Expr::var(other))?;
    Ok((&(&sum - q) - &at_other).scale(&ratio(1, 2)))
}

/// `x1, …, xn`.
pub fn symmetrization_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn check_homogeneous(e: &Expr, var: &str, degree: u32) -> Result<(), EngineError> {
    for k in [2i64, 3] {
        let scaled = e.substitute_var(var, &Expr::var(var).scale(&rat(k)))?;
        let expected = e.scale(&Rational::from_integer(k.pow(degree).into()));
        let defect = &scaled - &expected;
        if !defect.is_zero() {
            return Err(EngineError::NonHomogeneous {
                degree,
                witness: format!("{var} -> {k}*{var} leaves {defect}"),
            });
        }
    }
    Ok(())
}

/// Symmetrizes a homogeneous degree-`n` expression in one variable.
pub fn symmetrize(e: &Expr, n: usize) -> Result<Expr, EngineError> {
    let vars = e.variables();
    match vars.len() {
        0 if e.is_zero() || n == 0 => Ok(e.clone()),
        0 => Err(EngineError::NonHomogeneous {
            degree: n as u32,
            witness: format!("constant {e}"),
        }),
        1 => symmetrize_in(e, vars.first().expect("one variable"), n),
        _ => Err(EngineError::NotUnivariate(vars.into_iter().collect())),
    }
}

/// The symmetric `n`-additive `A(x1, …, xn)` whose diagonal is `e`.
///
/// Substitutes `var ↦ x1 + ⋯ + xn`, keeps the terms of degree exactly one in
/// every `xi` and divides by `n!`.
pub fn symmetrize_in(e: &Expr, var: &str, n: usize) -> Result<Expr, EngineError> {
    check_homogeneous(e, var, n as u32)?;
    let names = symmetrization_vars(n);
    if let Some(clash) = names.iter().find(|v| e.variables().contains(*v)) {
        return Err(EngineError::NameClash(clash.clone()));
    }
    let sum = names
        .iter()
        .fold(Expr::zero(), |acc, v| &acc + &Expr::var(v));
    let expanded = e.substitute_var(var, &sum)?;
    let multilinear = expanded.filter_terms(|m| names.iter().all(|v| m.var_degree(v) == 1));
    let factorial: Rational = (1..=n as i64).map(rat).product();
    Ok(multilinear.scale(&factorial.recip()))
}

/// `A(x, …, x)`.
pub fn diagonal(a: &Expr, vars: &[String], var: &str) -> Result<Expr, EngineError> {
    let map = vars.iter().map(|v| (v.clone(), Expr::var(var))).collect();
    a.substitute(&map)
}

/// Whether `a` is fixed by every permutation of `vars`.
pub fn is_symmetric(a: &Expr, vars: &[String]) -> Result<bool, EngineError> {
    for perm in vars.iter().permutations(vars.len()) {
        let map = vars
            .iter()
            .zip(perm)
            .map(|(from, to)| (from.clone(), Expr::var(to)))
            .collect();
        if a.substitute(&map)? != *a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Substitutes the assignment, re-expands and rewrites with `facts`.
pub fn specialize(
    a: &Expr,
    assignment: &BTreeMap<String, Expr>,
    facts: &FactSet,
) -> Result<Expr, EngineError> {
    if let Some(free) = a
        .variables()
        .into_iter()
        .find(|v| !assignment.contains_key(v))
    {
        return Err(EngineError::IncompleteAssignment(free));
    }
    facts.rewrite(&a.substitute(assignment)?)
}

/// Solves `e = 0` for a monomial that occurs in exactly one term.
pub fn solve_for(e: &Expr, target: &Monomial) -> Result<Expr, EngineError> {
    let not_linear = || EngineError::NotLinear {
        target: target.to_string(),
        expr: e.to_string(),
    };
    let c = e.coefficient(target);
    if c.is_zero() {
        return Err(not_linear());
    }
    let rest = e.filter_terms(|m| m != target);
    let occurs_elsewhere = rest.terms().any(|(m, _)| {
        target
            .factors()
            .all(|(a, k)| m.factors().any(|(b, j)| a == b && j >= k))
    });
    if occurs_elsewhere {
        return Err(not_linear());
    }
    Ok(rest.scale(&(-Rational::one() / c)))
}
