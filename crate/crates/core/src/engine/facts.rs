use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::One;

use super::{Atom, EngineError, Expr, FuncSymbol, Monomial, SymbolKind};

/// A rewrite rule `f(p1, …, pk) ↦ rhs`. An argument that is a bare variable
/// matches any product; every other argument must match literally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    name: Option<String>,
    symbol: FuncSymbol,
    pattern: Vec<Monomial>,
    rhs: Expr,
}

fn pattern_var(m: &Monomial) -> Option<&str> {
    match m.as_atom() {
        Some(Atom::Var(v)) => Some(v),
        _ => None,
    }
}

fn max_arity(e: &Expr) -> Option<usize> {
    e.symbols().iter().map(FuncSymbol::arity).max()
}

impl Fact {
    /// Builds a fact from a left-hand side that must normalize to a single
    /// application with coefficient one.
    ///
    /// Every application on the right must have smaller arity than the
    /// left-hand symbol and every right-hand variable must occur in the
    /// pattern, which keeps rewriting terminating.
    pub fn new(name: Option<&str>, lhs: &Expr, rhs: Expr) -> Result<Self, EngineError> {
        let bad_lhs = || EngineError::FactLhs(lhs.to_string());
        let mut terms = lhs.terms();
        let (m, c) = terms.next().ok_or_else(bad_lhs)?;
        if terms.next().is_some() || !c.is_one() {
            return Err(bad_lhs());
        }
        let Some(Atom::App { symbol, args }) = m.as_atom() else {
            return Err(bad_lhs());
        };
        if matches!(symbol.kind(), SymbolKind::Power(_)) {
            return Err(bad_lhs());
        }
        let non_terminating = |reason: String| EngineError::NonTerminating {
            lhs: lhs.to_string(),
            reason,
        };
        if let Some(k) = max_arity(&rhs).filter(|k| *k >= symbol.arity()) {
            return Err(non_terminating(format!(
                "right-hand side uses a symbol of arity {k}, left-hand side has arity {}",
                symbol.arity()
            )));
        }
        let params: Vec<&str> = args.iter().filter_map(pattern_var).collect();
        if let Some(v) = rhs
            .variables()
            .into_iter()
            .find(|v| !params.contains(&v.as_str()))
        {
            return Err(non_terminating(format!(
                "variable {v} is not a pattern argument"
            )));
        }
        Ok(Fact {
            name: name.map(str::to_string),
            symbol: symbol.clone(),
            pattern: args.clone(),
            rhs,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn lhs(&self) -> Expr {
        Expr::from_atom(Atom::App {
            symbol: self.symbol.clone(),
            args: self.pattern.clone(),
        })
    }

    pub fn rhs(&self) -> &Expr {
        &self.rhs
    }

    fn bind(&self, args: &[&Monomial]) -> Option<BTreeMap<String, Expr>> {
        let mut binding: BTreeMap<String, Monomial> = BTreeMap::new();
        for (p, a) in self.pattern.iter().zip(args) {
            match pattern_var(p) {
                Some(v) => match binding.get(v) {
                    Some(prev) if prev != *a => return None,
                    Some(_) => {}
                    None => {
                        binding.insert(v.to_string(), (*a).clone());
                    }
                },
                None if p != *a => return None,
                None => {}
            }
        }
        Some(
            binding
                .into_iter()
                .map(|(v, m)| (v, Expr::from_monomial(m)))
                .collect(),
        )
    }

    /// The instantiated right-hand side if `atom` matches the pattern.
    fn try_match(&self, atom: &Atom) -> Result<Option<Expr>, EngineError> {
        let Atom::App { symbol, args } = atom else {
            return Ok(None);
        };
        if *symbol != self.symbol || args.len() != self.pattern.len() {
            return Ok(None);
        }
        let binding = if matches!(symbol.kind(), SymbolKind::MultiAdditive(_)) {
            args.iter()
                .permutations(args.len())
                .find_map(|perm| self.bind(&perm))
        } else {
            self.bind(&args.iter().collect::<Vec<_>>())
        };
        binding.map(|b| self.rhs.substitute(&b)).transpose()
    }
}

/// Ordered rewrite rules with pairwise distinct left-hand sides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactSet {
    facts: Vec<Fact>,
}

impl FactSet {
    pub fn new(facts: Vec<Fact>) -> Result<Self, EngineError> {
        for (i, f) in facts.iter().enumerate() {
            if facts[..i].iter().any(|g| g.lhs() == f.lhs()) {
                return Err(EngineError::DuplicateFact(f.lhs().to_string()));
            }
        }
        Ok(FactSet { facts })
    }

    pub fn empty() -> Self {
        FactSet::default()
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    /// Rewrites innermost applications first, repeating until no fact applies.
    pub fn rewrite(&self, e: &Expr) -> Result<Expr, EngineError> {
        if self.facts.is_empty() {
            return Ok(e.clone());
        }
        let mut current = e.clone();
        loop {
            let (next, changed) = self.step_expr(&current)?;
            if !changed {
                return Ok(next);
            }
            current = next;
        }
    }

    fn step_expr(&self, e: &Expr) -> Result<(Expr, bool), EngineError> {
        let mut out = Expr::zero();
        let mut changed = false;
        for (m, c) in e.terms() {
            let (t, ch) = self.step_monomial(m)?;
            changed |= ch;
            out = &out + &t.scale(c);
        }
        Ok((out, changed))
    }

    fn step_monomial(&self, m: &Monomial) -> Result<(Expr, bool), EngineError> {
        let mut out = Expr::one();
        let mut changed = false;
        for (atom, k) in m.factors() {
            let (t, ch) = self.step_atom(atom)?;
            changed |= ch;
            out = &out * &t.pow(*k);
        }
        Ok((out, changed))
    }

    fn step_atom(&self, atom: &Atom) -> Result<(Expr, bool), EngineError> {
        let Atom::App { symbol, args } = atom else {
            return Ok((Expr::from_atom(atom.clone()), false));
        };
        let mut new_args = Vec::with_capacity(args.len());
        let mut changed = false;
        for a in args {
            let (t, ch) = self.step_monomial(a)?;
            changed |= ch;
            new_args.push(t);
        }
        if changed {
            return Ok((symbol.apply(new_args)?, true));
        }
        for f in &self.facts {
            if let Some(rhs) = f.try_match(atom)? {
                return Ok((rhs, true));
            }
        }
        Ok((Expr::from_atom(atom.clone()), false))
    }
}
